//! The polymatroid `P(H, b)` and the objects derived from its rank table.

mod lattice;
mod logpoly;
mod realize;
mod table;
mod tutte;

pub use lattice::{closure, coatoms, flats, is_flat, mobius, mobius_from};
pub use logpoly::{char_poly, char_poly_mobius, LogPolynomial};
pub use realize::{
    equivalent_realizations, gamma_possible, isomorphism, representability_search, EquivalenceWitness, GammaPossible,
    Representation,
};
pub use table::{
    a_dual, check_axioms, rank_table, rank_table_from_subset, submodularity_violations, AlphaVector, AxiomCheck, AxiomReport, Base, Origin,
    RankTable,
};
pub use tutte::{tutte, tutte_recursion_sides, IntTutte, TuttePoly};
