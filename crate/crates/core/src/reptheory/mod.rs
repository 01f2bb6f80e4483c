//! Characters of the factor groups and the multiset `R(H)` of irreducibles
//! of the product occurring in the permutation representation on `G/H`.

mod spectrum;
mod table;

pub use spectrum::{
    abelian_dual_subgroup, aggregate_dimension, builtin_tables, dual_crapo_rota, dual_table, exact_triv_distribution,
    r_spectrum, rank_from_spectrum, spectrum_rank_table, spectrum_tuple_count, submodularity_counterexample_rr,
    triv_sets_are_dual_flats, DualCrapoRotaReport, RSpectrum, SpectrumEntry, SubmodularityCounterexample,
    DEFAULT_IRREP_CAP,
};
pub use table::{CharacterTable, TableSource};
