//! Finite groups as dense multiplication tables, their direct products and
//! subgroups of those products.

mod finite;
mod lattice;
mod parse;
mod product;

pub use finite::{FiniteGroup, GroupKind};
pub use lattice::{automorphisms, enumerate_subgroups, enumerate_subgroups_bounded, DEFAULT_AUT_CAP, DEFAULT_SUBGROUP_CAP};
pub use parse::{parse_group_spec, parse_product_spec, parse_tuple, read_generators};
pub use product::{
    direct_product, kernel_contract, project, subgroup_closure, subgroup_closure_capped, GroupProduct, RawSubset,
    Subgroup, Tuple, DEFAULT_CLOSURE_CAP,
};
