//! Worked examples used by tests, the command line and the browser demo.

use crate::hypergraph::Hypergraph;
use crate::groups::{parse_tuple, subgroup_closure, FiniteGroup, GroupProduct, RawSubset, Subgroup, Tuple};

fn tuples(g: &GroupProduct, items: &[&str]) -> Vec<Tuple> {
    items.iter().map(|s| parse_tuple(g, s).expect("fixture tuple")).collect()
}

fn closure(g: &GroupProduct, gens: &[&str]) -> Subgroup {
    subgroup_closure(g, &tuples(g, gens)).expect("fixture closure")
}

pub fn s3_squared() -> GroupProduct {
    GroupProduct::power(FiniteGroup::symmetric(3).unwrap(), 2).unwrap()
}

/// The six-element subgroup of `S3 x S3` generated by `((12),(12))` and
/// `((1),(123))`.
pub fn h_s3() -> Subgroup {
    closure(&s3_squared(), &["(12),(12)", "(1),(123)"])
}

pub const H_S3_GENERATORS: &str = "(12)|(12)\n(1)|(123)\n";

/// `{(σ, σ)}` in `S3 x S3`.
pub fn diagonal_s3() -> Subgroup {
    closure(&s3_squared(), &["(12),(12)", "(123),(123)"])
}

/// `{(σ, τ) : sign σ = sign τ}`, of index 2.
pub fn equal_sign_s3() -> Subgroup {
    closure(&s3_squared(), &["(123),(1)", "(1),(123)", "(12),(12)"])
}

/// Five words over a two-letter alphabet whose counting function fails
/// submodularity. Letters 1,2 are encoded as the elements 0,1 of `Z/2`.
pub fn example_l() -> RawSubset {
    let g = GroupProduct::power(FiniteGroup::cyclic(2).unwrap(), 3).unwrap();
    let words = [[2, 2, 2], [2, 1, 2], [1, 1, 2], [1, 1, 1], [2, 1, 1]];
    RawSubset::new(g, words.iter().map(|w| w.iter().map(|&v| v - 1).collect()).collect()).unwrap()
}

/// The subgroup of `(Z/6)^3` generated by `(1,2,3)` and `(2,1,4)`.
pub fn chen() -> Subgroup {
    let g = GroupProduct::power(FiniteGroup::cyclic(6).unwrap(), 3).unwrap();
    closure(&g, &["1,2,3", "2,1,4"])
}

pub const CHEN_GENERATORS: &str = "1|2|3\n2|1|4\n";

pub const BINARY_A: [[u8; 6]; 3] = [[1, 1, 0, 0, 0, 0], [0, 0, 1, 1, 0, 0], [0, 0, 0, 0, 1, 1]];
pub const BINARY_B: [[u8; 6]; 3] = [[1, 0, 0, 1, 1, 1], [0, 1, 0, 1, 0, 0], [0, 0, 1, 1, 0, 0]];

/// Row space of a 0/1 matrix inside `(Z/2)^n`.
pub fn binary_row_space(rows: &[[u8; 6]]) -> Subgroup {
    let g = GroupProduct::power(FiniteGroup::cyclic(2).unwrap(), 6).unwrap();
    let gens: Vec<Tuple> = rows.iter().map(|r| r.iter().map(|&v| v as u32).collect()).collect();
    subgroup_closure(&g, &gens).unwrap()
}

/// Four hyperedges on `{a,b,c,d}` with repeated vertices.
pub const EXAMPLE_HYPERGRAPH: &str = "a b c\na b b d\na b b b\nc d\n";

pub fn example_hypergraph() -> Hypergraph {
    Hypergraph::parse(EXAMPLE_HYPERGRAPH).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_orders() {
        assert_eq!(h_s3().order(), 6);
        assert_eq!(diagonal_s3().order(), 6);
        assert_eq!(equal_sign_s3().order(), 18);
        assert_eq!(chen().order(), 36);
        assert_eq!(binary_row_space(&BINARY_A).order(), 8);
        assert_eq!(binary_row_space(&BINARY_B).order(), 8);
        assert_eq!(example_l().elements().len(), 5);
    }
}
