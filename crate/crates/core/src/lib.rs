//! Exact computations with polymatroids that arise from subgroups of
//! products of finite groups.

pub mod codes;
pub mod critical;
pub mod cyclotomic;
pub mod error;
pub mod exact;
pub mod fixtures;
pub mod groups;
pub mod hypergraph;
pub mod laplacian;
pub mod linalg;
pub mod polymatroid;
pub mod reptheory;
pub mod subset;

pub use error::{Error, Result};
pub use subset::Subset;
