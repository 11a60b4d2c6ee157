//! Exact linear algebra over the rationals: sparse maps, lazy tensor composites,
//! elimination, and the bialgebra-level axioms.

pub mod bialgebra;
pub mod dim2;
pub mod lie;
pub mod matrix;
pub mod solve;
pub mod tensor;

pub use bialgebra::{
    augmented_construction, check_coassoc, check_compatibility, check_linear_distributive, check_ternary_assoc,
    group_algebra_bialgebra, group_like_delta, linearize_set, linearize_table, AssocReport, CoassocReport, Coalgebra,
    TernaryBialgebra,
};
pub use dim2::{classify_dim2_maps, Dim2Solution, Dim2Value};
pub use lie::{three_lie_to_ternary, ThreeLieAlgebra};
pub use matrix::{rat, ratio, LinearMap, Rational, SparseVec};
pub use solve::{nullspace, rank, solve};
