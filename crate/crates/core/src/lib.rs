//! Ternary self-distributive structures over finite sets and finite-dimensional
//! vector spaces: axioms, enumeration up to isomorphism, free-group words,
//! exact linearization, low-degree cohomology and truncated deformations.

pub mod classify;
pub mod cohomology;
pub mod construct;
pub mod deform;
pub mod error;
pub mod fixtures;
pub mod group;
pub mod io;
pub mod linear;
pub mod perm;
pub mod structure;
pub mod table;
pub mod words;

pub use error::{Error, Result};
pub use group::FiniteGroup;
pub use perm::Permutation;
pub use structure::{classify_structure, StructureReport};
pub use table::{rho_permute, BinaryTable, NaryTable, TernaryTable, RHO};
