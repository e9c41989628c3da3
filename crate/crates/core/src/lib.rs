//! Exact computations for standardly stratified algebras presented by quivers with
//! relations.

pub mod algebra;
pub mod closure;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod graded;
pub mod linalg;
pub mod module;
pub mod orders;
pub mod quiver;
pub mod report;
pub mod scalar;
pub mod stratification;

pub use algebra::{build_table, AlgebraTable, BasisElement, Decision, Directedness};
pub use error::{Error, Result};
pub use linalg::{Matrix, Subspace};
pub use quiver::{Path, Presentation, Quiver, Relation};
pub use scalar::{FieldSpec, Fp, Scalar, F11, F13, F2, F3, F5, F7, Q};
