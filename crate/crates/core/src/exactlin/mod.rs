//! Exact linear algebra over ℚ and prime fields.
//!
//! Everything downstream is a fixed-point iteration over subspaces, so
//! subspaces are kept in canonical reduced row echelon form.

mod matrix;
mod scalar;
mod subspace;
pub mod vector;

pub use matrix::Matrix;
pub use scalar::{Field, Scalar};
pub use subspace::{Echelon, Subspace};
pub use vector::Vector;
