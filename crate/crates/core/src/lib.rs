//! Exact computations with finite-dimensional Lie algebras and finite Lie rings:
//! centralizers and iterated centralizers, the classical series, the Fitting
//! ideal, `exp(ad_x)`, semidirect products, and exhaustive ring oracles.

pub mod algebra;
pub mod constructions;
pub mod corpus;
pub mod error;
pub mod exactlin;
pub mod finring;
pub mod format;
pub mod radicals;
pub mod report;
pub mod sample;
pub mod structure;
pub mod suite;

pub use algebra::{Element, LieAlgebra, SubKind, SubStructure};
pub use error::{Error, Result};
