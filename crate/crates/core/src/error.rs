use thiserror::Error;

use crate::exactlin::Field;

/// Errors raised by the algebraic kernels.
///
/// Basis indices are stored 0-based and displayed 1-based (`e1`, `e2`, ...).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime modulus")]
    NotPrime(u64),
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: Field, right: Field },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("[e{i1},e{i1}] is not zero", i1 = .0 + 1)]
    NotAlternating(usize),
    #[error("[e{i1},e{j1}] != -[e{j1},e{i1}]", i1 = .0 + 1, j1 = .1 + 1)]
    NotAntisymmetric(usize, usize),
    #[error("Jacobi identity fails on (e{i1},e{j1},e{k1})", i1 = .0 + 1, j1 = .1 + 1, k1 = .2 + 1)]
    JacobiFails(usize, usize, usize),
    #[error("subspace is not an ideal")]
    NotAnIdeal,
    #[error("subspace is not a subalgebra")]
    NotASubalgebra,
    #[error("operation requires characteristic 0, got characteristic {0}")]
    WrongCharacteristic(u64),
    #[error("element is not ad-nilpotent")]
    NotAdNilpotent,
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("group order {order} exceeds the enumeration cap {cap}")]
    OrderCapExceeded { order: u128, cap: u64 },
    #[error("subgroup count exceeds the cap {0}")]
    SubgroupCapExceeded(usize),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("internal verification failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
