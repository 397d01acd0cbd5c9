//! Exact arithmetic over the Gaussian rationals `Q(i)` and the linear algebra
//! built on it.

mod echelon;
mod lincomb;
mod matrix;
mod rational;
mod scalar;

pub use echelon::{sparse_rank, EchelonBasis};
pub use lincomb::LinComb;
pub use matrix::{Matrix, Rref, Solution};
pub use rational::{binomial, factorial, ParseRationalError, Rational};
pub use scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("rows have differing lengths")]
    Ragged,
}
