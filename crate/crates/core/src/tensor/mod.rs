//! Polynomial tensor fields on a coordinate patch.
//!
//! Component conventions: an alternating field stores one polynomial per strictly
//! increasing index tuple, and the full antisymmetric array is recovered by the
//! permutation sign. Wedge products use the determinant convention, so
//! `(dx^1 ∧ dx^2)_{12} = 1` and `(dx^1 ∧ dx^2)_{21} = -1`. Indices are 0-based.

mod alternating;
mod calculus;
mod mixed;
mod transport;

pub use alternating::{Alternating, DifferentialForm, Lower, MultiVectorField, Upper, Variance};
pub use calculus::{exterior_d, interior, lie_derive, lie_derive_form, lie_derive_multivector, schouten, vector_field};
pub use mixed::MixedTensorField;
pub use transport::{pullback_form, pullback_function, pushforward_form, pushforward_mixed, pushforward_multivector};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("variance mismatch")]
    VarianceMismatch,
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("patch dimension mismatch: {left} vs {right}")]
    PatchMismatch { left: usize, right: usize },
    #[error("expected a vector field, found degree {0}")]
    NotVectorField(usize),
    #[error("index {index} out of range for patch dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("chart map has no inverse")]
    NoInverseProvided,
    #[error("degree {degree} exceeds patch dimension {dim}")]
    DegreeOverflow { degree: usize, dim: usize },
}
