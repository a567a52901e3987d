//! Error type shared by all core modules.

use alloc::string::String;

/// Errors raised by the core kernels.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Spatial dimension was zero.
    #[error("grid dimension must be at least 1")]
    InvalidDimension,
    /// Points per axis was odd or below two.
    #[error("points per axis must be even and at least 2, got {0}")]
    InvalidResolution(usize),
    /// `N^d` does not fit in memory addressing.
    #[error("grid with N={n}, d={dim} is too large")]
    GridTooLarge {
        /// Points per axis.
        n: usize,
        /// Dimension.
        dim: usize,
    },
    /// A value buffer did not have `N^d` entries.
    #[error("expected {expected} values, got {found}")]
    LengthMismatch {
        /// Required length.
        expected: usize,
        /// Supplied length.
        found: usize,
    },
    /// Two fields or tables live on different grids.
    #[error("grid mismatch")]
    GridMismatch,
    /// Negative Sobolev index.
    #[error("Sobolev index must be non-negative, got {0}")]
    NegativeSobolevIndex(f64),
    /// Step size was zero, negative or non-finite.
    #[error("step size must be positive and finite, got {0}")]
    InvalidStep(f64),
    /// Nonlinearity sign outside {-1, +1}.
    #[error("nonlinearity sign must be +1 or -1, got {0}")]
    InvalidLambda(f64),
    /// Simpson rule needs an odd node count of at least three.
    #[error("quadrature node count must be odd and at least 3, got {0}")]
    InvalidNodeCount(usize),
    /// Method name not recognised.
    #[error("unknown method `{0}` (expected lri2, lri2_twisted, lie, strang or lri1)")]
    UnknownMethod(String),
    /// A non-finite value appeared while time stepping.
    #[error("non-finite value after step {step}")]
    BlowUp {
        /// Index of the step (1-based count of completed steps) that produced it.
        step: usize,
    },
}
