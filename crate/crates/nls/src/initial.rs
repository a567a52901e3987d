//! Deterministic rough initial data.

use nls_core::{Field, Grid};
use num_complex::Complex64;

/// Coefficients `(1 + |ξ|)^{-1/2 - s - ε}(1 + i)` on the grid's frequency set.
///
/// The exponent does not depend on the dimension: in 1D the series sits at
/// the edge of `H^s`, in 2D at the edge of `H^{s-1/2}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RoughDataSpec {
    /// Grid to sample on.
    pub grid: Grid,
    /// Regularity exponent.
    pub s: f64,
    /// Extra decay.
    pub epsilon: f64,
}

impl RoughDataSpec {
    /// Spec with `ε = 0`.
    pub fn new(grid: Grid, s: f64) -> Self {
        Self {
            grid,
            s,
            epsilon: 0.0,
        }
    }

    /// Coefficient at `ξ`.
    pub fn coefficient(&self, xi: &[i64]) -> Complex64 {
        let norm = (xi.iter().map(|&k| k * k).sum::<i64>() as f64).sqrt();
        let exponent = -0.5 - self.s - self.epsilon;
        Complex64::new(1.0, 1.0) * (1.0 + norm).powf(exponent)
    }
}

/// Spectral field with the coefficients of [`RoughDataSpec`].
pub fn rough_initial_data(spec: &RoughDataSpec) -> Field {
    Field::from_spectral_fn(spec.grid, |xi| spec.coefficient(xi))
}
