//! Composite Simpson quadrature on `[0, τ]`, used as an independent oracle.

use num_complex::Complex64;

use crate::Error;

/// Composite Simpson rule with a fixed, odd number of nodes.
///
/// Doubling the number of panels reduces the error on smooth integrands by
/// about 16×.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadratureRule {
    node_count: usize,
}

impl QuadratureRule {
    /// Default node count for the oracle checks.
    pub const DEFAULT_NODES: usize = 1001;

    /// Simpson rule with `node_count` nodes (odd, ≥ 3).
    pub fn simpson(node_count: usize) -> Result<Self, Error> {
        if node_count < 3 || node_count.is_multiple_of(2) {
            return Err(Error::InvalidNodeCount(node_count));
        }
        Ok(Self { node_count })
    }

    /// Number of nodes.
    pub fn node_count(&self) -> usize {
        self.node_count
    }

    /// `∫₀^τ f(s) ds`.
    pub fn integrate(&self, tau: f64, f: impl Fn(f64) -> Complex64) -> Complex64 {
        let panels = self.node_count - 1;
        let h = tau / panels as f64;
        let mut sum = f(0.0) + f(tau);
        for j in 1..panels {
            let w = if j % 2 == 1 { 4.0 } else { 2.0 };
            sum += f(j as f64 * h) * w;
        }
        sum * (h / 3.0)
    }
}

impl Default for QuadratureRule {
    fn default() -> Self {
        Self {
            node_count: Self::DEFAULT_NODES,
        }
    }
}
