//! Scalar form of the phase approximation behind the integrator.
//!
//! The cubic phase `φ₃ = α + β` is split into a part `α = 2|ξ₁|²` whose time
//! integral acts pointwise, and a mixed part `β`. The approximation
//!
//! ```text
//! e^{is(α+β)} ≈ e^{isα} + iβ e^{isβ} M_τ(e^{iα·}),   M_τ(g) = (1/τ)∫₀^τ σ g(σ) dσ
//! ```
//!
//! integrates in closed form to `τφ(iτα) - τ(e^{iτβ} - 1)ψ(iτα)` and misses
//! `∫₀^τ e^{is(α+β)} ds` by a remainder of size `O(τ³β²)`. The functions here
//! evaluate each side both by quadrature and in closed form so the identity and
//! the remainder scaling can be checked numerically.

use num_complex::Complex64;

use crate::phi::{phi, psi};
use crate::quadrature::QuadratureRule;
use crate::Error;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `(α, β, τ)` for one frequency interaction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhasePair {
    /// Pointwise-integrable phase.
    pub alpha: f64,
    /// Mixed phase.
    pub beta: f64,
    /// Step size.
    pub tau: f64,
}

impl PhasePair {
    /// Validates `τ > 0`.
    pub fn new(alpha: f64, beta: f64, tau: f64) -> Result<Self, Error> {
        if !(tau > 0.0 && tau.is_finite()) {
            return Err(Error::InvalidStep(tau));
        }
        Ok(Self { alpha, beta, tau })
    }

    /// `α = 2|ξ₁|²`, `β = 2(ξ₁·ξ₂ + ξ₁·ξ₃ + ξ₂·ξ₃)` for the interaction
    /// `ξ = ξ₁ + ξ₂ + ξ₃`, where `ξ₁` is the frequency of the conjugated factor.
    pub fn from_frequencies(
        xi1: &[i64],
        xi2: &[i64],
        xi3: &[i64],
        tau: f64,
    ) -> Result<Self, Error> {
        let alpha = 2 * dot(xi1, xi1);
        let beta = 2 * (dot(xi1, xi2) + dot(xi1, xi3) + dot(xi2, xi3));
        Self::new(alpha as f64, beta as f64, tau)
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `φ₃ = |ξ|² + |ξ₁|² - |ξ₂|² - |ξ₃|²` with `ξ = ξ₁ + ξ₂ + ξ₃`.
pub fn cubic_phase(xi1: &[i64], xi2: &[i64], xi3: &[i64]) -> i64 {
    let xi: alloc::vec::Vec<i64> = xi1
        .iter()
        .zip(xi2)
        .zip(xi3)
        .map(|((a, b), c)| a + b + c)
        .collect();
    dot(&xi, &xi) + dot(xi1, xi1) - dot(xi2, xi2) - dot(xi3, xi3)
}

/// `∫₀^τ e^{isα} ds = τφ(iτα)`.
pub fn exponential_integral(alpha: f64, tau: f64) -> Complex64 {
    phi(Complex64::new(0.0, tau * alpha)) * tau
}

/// Closed form `M_τ(e^{iα·}) = -τψ(iτα)`.
pub fn mtau_closed(alpha: f64, tau: f64) -> Complex64 {
    -psi(Complex64::new(0.0, tau * alpha)) * tau
}

/// `M_τ(e^{iα·}) = (1/τ)∫₀^τ σ e^{iσα} dσ` by quadrature.
pub fn mtau_quadrature(alpha: f64, tau: f64, rule: &QuadratureRule) -> Complex64 {
    rule.integrate(tau, |s| Complex64::from_polar(s, s * alpha)) / tau
}

/// `∫₀^τ (e^{isα} + iβ e^{isβ} M_τ(e^{iα·})) ds`, every integral by quadrature.
pub fn approximation_by_quadrature(pp: &PhasePair, rule: &QuadratureRule) -> Complex64 {
    let m = mtau_quadrature(pp.alpha, pp.tau, rule);
    rule.integrate(pp.tau, |s| {
        Complex64::from_polar(1.0, s * pp.alpha)
            + I * pp.beta * Complex64::from_polar(1.0, s * pp.beta) * m
    })
}

/// `τφ(iτα) - τ(e^{iτβ} - 1)ψ(iτα)`.
pub fn approximation_closed_form(pp: &PhasePair) -> Complex64 {
    let z = Complex64::new(0.0, pp.tau * pp.alpha);
    let e = crate::phi::expm1(Complex64::new(0.0, pp.tau * pp.beta));
    (phi(z) - e * psi(z)) * pp.tau
}

/// `R₂ = ∫₀^τ e^{is(α+β)} ds - [τφ(iτα) - τ(e^{iτβ} - 1)ψ(iτα)]`.
pub fn r2_residual(pp: &PhasePair) -> Complex64 {
    exponential_integral(pp.alpha + pp.beta, pp.tau) - approximation_closed_form(pp)
}
