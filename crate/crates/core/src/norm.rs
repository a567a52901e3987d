//! Discrete Sobolev norms.

use core::f64::consts::PI;

use num_traits::Float;

use crate::grid::squared_magnitude;
use crate::{Error, Field, Representation, SpectralTransform};

/// Frequency weight used by [`hgamma_norm`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SobolevWeight {
    /// `(1 + |ξ|²)^{γ/2}`, the symbol of `(1 - Δ)^{γ/2}`.
    Bessel,
    /// `(1 + |ξ|)^γ`, the symbol of `(1 + √(-Δ))^γ`.
    Linear,
}

impl SobolevWeight {
    /// Weight at a frequency with `|ξ|² = k2`.
    pub fn weight(self, gamma: f64, k2: f64) -> f64 {
        match self {
            SobolevWeight::Bessel => Float::powf(1.0 + k2, 0.5 * gamma),
            SobolevWeight::Linear => Float::powf(1.0 + Float::sqrt(k2), gamma),
        }
    }
}

/// `(2π)^{d/2} (Σ_ξ w(ξ)² |f̂(ξ)|²)^{1/2}`.
///
/// With `γ = 0` this is the discrete `L²` norm `((2π/N)^d Σⱼ |f(xⱼ)|²)^{1/2}`.
pub fn hgamma_norm<T: SpectralTransform + ?Sized>(
    f: &Field,
    gamma: f64,
    weight: SobolevWeight,
    transform: &T,
) -> Result<f64, Error> {
    if gamma.is_nan() || gamma < 0.0 {
        return Err(Error::NegativeSobolevIndex(gamma));
    }
    let owned;
    let spectral = if f.representation() == Representation::Spectral {
        f
    } else {
        owned = f.clone().to_spectral(transform);
        &owned
    };
    let grid = spectral.grid();
    let mut sum = 0.0;
    let values = spectral.values();
    grid.for_each_wavevector(|flat, xi| {
        let w = weight.weight(gamma, squared_magnitude(xi));
        sum += w * w * values[flat].norm_sqr();
    });
    Ok(Float::powf(2.0 * PI, 0.5 * grid.dim() as f64) * Float::sqrt(sum))
}

/// Discrete `L²` norm.
pub fn l2_norm<T: SpectralTransform + ?Sized>(f: &Field, transform: &T) -> f64 {
    hgamma_norm(f, 0.0, SobolevWeight::Linear, transform).expect("γ = 0 is valid")
}
