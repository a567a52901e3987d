//! The entire functions `φ(z) = (e^z - 1)/z` and `ψ(z) = (e^z - 1 - z e^z)/z²`
//! and their Laplacian multiplier symbols.
//!
//! Near `z = 0` both quotients cancel catastrophically, so below
//! [`SERIES_RADIUS`] they are summed from their Taylor series
//! `φ(z) = Σ z^k/(k+1)!` and `ψ(z) = -Σ (k+1) z^k/(k+2)!`. Above it the
//! closed forms are used with a cancellation-free `e^z - 1`.

use num_complex::Complex64;
use num_traits::Float;

use crate::multiplier::MultiplierSymbol;

/// `|z|` below which the Taylor branch is used.
pub const SERIES_RADIUS: f64 = 1.0;

// 1/(k+1)! for k = 0..SERIES_TERMS; the tail at |z| = 1 is below 1e-20.
const SERIES_TERMS: usize = 20;

const fn phi_coefficients() -> [f64; SERIES_TERMS] {
    let mut c = [0.0; SERIES_TERMS];
    let mut fact = 1.0;
    let mut k = 0;
    while k < SERIES_TERMS {
        fact *= (k + 1) as f64;
        c[k] = 1.0 / fact;
        k += 1;
    }
    c
}

const fn psi_coefficients() -> [f64; SERIES_TERMS] {
    let mut c = [0.0; SERIES_TERMS];
    let mut fact = 1.0;
    let mut k = 0;
    while k < SERIES_TERMS {
        fact *= (k + 2) as f64;
        c[k] = -((k + 1) as f64) / fact;
        k += 1;
    }
    c
}

const PHI_SERIES: [f64; SERIES_TERMS] = phi_coefficients();
const PSI_SERIES: [f64; SERIES_TERMS] = psi_coefficients();

fn horner(coeffs: &[f64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// `e^z - 1` without cancellation for small `|z|`.
pub fn expm1(z: Complex64) -> Complex64 {
    let (x, y) = (z.re, z.im);
    let half = Float::sin(0.5 * y);
    Complex64::new(
        Float::exp_m1(x) * Float::cos(y) - 2.0 * half * half,
        Float::exp(x) * Float::sin(y),
    )
}

/// `φ(z) = (e^z - 1)/z`, `φ(0) = 1`.
pub fn phi(z: Complex64) -> Complex64 {
    if z.norm() < SERIES_RADIUS {
        horner(&PHI_SERIES, z)
    } else {
        expm1(z) / z
    }
}

/// `ψ(z) = (e^z - 1 - z e^z)/z²`, `ψ(0) = -1/2`.
pub fn psi(z: Complex64) -> Complex64 {
    if z.norm() < SERIES_RADIUS {
        horner(&PSI_SERIES, z)
    } else {
        (expm1(z) - z * z.exp()) / (z * z)
    }
}

/// Orientation of a `φ`/`ψ` multiplier.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymbolSign {
    /// `ξ ↦ f(+2iτ|ξ|²)`, i.e. the operator `f(-2iτΔ)`.
    Plus,
    /// `ξ ↦ f(-2iτ|ξ|²)`, i.e. the operator `f(2iτΔ)`.
    Minus,
}

impl SymbolSign {
    fn value(self) -> f64 {
        match self {
            SymbolSign::Plus => 1.0,
            SymbolSign::Minus => -1.0,
        }
    }
}

/// Argument of the `φ`/`ψ` symbols at `|ξ|² = k2`.
pub fn symbol_argument(tau: f64, sign: SymbolSign, k2: f64) -> Complex64 {
    Complex64::new(0.0, sign.value() * 2.0 * tau * k2)
}

/// `ξ ↦ φ(±2iτ|ξ|²)`.
pub fn phi_symbol(tau: f64, sign: SymbolSign) -> MultiplierSymbol {
    MultiplierSymbol::radial(move |k2| phi(symbol_argument(tau, sign, k2)))
}

/// `ξ ↦ ψ(±2iτ|ξ|²)`.
pub fn psi_symbol(tau: f64, sign: SymbolSign) -> MultiplierSymbol {
    MultiplierSymbol::radial(move |k2| psi(symbol_argument(tau, sign, k2)))
}
