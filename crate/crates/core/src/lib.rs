//! Pseudospectral kernels and time integrators for the cubic nonlinear
//! Schrödinger equation `i∂ₜu + Δu + λ|u|²u = 0` on the periodic torus `(0, 2π)^d`.
//!
//! The crate is `no_std` (it needs `alloc`). Discrete Fourier transforms are
//! supplied through the [`SpectralTransform`] trait so that a std companion
//! crate can plug in an FFT library; [`DirectDft`] is a dependency-free
//! fallback that is exact up to roundoff but `O(N^(d+1))`.
//!
//! Module map:
//!
//! * [`grid`], [`field`], [`transform`], [`multiplier`], [`norm`]: the spectral substrate.
//! * [`phi`], [`quadrature`], [`phase`]: the `φ`/`ψ` functions, the averaging
//!   operator `M_τ` and quadrature oracles for the phase approximation they encode.
//! * [`integrators`]: the second-order low-regularity integrator, its
//!   twisted-variable form, and the Lie/Strang/first-order baselines.
#![no_std]
#![warn(missing_docs)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod field;
pub mod grid;
pub mod integrators;
pub mod multiplier;
pub mod norm;
pub mod phase;
pub mod phi;
pub mod quadrature;
pub mod transform;

pub use num_complex::Complex64;

pub use error::Error;
pub use field::{Field, Representation};
pub use grid::Grid;
pub use integrators::{evolve, evolve_observed, Lambda, Method, StepConfig, Stepper};
pub use multiplier::{MultiplierSymbol, SymbolTable};
pub use norm::{hgamma_norm, l2_norm, SobolevWeight};
pub use phi::{phi, psi};
pub use transform::{DirectDft, SpectralTransform};
