//! Experiment harness for the cubic nonlinear Schrödinger equation on the
//! torus: an FFT backend, rough initial data, cached reference solutions,
//! convergence-order studies and the `.nlsf` snapshot format.
//!
//! The numerical schemes live in [`nls_core`], re-exported here.

#![warn(missing_docs)]

pub mod config;
mod error;
pub mod fft;
pub mod format;
pub mod initial;
pub mod oracle;
pub mod reference;
pub mod snapshot;
pub mod study;

pub use error::HarnessError;
pub use fft::RustFft;
pub use nls_core;
