use std::io;

use crate::snapshot::SnapshotError;

/// Failures of the experiment harness and CLI.
#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    /// Error from the numerical core (including blow-up during a run).
    #[error(transparent)]
    Core(#[from] nls_core::Error),
    /// The two reference solutions disagree by more than the allowed threshold.
    #[error("reference cross-validation failed: disagreement {disagreement:.3e} exceeds threshold {threshold:.3e}")]
    CrossValidation {
        /// `‖u_ref - u_check‖_{H^γ}`.
        disagreement: f64,
        /// 1% of the coarsest measured error.
        threshold: f64,
    },
    /// Malformed or inconsistent configuration.
    #[error("config error: {0}")]
    Config(String),
    /// Not enough usable rows for an order fit.
    #[error("order fit needs at least 3 usable rows with distinct step sizes, got {0}")]
    InsufficientData(usize),
    /// Snapshot decoding failed.
    #[error(transparent)]
    Snapshot(#[from] SnapshotError),
    /// Filesystem or stream failure.
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl HarnessError {
    /// Process exit code for the CLI.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Core(nls_core::Error::BlowUp { .. }) => 2,
            HarnessError::CrossValidation { .. } => 3,
            HarnessError::Config(_) => 4,
            _ => 1,
        }
    }
}
