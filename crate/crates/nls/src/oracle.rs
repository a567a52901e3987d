//! Deterministic sweep of the second-order phase remainder `R₂(α, β, τ)`.

use std::io::{self, Write};

use nls_core::phase::{r2_residual, PhasePair};

use crate::format::sci12;

/// Sample `(α, β)` pairs, covering `α = 0`, mixed signs and large phases.
pub const PAIRS: [(f64, f64); 8] = [
    (0.0, 1.0),
    (0.0, -3.0),
    (2.0, 1.0),
    (7.0, 2.0),
    (-5.5, 0.5),
    (12.0, -4.0),
    (-1.0, 10.0),
    (30.0, 0.25),
];

/// Step sizes `2^{-3} … 2^{-10}`.
pub fn oracle_taus() -> Vec<f64> {
    (3..=10).map(|k| 2f64.powi(-k)).collect()
}

/// One `(α, β, τ, |R₂|)` record.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleRow {
    /// Phase of the isolated factor.
    pub alpha: f64,
    /// Remaining phase.
    pub beta: f64,
    /// Step size.
    pub tau: f64,
    /// `|R₂|`.
    pub abs_r2: f64,
}

/// Every pair of [`PAIRS`] against every step of [`oracle_taus`].
pub fn oracle_rows() -> Vec<OracleRow> {
    let taus = oracle_taus();
    PAIRS
        .iter()
        .flat_map(|&(alpha, beta)| {
            taus.iter().map(move |&tau| {
                let pp = PhasePair::new(alpha, beta, tau).expect("positive step");
                OracleRow {
                    alpha,
                    beta,
                    tau,
                    abs_r2: r2_residual(&pp).norm(),
                }
            })
        })
        .collect()
}

/// Writes `alpha,beta,tau,abs_r2` rows.
pub fn write_oracle_csv<W: Write>(mut w: W, rows: &[OracleRow]) -> io::Result<()> {
    writeln!(w, "alpha,beta,tau,abs_r2")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{}",
            sci12(r.alpha),
            sci12(r.beta),
            sci12(r.tau),
            sci12(r.abs_r2)
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn remainders_are_bounded_by_tau_cubed_beta_squared() {
        let rows = oracle_rows();
        assert_eq!(rows.len(), PAIRS.len() * 8);
        for r in rows {
            assert!(r.abs_r2 <= r.tau.powi(3) * r.beta * r.beta, "{r:?}");
        }
    }
}
