//! Convergence-order studies: error at `T` against a fine reference over a
//! sweep of step sizes, and least-squares order fits.

use std::io::{self, Write};
use std::path::PathBuf;
use std::time::Instant;

use nls_core::{evolve, hgamma_norm, Error, Field, Grid, Lambda, Method, SobolevWeight};
use rayon::prelude::*;

use crate::fft::RustFft;
use crate::format::sci12;
use crate::initial::{rough_initial_data, RoughDataSpec};
use crate::reference::{reference_solution, step_count, DataTag, ReferenceCache, ReferencePolicy};
use crate::HarnessError;

/// Description of one convergence experiment.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceSpec {
    /// Spatial dimension.
    pub d: usize,
    /// Grid points per axis.
    pub n: usize,
    /// Index of the error norm.
    pub gamma: f64,
    /// Data regularity exponent; `gamma + 2` when unset.
    pub s: Option<f64>,
    /// Extra decay of the data.
    pub eps: f64,
    /// Integrators to measure.
    pub methods: Vec<Method>,
    /// Step sizes, each dividing `t_end`.
    pub taus: Vec<f64>,
    /// Final time.
    pub t_end: f64,
    /// Nonlinearity sign.
    pub lambda: Lambda,
    /// Method for the reference solution.
    pub reference_method: Method,
    /// Second method validating the reference; `None` disables the check.
    pub check_method: Option<Method>,
    /// Reference step size.
    pub tau_ref: f64,
    /// Weight of the error norm.
    pub weight: SobolevWeight,
    /// Number of largest step sizes left out of the fit.
    pub fit_drop_coarse: usize,
    /// Number of smallest step sizes left out of the fit.
    pub fit_drop_fine: usize,
    /// Where reference snapshots are cached.
    pub cache_dir: Option<PathBuf>,
}

impl Default for ConvergenceSpec {
    fn default() -> Self {
        Self {
            d: 2,
            n: 128,
            gamma: 2.0,
            s: None,
            eps: 0.0,
            methods: vec![Method::Lri2],
            taus: dyadic_taus(4, 10),
            t_end: 1.0,
            lambda: Lambda::Plus,
            reference_method: Method::Lri2,
            check_method: Some(Method::Strang),
            tau_ref: 2f64.powi(-14),
            weight: SobolevWeight::Linear,
            fit_drop_coarse: 1,
            fit_drop_fine: 1,
            cache_dir: None,
        }
    }
}

/// `2^{-from}, 2^{-from-1}, …, 2^{-to}`.
pub fn dyadic_taus(from: i32, to: i32) -> Vec<f64> {
    (from..=to).map(|k| 2f64.powi(-k)).collect()
}

impl ConvergenceSpec {
    /// Data regularity actually used.
    pub fn data_s(&self) -> f64 {
        self.s.unwrap_or(self.gamma + 2.0)
    }

    /// Checks the spec invariants.
    pub fn validate(&self) -> Result<(), HarnessError> {
        let bad = |m: String| Err(HarnessError::Config(m));
        Grid::new(self.d, self.n).map_err(|e| HarnessError::Config(e.to_string()))?;
        if self.gamma.is_nan() || self.gamma < 0.0 {
            return bad(format!("gamma must be non-negative, got {}", self.gamma));
        }
        if self.data_s().is_nan() || self.data_s() < 0.0 {
            return bad(format!("s must be non-negative, got {}", self.data_s()));
        }
        if self.eps.is_nan() || self.eps < 0.0 {
            return bad(format!("eps must be non-negative, got {}", self.eps));
        }
        if self.methods.is_empty() {
            return bad("methods must not be empty".into());
        }
        if self.taus.is_empty() {
            return bad("taus must not be empty".into());
        }
        if self.t_end.is_nan() || self.t_end <= 0.0 {
            return bad(format!("t_end must be positive, got {}", self.t_end));
        }
        for &tau in self.taus.iter().chain([&self.tau_ref]) {
            step_count(self.t_end, tau)?;
        }
        let min_tau = self.taus.iter().copied().fold(f64::INFINITY, f64::min);
        if self.tau_ref > min_tau / 8.0 {
            return bad(format!(
                "tau_ref {} must be at most min(taus)/8 = {}",
                self.tau_ref,
                min_tau / 8.0
            ));
        }
        if self.check_method == Some(self.reference_method) {
            return bad("check_method must differ from reference_method".into());
        }
        Ok(())
    }
}

/// One measured (method, τ) pair.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceRow {
    /// Integrator.
    pub method: Method,
    /// Dimension.
    pub d: usize,
    /// Points per axis.
    pub n: usize,
    /// Norm index.
    pub gamma: f64,
    /// Step size.
    pub tau: f64,
    /// `‖u_ref(T) - u^n‖_{H^γ}`; NaN when the run blew up.
    pub error: f64,
    /// Time spent in the run.
    pub wall_time_seconds: f64,
}

impl ConvergenceRow {
    /// Whether the run blew up.
    pub fn is_blow_up(&self) -> bool {
        self.error.is_nan()
    }
}

/// Fitted order of one method.
#[derive(Clone, Debug, PartialEq)]
pub struct MethodFit {
    /// Integrator.
    pub method: Method,
    /// Slope over the fit window; `None` when too few usable rows remain.
    pub slope: Option<f64>,
    /// Step sizes whose runs blew up.
    pub blow_ups: Vec<f64>,
}

/// Result of [`convergence_study`].
#[derive(Clone, Debug, PartialEq)]
pub struct StudyReport {
    /// Rows ordered by method (spec order), then by τ (spec order).
    pub rows: Vec<ConvergenceRow>,
    /// One fit per method, in spec order.
    pub fits: Vec<MethodFit>,
    /// Reference disagreement, when the check ran.
    pub reference_disagreement: Option<f64>,
}

impl StudyReport {
    /// Fit for `method`.
    pub fn fit(&self, method: Method) -> Option<&MethodFit> {
        self.fits.iter().find(|f| f.method == method)
    }

    /// Whether any run blew up.
    pub fn has_blow_up(&self) -> bool {
        self.rows.iter().any(ConvergenceRow::is_blow_up)
    }
}

/// Least-squares slope of `log error` against `log τ`.
///
/// Rows with non-finite or non-positive errors are ignored; at least three
/// usable rows with distinct step sizes are required.
pub fn fit_order(rows: &[ConvergenceRow]) -> Result<f64, HarnessError> {
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.error.is_finite() && r.error > 0.0 && r.tau > 0.0)
        .map(|r| (r.tau.log2(), r.error.log2()))
        .collect();
    let mut xs: Vec<f64> = pts.iter().map(|p| p.0).collect();
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    if xs.len() < 3 || xs.len() != pts.len() {
        return Err(HarnessError::InsufficientData(xs.len().min(pts.len())));
    }
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    Ok(sxy / sxx)
}

/// Rows of a single method inside the fit window: sorted by decreasing τ,
/// with `drop_coarse` leading and `drop_fine` trailing entries removed.
pub fn fit_window(
    rows: &[ConvergenceRow],
    drop_coarse: usize,
    drop_fine: usize,
) -> Vec<ConvergenceRow> {
    let mut sorted = rows.to_vec();
    sorted.sort_by(|a, b| b.tau.total_cmp(&a.tau));
    let end = sorted.len().saturating_sub(drop_fine);
    sorted.into_iter().take(end).skip(drop_coarse).collect()
}

/// 1% of the smallest error measured at the largest step size that has any
/// finite measurement. NaN (so validation fails) when every run blew up.
pub fn validation_threshold(rows: &[ConvergenceRow]) -> f64 {
    let finite = || rows.iter().filter(|r| r.error.is_finite());
    let Some(coarsest) = finite().map(|r| r.tau).reduce(f64::max) else {
        return f64::NAN;
    };
    0.01 * finite()
        .filter(|r| r.tau == coarsest)
        .map(|r| r.error)
        .fold(f64::INFINITY, f64::min)
}

/// Initial data of the study, in physical representation.
pub fn study_initial_data(spec: &ConvergenceSpec, transform: &RustFft) -> Result<Field, Error> {
    let grid = Grid::new(spec.d, spec.n)?;
    let data = RoughDataSpec {
        grid,
        s: spec.data_s(),
        epsilon: spec.eps,
    };
    Ok(rough_initial_data(&data).to_physical(transform))
}

/// Runs the study. Blow-ups of individual runs are recorded as NaN rows and
/// excluded from the fits; a blow-up of the reference aborts the study.
pub fn convergence_study(
    spec: &ConvergenceSpec,
    transform: &RustFft,
) -> Result<StudyReport, HarnessError> {
    spec.validate()?;
    let u0 = study_initial_data(spec, transform)?;
    let policy = ReferencePolicy {
        method: spec.reference_method,
        tau_ref: spec.tau_ref,
        check_method: spec.check_method,
    };
    let cache = spec.cache_dir.as_ref().map(ReferenceCache::new);
    let tag = DataTag {
        s: spec.data_s(),
        eps: spec.eps,
    };

    let jobs: Vec<(Method, f64)> = spec
        .methods
        .iter()
        .flat_map(|&m| spec.taus.iter().map(move |&t| (m, t)))
        .collect();

    let (reference, runs) = rayon::join(
        || {
            reference_solution(
                &u0,
                spec.t_end,
                spec.lambda,
                &policy,
                cache.as_ref().map(|c| (c, tag)),
                transform,
            )
        },
        || {
            jobs.par_iter()
                .map(|&(method, tau)| {
                    let steps = step_count(spec.t_end, tau)?;
                    let start = Instant::now();
                    let out = evolve(u0.clone(), method, tau, steps, spec.lambda, transform);
                    let elapsed = start.elapsed().as_secs_f64();
                    match out {
                        Ok(f) => Ok((Some(f), elapsed)),
                        Err(Error::BlowUp { .. }) => Ok((None, elapsed)),
                        Err(e) => Err(HarnessError::from(e)),
                    }
                })
                .collect::<Result<Vec<_>, HarnessError>>()
        },
    );
    let reference = reference?;
    let runs = runs?;

    let mut rows = Vec::with_capacity(jobs.len());
    for (&(method, tau), (field, wall)) in jobs.iter().zip(runs) {
        let error = match field {
            Some(f) => hgamma_norm(
                &reference.field.difference(&f)?,
                spec.gamma,
                spec.weight,
                transform,
            )?,
            None => f64::NAN,
        };
        rows.push(ConvergenceRow {
            method,
            d: spec.d,
            n: spec.n,
            gamma: spec.gamma,
            tau,
            error,
            wall_time_seconds: wall,
        });
    }

    let reference_disagreement = reference.disagreement(spec.gamma, spec.weight, transform)?;
    if reference_disagreement.is_some() {
        reference.validate(
            validation_threshold(&rows),
            spec.gamma,
            spec.weight,
            transform,
        )?;
    }

    let fits = spec
        .methods
        .iter()
        .map(|&method| {
            let own: Vec<ConvergenceRow> = rows
                .iter()
                .filter(|r| r.method == method)
                .cloned()
                .collect();
            let window = fit_window(&own, spec.fit_drop_coarse, spec.fit_drop_fine);
            MethodFit {
                method,
                slope: fit_order(&window).ok(),
                blow_ups: own
                    .iter()
                    .filter(|r| r.is_blow_up())
                    .map(|r| r.tau)
                    .collect(),
            }
        })
        .collect();

    Ok(StudyReport {
        rows,
        fits,
        reference_disagreement,
    })
}

/// CSV header of the results file.
pub const CSV_HEADER: &str = "method,d,N,gamma,tau,error,wall_time_seconds";

/// Writes rows and slope comment lines.
pub fn write_csv<W: Write>(mut w: W, report: &StudyReport) -> io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for r in &report.rows {
        writeln!(
            w,
            "{},{},{},{},{},{},{}",
            r.method,
            r.d,
            r.n,
            sci12(r.gamma),
            sci12(r.tau),
            sci12(r.error),
            sci12(r.wall_time_seconds)
        )?;
    }
    for f in &report.fits {
        match f.slope {
            Some(s) => writeln!(w, "# slope(method={})={s:.3}", f.method)?,
            None => writeln!(w, "# slope(method={})=nan", f.method)?,
        }
    }
    Ok(())
}
