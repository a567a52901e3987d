//! Fine-step reference solutions, optionally cross-checked by a second method
//! and cached as snapshots.

use std::fs::{self, File};
use std::io::{BufReader, BufWriter};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};

use nls_core::{evolve, hgamma_norm, Field, Lambda, Method, SobolevWeight, SpectralTransform};

use crate::snapshot::{read_snapshot, write_snapshot};
use crate::HarnessError;

/// How the reference solution is computed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReferencePolicy {
    /// Method for the accepted reference.
    pub method: Method,
    /// Reference step size.
    pub tau_ref: f64,
    /// Independent method run at the same step to validate the reference.
    pub check_method: Option<Method>,
}

/// Number of steps of size `tau` reaching `t_end`, if `tau` divides it.
pub fn step_count(t_end: f64, tau: f64) -> Result<usize, HarnessError> {
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(HarnessError::Config(format!(
            "step size {tau} must be positive"
        )));
    }
    if !(t_end >= 0.0 && t_end.is_finite()) {
        return Err(HarnessError::Config(format!(
            "final time {t_end} must be non-negative"
        )));
    }
    let n = (t_end / tau).round();
    if (n * tau - t_end).abs() > 1e-9 * t_end.max(tau) {
        return Err(HarnessError::Config(format!(
            "step size {tau} does not divide final time {t_end}"
        )));
    }
    Ok(n as usize)
}

/// Everything that determines a cached reference field.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReferenceKey {
    /// Dimension.
    pub d: usize,
    /// Points per axis.
    pub n: usize,
    /// Data regularity exponent.
    pub s: f64,
    /// Data extra decay.
    pub eps: f64,
    /// Final time.
    pub t_end: f64,
    /// Nonlinearity sign.
    pub lambda: Lambda,
    /// Integrator.
    pub method: Method,
    /// Step size.
    pub tau_ref: f64,
}

impl ReferenceKey {
    /// File name inside a cache directory. Reals are encoded by their bit
    /// patterns so distinct keys never collide.
    pub fn file_name(&self) -> String {
        format!(
            "ref_d{}_n{}_s{:016x}_eps{:016x}_t{:016x}_lam{}_{}_tau{:016x}.nlsf",
            self.d,
            self.n,
            self.s.to_bits(),
            self.eps.to_bits(),
            self.t_end.to_bits(),
            if self.lambda == Lambda::Plus {
                "p"
            } else {
                "m"
            },
            self.method,
            self.tau_ref.to_bits(),
        )
    }
}

/// Directory of cached reference snapshots.
#[derive(Clone, Debug)]
pub struct ReferenceCache {
    dir: PathBuf,
}

impl ReferenceCache {
    /// Uses (and creates on first store) `dir`.
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    /// Cache directory.
    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Cached field for `key`, if present.
    pub fn load(&self, key: &ReferenceKey) -> Result<Option<Field>, HarnessError> {
        let path = self.dir.join(key.file_name());
        if !path.exists() {
            return Ok(None);
        }
        let field = read_snapshot(BufReader::new(File::open(path)?))?;
        if field.grid().dim() != key.d || field.grid().n_per_axis() != key.n {
            return Ok(None);
        }
        Ok(Some(field))
    }

    /// Stores `field` under `key`.
    pub fn store<T: SpectralTransform + ?Sized>(
        &self,
        key: &ReferenceKey,
        field: &Field,
        transform: &T,
    ) -> Result<(), HarnessError> {
        fs::create_dir_all(&self.dir)?;
        static WRITES: AtomicUsize = AtomicUsize::new(0);
        let tmp = self.dir.join(format!(
            "{}.tmp{}-{}",
            key.file_name(),
            std::process::id(),
            WRITES.fetch_add(1, Ordering::Relaxed)
        ));
        write_snapshot(BufWriter::new(File::create(&tmp)?), field, transform)?;
        fs::rename(tmp, self.dir.join(key.file_name()))?;
        Ok(())
    }
}

/// Accepted reference and, when requested, the independent check solution.
#[derive(Clone, Debug)]
pub struct Reference {
    /// Solution from the policy method.
    pub field: Field,
    /// Solution from the check method.
    pub check: Option<Field>,
}

impl Reference {
    /// `‖field - check‖_{H^γ}`.
    pub fn disagreement<T: SpectralTransform + ?Sized>(
        &self,
        gamma: f64,
        weight: SobolevWeight,
        transform: &T,
    ) -> Result<Option<f64>, HarnessError> {
        let Some(check) = &self.check else {
            return Ok(None);
        };
        let diff = self.field.difference(check)?;
        Ok(Some(hgamma_norm(&diff, gamma, weight, transform)?))
    }

    /// Fails unless the disagreement is at most `threshold`.
    pub fn validate<T: SpectralTransform + ?Sized>(
        &self,
        threshold: f64,
        gamma: f64,
        weight: SobolevWeight,
        transform: &T,
    ) -> Result<(), HarnessError> {
        match self.disagreement(gamma, weight, transform)? {
            Some(disagreement)
                if disagreement.is_nan() || threshold.is_nan() || disagreement > threshold =>
            {
                Err(HarnessError::CrossValidation {
                    disagreement,
                    threshold,
                })
            }
            _ => Ok(()),
        }
    }
}

/// Data identity used to key the cache.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DataTag {
    /// Regularity exponent.
    pub s: f64,
    /// Extra decay.
    pub eps: f64,
}

fn solve_one<T: SpectralTransform>(
    u0: &Field,
    t_end: f64,
    lambda: Lambda,
    method: Method,
    tau_ref: f64,
    cache: Option<(&ReferenceCache, DataTag)>,
    transform: &T,
) -> Result<Field, HarnessError> {
    let key = cache.map(|(_, tag)| ReferenceKey {
        d: u0.grid().dim(),
        n: u0.grid().n_per_axis(),
        s: tag.s,
        eps: tag.eps,
        t_end,
        lambda,
        method,
        tau_ref,
    });
    if let (Some((c, _)), Some(k)) = (cache, &key) {
        if let Some(f) = c.load(k)? {
            return Ok(f);
        }
    }
    let steps = step_count(t_end, tau_ref)?;
    let field = evolve(u0.clone(), method, tau_ref, steps, lambda, transform)?;
    if let (Some((c, _)), Some(k)) = (cache, &key) {
        c.store(k, &field, transform)?;
    }
    Ok(field)
}

/// Evolves `u0` to `t_end` with the policy method at `τ_ref` (and the check
/// method, when set). Fields are read from / written to `cache` when given.
pub fn reference_solution<T: SpectralTransform + Sync>(
    u0: &Field,
    t_end: f64,
    lambda: Lambda,
    policy: &ReferencePolicy,
    cache: Option<(&ReferenceCache, DataTag)>,
    transform: &T,
) -> Result<Reference, HarnessError> {
    let run = |m| solve_one(u0, t_end, lambda, m, policy.tau_ref, cache, transform);
    let (field, check) = match policy.check_method {
        Some(m) => {
            let (a, b) = rayon::join(|| run(policy.method), || run(m));
            (a?, Some(b?))
        }
        None => (run(policy.method)?, None),
    };
    Ok(Reference { field, check })
}
