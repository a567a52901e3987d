//! Flat `key = value` configuration files for [`ConvergenceSpec`].
//!
//! Keys are the field names of [`ConvergenceSpec`]. Blank lines and lines
//! starting with `#` or `;` are ignored. Missing keys keep their defaults;
//! unknown or repeated keys, sections and unparsable values are errors.
//!
//! ```text
//! d = 2
//! n = 128
//! gamma = 2
//! methods = lri2, lri1
//! taus = 2^-4, 2^-5, 2^-6
//! lambda = -1
//! check_method = none
//! ```

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::PathBuf;

use nls_core::{Lambda, Method, SobolevWeight};

use crate::study::ConvergenceSpec;
use crate::HarnessError;

/// Recognised keys.
pub const KEYS: [&str; 16] = [
    "d",
    "n",
    "gamma",
    "s",
    "eps",
    "methods",
    "taus",
    "t_end",
    "lambda",
    "reference_method",
    "check_method",
    "tau_ref",
    "weight",
    "fit_drop_coarse",
    "fit_drop_fine",
    "cache_dir",
];

fn err<T>(line: usize, msg: impl std::fmt::Display) -> Result<T, HarnessError> {
    Err(HarnessError::Config(format!("line {line}: {msg}")))
}

/// Parses a real, also accepting `2^k`.
fn real(line: usize, v: &str) -> Result<f64, HarnessError> {
    let parsed = match v.split_once('^') {
        Some((base, exp)) => match (base.trim().parse::<f64>(), exp.trim().parse::<i32>()) {
            (Ok(b), Ok(e)) => Some(b.powi(e)),
            _ => None,
        },
        None => v.parse::<f64>().ok(),
    };
    match parsed {
        Some(x) if x.is_finite() => Ok(x),
        _ => err(line, format!("invalid number {v:?}")),
    }
}

fn count(line: usize, v: &str) -> Result<usize, HarnessError> {
    v.parse()
        .or_else(|_| err(line, format!("invalid integer {v:?}")))
}

fn method(line: usize, v: &str) -> Result<Method, HarnessError> {
    v.parse()
        .or_else(|_| err(line, format!("unknown method {v:?}")))
}

fn list<T>(
    line: usize,
    v: &str,
    item: impl Fn(usize, &str) -> Result<T, HarnessError>,
) -> Result<Vec<T>, HarnessError> {
    v.split(',').map(|s| item(line, s.trim())).collect()
}

/// Parses a configuration text.
pub fn parse_config(text: &str) -> Result<ConvergenceSpec, HarnessError> {
    let mut spec = ConvergenceSpec::default();
    let mut seen = HashSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') || l.starts_with(';') {
            continue;
        }
        if l.starts_with('[') {
            return err(line, "sections are not supported");
        }
        let Some((key, value)) = l.split_once('=') else {
            return err(line, format!("expected key = value, got {l:?}"));
        };
        let (key, v) = (key.trim(), value.trim());
        if !KEYS.contains(&key) {
            return err(line, format!("unknown key {key:?}"));
        }
        if !seen.insert(key.to_string()) {
            return err(line, format!("duplicate key {key:?}"));
        }
        match key {
            "d" => spec.d = count(line, v)?,
            "n" => spec.n = count(line, v)?,
            "gamma" => spec.gamma = real(line, v)?,
            "s" => spec.s = Some(real(line, v)?),
            "eps" => spec.eps = real(line, v)?,
            "methods" => spec.methods = list(line, v, method)?,
            "taus" => spec.taus = list(line, v, real)?,
            "t_end" => spec.t_end = real(line, v)?,
            "lambda" => {
                spec.lambda = Lambda::try_from(real(line, v)?)
                    .or_else(|_| err(line, format!("lambda must be 1 or -1, got {v:?}")))?
            }
            "reference_method" => spec.reference_method = method(line, v)?,
            "check_method" => {
                spec.check_method = match v {
                    "none" => None,
                    m => Some(method(line, m)?),
                }
            }
            "tau_ref" => spec.tau_ref = real(line, v)?,
            "weight" => {
                spec.weight = match v {
                    "linear" => SobolevWeight::Linear,
                    "bessel" => SobolevWeight::Bessel,
                    _ => return err(line, format!("weight must be linear or bessel, got {v:?}")),
                }
            }
            "fit_drop_coarse" => spec.fit_drop_coarse = count(line, v)?,
            "fit_drop_fine" => spec.fit_drop_fine = count(line, v)?,
            "cache_dir" => spec.cache_dir = (!v.is_empty()).then(|| PathBuf::from(v)),
            _ => unreachable!("key list and match arms agree"),
        }
    }
    spec.validate()?;
    Ok(spec)
}

/// Renders `spec` in the format read by [`parse_config`].
pub fn render_config(spec: &ConvergenceSpec) -> String {
    let join = |items: Vec<String>| items.join(", ");
    let mut out = String::new();
    let mut kv = |k: &str, v: String| writeln!(out, "{k} = {v}").expect("write to String");
    kv("d", spec.d.to_string());
    kv("n", spec.n.to_string());
    kv("gamma", spec.gamma.to_string());
    if let Some(s) = spec.s {
        kv("s", s.to_string());
    }
    kv("eps", spec.eps.to_string());
    kv(
        "methods",
        join(spec.methods.iter().map(|m| m.to_string()).collect()),
    );
    kv(
        "taus",
        join(spec.taus.iter().map(|t| t.to_string()).collect()),
    );
    kv("t_end", spec.t_end.to_string());
    kv("lambda", spec.lambda.value().to_string());
    kv("reference_method", spec.reference_method.to_string());
    kv(
        "check_method",
        spec.check_method.map_or("none".into(), |m| m.to_string()),
    );
    kv("tau_ref", spec.tau_ref.to_string());
    kv(
        "weight",
        match spec.weight {
            SobolevWeight::Linear => "linear".into(),
            SobolevWeight::Bessel => "bessel".into(),
        },
    );
    kv("fit_drop_coarse", spec.fit_drop_coarse.to_string());
    kv("fit_drop_fine", spec.fit_drop_fine.to_string());
    if let Some(dir) = &spec.cache_dir {
        kv("cache_dir", dir.display().to_string());
    }
    out
}
