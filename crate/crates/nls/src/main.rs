use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use nls::config::parse_config;
use nls::initial::{rough_initial_data, RoughDataSpec};
use nls::nls_core::{evolve_observed, hgamma_norm, l2_norm, Grid, Lambda, Method, SobolevWeight};
use nls::oracle::{oracle_rows, write_oracle_csv};
use nls::reference::step_count;
use nls::snapshot::write_snapshot;
use nls::study::{convergence_study, write_csv};
use nls::{HarnessError, RustFft};

/// Low-regularity integrators for the cubic nonlinear Schrödinger equation.
#[derive(Parser)]
#[command(name = "nls", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve rough initial data with one integrator.
    Run {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        n: usize,
        /// Data regularity exponent.
        #[arg(long)]
        s: f64,
        #[arg(long, default_value_t = 0.0)]
        eps: f64,
        /// Index of the reported Sobolev norm.
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
        #[arg(long, value_parser = parse_method)]
        method: Method,
        #[arg(long)]
        tau: f64,
        #[arg(long, default_value_t = 1.0)]
        t_end: f64,
        /// Sign of the nonlinearity, 1 or -1.
        #[arg(long, allow_negative_numbers = true, value_parser = parse_lambda, default_value = "1")]
        lambda: Lambda,
        /// Write the final state as an .nlsf snapshot.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print step, time, L² and H^γ norms every K steps.
        #[arg(long)]
        observe_every: Option<usize>,
    },
    /// Run a convergence study described by a config file.
    Convergence {
        #[arg(long)]
        config: PathBuf,
        /// Results CSV; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate |R₂(α, β, τ)| over a fixed sweep.
    Oracle {
        #[arg(long)]
        out: PathBuf,
    },
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: nls::nls_core::Error| e.to_string())
}

fn parse_lambda(s: &str) -> Result<Lambda, String> {
    let x: f64 = s.parse().map_err(|_| format!("invalid lambda {s:?}"))?;
    Lambda::try_from(x).map_err(|e| e.to_string())
}

fn output(path: Option<&PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run(cmd: Command) -> Result<i32, HarnessError> {
    let fft = RustFft::new();
    match cmd {
        Command::Run {
            dim,
            n,
            s,
            eps,
            gamma,
            method,
            tau,
            t_end,
            lambda,
            out,
            observe_every,
        } => {
            let grid = Grid::new(dim, n).map_err(|e| HarnessError::Config(e.to_string()))?;
            if !(s >= 0.0 && eps >= 0.0 && gamma >= 0.0) {
                return Err(HarnessError::Config(
                    "s, eps and gamma must be non-negative".into(),
                ));
            }
            let steps = step_count(t_end, tau)?;
            let u0 = rough_initial_data(&RoughDataSpec {
                grid,
                s,
                epsilon: eps,
            });
            let norm =
                |f: &_| hgamma_norm(f, gamma, SobolevWeight::Linear, &fft).unwrap_or(f64::NAN);
            let mut stdout = io::stdout().lock();
            if observe_every.is_some() {
                writeln!(stdout, "step,t,l2,hgamma")?;
                writeln!(stdout, "0,0,{},{}", l2_norm(&u0, &fft), norm(&u0))?;
            }
            let every = observe_every.unwrap_or(0);
            let mut sink_err = None;
            let result = evolve_observed(u0, method, tau, steps, lambda, &fft, |k, t, u| {
                if every > 0 && k % every == 0 {
                    if let Err(e) = writeln!(stdout, "{k},{t},{},{}", l2_norm(u, &fft), norm(u)) {
                        sink_err.get_or_insert(e);
                    }
                }
            });
            if let Some(e) = sink_err {
                return Err(e.into());
            }
            let u = result?;
            eprintln!(
                "{method}: {steps} steps to t={t_end}, l2={:.6e}, hgamma={:.6e}",
                l2_norm(&u, &fft),
                norm(&u)
            );
            if let Some(path) = out {
                write_snapshot(BufWriter::new(File::create(path)?), &u, &fft)?;
            }
            Ok(0)
        }
        Command::Convergence { config, out } => {
            let text = fs::read_to_string(&config).map_err(|e| {
                HarnessError::Config(format!("cannot read {}: {e}", config.display()))
            })?;
            let spec = parse_config(&text)?;
            let report = convergence_study(&spec, &fft)?;
            let mut w = output(out.as_ref())?;
            write_csv(&mut w, &report)?;
            w.flush()?;
            for f in report.fits.iter().filter(|f| !f.blow_ups.is_empty()) {
                eprintln!("{}: blow-up at tau = {:?}", f.method, f.blow_ups);
            }
            Ok(if report.has_blow_up() { 2 } else { 0 })
        }
        Command::Oracle { out } => {
            let mut w = output(Some(&out))?;
            write_oracle_csv(&mut w, &oracle_rows())?;
            w.flush()?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(4),
            };
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
