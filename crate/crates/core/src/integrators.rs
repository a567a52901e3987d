//! Time integrators for `i∂ₜu + Δu + λ|u|²u = 0`.
//!
//! All steps work on nodal values; nonlinear products are formed pointwise on
//! the collocation grid (no dealiasing) and every Fourier multiplier is applied
//! in spectral space.
//!
//! The second-order low-regularity step is
//!
//! ```text
//! u⁺ = e^{iτΔ}u + iλτ e^{iτΔ}{[φ(-2iτΔ) + ψ(-2iτΔ)]ū · u²}
//!      - iλτ [e^{iτΔ}ψ(-2iτΔ)ū] · (e^{iτΔ}u)² - (τ²/2) e^{iτΔ}[|u|⁴u]
//! ```
//!
//! and [`Method::Lri2Twisted`] evaluates the same scheme through the twisted
//! variable `v = e^{-itΔ}u`, with the propagators at `t_{n-1}, t_n, t_{n+1}`
//! written out explicitly.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_complex::Complex64;

use crate::multiplier::propagator_profile;
use crate::phi::{phi, psi, symbol_argument, SymbolSign};
use crate::{Error, Field, Grid, SpectralTransform};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Integrator selection.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    /// Second-order low-regularity integrator.
    Lri2,
    /// The same scheme in the twisted variable.
    Lri2Twisted,
    /// Lie splitting: nonlinear flow, then linear flow.
    Lie,
    /// Strang splitting: half linear, full nonlinear, half linear.
    Strang,
    /// First-order low-regularity integrator.
    Lri1,
}

impl Method {
    /// Every method, in a fixed order.
    pub const ALL: [Method; 5] = [
        Method::Lri2,
        Method::Lri2Twisted,
        Method::Lie,
        Method::Strang,
        Method::Lri1,
    ];

    /// Identifier used in configs and CSV output.
    pub fn name(self) -> &'static str {
        match self {
            Method::Lri2 => "lri2",
            Method::Lri2Twisted => "lri2_twisted",
            Method::Lie => "lie",
            Method::Strang => "strang",
            Method::Lri1 => "lri1",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::UnknownMethod(s.into()))
    }
}

/// Sign `λ` of the nonlinearity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Lambda {
    /// `λ = +1`.
    Plus,
    /// `λ = -1`.
    Minus,
}

impl Lambda {
    /// `±1.0`.
    pub fn value(self) -> f64 {
        match self {
            Lambda::Plus => 1.0,
            Lambda::Minus => -1.0,
        }
    }
}

impl TryFrom<f64> for Lambda {
    type Error = Error;

    fn try_from(v: f64) -> Result<Self, Error> {
        if v == 1.0 {
            Ok(Lambda::Plus)
        } else if v == -1.0 {
            Ok(Lambda::Minus)
        } else {
            Err(Error::InvalidLambda(v))
        }
    }
}

/// Parameters of a single step.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StepConfig {
    /// Step size `τ > 0`.
    pub tau: f64,
    /// Nonlinearity sign.
    pub lambda: Lambda,
    /// Current time `t_n`; only the twisted form reads it.
    pub t_n: f64,
}

impl StepConfig {
    /// Validates `τ`.
    pub fn new(tau: f64, lambda: Lambda, t_n: f64) -> Result<Self, Error> {
        check_tau(tau)?;
        Ok(Self { tau, lambda, t_n })
    }
}

fn check_tau(tau: f64) -> Result<(), Error> {
    if tau > 0.0 && tau.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidStep(tau))
    }
}

/// Reusable stepping context for a fixed grid, `τ` and `λ`.
///
/// Holds the multiplier tables that do not depend on `t_n` and the scratch
/// buffers, so repeated steps allocate nothing (except the twisted form, which
/// rebuilds its time-dependent tables every step).
pub struct Stepper<T> {
    transform: T,
    grid: Grid,
    tau: f64,
    lambda: f64,
    norm_sq: Vec<f64>,
    propagator: Vec<Complex64>,
    half_propagator: Vec<Complex64>,
    phi: Vec<Complex64>,
    phi_plus_psi: Vec<Complex64>,
    propagated_psi: Vec<Complex64>,
    scratch: [Vec<Complex64>; 3],
}

impl<T: SpectralTransform> Stepper<T> {
    /// Precomputes the tables for `(grid, τ)`.
    pub fn new(transform: T, grid: Grid, tau: f64, lambda: Lambda) -> Result<Self, Error> {
        check_tau(tau)?;
        let norm_sq = grid.squared_magnitudes();
        let table = |f: &dyn Fn(f64) -> Complex64| norm_sq.iter().map(|&k2| f(k2)).collect();
        let arg = |k2| symbol_argument(tau, SymbolSign::Plus, k2);
        let propagator: Vec<Complex64> = table(&|k2| propagator_profile(tau, k2));
        let half_propagator = table(&|k2| propagator_profile(0.5 * tau, k2));
        let phi_t = table(&|k2| phi(arg(k2)));
        let phi_plus_psi = table(&|k2| phi(arg(k2)) + psi(arg(k2)));
        let propagated_psi = table(&|k2| propagator_profile(tau, k2) * psi(arg(k2)));
        let zero = alloc::vec![Complex64::new(0.0, 0.0); grid.total_points()];
        Ok(Self {
            transform,
            grid,
            tau,
            lambda: lambda.value(),
            norm_sq,
            propagator,
            half_propagator,
            phi: phi_t,
            phi_plus_psi,
            propagated_psi,
            scratch: [zero.clone(), zero.clone(), zero],
        })
    }

    /// Grid the stepper was built for.
    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    /// Step size.
    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// Advances nodal values `state` by one step of `method` starting at `t_n`.
    ///
    /// For [`Method::Lri2Twisted`] the state is the twisted variable `v^n`.
    pub fn step(&mut self, method: Method, state: &mut [Complex64], t_n: f64) {
        assert_eq!(
            state.len(),
            self.grid.total_points(),
            "state does not match grid"
        );
        match method {
            Method::Lri2 => self.lri2(state),
            Method::Lri2Twisted => self.lri2_twisted(state, t_n),
            Method::Lie => self.lie(state),
            Method::Strang => self.strang(state),
            Method::Lri1 => self.lri1(state),
        }
    }

    /// `buf ← F⁻¹[m · F buf]`, with `F` normalized by `N^{-d}`.
    fn filter(transform: &T, grid: &Grid, buf: &mut [Complex64], symbol: &[Complex64]) {
        let scale = 1.0 / grid.total_points() as f64;
        transform.forward(grid, buf);
        for (c, m) in buf.iter_mut().zip(symbol) {
            *c *= m * scale;
        }
        transform.inverse(grid, buf);
    }

    fn lri2(&mut self, u: &mut [Complex64]) {
        let (tau, lambda) = (self.tau, self.lambda);
        let [p, q, eu] = &mut self.scratch;
        let scale = 1.0 / self.grid.total_points() as f64;

        // One forward transform of ū feeds both conjugate-factor multipliers.
        for (a, b) in p.iter_mut().zip(u.iter()) {
            *a = b.conj();
        }
        self.transform.forward(&self.grid, p);
        for ((qv, pv), m) in q.iter_mut().zip(p.iter()).zip(&self.propagated_psi) {
            *qv = pv * m * scale;
        }
        for (pv, m) in p.iter_mut().zip(&self.phi_plus_psi) {
            *pv *= m * scale;
        }
        self.transform.inverse(&self.grid, p);
        self.transform.inverse(&self.grid, q);

        eu.copy_from_slice(u);
        Self::filter(&self.transform, &self.grid, eu, &self.propagator);

        let ilt = I * (lambda * tau);
        let half_tau2 = 0.5 * tau * tau;
        for j in 0..u.len() {
            let uj = u[j];
            let m = uj.norm_sqr();
            p[j] = uj + ilt * p[j] * uj * uj - uj * (half_tau2 * m * m);
            q[j] = q[j] * eu[j] * eu[j];
        }
        Self::filter(&self.transform, &self.grid, p, &self.propagator);
        for j in 0..u.len() {
            u[j] = p[j] - ilt * q[j];
        }
    }

    fn lri2_twisted(&mut self, v: &mut [Complex64], t_n: f64) {
        let (tau, lambda) = (self.tau, self.lambda);
        let t_prev = t_n - tau;
        let t_next = t_n + tau;
        let norm_sq = &self.norm_sq;
        let table = |f: &dyn Fn(f64) -> Complex64| -> Vec<Complex64> {
            norm_sq.iter().map(|&k2| f(k2)).collect()
        };
        let arg = |k2| symbol_argument(tau, SymbolSign::Plus, k2);
        // e^{itΔ} ↔ propagator_profile(t, ·); e^{-itΔ} ↔ propagator_profile(-t, ·).
        let forward_n = table(&|k2| propagator_profile(t_n, k2));
        let forward_next = table(&|k2| propagator_profile(t_next, k2));
        let back_n = table(&|k2| propagator_profile(-t_n, k2));
        let back_next = table(&|k2| propagator_profile(-t_next, k2));
        let phi_back_n = table(&|k2| phi(arg(k2)) * propagator_profile(-t_n, k2));
        let psi_back_n = table(&|k2| psi(arg(k2)) * propagator_profile(-t_n, k2));
        let psi_back_prev = table(&|k2| psi(arg(k2)) * propagator_profile(-t_prev, k2));

        let conj: Vec<Complex64> = v.iter().map(|z| z.conj()).collect();
        let filtered = |src: &[Complex64], symbol: &[Complex64]| {
            let mut buf = src.to_vec();
            Self::filter(&self.transform, &self.grid, &mut buf, symbol);
            buf
        };
        let phi_term = filtered(&conj, &phi_back_n);
        let psi_term_n = filtered(&conj, &psi_back_n);
        let psi_term_prev = filtered(&conj, &psi_back_prev);
        let g_n = filtered(v, &forward_n);
        let g_next = filtered(v, &forward_next);

        let ilt = I * (lambda * tau);
        let half_tau2 = 0.5 * tau * tau;
        let mut at_n: Vec<Complex64> = (0..v.len())
            .map(|j| {
                let g = g_n[j];
                let m = g.norm_sqr();
                ilt * phi_term[j] * g * g + ilt * psi_term_n[j] * g * g - g * (half_tau2 * m * m)
            })
            .collect();
        let mut at_next: Vec<Complex64> = (0..v.len())
            .map(|j| -ilt * psi_term_prev[j] * g_next[j] * g_next[j])
            .collect();
        Self::filter(&self.transform, &self.grid, &mut at_n, &back_n);
        Self::filter(&self.transform, &self.grid, &mut at_next, &back_next);
        for j in 0..v.len() {
            v[j] += at_n[j] + at_next[j];
        }
    }

    fn lri1(&mut self, u: &mut [Complex64]) {
        let ilt = I * (self.lambda * self.tau);
        let [p, _, _] = &mut self.scratch;
        for (a, b) in p.iter_mut().zip(u.iter()) {
            *a = b.conj();
        }
        Self::filter(&self.transform, &self.grid, p, &self.phi);
        for (uj, pj) in u.iter_mut().zip(p.iter()) {
            *uj += ilt * *pj * *uj * *uj;
        }
        Self::filter(&self.transform, &self.grid, u, &self.propagator);
    }

    fn nonlinear_flow(&self, u: &mut [Complex64], dt: f64) {
        let k = self.lambda * dt;
        for v in u.iter_mut() {
            *v *= Complex64::from_polar(1.0, k * v.norm_sqr());
        }
    }

    fn lie(&mut self, u: &mut [Complex64]) {
        self.nonlinear_flow(u, self.tau);
        Self::filter(&self.transform, &self.grid, u, &self.propagator);
    }

    fn strang(&mut self, u: &mut [Complex64]) {
        Self::filter(&self.transform, &self.grid, u, &self.half_propagator);
        self.nonlinear_flow(u, self.tau);
        Self::filter(&self.transform, &self.grid, u, &self.half_propagator);
    }

    /// Applies the free flow `e^{itΔ}` to nodal values.
    pub fn free_flow(&self, u: &mut [Complex64], t: f64) {
        let symbol: Vec<Complex64> = self
            .norm_sq
            .iter()
            .map(|&k2| propagator_profile(t, k2))
            .collect();
        Self::filter(&self.transform, &self.grid, u, &symbol);
    }
}

fn single_step<T: SpectralTransform>(
    method: Method,
    u: &Field,
    cfg: &StepConfig,
    transform: &T,
) -> Field {
    let grid = *u.grid();
    let mut stepper =
        Stepper::new(transform, grid, cfg.tau, cfg.lambda).expect("StepConfig validates τ");
    let mut values = u.clone().to_physical(transform).into_values();
    stepper.step(method, &mut values, cfg.t_n);
    Field::from_values(grid, crate::Representation::Physical, values).expect("grid-sized buffer")
}

/// One step of the second-order low-regularity integrator.
pub fn lri2_step<T: SpectralTransform>(u: &Field, cfg: &StepConfig, transform: &T) -> Field {
    single_step(Method::Lri2, u, cfg, transform)
}

/// `Φⁿ(v)`: one step of the scheme in the twisted variable at `t_n = cfg.t_n`.
pub fn lri2_twisted_step<T: SpectralTransform>(
    v: &Field,
    cfg: &StepConfig,
    transform: &T,
) -> Field {
    single_step(Method::Lri2Twisted, v, cfg, transform)
}

/// One step of the first-order low-regularity integrator
/// `u⁺ = e^{iτΔ}u + iλτ e^{iτΔ}[u² φ(-2iτΔ)ū]`.
pub fn lri1_step<T: SpectralTransform>(u: &Field, cfg: &StepConfig, transform: &T) -> Field {
    single_step(Method::Lri1, u, cfg, transform)
}

/// One Lie splitting step.
pub fn lie_step<T: SpectralTransform>(u: &Field, cfg: &StepConfig, transform: &T) -> Field {
    single_step(Method::Lie, u, cfg, transform)
}

/// One Strang splitting step.
pub fn strang_step<T: SpectralTransform>(u: &Field, cfg: &StepConfig, transform: &T) -> Field {
    single_step(Method::Strang, u, cfg, transform)
}

/// Runs `n_steps` steps of `method` from `u0` and returns `u` at `t = n_steps·τ`
/// in physical representation.
pub fn evolve<T: SpectralTransform>(
    u0: Field,
    method: Method,
    tau: f64,
    n_steps: usize,
    lambda: Lambda,
    transform: &T,
) -> Result<Field, Error> {
    evolve_observed(u0, method, tau, n_steps, lambda, transform, |_, _, _| {})
}

/// [`evolve`] with a callback `observer(n, t_n, uⁿ)` after every step.
///
/// The twisted method is untwisted before each callback, so the observer
/// always sees `u`. Stops with [`Error::BlowUp`] as soon as a non-finite value
/// appears.
pub fn evolve_observed<T: SpectralTransform>(
    u0: Field,
    method: Method,
    tau: f64,
    n_steps: usize,
    lambda: Lambda,
    transform: &T,
    mut observer: impl FnMut(usize, f64, &Field),
) -> Result<Field, Error> {
    check_tau(tau)?;
    let grid = *u0.grid();
    let mut state = u0.to_physical(transform);
    if n_steps == 0 {
        return Ok(state);
    }
    let mut stepper = Stepper::new(transform, grid, tau, lambda)?;
    let twisted = method == Method::Lri2Twisted;
    for n in 0..n_steps {
        let t_n = n as f64 * tau;
        stepper.step(method, state.values_mut(), t_n);
        if !state.is_finite() {
            return Err(Error::BlowUp { step: n + 1 });
        }
        let t_next = (n + 1) as f64 * tau;
        if twisted {
            let mut u = state.clone();
            stepper.free_flow(u.values_mut(), t_next);
            observer(n + 1, t_next, &u);
        } else {
            observer(n + 1, t_next, &state);
        }
    }
    if twisted {
        stepper.free_flow(state.values_mut(), n_steps as f64 * tau);
    }
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{DirectDft, Representation};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn cfg(tau: f64) -> StepConfig {
        StepConfig::new(tau, Lambda::Plus, 0.0).unwrap()
    }

    #[test]
    fn method_names_roundtrip() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>(), Ok(m));
        }
        assert!(matches!(
            "rk4".parse::<Method>(),
            Err(Error::UnknownMethod(_))
        ));
    }

    #[test]
    fn lambda_accepts_only_unit_signs() {
        assert_eq!(Lambda::try_from(1.0), Ok(Lambda::Plus));
        assert_eq!(Lambda::try_from(-1.0), Ok(Lambda::Minus));
        assert_eq!(Lambda::try_from(0.5), Err(Error::InvalidLambda(0.5)));
    }

    #[test]
    fn invalid_tau_rejected() {
        assert_eq!(
            StepConfig::new(0.0, Lambda::Plus, 0.0),
            Err(Error::InvalidStep(0.0))
        );
        let g = Grid::new(1, 4).unwrap();
        assert!(Stepper::new(DirectDft, g, -1.0, Lambda::Plus).is_err());
    }

    #[test]
    fn zero_stays_zero() {
        let g = Grid::new(2, 4).unwrap();
        let z = Field::zeros(g, Representation::Physical);
        for m in Method::ALL {
            let mut s = z.values().to_vec();
            Stepper::new(DirectDft, g, 0.1, Lambda::Plus)
                .unwrap()
                .step(m, &mut s, 0.0);
            assert!(s.iter().all(|v| v.norm() == 0.0), "{m}");
        }
    }

    #[test]
    fn lri2_on_constant() {
        let g = Grid::new(1, 4).unwrap();
        let out = lri2_step(&Field::constant(g, c(1.0, 0.0)), &cfg(0.1), &DirectDft);
        for v in out.values() {
            assert!((v - c(0.995, 0.1)).norm() < 1e-14);
        }
    }

    #[test]
    fn lri1_on_constant() {
        let g = Grid::new(1, 4).unwrap();
        let out = lri1_step(&Field::constant(g, c(1.0, 0.0)), &cfg(0.1), &DirectDft);
        for v in out.values() {
            assert!((v - c(1.0, 0.1)).norm() < 1e-14);
        }
    }

    #[test]
    fn strang_exact_on_constants() {
        let g = Grid::new(2, 4).unwrap();
        let c0 = c(0.6, -0.8) * 1.3;
        for lambda in [Lambda::Plus, Lambda::Minus] {
            let cf = StepConfig::new(0.2, lambda, 0.0).unwrap();
            let out = strang_step(&Field::constant(g, c0), &cf, &DirectDft);
            let exact = c0 * Complex64::from_polar(1.0, lambda.value() * 0.2 * c0.norm_sqr());
            for v in out.values() {
                assert!((v - exact).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn twisted_matches_on_constant_at_origin() {
        let g = Grid::new(1, 4).unwrap();
        let u = Field::constant(g, c(0.4, 0.7));
        let a = lri2_step(&u, &cfg(0.1), &DirectDft);
        let b = lri2_twisted_step(&u, &cfg(0.1), &DirectDft);
        for (x, y) in a.values().iter().zip(b.values()) {
            assert!((x - y).norm() < 1e-15);
        }
    }

    #[test]
    fn zero_steps_is_identity() {
        let g = Grid::new(1, 8).unwrap();
        let u = Field::plane_wave(g, c(1.0, 0.5), &[2]);
        let out = evolve(u.clone(), Method::Lri2, 0.1, 0, Lambda::Plus, &DirectDft).unwrap();
        assert_eq!(out, u);
    }

    #[test]
    fn constant_data_tracks_exact_rotation() {
        let g = Grid::new(1, 4).unwrap();
        let out = evolve(
            Field::constant(g, c(1.0, 0.0)),
            Method::Lri2,
            0.01,
            100,
            Lambda::Plus,
            &DirectDft,
        )
        .unwrap();
        let exact = Complex64::from_polar(1.0, 1.0);
        for v in out.values() {
            assert!((v - exact).norm() < 1e-4);
        }
    }

    #[test]
    fn plane_wave_drift_is_second_order() {
        // The exact solution is stationary; the per-step defect is ≈ τ³/6, so
        // the drift after T = 1 is ≈ τ²/6.
        let g = Grid::new(1, 8).unwrap();
        let u = Field::plane_wave(g, c(1.0, 0.0), &[1]);
        let drift = |tau: f64, n: usize| {
            let out = evolve(u.clone(), Method::Lri2, tau, n, Lambda::Plus, &DirectDft).unwrap();
            out.difference(&u).unwrap().l2_raw() / u.l2_raw()
        };
        let d1 = drift(0.01, 100);
        let d2 = drift(0.005, 200);
        assert!((d1 - 1e-4 / 6.0).abs() < 0.05 * d1, "{d1}");
        assert!((d1 / d2 - 4.0).abs() < 0.1);
    }

    #[test]
    fn observer_sees_every_step() {
        let g = Grid::new(1, 4).unwrap();
        let mut seen = Vec::new();
        evolve_observed(
            Field::constant(g, c(1.0, 0.0)),
            Method::Lri2Twisted,
            0.25,
            4,
            Lambda::Plus,
            &DirectDft,
            |n, t, f| seen.push((n, t, f.values()[0])),
        )
        .unwrap();
        assert_eq!(seen.iter().map(|s| s.0).collect::<Vec<_>>(), [1, 2, 3, 4]);
        assert_eq!(seen[3].1, 1.0);
    }

    #[test]
    fn blow_up_reports_step() {
        let g = Grid::new(1, 4).unwrap();
        let u = Field::constant(g, c(1e80, 0.0));
        let err = evolve(u, Method::Lri2, 0.1, 5, Lambda::Plus, &DirectDft).unwrap_err();
        assert_eq!(err, Error::BlowUp { step: 1 });
    }
}
