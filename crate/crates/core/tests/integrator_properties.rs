mod common;

use common::{field_strategy, random_field, rel_diff, seeded_field};
use nls_core::integrators::{lri2_step, lri2_twisted_step};
use nls_core::multiplier::{apply_multiplier, free_propagator};
use nls_core::phi::{phi, psi};
use nls_core::{
    evolve, hgamma_norm, l2_norm, Complex64, DirectDft, Field, Grid, Lambda, Method,
    Representation, SobolevWeight, StepConfig, Stepper,
};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const I: Complex64 = Complex64::new(0.0, 1.0);

fn propagate(f: &Field, t: f64) -> Field {
    apply_multiplier(
        &free_propagator(t),
        f.clone(),
        Representation::Physical,
        &DirectDft,
    )
}

/// One twisted step from `t_n`, mapped back to `u`.
fn via_twisted(u: &Field, tau: f64, t_n: f64, lambda: Lambda) -> Field {
    let v = propagate(u, -t_n);
    let cfg = StepConfig::new(tau, lambda, t_n).unwrap();
    propagate(&lri2_twisted_step(&v, &cfg, &DirectDft), t_n + tau)
}

fn physical(f: Field) -> Field {
    f.to_physical(&DirectDft)
}

#[test]
fn twisted_and_untwisted_forms_agree() {
    let mut rng = StdRng::seed_from_u64(0x7a157);
    let grids = [
        Grid::new(1, 16).unwrap(),
        Grid::new(1, 32).unwrap(),
        Grid::new(2, 8).unwrap(),
    ];
    let mut worst = 0.0f64;
    for case in 0..100 {
        let grid = grids[case % grids.len()];
        let u = physical(random_field(grid, &mut rng, 1.5));
        let tau = 2f64.powf(rng.gen_range(-10.0..-1.0));
        let t_n = rng.gen_range(0.0..3.0);
        let lambda = if rng.gen_bool(0.5) {
            Lambda::Plus
        } else {
            Lambda::Minus
        };
        let direct = lri2_step(&u, &StepConfig::new(tau, lambda, t_n).unwrap(), &DirectDft);
        let twisted = via_twisted(&u, tau, t_n, lambda);
        worst = worst.max(rel_diff(twisted.values(), direct.values()));
    }
    assert!(worst <= 1e-11, "worst relative difference {worst:e}");
}

#[test]
fn twisted_evolution_matches_untwisted() {
    let u0 = physical(seeded_field(Grid::new(1, 32).unwrap(), 9, 2.0));
    let a = evolve(u0.clone(), Method::Lri2, 0.05, 40, Lambda::Plus, &DirectDft).unwrap();
    let b = evolve(u0, Method::Lri2Twisted, 0.05, 40, Lambda::Plus, &DirectDft).unwrap();
    assert!(rel_diff(b.values(), a.values()) <= 1e-11);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn twisted_equivalence_property(
        f in field_strategy(),
        tau in 1e-3f64..0.5,
        t_n in 0.0f64..5.0,
    ) {
        let u = physical(f);
        let direct = lri2_step(&u, &StepConfig::new(tau, Lambda::Plus, t_n).unwrap(), &DirectDft);
        let twisted = via_twisted(&u, tau, t_n, Lambda::Plus);
        prop_assert!(rel_diff(twisted.values(), direct.values()) <= 1e-11);
    }

    #[test]
    fn steps_commute_with_phase_rotation(
        f in field_strategy(),
        theta in 0.0f64..6.3,
        tau in 1e-3f64..0.3,
        m in 0usize..Method::ALL.len(),
    ) {
        let method = Method::ALL[m];
        let u = physical(f);
        let rot = Complex64::from_polar(1.0, theta);
        let mut ur = u.clone();
        ur.scale(rot);
        let mut a = evolve(u, method, tau, 2, Lambda::Plus, &DirectDft).unwrap();
        a.scale(rot);
        let b = evolve(ur, method, tau, 2, Lambda::Plus, &DirectDft).unwrap();
        prop_assert!(rel_diff(b.values(), a.values()) <= 1e-12);
    }

    #[test]
    fn splitting_conserves_mass(f in field_strategy(), tau in 1e-3f64..0.3) {
        let u = physical(f);
        let m0 = l2_norm(&u, &DirectDft);
        for method in [Method::Lie, Method::Strang] {
            let m1 = l2_norm(&evolve(u.clone(), method, tau, 3, Lambda::Plus, &DirectDft).unwrap(), &DirectDft);
            prop_assert!((m1 - m0).abs() <= 1e-12 * m0);
        }
    }
}

/// One lri2 step on `c·e^{ik·x}`, computed by hand on the single mode.
fn single_mode_oracle(c: Complex64, k2: f64, tau: f64, lambda: f64) -> Complex64 {
    let z = Complex64::new(0.0, 2.0 * tau * k2);
    let e = |t: f64| Complex64::from_polar(1.0, -t * k2);
    let a = c.norm_sqr();
    e(tau) * c * (1.0 + I * lambda * tau * a * (phi(z) + psi(z)) - 0.5 * tau * tau * a * a)
        - I * lambda * tau * a * c * e(3.0 * tau) * psi(z)
}

#[test]
fn single_mode_oracle_matches() {
    let mut rng = StdRng::seed_from_u64(0x51);
    for case in 0..10 {
        let grid = if case % 2 == 0 {
            Grid::new(1, 32).unwrap()
        } else {
            Grid::new(2, 16).unwrap()
        };
        let k: Vec<i64> = (0..grid.dim()).map(|_| rng.gen_range(-7..=7)).collect();
        let c = Complex64::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
        let tau = rng.gen_range(1e-3..0.5);
        let lambda = if rng.gen_bool(0.5) {
            Lambda::Plus
        } else {
            Lambda::Minus
        };
        let u = Field::plane_wave(grid, c, &k);
        let out = lri2_step(&u, &StepConfig::new(tau, lambda, 0.0).unwrap(), &DirectDft)
            .to_spectral(&DirectDft);
        let k2 = k.iter().map(|&x| (x * x) as f64).sum();
        let want = single_mode_oracle(c, k2, tau, lambda.value());
        let mut xi = vec![0i64; grid.dim()];
        for (flat, v) in out.values().iter().enumerate() {
            grid.wavevector(flat, &mut xi);
            let expected = if xi == k { want } else { Complex64::default() };
            assert!(
                (v - expected).norm() <= 1e-12,
                "case {case}: {v} vs {expected} at {xi:?}"
            );
        }
    }
}

#[test]
fn zero_mode_matches_scalar_recursion() {
    let grid = Grid::new(2, 8).unwrap();
    let c = Complex64::new(0.6, -0.8);
    let tau = 0.1;
    let mut want = c;
    let mut u = Field::constant(grid, c);
    let mut stepper = Stepper::new(DirectDft, grid, tau, Lambda::Plus).unwrap();
    for n in 0..5 {
        want = single_mode_oracle(want, 0.0, tau, 1.0);
        stepper.step(Method::Lri2, u.values_mut(), n as f64 * tau);
    }
    for v in u.values() {
        assert!((v - want).norm() < 1e-14);
    }
}

#[test]
fn local_error_is_third_order() {
    let grid = Grid::new(1, 32).unwrap();
    let u0 = physical(seeded_field(grid, 3, 6.0));
    let gamma = 1.0;
    let mut taus = Vec::new();
    let mut errs = Vec::new();
    for k in 2..=7 {
        let tau = 2f64.powi(-k);
        let one = lri2_step(
            &u0,
            &StepConfig::new(tau, Lambda::Plus, 0.0).unwrap(),
            &DirectDft,
        );
        let exact = evolve(
            u0.clone(),
            Method::Strang,
            tau / 512.0,
            512,
            Lambda::Plus,
            &DirectDft,
        )
        .unwrap();
        let e = hgamma_norm(
            &one.difference(&exact).unwrap(),
            gamma,
            SobolevWeight::Linear,
            &DirectDft,
        )
        .unwrap();
        taus.push(tau.log2());
        errs.push(e.log2());
    }
    let n = taus.len() as f64;
    let (mx, my) = (taus.iter().sum::<f64>() / n, errs.iter().sum::<f64>() / n);
    let slope = taus
        .iter()
        .zip(&errs)
        .map(|(x, y)| (x - mx) * (y - my))
        .sum::<f64>()
        / taus.iter().map(|x| (x - mx).powi(2)).sum::<f64>();
    assert!(slope >= 2.9, "local order {slope}");
}

#[test]
fn constant_data_error_is_second_order() {
    let grid = Grid::new(1, 8).unwrap();
    let exact = Complex64::from_polar(1.0, 1.0);
    let errs: Vec<f64> = (3..=8)
        .map(|k| {
            let steps = 1usize << k;
            let u = evolve(
                Field::constant(grid, Complex64::new(1.0, 0.0)),
                Method::Lri2,
                1.0 / steps as f64,
                steps,
                Lambda::Plus,
                &DirectDft,
            )
            .unwrap();
            (u.values()[0] - exact).norm()
        })
        .collect();
    for w in errs.windows(2) {
        let ratio = w[0] / w[1];
        assert!((3.5..=4.5).contains(&ratio), "ratio {ratio}");
    }
}

#[test]
fn plane_wave_drift_is_second_order() {
    // e^{ix} is an exact solution for λ = 1; the scheme reproduces it only up
    // to its global error, which is about τ²/6 at T = 1.
    let grid = Grid::new(1, 16).unwrap();
    let one = Complex64::new(1.0, 0.0);
    let u0 = Field::plane_wave(grid, one, &[1]);
    let drift = |steps: usize| {
        let u = evolve(
            u0.clone(),
            Method::Lri2,
            1.0 / steps as f64,
            steps,
            Lambda::Plus,
            &DirectDft,
        )
        .unwrap();
        u.values()
            .iter()
            .zip(u0.values())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    };
    let d100 = drift(100);
    assert!((d100 / (1e-4 / 6.0) - 1.0).abs() < 0.05, "{d100:e}");
    let ratio = d100 / drift(200);
    assert!((3.9..=4.1).contains(&ratio), "{ratio}");
}
