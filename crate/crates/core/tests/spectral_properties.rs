mod common;

use std::f64::consts::PI;

use common::{field_strategy, rel_diff};
use nls_core::multiplier::{apply_multiplier, free_propagator, laplacian_symbol};
use nls_core::{
    hgamma_norm, l2_norm, Complex64, DirectDft, MultiplierSymbol, Representation, SobolevWeight,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn transform_round_trip(f in field_strategy()) {
        let physical = f.clone().to_physical(&DirectDft);
        let back = physical.to_spectral(&DirectDft);
        prop_assert!(rel_diff(back.values(), f.values()) <= 1e-12);
    }

    #[test]
    fn plancherel(f in field_strategy()) {
        let grid = *f.grid();
        let spectral = (2.0 * PI).powf(0.5 * grid.dim() as f64)
            * f.values().iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        let physical = f.clone().to_physical(&DirectDft);
        let cell = (2.0 * PI / grid.n_per_axis() as f64).powi(grid.dim() as i32);
        let nodal = (cell * physical.values().iter().map(|c| c.norm_sqr()).sum::<f64>()).sqrt();
        prop_assert!((spectral - nodal).abs() <= 1e-12 * spectral);
        prop_assert!((l2_norm(&physical, &DirectDft) - spectral).abs() <= 1e-12 * spectral);
    }

    #[test]
    fn multipliers_compose(f in field_strategy(), t in -2.0f64..2.0, a in -1.0f64..1.0) {
        let m1 = free_propagator(t);
        let m2 = MultiplierSymbol::radial(move |k2| Complex64::new(1.0 / (1.0 + k2), a));
        let twice = apply_multiplier(
            &m2,
            apply_multiplier(&m1, f.clone(), Representation::Physical, &DirectDft),
            Representation::Spectral,
            &DirectDft,
        );
        let once = apply_multiplier(&m1.product(m2), f, Representation::Spectral, &DirectDft);
        prop_assert!(rel_diff(twice.values(), once.values()) <= 1e-13);
    }

    #[test]
    fn propagators_form_a_group(f in field_strategy(), s in -3.0f64..3.0, t in -3.0f64..3.0) {
        let two = apply_multiplier(
            &free_propagator(t),
            apply_multiplier(&free_propagator(s), f.clone(), Representation::Spectral, &DirectDft),
            Representation::Spectral,
            &DirectDft,
        );
        let one = apply_multiplier(&free_propagator(s + t), f, Representation::Spectral, &DirectDft);
        prop_assert!(rel_diff(two.values(), one.values()) <= 1e-13);
    }

    #[test]
    fn gamma_zero_norm_is_l2(f in field_strategy()) {
        for w in [SobolevWeight::Linear, SobolevWeight::Bessel] {
            let h0 = hgamma_norm(&f, 0.0, w, &DirectDft).unwrap();
            let l2 = l2_norm(&f, &DirectDft);
            prop_assert!((h0 - l2).abs() <= 1e-14 * l2);
        }
    }

    #[test]
    fn norm_is_monotone_in_gamma(f in field_strategy(), g1 in 0.0f64..3.0, dg in 0.0f64..2.0) {
        for w in [SobolevWeight::Linear, SobolevWeight::Bessel] {
            let lo = hgamma_norm(&f, g1, w, &DirectDft).unwrap();
            let hi = hgamma_norm(&f, g1 + dg, w, &DirectDft).unwrap();
            prop_assert!(lo <= hi * (1.0 + 1e-14));
        }
    }

    #[test]
    fn norm_is_representation_independent(f in field_strategy(), g in 0.0f64..3.0) {
        let a = hgamma_norm(&f, g, SobolevWeight::Linear, &DirectDft).unwrap();
        let b = hgamma_norm(&f.clone().to_physical(&DirectDft), g, SobolevWeight::Linear, &DirectDft)
            .unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * a);
    }
}

#[test]
fn laplacian_acts_on_plane_waves() {
    let grid = nls_core::Grid::new(2, 16).unwrap();
    let f = nls_core::Field::plane_wave(grid, Complex64::new(1.0, 0.0), &[3, -2]);
    let g = apply_multiplier(
        &laplacian_symbol(),
        f.clone(),
        Representation::Physical,
        &DirectDft,
    );
    for (a, b) in g.values().iter().zip(f.values()) {
        assert!((a - b * 13.0).norm() < 1e-12);
    }
}
