#![allow(dead_code)]

use nls_core::{Complex64, Field, Grid};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::Rng;

/// Grids small enough for the direct DFT.
pub fn small_grid() -> impl Strategy<Value = Grid> {
    prop_oneof![
        (1usize..=5).prop_map(|p| Grid::new(1, 1 << p).unwrap()),
        (1usize..=4).prop_map(|p| Grid::new(2, 1 << p).unwrap()),
        Just(Grid::new(3, 4).unwrap()),
    ]
}

/// Field on `grid` with seeded coefficients decaying like `(1+|ξ|)^{-decay}`.
pub fn seeded_field(grid: Grid, seed: u64, decay: f64) -> Field {
    use rand::SeedableRng;
    let mut rng = StdRng::seed_from_u64(seed);
    random_field(grid, &mut rng, decay)
}

pub fn random_field(grid: Grid, rng: &mut impl Rng, decay: f64) -> Field {
    Field::from_spectral_fn(grid, |xi| {
        let k = (xi.iter().map(|&k| k * k).sum::<i64>() as f64).sqrt();
        let c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        c * (1.0 + k).powf(-decay)
    })
}

pub fn field_strategy() -> impl Strategy<Value = Field> {
    (small_grid(), any::<u64>()).prop_map(|(g, seed)| seeded_field(g, seed, 1.0))
}

/// Relative ℓ² distance between nodal (or coefficient) vectors.
pub fn rel_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    let num: f64 = a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum();
    let den: f64 = b.iter().map(|y| y.norm_sqr()).sum();
    (num / den.max(f64::MIN_POSITIVE)).sqrt()
}
