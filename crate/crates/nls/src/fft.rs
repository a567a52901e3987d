//! [`SpectralTransform`] backed by `rustfft`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use nls_core::transform::along_each_axis;
use nls_core::{Grid, SpectralTransform};
use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

type PlanPair = (Arc<dyn Fft<f64>>, Arc<dyn Fft<f64>>);

/// FFT backend with a plan cache keyed by line length.
///
/// Plans are shared; scratch space is allocated per call, so one instance can
/// serve several threads.
#[derive(Default)]
pub struct RustFft {
    plans: Mutex<HashMap<usize, PlanPair>>,
}

impl RustFft {
    /// Empty plan cache.
    pub fn new() -> Self {
        Self::default()
    }

    fn plans(&self, n: usize) -> PlanPair {
        let mut cache = self.plans.lock().expect("plan cache poisoned");
        cache
            .entry(n)
            .or_insert_with(|| {
                let mut planner = FftPlanner::new();
                (planner.plan_fft_forward(n), planner.plan_fft_inverse(n))
            })
            .clone()
    }

    fn run(&self, grid: &Grid, data: &mut [Complex64], forward: bool) {
        let (fwd, inv) = self.plans(grid.n_per_axis());
        let plan = if forward { fwd } else { inv };
        let mut fft_scratch = vec![Complex64::new(0.0, 0.0); plan.get_inplace_scratch_len()];
        let mut gather = Vec::new();
        along_each_axis(grid, data, &mut gather, |batch| {
            plan.process_with_scratch(batch, &mut fft_scratch)
        });
    }
}

impl SpectralTransform for RustFft {
    fn forward(&self, grid: &Grid, data: &mut [Complex64]) {
        self.run(grid, data, true)
    }

    fn inverse(&self, grid: &Grid, data: &mut [Complex64]) {
        self.run(grid, data, false)
    }
}
