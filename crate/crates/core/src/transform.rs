//! Discrete Fourier transform backends.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::Grid;

/// Multidimensional DFT on a [`Grid`], applied in place.
///
/// Both directions are unnormalized: `forward` computes
/// `X[k] = Σⱼ x[j] e^{-2πi j·k/N}` and `inverse` the same sum with `+i`.
/// [`Field`](crate::Field) applies the `1/N^d` factor on the forward side.
///
/// Implementations must be usable from several threads at once, or callers
/// must keep one instance per worker.
pub trait SpectralTransform {
    /// Forward transform along every axis.
    fn forward(&self, grid: &Grid, data: &mut [Complex64]);
    /// Inverse transform along every axis.
    fn inverse(&self, grid: &Grid, data: &mut [Complex64]);
}

impl<T: SpectralTransform + ?Sized> SpectralTransform for &T {
    fn forward(&self, grid: &Grid, data: &mut [Complex64]) {
        (**self).forward(grid, data)
    }
    fn inverse(&self, grid: &Grid, data: &mut [Complex64]) {
        (**self).inverse(grid, data)
    }
}

/// Applies a batched 1D transform along each axis in turn.
///
/// For every axis, lines along that axis are gathered into `scratch` as
/// contiguous chunks of length `N`, `line_batch` transforms all chunks, and the
/// result is scattered back. The last axis is already contiguous and is passed
/// through without copying.
pub fn along_each_axis(
    grid: &Grid,
    data: &mut [Complex64],
    scratch: &mut Vec<Complex64>,
    mut line_batch: impl FnMut(&mut [Complex64]),
) {
    let n = grid.n_per_axis();
    let total = grid.total_points();
    assert_eq!(data.len(), total, "buffer does not match grid");
    let dim = grid.dim();
    for axis in 0..dim {
        if axis + 1 == dim {
            line_batch(data);
            continue;
        }
        let inner = n.pow((dim - 1 - axis) as u32);
        let outer = total / (n * inner);
        scratch.clear();
        scratch.resize(total, Complex64::new(0.0, 0.0));
        for o in 0..outer {
            for k in 0..n {
                let src = &data[(o * n + k) * inner..(o * n + k + 1) * inner];
                for (i, &v) in src.iter().enumerate() {
                    scratch[(o * inner + i) * n + k] = v;
                }
            }
        }
        line_batch(scratch);
        for o in 0..outer {
            for k in 0..n {
                let dst = &mut data[(o * n + k) * inner..(o * n + k + 1) * inner];
                for (i, v) in dst.iter_mut().enumerate() {
                    *v = scratch[(o * inner + i) * n + k];
                }
            }
        }
    }
}

/// Direct (matrix) DFT applied axis by axis.
///
/// `O(N^(d+1))` work with no dependencies beyond `libm`. Twiddles come from a
/// table of the `N` roots of unity, so the result is exact up to roundoff for
/// every even `N`.
#[derive(Clone, Copy, Debug, Default)]
pub struct DirectDft;

impl DirectDft {
    fn run(grid: &Grid, data: &mut [Complex64], sign: f64) {
        let n = grid.n_per_axis();
        let roots: Vec<Complex64> = (0..n)
            .map(|j| Complex64::from_polar(1.0, sign * 2.0 * PI * j as f64 / n as f64))
            .collect();
        let mut line = alloc::vec![Complex64::new(0.0, 0.0); n];
        let mut scratch = Vec::new();
        along_each_axis(grid, data, &mut scratch, |batch| {
            for chunk in batch.chunks_exact_mut(n) {
                for (k, out) in line.iter_mut().enumerate() {
                    *out = chunk
                        .iter()
                        .enumerate()
                        .map(|(j, &x)| x * roots[(j * k) % n])
                        .sum();
                }
                chunk.copy_from_slice(&line);
            }
        });
    }
}

impl SpectralTransform for DirectDft {
    fn forward(&self, grid: &Grid, data: &mut [Complex64]) {
        Self::run(grid, data, -1.0)
    }
    fn inverse(&self, grid: &Grid, data: &mut [Complex64]) {
        Self::run(grid, data, 1.0)
    }
}
