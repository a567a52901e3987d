//! Uniform tensor grids on the torus `(0, 2π)^d`.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::Error;

/// A square collocation grid with `N` points per axis in `d` dimensions.
///
/// Values are stored row-major (axis 0 slowest). Along each axis storage index
/// `j` holds the physical node `2πj/N` and, in spectral representation, the
/// integer wavenumber `j` for `j < N/2` and `j - N` otherwise, so the
/// frequency set is exactly `{-N/2, …, N/2 - 1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Grid {
    dim: usize,
    n: usize,
    total: usize,
}

impl Grid {
    /// Builds a grid. `n` must be even and at least two.
    pub fn new(dim: usize, n: usize) -> Result<Self, Error> {
        if dim == 0 {
            return Err(Error::InvalidDimension);
        }
        if n < 2 || !n.is_multiple_of(2) {
            return Err(Error::InvalidResolution(n));
        }
        let total = u32::try_from(dim)
            .ok()
            .and_then(|d| n.checked_pow(d))
            .ok_or(Error::GridTooLarge { n, dim })?;
        Ok(Self { dim, n, total })
    }

    /// Spatial dimension `d`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Points per axis `N`.
    pub fn n_per_axis(&self) -> usize {
        self.n
    }

    /// Mesh width `2π/N`.
    pub fn spacing(&self) -> f64 {
        2.0 * PI / self.n as f64
    }

    /// `N^d`.
    pub fn total_points(&self) -> usize {
        self.total
    }

    /// Physical coordinate of node `j` along any axis.
    pub fn node(&self, j: usize) -> f64 {
        2.0 * PI * j as f64 / self.n as f64
    }

    /// Wavenumber stored at per-axis index `j`.
    pub fn frequency(&self, j: usize) -> i64 {
        let half = self.n / 2;
        if j < half {
            j as i64
        } else {
            j as i64 - self.n as i64
        }
    }

    /// Per-axis storage index of wavenumber `k`, if it is on the grid.
    pub fn index_of(&self, k: i64) -> Option<usize> {
        let half = (self.n / 2) as i64;
        if k < -half || k >= half {
            None
        } else if k >= 0 {
            Some(k as usize)
        } else {
            Some((k + self.n as i64) as usize)
        }
    }

    /// Splits a flat index into per-axis indices.
    pub fn unflatten(&self, mut flat: usize, out: &mut [usize]) {
        debug_assert_eq!(out.len(), self.dim);
        for slot in out.iter_mut().rev() {
            *slot = flat % self.n;
            flat /= self.n;
        }
    }

    /// Flat index of a multi-index.
    pub fn flatten(&self, idx: &[usize]) -> usize {
        idx.iter().fold(0, |acc, &i| acc * self.n + i)
    }

    /// Wavevector stored at `flat`.
    pub fn wavevector(&self, flat: usize, out: &mut [i64]) {
        debug_assert_eq!(out.len(), self.dim);
        let mut rest = flat;
        for slot in out.iter_mut().rev() {
            *slot = self.frequency(rest % self.n);
            rest /= self.n;
        }
    }

    /// Flat index of a wavevector, if every component is on the grid.
    pub fn flat_index_of(&self, xi: &[i64]) -> Option<usize> {
        if xi.len() != self.dim {
            return None;
        }
        xi.iter()
            .try_fold(0usize, |acc, &k| Some(acc * self.n + self.index_of(k)?))
    }

    /// Physical position of node `flat`.
    pub fn position(&self, flat: usize, out: &mut [f64]) {
        debug_assert_eq!(out.len(), self.dim);
        let mut rest = flat;
        for slot in out.iter_mut().rev() {
            *slot = self.node(rest % self.n);
            rest /= self.n;
        }
    }

    /// Calls `f(flat, ξ)` for every wavevector in storage order.
    pub fn for_each_wavevector(&self, mut f: impl FnMut(usize, &[i64])) {
        let mut xi = alloc::vec![0i64; self.dim];
        for flat in 0..self.total {
            self.wavevector(flat, &mut xi);
            f(flat, &xi);
        }
    }

    /// `|ξ|²` for every stored wavevector.
    pub fn squared_magnitudes(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.total);
        self.for_each_wavevector(|_, xi| out.push(squared_magnitude(xi)));
        out
    }
}

/// `|ξ|²` of an integer wavevector, formed exactly in integers then rounded once.
pub fn squared_magnitude(xi: &[i64]) -> f64 {
    xi.iter().map(|&k| k * k).sum::<i64>() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_128_squared_has_16384_points() {
        let g = Grid::new(2, 128).unwrap();
        assert_eq!(g.total_points(), 16384);
    }

    #[test]
    fn smallest_grid() {
        let g = Grid::new(1, 2).unwrap();
        assert_eq!(g.node(0), 0.0);
        assert_eq!(g.node(1), PI);
        assert_eq!(g.frequency(0), 0);
        assert_eq!(g.frequency(1), -1);
    }

    #[test]
    fn three_dimensional_count() {
        assert_eq!(Grid::new(3, 8).unwrap().total_points(), 512);
    }

    #[test]
    fn rejects_bad_shapes() {
        assert_eq!(Grid::new(1, 7), Err(Error::InvalidResolution(7)));
        assert_eq!(Grid::new(1, 0), Err(Error::InvalidResolution(0)));
        assert_eq!(Grid::new(0, 8), Err(Error::InvalidDimension));
        assert!(matches!(
            Grid::new(64, 1024),
            Err(Error::GridTooLarge { .. })
        ));
    }

    #[test]
    fn frequency_layout_is_bijective() {
        let g = Grid::new(1, 10).unwrap();
        let freqs: Vec<i64> = (0..10).map(|j| g.frequency(j)).collect();
        let mut sorted = freqs.clone();
        sorted.sort();
        assert_eq!(sorted, (-5..5).collect::<Vec<_>>());
        for j in 0..10 {
            assert_eq!(g.index_of(g.frequency(j)), Some(j));
        }
        assert_eq!(g.index_of(5), None);
        assert_eq!(g.index_of(-6), None);
    }

    #[test]
    fn flat_index_roundtrip() {
        let g = Grid::new(3, 4).unwrap();
        let mut xi = [0i64; 3];
        for flat in 0..g.total_points() {
            g.wavevector(flat, &mut xi);
            assert_eq!(g.flat_index_of(&xi), Some(flat));
        }
        let mut idx = [0usize; 3];
        g.unflatten(37, &mut idx);
        assert_eq!(g.flatten(&idx), 37);
    }

    #[test]
    fn squared_magnitude_of_3_minus_4() {
        assert_eq!(squared_magnitude(&[3, -4]), 25.0);
    }
}
