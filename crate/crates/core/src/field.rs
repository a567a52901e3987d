//! Complex fields on a grid, in physical or spectral representation.

use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use crate::{Error, Grid, SpectralTransform};

/// Which basis a [`Field`]'s values are expressed in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Representation {
    /// Samples `f(xⱼ)` at the grid nodes.
    Physical,
    /// Fourier coefficients `f̂(ξ) ≈ (2π)^{-d} ∫ e^{-ix·ξ} f(x) dx`, i.e.
    /// `N^{-d} Σⱼ f(xⱼ) e^{-ixⱼ·ξ}`.
    Spectral,
}

/// A complex-valued state on a [`Grid`].
#[derive(Clone, Debug, PartialEq)]
pub struct Field {
    grid: Grid,
    repr: Representation,
    values: Vec<Complex64>,
}

impl Field {
    /// All-zero field.
    pub fn zeros(grid: Grid, repr: Representation) -> Self {
        Self {
            grid,
            repr,
            values: alloc::vec![Complex64::new(0.0, 0.0); grid.total_points()],
        }
    }

    /// Wraps an existing buffer of `N^d` values.
    pub fn from_values(
        grid: Grid,
        repr: Representation,
        values: Vec<Complex64>,
    ) -> Result<Self, Error> {
        if values.len() != grid.total_points() {
            return Err(Error::LengthMismatch {
                expected: grid.total_points(),
                found: values.len(),
            });
        }
        Ok(Self { grid, repr, values })
    }

    /// Samples `f` at every node.
    pub fn from_physical_fn(grid: Grid, mut f: impl FnMut(&[f64]) -> Complex64) -> Self {
        let mut x = alloc::vec![0.0; grid.dim()];
        let values = (0..grid.total_points())
            .map(|flat| {
                grid.position(flat, &mut x);
                f(&x)
            })
            .collect();
        Self {
            grid,
            repr: Representation::Physical,
            values,
        }
    }

    /// Sets the coefficient of every grid wavevector to `f(ξ)`.
    pub fn from_spectral_fn(grid: Grid, mut f: impl FnMut(&[i64]) -> Complex64) -> Self {
        let mut values = Vec::with_capacity(grid.total_points());
        grid.for_each_wavevector(|_, xi| values.push(f(xi)));
        Self {
            grid,
            repr: Representation::Spectral,
            values,
        }
    }

    /// The constant field `c`.
    pub fn constant(grid: Grid, c: Complex64) -> Self {
        Self {
            grid,
            repr: Representation::Physical,
            values: alloc::vec![c; grid.total_points()],
        }
    }

    /// The plane wave `c·e^{ik·x}`. `k` must lie on the grid's frequency set.
    pub fn plane_wave(grid: Grid, c: Complex64, k: &[i64]) -> Self {
        assert_eq!(k.len(), grid.dim());
        Self::from_physical_fn(grid, |x| {
            let phase: f64 = x.iter().zip(k).map(|(xa, &ka)| xa * ka as f64).sum();
            c * Complex64::from_polar(1.0, phase)
        })
    }

    /// Underlying grid.
    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    /// Current representation.
    pub fn representation(&self) -> Representation {
        self.repr
    }

    /// Raw values in row-major order.
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Mutable raw values.
    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    /// Consumes the field, returning its buffer.
    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    /// Converts to Fourier coefficients. A spectral field is returned as is.
    pub fn to_spectral<T: SpectralTransform + ?Sized>(mut self, transform: &T) -> Self {
        if self.repr == Representation::Physical {
            transform.forward(&self.grid, &mut self.values);
            let scale = 1.0 / self.grid.total_points() as f64;
            for v in &mut self.values {
                *v *= scale;
            }
            self.repr = Representation::Spectral;
        }
        self
    }

    /// Converts to nodal samples. A physical field is returned as is.
    pub fn to_physical<T: SpectralTransform + ?Sized>(mut self, transform: &T) -> Self {
        if self.repr == Representation::Spectral {
            transform.inverse(&self.grid, &mut self.values);
            self.repr = Representation::Physical;
        }
        self
    }

    /// Converts to `repr`.
    pub fn into_representation<T: SpectralTransform + ?Sized>(
        self,
        repr: Representation,
        transform: &T,
    ) -> Self {
        match repr {
            Representation::Physical => self.to_physical(transform),
            Representation::Spectral => self.to_spectral(transform),
        }
    }

    /// Fourier coefficient at `ξ` (spectral fields only; `None` off-grid).
    pub fn coefficient(&self, xi: &[i64]) -> Option<Complex64> {
        assert_eq!(self.repr, Representation::Spectral);
        self.grid.flat_index_of(xi).map(|i| self.values[i])
    }

    /// Euclidean norm of the raw value vector.
    pub fn l2_raw(&self) -> f64 {
        Float::sqrt(self.values.iter().map(|v| v.norm_sqr()).sum::<f64>())
    }

    /// `self - other`, elementwise. Both fields must share grid and representation.
    pub fn difference(&self, other: &Field) -> Result<Field, Error> {
        if self.grid != other.grid || self.repr != other.repr {
            return Err(Error::GridMismatch);
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Field {
            grid: self.grid,
            repr: self.repr,
            values,
        })
    }

    /// Multiplies every value by `c`.
    pub fn scale(&mut self, c: Complex64) {
        for v in &mut self.values {
            *v *= c;
        }
    }

    /// True when every value is finite.
    pub fn is_finite(&self) -> bool {
        self.values
            .iter()
            .all(|v| v.re.is_finite() && v.im.is_finite())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DirectDft;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn constant_maps_to_zero_mode() {
        let g = Grid::new(1, 4).unwrap();
        let f = Field::constant(g, c(1.0, 0.0)).to_spectral(&DirectDft);
        assert!((f.coefficient(&[0]).unwrap() - 1.0).norm() < 1e-15);
        for k in [-2, -1, 1] {
            assert!(f.coefficient(&[k]).unwrap().norm() < 1e-15);
        }
    }

    #[test]
    fn pure_mode_maps_to_single_coefficient() {
        let g = Grid::new(1, 4).unwrap();
        let f = Field::plane_wave(g, c(1.0, 0.0), &[1]).to_spectral(&DirectDft);
        assert!((f.coefficient(&[1]).unwrap() - 1.0).norm() < 1e-15);
        for k in [-2, -1, 0] {
            assert!(f.coefficient(&[k]).unwrap().norm() < 1e-15);
        }
    }

    #[test]
    fn length_is_checked() {
        let g = Grid::new(1, 4).unwrap();
        let err = Field::from_values(g, Representation::Physical, alloc::vec![c(0.0, 0.0); 3]);
        assert_eq!(
            err,
            Err(Error::LengthMismatch {
                expected: 4,
                found: 3
            })
        );
    }

    #[test]
    fn conversions_are_idempotent() {
        let g = Grid::new(2, 4).unwrap();
        let f = Field::plane_wave(g, c(0.5, 2.0), &[1, -2]);
        let s = f.clone().to_spectral(&DirectDft);
        assert_eq!(s.clone().to_spectral(&DirectDft), s);
        assert_eq!(f.clone().to_physical(&DirectDft), f);
    }
}
