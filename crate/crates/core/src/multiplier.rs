//! Fourier multipliers: operators that act diagonally on Fourier coefficients.

use alloc::boxed::Box;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::grid::squared_magnitude;
use crate::{Error, Field, Grid, Representation, SpectralTransform};

type Evaluator = dyn Fn(&[i64]) -> Complex64 + Send + Sync;

/// A symbol `m: Z^d → C`, acting on `e^{iξ·x}` as multiplication by `m(ξ)`.
pub struct MultiplierSymbol {
    eval: Box<Evaluator>,
}

impl core::fmt::Debug for MultiplierSymbol {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str("MultiplierSymbol(..)")
    }
}

impl MultiplierSymbol {
    /// Wraps an arbitrary evaluator.
    pub fn new(eval: impl Fn(&[i64]) -> Complex64 + Send + Sync + 'static) -> Self {
        Self {
            eval: Box::new(eval),
        }
    }

    /// A symbol depending on `ξ` only through `|ξ|²`.
    pub fn radial(profile: impl Fn(f64) -> Complex64 + Send + Sync + 'static) -> Self {
        Self::new(move |xi| profile(squared_magnitude(xi)))
    }

    /// `m ≡ 1`.
    pub fn identity() -> Self {
        Self::new(|_| Complex64::new(1.0, 0.0))
    }

    /// `m(ξ)`.
    pub fn eval(&self, xi: &[i64]) -> Complex64 {
        (self.eval)(xi)
    }

    /// Pointwise product `self(ξ)·other(ξ)`, i.e. operator composition.
    pub fn product(self, other: MultiplierSymbol) -> Self {
        Self::new(move |xi| (self.eval)(xi) * (other.eval)(xi))
    }

    /// Evaluates the symbol on every wavevector of `grid`.
    pub fn tabulate(&self, grid: &Grid) -> SymbolTable {
        let mut values = Vec::with_capacity(grid.total_points());
        grid.for_each_wavevector(|_, xi| values.push(self.eval(xi)));
        SymbolTable {
            grid: *grid,
            values,
        }
    }
}

/// A symbol precomputed on a grid's frequency set, in storage order.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolTable {
    grid: Grid,
    values: Vec<Complex64>,
}

impl SymbolTable {
    /// Tabulates `profile(|ξ|²)` from a precomputed `|ξ|²` list.
    pub fn from_squared_magnitudes(
        grid: &Grid,
        norm_sq: &[f64],
        profile: impl Fn(f64) -> Complex64,
    ) -> Self {
        assert_eq!(norm_sq.len(), grid.total_points());
        Self {
            grid: *grid,
            values: norm_sq.iter().map(|&k2| profile(k2)).collect(),
        }
    }

    /// Grid the table was built on.
    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    /// Table entries in storage order.
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Pointwise product of two tables on the same grid.
    pub fn product(&self, other: &SymbolTable) -> Result<SymbolTable, Error> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        Ok(SymbolTable {
            grid: self.grid,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a * b)
                .collect(),
        })
    }

    /// Multiplies spectral coefficients in place, with an extra real factor.
    pub fn apply_scaled(&self, coeffs: &mut [Complex64], scale: f64) {
        for (c, m) in coeffs.iter_mut().zip(&self.values) {
            *c *= m * scale;
        }
    }

    /// Applies the table to a field, returning it in `out` representation.
    pub fn apply<T: SpectralTransform + ?Sized>(
        &self,
        f: Field,
        out: Representation,
        transform: &T,
    ) -> Result<Field, Error> {
        if *f.grid() != self.grid {
            return Err(Error::GridMismatch);
        }
        let mut s = f.to_spectral(transform);
        self.apply_scaled(s.values_mut(), 1.0);
        Ok(s.into_representation(out, transform))
    }
}

/// Applies `m` to `f` through spectral space; the result is returned in `out`.
pub fn apply_multiplier<T: SpectralTransform + ?Sized>(
    m: &MultiplierSymbol,
    f: Field,
    out: Representation,
    transform: &T,
) -> Field {
    let grid = *f.grid();
    let mut s = f.to_spectral(transform);
    let mut xi = alloc::vec![0i64; grid.dim()];
    for (flat, c) in s.values_mut().iter_mut().enumerate() {
        grid.wavevector(flat, &mut xi);
        *c *= m.eval(&xi);
    }
    s.into_representation(out, transform)
}

/// `|ξ|²`, the symbol of `-Δ`.
pub fn laplacian_symbol() -> MultiplierSymbol {
    MultiplierSymbol::radial(|k2| Complex64::new(k2, 0.0))
}

/// Symbol of the free Schrödinger group `e^{itΔ}`: `ξ ↦ e^{-it|ξ|²}`.
pub fn free_propagator(t: f64) -> MultiplierSymbol {
    MultiplierSymbol::radial(move |k2| propagator_profile(t, k2))
}

/// `e^{-it·k2}`.
pub fn propagator_profile(t: f64, k2: f64) -> Complex64 {
    Complex64::from_polar(1.0, -t * k2)
}
