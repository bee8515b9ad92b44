use num_complex::Complex64;

use crate::error::{CoreError, Result};
use crate::grid::Grid2D;

/// Real samples of a periodic field on a [`Grid2D`].
#[derive(Debug, Clone, PartialEq)]
pub struct RealField2D {
    grid: Grid2D,
    data: Vec<f64>,
}

impl RealField2D {
    pub fn new(grid: Grid2D, data: Vec<f64>) -> Result<Self> {
        if data.len() != grid.len() {
            return Err(CoreError::ShapeMismatch {
                expected: grid.len(),
                got: data.len(),
            });
        }
        if let Some(index) = data.iter().position(|v| !v.is_finite()) {
            return Err(CoreError::NonFiniteSample { index });
        }
        Ok(Self { grid, data })
    }

    /// Trusted constructor for buffers produced inside the crate.
    pub(crate) fn from_vec_unchecked(grid: Grid2D, data: Vec<f64>) -> Self {
        debug_assert_eq!(data.len(), grid.len());
        Self { grid, data }
    }

    pub fn zeros(grid: Grid2D) -> Self {
        Self {
            grid,
            data: vec![0.0; grid.len()],
        }
    }

    pub fn constant(grid: Grid2D, value: f64) -> Self {
        Self {
            grid,
            data: vec![value; grid.len()],
        }
    }

    /// Samples `f(x1, x2)` at every grid point.
    pub fn from_fn(grid: Grid2D, f: impl Fn(f64, f64) -> f64) -> Self {
        let mut data = Vec::with_capacity(grid.len());
        for i in 0..grid.n1() {
            let x1 = grid.x1(i);
            for j in 0..grid.n2() {
                data.push(f(x1, grid.x2(j)));
            }
        }
        Self { grid, data }
    }

    pub fn grid(&self) -> &Grid2D {
        &self.grid
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<f64> {
        self.data
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.data[self.grid.index(i, j)]
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            grid: self.grid,
            data: self.data.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn scale(&self, factor: f64) -> Self {
        self.map(|v| v * factor)
    }

    pub fn zip_with(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        if !self.grid.same_shape(&other.grid) {
            return Err(CoreError::GridMismatch);
        }
        Ok(Self {
            grid: self.grid,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Pointwise product (no dealiasing).
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a * b)
    }

    /// Multiplies every sample row `j` by `profile[j]`, i.e. by a function of `x2` only.
    pub fn mul_x2_profile(&self, profile: &[f64]) -> Self {
        assert_eq!(profile.len(), self.grid.n2());
        let n2 = self.grid.n2();
        let data = self
            .data
            .iter()
            .enumerate()
            .map(|(idx, &v)| v * profile[idx % n2])
            .collect();
        Self {
            grid: self.grid,
            data,
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// Samples along `x2` at fixed `x1` index.
    pub fn x2_section(&self, i: usize) -> Vec<f64> {
        let n2 = self.grid.n2();
        self.data[i * n2..(i + 1) * n2].to_vec()
    }

    /// Samples along `x1` at fixed `x2` index.
    pub fn x1_section(&self, j: usize) -> Vec<f64> {
        (0..self.grid.n1()).map(|i| self.at(i, j)).collect()
    }
}

/// Fourier coefficients of a real periodic field.
///
/// Convention: `f(x) = sum_xi F(xi) exp(i xi . x)` with `x` the centered
/// grid coordinates, so `F(xi) = (1/N) sum_x f(x) exp(-i xi . x)`. The
/// constant field `1` has `F(0) = 1`, and Parseval reads
/// `int |f|^2 dx = |box| sum |F|^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField2D {
    grid: Grid2D,
    coeffs: Vec<Complex64>,
}

impl SpectralField2D {
    pub fn new(grid: Grid2D, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != grid.len() {
            return Err(CoreError::ShapeMismatch {
                expected: grid.len(),
                got: coeffs.len(),
            });
        }
        Ok(Self { grid, coeffs })
    }

    pub(crate) fn from_vec_unchecked(grid: Grid2D, coeffs: Vec<Complex64>) -> Self {
        debug_assert_eq!(coeffs.len(), grid.len());
        Self { grid, coeffs }
    }

    pub fn zeros(grid: Grid2D) -> Self {
        Self {
            grid,
            coeffs: vec![Complex64::new(0.0, 0.0); grid.len()],
        }
    }

    pub fn grid(&self) -> &Grid2D {
        &self.grid
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Coefficient of the signed modes `(m1, m2)`.
    pub fn mode(&self, m1: i64, m2: i64) -> Complex64 {
        use crate::grid::Axis;
        let i = self.grid.mode_index(Axis::X1, m1);
        let j = self.grid.mode_index(Axis::X2, m2);
        self.coeffs[self.grid.index(i, j)]
    }

    pub fn set_mode(&mut self, m1: i64, m2: i64, value: Complex64) {
        use crate::grid::Axis;
        let i = self.grid.mode_index(Axis::X1, m1);
        let j = self.grid.mode_index(Axis::X2, m2);
        let idx = self.grid.index(i, j);
        self.coeffs[idx] = value;
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            grid: self.grid,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<Self> {
        if !self.grid.same_shape(&other.grid) {
            return Err(CoreError::GridMismatch);
        }
        Ok(Self {
            grid: self.grid,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    /// `sum |F|^2`, the mean square of the represented field.
    pub fn energy_sum(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// `L^2` norm of the represented field by Parseval.
    pub fn l2_norm(&self) -> f64 {
        (self.grid.area() * self.energy_sum()).sqrt()
    }

    /// Spectral inner product `int f g dx` of two real fields.
    pub fn inner(&self, other: &Self) -> Result<f64> {
        if !self.grid.same_shape(&other.grid) {
            return Err(CoreError::GridMismatch);
        }
        let s: f64 = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a * b.conj()).re)
            .sum();
        Ok(self.grid.area() * s)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0_f64, |m, c| m.max(c.norm()))
    }

    /// Largest deviation from `F(-xi) = conj(F(xi))`.
    pub fn hermitian_defect(&self) -> f64 {
        use crate::grid::Axis;
        let g = self.grid;
        let mut worst = 0.0_f64;
        for i in 0..g.n1() {
            let pi = g.partner(Axis::X1, i);
            for j in 0..g.n2() {
                let pj = g.partner(Axis::X2, j);
                let a = self.coeffs[g.index(i, j)];
                let b = self.coeffs[g.index(pi, pj)].conj();
                worst = worst.max((a - b).norm());
            }
        }
        worst
    }

    /// Replaces the coefficients by their Hermitian part
    /// `(F(xi) + conj(F(-xi))) / 2`.
    pub fn symmetrize(&mut self) {
        use crate::grid::Axis;
        let g = self.grid;
        let src = self.coeffs.clone();
        for i in 0..g.n1() {
            let pi = g.partner(Axis::X1, i);
            for j in 0..g.n2() {
                let pj = g.partner(Axis::X2, j);
                let idx = g.index(i, j);
                self.coeffs[idx] = 0.5 * (src[idx] + src[g.index(pi, pj)].conj());
            }
        }
    }

    /// Mean (zero mode) coefficient.
    pub fn mean(&self) -> f64 {
        self.coeffs[0].re
    }

    /// Fraction of `sum |F|^2` carried by the `(0, 0)` mode.
    pub fn mean_fraction(&self) -> f64 {
        let total = self.energy_sum();
        if total == 0.0 {
            0.0
        } else {
            self.coeffs[0].norm_sqr() / total
        }
    }

    /// Norm of the part of the field carried by the `xi1 = 0` modes.
    pub fn xi1_zero_l2(&self) -> f64 {
        let n2 = self.grid.n2();
        let s: f64 = self.coeffs[..n2].iter().map(|c| c.norm_sqr()).sum();
        (self.grid.area() * s).sqrt()
    }
}

/// Planar velocity `u = (u1, u2)` with both components on one grid.
#[derive(Debug, Clone, PartialEq)]
pub struct VelocityField {
    pub u1: RealField2D,
    pub u2: RealField2D,
}

impl VelocityField {
    pub fn new(u1: RealField2D, u2: RealField2D) -> Result<Self> {
        if !u1.grid().same_shape(u2.grid()) {
            return Err(CoreError::GridMismatch);
        }
        Ok(Self { u1, u2 })
    }

    pub fn zeros(grid: Grid2D) -> Self {
        Self {
            u1: RealField2D::zeros(grid),
            u2: RealField2D::zeros(grid),
        }
    }

    pub fn grid(&self) -> &Grid2D {
        self.u1.grid()
    }

    pub fn l2_norm(&self) -> f64 {
        let a = crate::norms::l2_norm(&self.u1);
        let b = crate::norms::l2_norm(&self.u2);
        (a * a + b * b).sqrt()
    }

    pub fn max_speed(&self) -> f64 {
        self.u1
            .data()
            .iter()
            .zip(self.u2.data())
            .fold(0.0_f64, |m, (a, b)| m.max((a * a + b * b).sqrt()))
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            u1: self.u1.scale(factor),
            u2: self.u2.scale(factor),
        }
    }
}
