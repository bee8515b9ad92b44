use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};

/// Coordinate axis of the periodic box. `X1` carries the fractional
/// dissipation, `X2` is the undamped direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    X1,
    X2,
}

/// Uniform periodic grid on the centered box `[-l1/2, l1/2) x [-l2/2, l2/2)`.
///
/// Samples are stored row-major with the `x2` index running fastest, so
/// sample `(i, j)` lives at `i * n2 + j` and sits at
/// `(-l1/2 + i h1, -l2/2 + j h2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid2D {
    n1: usize,
    n2: usize,
    l1: f64,
    l2: f64,
}

impl Grid2D {
    pub fn new(n1: usize, n2: usize, l1: f64, l2: f64) -> Result<Self> {
        for (n, name) in [(n1, "n1"), (n2, "n2")] {
            if n < 8 || n % 2 != 0 {
                return Err(CoreError::InvalidGrid(format!(
                    "{name} = {n} must be even and at least 8"
                )));
            }
        }
        for (l, name) in [(l1, "l1"), (l2, "l2")] {
            if !(l.is_finite() && l > 0.0) {
                return Err(CoreError::InvalidGrid(format!(
                    "{name} = {l} must be positive and finite"
                )));
            }
        }
        Ok(Self { n1, n2, l1, l2 })
    }

    /// Square `n x n` grid on the `2 pi` torus.
    pub fn periodic_2pi(n: usize) -> Result<Self> {
        Self::new(n, n, 2.0 * PI, 2.0 * PI)
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    pub fn l1(&self) -> f64 {
        self.l1
    }

    pub fn l2(&self) -> f64 {
        self.l2
    }

    pub fn len(&self) -> usize {
        self.n1 * self.n2
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn n(&self, axis: Axis) -> usize {
        match axis {
            Axis::X1 => self.n1,
            Axis::X2 => self.n2,
        }
    }

    pub fn length(&self, axis: Axis) -> f64 {
        match axis {
            Axis::X1 => self.l1,
            Axis::X2 => self.l2,
        }
    }

    pub fn spacing(&self, axis: Axis) -> f64 {
        self.length(axis) / self.n(axis) as f64
    }

    pub fn h1(&self) -> f64 {
        self.spacing(Axis::X1)
    }

    pub fn h2(&self) -> f64 {
        self.spacing(Axis::X2)
    }

    /// Area of the box, the measure every quadrature integrates against.
    pub fn area(&self) -> f64 {
        self.l1 * self.l2
    }

    /// Area element of one grid cell.
    pub fn cell_area(&self) -> f64 {
        self.h1() * self.h2()
    }

    #[inline]
    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.n2 + j
    }

    pub fn coord(&self, axis: Axis, index: usize) -> f64 {
        -0.5 * self.length(axis) + index as f64 * self.spacing(axis)
    }

    pub fn x1(&self, i: usize) -> f64 {
        self.coord(Axis::X1, i)
    }

    pub fn x2(&self, j: usize) -> f64 {
        self.coord(Axis::X2, j)
    }

    /// Signed mode number for a storage index: `m` in `[-n/2, n/2)`.
    #[inline]
    pub fn mode(&self, axis: Axis, index: usize) -> i64 {
        let n = self.n(axis);
        if index < n / 2 {
            index as i64
        } else {
            index as i64 - n as i64
        }
    }

    /// Storage index of a signed mode number (taken modulo `n`).
    pub fn mode_index(&self, axis: Axis, mode: i64) -> usize {
        let n = self.n(axis) as i64;
        mode.rem_euclid(n) as usize
    }

    pub fn is_nyquist(&self, axis: Axis, index: usize) -> bool {
        index == self.n(axis) / 2
    }

    /// Physical wavenumber `2 pi m / l` of a storage index.
    #[inline]
    pub fn wavenumber(&self, axis: Axis, index: usize) -> f64 {
        2.0 * PI * self.mode(axis, index) as f64 / self.length(axis)
    }

    /// Wavenumber used for odd symbols (derivatives, Riesz, Leray). The
    /// Nyquist mode has no Hermitian partner of opposite sign, so its odd
    /// wavenumber is zero.
    #[inline]
    pub fn odd_wavenumber(&self, axis: Axis, index: usize) -> f64 {
        if self.is_nyquist(axis, index) {
            0.0
        } else {
            self.wavenumber(axis, index)
        }
    }

    /// Smallest nonzero wavenumber along an axis.
    pub fn fundamental(&self, axis: Axis) -> f64 {
        2.0 * PI / self.length(axis)
    }

    pub fn wavenumbers(&self, axis: Axis) -> Vec<f64> {
        (0..self.n(axis)).map(|i| self.wavenumber(axis, i)).collect()
    }

    pub fn odd_wavenumbers(&self, axis: Axis) -> Vec<f64> {
        (0..self.n(axis)).map(|i| self.odd_wavenumber(axis, i)).collect()
    }

    pub fn coords(&self, axis: Axis) -> Vec<f64> {
        (0..self.n(axis)).map(|i| self.coord(axis, i)).collect()
    }

    /// Index of the Hermitian partner `-m` of a storage index.
    #[inline]
    pub fn partner(&self, axis: Axis, index: usize) -> usize {
        let n = self.n(axis);
        (n - index) % n
    }

    /// Same box, resolution scaled by an integer factor on both axes.
    pub fn refined(&self, factor: usize) -> Result<Self> {
        Self::new(self.n1 * factor, self.n2 * factor, self.l1, self.l2)
    }

    pub fn same_shape(&self, other: &Grid2D) -> bool {
        self.n1 == other.n1
            && self.n2 == other.n2
            && (self.l1 - other.l1).abs() <= 1e-12 * self.l1
            && (self.l2 - other.l2).abs() <= 1e-12 * self.l2
    }
}
