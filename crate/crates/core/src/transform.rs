//! Forward and inverse transforms between grid samples and Fourier
//! coefficients. Plans come from a per-thread `FftPlanner`, which caches
//! them by length.

use std::cell::RefCell;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::field::{RealField2D, SpectralField2D};
use crate::grid::Grid2D;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn plans(n: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| {
        let mut p = p.borrow_mut();
        if inverse {
            p.plan_fft_inverse(n)
        } else {
            p.plan_fft_forward(n)
        }
    })
}

/// Unnormalized 2D FFT of a row-major `n1 x n2` buffer, in place.
fn fft2_in_place(grid: &Grid2D, buf: &mut [Complex64], inverse: bool) {
    let (n1, n2) = (grid.n1(), grid.n2());

    // rows (x2 direction) are contiguous
    let row = plans(n2, inverse);
    row.process(buf);

    // columns via transpose
    let col = plans(n1, inverse);
    let mut t = vec![Complex64::new(0.0, 0.0); n1 * n2];
    for i in 0..n1 {
        for j in 0..n2 {
            t[j * n1 + i] = buf[i * n2 + j];
        }
    }
    col.process(&mut t);
    for j in 0..n2 {
        for i in 0..n1 {
            buf[i * n2 + j] = t[j * n1 + i];
        }
    }
}

/// `(-1)^(i+j)`: phase of `exp(-i xi . x0)` for the box corner `x0 = (-l1/2, -l2/2)`.
#[inline]
fn corner_sign(i: usize, j: usize) -> f64 {
    if (i + j) % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Fourier coefficients of real samples.
pub fn forward_transform(f: &RealField2D) -> SpectralField2D {
    let grid = *f.grid();
    let mut buf: Vec<Complex64> = f.data().iter().map(|&v| Complex64::new(v, 0.0)).collect();
    fft2_in_place(&grid, &mut buf, false);
    let norm = 1.0 / grid.len() as f64;
    let n2 = grid.n2();
    for (idx, c) in buf.iter_mut().enumerate() {
        *c *= norm * corner_sign(idx / n2, idx % n2);
    }
    SpectralField2D::from_vec_unchecked(grid, buf)
}

/// Real samples of a coefficient array. Any anti-Hermitian part of the
/// coefficients is discarded with the imaginary part of the samples.
pub fn inverse_transform(f: &SpectralField2D) -> RealField2D {
    let grid = *f.grid();
    let n2 = grid.n2();
    let mut buf: Vec<Complex64> = f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(idx, &c)| c * corner_sign(idx / n2, idx % n2))
        .collect();
    fft2_in_place(&grid, &mut buf, true);
    RealField2D::from_vec_unchecked(grid, buf.into_iter().map(|c| c.re).collect())
}

/// Unnormalized 1D transform helper used for sections.
pub fn forward_transform_1d(samples: &[f64]) -> Vec<Complex64> {
    let n = samples.len();
    let mut buf: Vec<Complex64> = samples.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    plans(n, false).process(&mut buf);
    let norm = 1.0 / n as f64;
    for (k, c) in buf.iter_mut().enumerate() {
        *c *= if k % 2 == 0 { norm } else { -norm };
    }
    buf
}

pub fn inverse_transform_1d(coeffs: &[Complex64]) -> Vec<f64> {
    let mut buf: Vec<Complex64> = coeffs
        .iter()
        .enumerate()
        .map(|(k, &c)| if k % 2 == 0 { c } else { -c })
        .collect();
    plans(coeffs.len(), true).process(&mut buf);
    buf.into_iter().map(|c| c.re).collect()
}
