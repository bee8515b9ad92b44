#![allow(dead_code)]

use fracns_core::{Axis, Grid2D, RealField2D, SpectralField2D};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Real field with Gaussian coefficients on `|m_j| <= band`, no Nyquist content.
pub fn band_limited(grid: Grid2D, band: i64, zero_mean: bool, seed: u64) -> RealField2D {
    let mut r = rng(seed);
    let mut f = SpectralField2D::zeros(grid);
    for i in 0..grid.n1() {
        for j in 0..grid.n2() {
            let (m1, m2) = (grid.mode(Axis::X1, i), grid.mode(Axis::X2, j));
            if m1.abs() <= band && m2.abs() <= band && 2 * m1.abs() < grid.n1() as i64 && 2 * m2.abs() < grid.n2() as i64 {
                let a: f64 = StandardNormal.sample(&mut r);
                let b: f64 = StandardNormal.sample(&mut r);
                f.set_mode(m1, m2, Complex64::new(a, b));
            }
        }
    }
    if zero_mean {
        f.set_mode(0, 0, Complex64::new(0.0, 0.0));
    }
    f.symmetrize();
    fracns_core::inverse_transform(&f)
}

/// Same, with every `xi1 = 0` mode removed.
pub fn band_limited_no_xi1_zero(grid: Grid2D, band: i64, seed: u64) -> RealField2D {
    let f = fracns_core::forward_transform(&band_limited(grid, band, true, seed));
    fracns_core::inverse_transform(&fracns_core::multiplier::project_out_xi1_zero(&f))
}

pub fn max_diff(a: &RealField2D, b: &RealField2D) -> f64 {
    a.sub(b).unwrap().max_abs()
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}
