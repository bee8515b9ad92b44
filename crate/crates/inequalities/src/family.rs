//! Randomized test functions.
//!
//! A draw fixes the continuum function; evaluating it on grids of different
//! resolution or box size samples that same function, so sweeps compare
//! like with like.

use fracns_core::norms::sobolev_norm;
use fracns_core::{inverse_transform, Axis, Grid2D, RealField2D, SpectralField2D};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Result, SuiteError};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Family {
    /// Gaussian coefficients on mode numbers `|m_j| <= band` of whatever box
    /// the field is evaluated on, times an optional `exp(-x2^2 / 2w^2)`.
    Periodic {
        band: i64,
        envelope: Option<f64>,
        zero_mean: bool,
    },
    /// Gaussian coefficients on `band / 4 <= |m1| <= band`, `|m2| <= band`
    /// of a fixed reference box, times Gaussian envelopes in both axes.
    /// The function does not depend on the evaluation box.
    Localized {
        band: i64,
        reference: f64,
        w1: f64,
        w2: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub family: Family,
    modes: Vec<(i64, i64, Complex64)>,
}

fn gaussian(x: f64, w: f64) -> f64 {
    (-0.5 * (x / w).powi(2)).exp()
}

impl Family {
    pub fn name(&self) -> String {
        match *self {
            Family::Periodic { band, envelope, .. } => match envelope {
                Some(w) => format!("periodic(band={band},envelope={w})"),
                None => format!("periodic(band={band})"),
            },
            Family::Localized { band, reference, w1, w2 } => {
                format!("localized(band={band},reference={reference},w1={w1},w2={w2})")
            }
        }
    }

    pub fn draw<R: Rng>(&self, rng: &mut R) -> Sample {
        let (band, lo1) = match *self {
            Family::Periodic { band, .. } => (band, 0),
            Family::Localized { band, .. } => (band, (band / 4).max(1)),
        };
        let mut modes = Vec::new();
        for m1 in -band..=band {
            if m1.abs() < lo1 {
                continue;
            }
            for m2 in -band..=band {
                let a: f64 = StandardNormal.sample(rng);
                let b: f64 = StandardNormal.sample(rng);
                modes.push((m1, m2, Complex64::new(a, b)));
            }
        }
        Sample { family: *self, modes }
    }
}

impl Sample {
    /// Samples the function on `grid`, scaled to unit `H^1` norm there.
    pub fn eval(&self, grid: Grid2D) -> Result<RealField2D> {
        let raw = match self.family {
            Family::Periodic {
                band,
                envelope,
                zero_mean,
            } => {
                if 2 * band >= grid.n1().min(grid.n2()) as i64 {
                    return Err(SuiteError::Config(format!(
                        "band {band} does not fit a {}x{} grid",
                        grid.n1(),
                        grid.n2()
                    )));
                }
                let mut f = SpectralField2D::zeros(grid);
                for &(m1, m2, c) in &self.modes {
                    f.set_mode(m1, m2, c);
                }
                f.symmetrize();
                let mut x = inverse_transform(&f);
                if let Some(w) = envelope {
                    let prof: Vec<f64> = grid.coords(Axis::X2).iter().map(|&y| gaussian(y, w)).collect();
                    x = x.mul_x2_profile(&prof);
                }
                if zero_mean {
                    let mut s = fracns_core::forward_transform(&x);
                    s.set_mode(0, 0, Complex64::new(0.0, 0.0));
                    x = inverse_transform(&s);
                }
                x
            }
            Family::Localized { reference, w1, w2, .. } => {
                let k = 2.0 * std::f64::consts::PI / reference;
                let x1 = grid.coords(Axis::X1);
                let x2 = grid.coords(Axis::X2);
                let mut rows: std::collections::BTreeMap<i64, Vec<Complex64>> = Default::default();
                for &(m1, m2, c) in &self.modes {
                    let row = rows.entry(m1).or_insert_with(|| vec![Complex64::new(0.0, 0.0); x2.len()]);
                    for (r, &y) in row.iter_mut().zip(&x2) {
                        *r += c * Complex64::from_polar(1.0, k * m2 as f64 * y);
                    }
                }
                let mut data = vec![0.0; grid.len()];
                for (i, &x) in x1.iter().enumerate() {
                    let g1 = gaussian(x, w1);
                    for (&m1, row) in &rows {
                        let e = Complex64::from_polar(1.0, k * m1 as f64 * x);
                        for (j, r) in row.iter().enumerate() {
                            data[grid.index(i, j)] += (e * r).re;
                        }
                    }
                    for (j, &y) in x2.iter().enumerate() {
                        data[grid.index(i, j)] *= g1 * gaussian(y, w2);
                    }
                }
                RealField2D::new(grid, data)?
            }
        };
        let n = sobolev_norm(&raw, 1);
        Ok(if n > 0.0 { raw.scale(1.0 / n) } else { raw })
    }
}

/// Seed of sample `index` of case `case` under suite seed `seed`
/// (splitmix64 finalizer over the packed triple).
pub fn sample_seed(seed: u64, case: u64, index: u64) -> u64 {
    let mut z = seed
        .wrapping_add(case.wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add(index.wrapping_mul(0xD1B5_4A32_D192_ED03));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn periodic_samples_agree_across_resolutions() {
        let fam = Family::Periodic {
            band: 4,
            envelope: None,
            zero_mean: true,
        };
        let s = fam.draw(&mut ChaCha8Rng::seed_from_u64(3));
        let a = s.eval(Grid2D::new(16, 16, 5.0, 5.0).unwrap()).unwrap();
        let b = s.eval(Grid2D::new(32, 32, 5.0, 5.0).unwrap()).unwrap();
        // even grid points of the fine grid coincide with the coarse grid
        let mut err: f64 = 0.0;
        for i in 0..16 {
            for j in 0..16 {
                err = err.max((a.at(i, j) - b.at(2 * i, 2 * j)).abs());
            }
        }
        assert!(err < 1e-12, "{err:e}");
    }

    #[test]
    fn localized_samples_do_not_depend_on_the_box() {
        let fam = Family::Localized {
            band: 8,
            reference: 16.0,
            w1: 2.0,
            w2: 2.0,
        };
        let s = fam.draw(&mut ChaCha8Rng::seed_from_u64(5));
        let a = s.eval(Grid2D::new(32, 32, 16.0, 16.0).unwrap()).unwrap();
        let b = s.eval(Grid2D::new(64, 64, 32.0, 32.0).unwrap()).unwrap();
        let ra = a.at(16, 20) / a.at(10, 12);
        let rb = b.at(32, 36) / b.at(26, 28);
        assert!((ra - rb).abs() < 1e-10 * ra.abs().max(1.0));
    }

    #[test]
    fn seeds_are_distinct() {
        let s: std::collections::BTreeSet<u64> =
            (0..4).flat_map(|c| (0..50).map(move |i| sample_seed(7, c, i))).collect();
        assert_eq!(s.len(), 200);
    }
}
