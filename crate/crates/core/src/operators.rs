//! Nonlocal operators: Riesz transforms, inverse Laplacian, Leray
//! projection, Biot-Savart, stream function, pressure, advection and the
//! horizontal fractional heat semigroup.
//!
//! Odd symbols use [`Grid2D::odd_wavenumber`], so the Nyquist rows behave
//! like a discrete field with no derivative there. Even magnitudes use the
//! true wavenumber.

use num_complex::Complex64;

use crate::error::{CoreError, Result};
use crate::field::{RealField2D, SpectralField2D, VelocityField};
use crate::grid::{Axis, Grid2D};
use crate::multiplier::{dealias_two_thirds, partial_derivative, scale_by};
use crate::transform::{forward_transform, inverse_transform};

/// Mean fraction of `sum |F|^2` tolerated by Biot-Savart.
pub const MEAN_FRACTION_LIMIT: f64 = 1e-12;

/// Relative divergence tolerated by operators that require `div u = 0`.
pub const DIVERGENCE_TOLERANCE: f64 = 1e-9;

fn k_sq(g: &Grid2D) -> Vec<f64> {
    let k1 = g.wavenumbers(Axis::X1);
    let k2 = g.wavenumbers(Axis::X2);
    let mut out = Vec::with_capacity(g.len());
    for a in &k1 {
        for b in &k2 {
            out.push(a * a + b * b);
        }
    }
    out
}

/// Riesz transform `R_i = d_i Lambda^{-1}`, symbol `i xi_i / |xi|`, zero on the mean.
pub fn riesz(f: &SpectralField2D, axis: Axis) -> SpectralField2D {
    let g = *f.grid();
    let ksq = k_sq(&g);
    let d = partial_derivative(f, axis, 1);
    scale_by(&d, |i, j| {
        let q = ksq[g.index(i, j)];
        if q == 0.0 {
            0.0
        } else {
            1.0 / q.sqrt()
        }
    })
}

/// `R_a R_b` as one multiplier.
pub fn riesz_product(f: &SpectralField2D, a: Axis, b: Axis) -> SpectralField2D {
    riesz(&riesz(f, a), b)
}

/// `Delta^{-1}`, symbol `-1/|xi|^2`, with the mean zeroed. Logs a warning
/// when a non-negligible mean is discarded.
pub fn inverse_laplacian(f: &SpectralField2D) -> SpectralField2D {
    let frac = f.mean_fraction();
    if frac > MEAN_FRACTION_LIMIT {
        log::warn!("inverse Laplacian discards a mean carrying {frac:e} of the spectral mass");
    }
    inverse_laplacian_quiet(f)
}

fn inverse_laplacian_quiet(f: &SpectralField2D) -> SpectralField2D {
    let g = *f.grid();
    let ksq = k_sq(&g);
    scale_by(f, |i, j| {
        let q = ksq[g.index(i, j)];
        if q == 0.0 {
            0.0
        } else {
            -1.0 / q
        }
    })
}

/// `Delta`, symbol `-|xi|^2`.
pub fn laplacian(f: &SpectralField2D) -> SpectralField2D {
    let g = *f.grid();
    let ksq = k_sq(&g);
    scale_by(f, |i, j| -ksq[g.index(i, j)])
}

/// Spectral velocity pair.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralVelocity {
    pub u1: SpectralField2D,
    pub u2: SpectralField2D,
}

impl SpectralVelocity {
    pub fn from_physical(u: &VelocityField) -> Self {
        Self {
            u1: forward_transform(&u.u1),
            u2: forward_transform(&u.u2),
        }
    }

    pub fn to_physical(&self) -> VelocityField {
        VelocityField {
            u1: inverse_transform(&self.u1),
            u2: inverse_transform(&self.u2),
        }
    }
}

pub fn divergence_spectral(u: &SpectralVelocity) -> SpectralField2D {
    let a = partial_derivative(&u.u1, Axis::X1, 1);
    let b = partial_derivative(&u.u2, Axis::X2, 1);
    a.add(&b).expect("components share a grid")
}

pub fn divergence(u: &VelocityField) -> RealField2D {
    inverse_transform(&divergence_spectral(&SpectralVelocity::from_physical(u)))
}

/// `grad f = (d1 f, d2 f)`.
pub fn gradient_spectral(f: &SpectralField2D) -> SpectralVelocity {
    SpectralVelocity {
        u1: partial_derivative(f, Axis::X1, 1),
        u2: partial_derivative(f, Axis::X2, 1),
    }
}

/// `grad^perp psi = (-d2 psi, d1 psi)`.
pub fn perp_gradient_spectral(psi: &SpectralField2D) -> SpectralVelocity {
    SpectralVelocity {
        u1: partial_derivative(psi, Axis::X2, 1).scale(-1.0),
        u2: partial_derivative(psi, Axis::X1, 1),
    }
}

/// Leray projection `I - grad Delta^{-1} div`, built entirely on the odd
/// wavenumbers so that it is an exact orthogonal projection on the grid.
pub fn leray_spectral(u: &SpectralVelocity) -> SpectralVelocity {
    let g = *u.u1.grid();
    let k1 = g.odd_wavenumbers(Axis::X1);
    let k2 = g.odd_wavenumbers(Axis::X2);
    let mut a = u.u1.clone();
    let mut b = u.u2.clone();
    {
        let (ca, cb) = (a.coeffs_mut(), b.coeffs_mut());
        for i in 0..g.n1() {
            for j in 0..g.n2() {
                let q = k1[i] * k1[i] + k2[j] * k2[j];
                if q == 0.0 {
                    continue;
                }
                let idx = g.index(i, j);
                let dot = ca[idx] * k1[i] + cb[idx] * k2[j];
                ca[idx] -= dot * (k1[i] / q);
                cb[idx] -= dot * (k2[j] / q);
            }
        }
    }
    SpectralVelocity { u1: a, u2: b }
}

pub fn leray_project(u: &VelocityField) -> VelocityField {
    leray_spectral(&SpectralVelocity::from_physical(u)).to_physical()
}

/// Scalar curl `d1 u2 - d2 u1`.
pub fn vorticity_spectral(u: &SpectralVelocity) -> SpectralField2D {
    let a = partial_derivative(&u.u2, Axis::X1, 1);
    let b = partial_derivative(&u.u1, Axis::X2, 1);
    a.sub(&b).expect("components share a grid")
}

pub fn vorticity(u: &VelocityField) -> RealField2D {
    inverse_transform(&vorticity_spectral(&SpectralVelocity::from_physical(u)))
}

/// `u = grad^perp Delta^{-1} omega` without the mean check.
pub fn biot_savart_spectral(omega: &SpectralField2D) -> SpectralVelocity {
    perp_gradient_spectral(&inverse_laplacian_quiet(omega))
}

pub fn check_mean(omega: &SpectralField2D) -> Result<()> {
    let fraction = omega.mean_fraction();
    if fraction > MEAN_FRACTION_LIMIT {
        return Err(CoreError::MeanVorticity {
            fraction,
            limit: MEAN_FRACTION_LIMIT,
        });
    }
    Ok(())
}

pub fn biot_savart(omega: &RealField2D) -> Result<VelocityField> {
    let w = forward_transform(omega);
    check_mean(&w)?;
    Ok(biot_savart_spectral(&w).to_physical())
}

/// Max-abs divergence and the scale it is compared against.
fn divergence_check(u: &SpectralVelocity) -> Result<()> {
    let g = *u.u1.grid();
    let div = inverse_transform(&divergence_spectral(u)).max_abs();
    let kmax = g.wavenumber(Axis::X1, g.n1() / 2 - 1).max(g.wavenumber(Axis::X2, g.n2() / 2 - 1));
    // sum |coeff| bounds max |u| from above
    let mass: f64 = u.u1.coeffs().iter().chain(u.u2.coeffs()).map(|c| c.norm()).sum();
    let scale = mass * kmax;
    if div > DIVERGENCE_TOLERANCE * scale.max(f64::MIN_POSITIVE) {
        return Err(CoreError::NotSolenoidal { divergence: div });
    }
    Ok(())
}

/// `psi = Delta^{-1} curl u`, zero mean.
pub fn stream_function(u: &VelocityField) -> Result<RealField2D> {
    let s = SpectralVelocity::from_physical(u);
    divergence_check(&s)?;
    Ok(inverse_transform(&inverse_laplacian_quiet(&vorticity_spectral(&s))))
}

/// Per-`x1`-index factors `exp(-nu |xi1|^{2s} t)`. For `s = 0` the symbol
/// is `1` everywhere, including `xi1 = 0`.
pub fn heat_factors(grid: &Grid2D, nu: f64, s: f64, t: f64) -> Result<Vec<f64>> {
    if t < 0.0 {
        return Err(CoreError::NegativeTime(t));
    }
    if !(nu.is_finite() && nu >= 0.0 && s.is_finite() && s >= 0.0) {
        return Err(CoreError::InvalidParameter(format!(
            "semigroup needs nu >= 0 and s >= 0, got nu = {nu}, s = {s}"
        )));
    }
    Ok(grid
        .wavenumbers(Axis::X1)
        .into_iter()
        .map(|k| {
            let sym = if k == 0.0 {
                if s == 0.0 {
                    1.0
                } else {
                    0.0
                }
            } else {
                k.abs().powf(2.0 * s)
            };
            (-nu * sym * t).exp()
        })
        .collect())
}

/// Horizontal fractional heat semigroup `exp(-nu t Lambda_1^{2s})`.
pub fn frac_heat_propagate(f: &SpectralField2D, nu: f64, s: f64, t: f64) -> Result<SpectralField2D> {
    let fac = heat_factors(f.grid(), nu, s, t)?;
    Ok(scale_by(f, |i, _| fac[i]))
}

fn product(a: &RealField2D, b: &RealField2D) -> RealField2D {
    a.mul(b).expect("fields share a grid")
}

/// Convective term `u . grad f` in spectral form, dealiased.
pub fn advection_spectral(u: &VelocityField, f: &SpectralField2D) -> SpectralField2D {
    let grad = gradient_spectral(f).to_physical();
    let phys = product(&u.u1, &grad.u1)
        .add(&product(&u.u2, &grad.u2))
        .expect("fields share a grid");
    dealias_two_thirds(&forward_transform(&phys))
}

pub fn nonlinear_advection(u: &VelocityField, f: &RealField2D) -> RealField2D {
    inverse_transform(&advection_spectral(u, &forward_transform(f)))
}

/// Divergence form `div(u f)`, dealiased. Agrees with the convective form
/// for solenoidal, band-limited `u`.
pub fn advection_divergence_form(u: &VelocityField, f: &RealField2D) -> RealField2D {
    let a = forward_transform(&product(&u.u1, f));
    let b = forward_transform(&product(&u.u2, f));
    let d = partial_derivative(&a, Axis::X1, 1)
        .add(&partial_derivative(&b, Axis::X2, 1))
        .expect("fields share a grid");
    inverse_transform(&dealias_two_thirds(&d))
}

/// `(u . grad) u`, each component dealiased.
pub fn velocity_advection_spectral(u: &VelocityField) -> SpectralVelocity {
    SpectralVelocity {
        u1: advection_spectral(u, &forward_transform(&u.u1)),
        u2: advection_spectral(u, &forward_transform(&u.u2)),
    }
}

/// Pressure from `-Delta p = div((u . grad) u)`, zero mean.
pub fn pressure_poisson(u: &VelocityField) -> Result<RealField2D> {
    divergence_check(&SpectralVelocity::from_physical(u))?;
    let n = velocity_advection_spectral(u);
    let div = divergence_spectral(&n);
    Ok(inverse_transform(&inverse_laplacian_quiet(&div).scale(-1.0)))
}

/// Multiplies every coefficient by `i * factor(i, j)`. Only for odd factors.
pub fn multiply_i(f: &SpectralField2D, factor: impl Fn(usize, usize) -> f64) -> SpectralField2D {
    let g = *f.grid();
    let mut out = f.clone();
    let c = out.coeffs_mut();
    for i in 0..g.n1() {
        for j in 0..g.n2() {
            c[g.index(i, j)] *= Complex64::new(0.0, factor(i, j));
        }
    }
    out
}
