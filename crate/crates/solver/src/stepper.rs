//! Integrating-factor RK4 on the vorticity equation. The horizontal
//! dissipation is integrated exactly; only the advection term is sampled.

use fracns_core::operators::{advection_spectral, biot_savart_spectral, heat_factors};
use fracns_core::{ModelParams, SpectralField2D};

use crate::error::Result;

/// `-(u . grad omega)` with `u` from Biot-Savart, dealiased.
pub fn rhs_nonlinear(omega: &SpectralField2D) -> SpectralField2D {
    let u = biot_savart_spectral(omega).to_physical();
    advection_spectral(&u, omega).scale(-1.0)
}

fn apply_rows(f: &SpectralField2D, fac: &[f64]) -> SpectralField2D {
    let n2 = f.grid().n2();
    let mut out = f.clone();
    for (idx, c) in out.coeffs_mut().iter_mut().enumerate() {
        *c *= fac[idx / n2];
    }
    out
}

/// `a + c b`
fn axpy(a: &SpectralField2D, c: f64, b: &SpectralField2D) -> SpectralField2D {
    let mut out = a.clone();
    for (x, y) in out.coeffs_mut().iter_mut().zip(b.coeffs()) {
        *x += c * y;
    }
    out
}

/// Precomputed semigroup rows for one step size.
#[derive(Debug, Clone)]
pub struct Stepper {
    dt: f64,
    half: Vec<f64>,
    full: Vec<f64>,
}

impl Stepper {
    pub fn new(omega: &SpectralField2D, params: &ModelParams, dt: f64) -> Result<Self> {
        let g = omega.grid();
        Ok(Self {
            dt,
            half: heat_factors(g, params.nu, params.s, 0.5 * dt)?,
            full: heat_factors(g, params.nu, params.s, dt)?,
        })
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn step(&self, omega: &SpectralField2D) -> SpectralField2D {
        let h = self.dt;
        let e_half = |f: &SpectralField2D| apply_rows(f, &self.half);
        let e_full = |f: &SpectralField2D| apply_rows(f, &self.full);

        let k1 = rhs_nonlinear(omega);
        let w_half = e_half(omega);
        let a = e_half(&axpy(omega, 0.5 * h, &k1));
        let k2 = rhs_nonlinear(&a);
        let b = axpy(&w_half, 0.5 * h, &k2);
        let k3 = rhs_nonlinear(&b);
        let c = axpy(&e_full(omega), h, &e_half(&k3));
        let k4 = rhs_nonlinear(&c);

        let mid = e_half(&axpy(&k2, 1.0, &k3));
        let mut out = e_full(omega);
        let ek1 = e_full(&k1);
        for (((o, x1), x2), x4) in out
            .coeffs_mut()
            .iter_mut()
            .zip(ek1.coeffs())
            .zip(mid.coeffs())
            .zip(k4.coeffs())
        {
            *o += h / 6.0 * (x1 + 2.0 * x2 + x4);
        }
        out
    }
}

/// One step of size `dt`.
pub fn step(omega: &SpectralField2D, params: &ModelParams, dt: f64) -> Result<SpectralField2D> {
    Ok(Stepper::new(omega, params, dt)?.step(omega))
}
