//! Per-time norm battery.

use fracns_core::multiplier::partial_derivative;
use fracns_core::norms::{neg_horizontal_sobolev_norm_spectral, sobolev_norm_spectral};
use fracns_core::operators::biot_savart_spectral;
use fracns_core::weights::weighted_l2;
use fracns_core::{inverse_transform, Axis, Grid2D, ModelParams, SpectralField2D};
use serde::{Deserialize, Serialize};

use crate::error::Result;

/// Column order of every record, CSV file and report.
pub const KEYS: [&str; 14] = [
    "l2_u1", "l2_u2", "l2_p1u1", "l2_p2u1", "l2_p1u2", "hk_u", "neg_hk_u", "diss", "w_u", "w_p1u",
    "w_p2u1", "w_u2", "w_p1u2", "diss_hk",
];

pub fn key_index(key: &str) -> Option<usize> {
    KEYS.iter().position(|k| *k == key)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticsRecord {
    pub t: f64,
    /// Values in [`KEYS`] order.
    pub values: Vec<f64>,
}

impl DiagnosticsRecord {
    pub fn get(&self, key: &str) -> Option<f64> {
        key_index(key).map(|i| self.values[i])
    }

    /// `||u||^2` from the two component norms.
    pub fn energy(&self) -> f64 {
        self.values[0].powi(2) + self.values[1].powi(2)
    }
}

/// Per-mode factors acting on `|omega_hat|^2`, so energy-type integrals
/// need no transforms.
#[derive(Debug, Clone)]
pub struct ModeWeights {
    area: f64,
    inv_ksq: Vec<f64>,
    /// `|xi1|^{2s} / |xi|^2`
    diss: Vec<f64>,
    /// `(1 + xi1^{2k} + xi2^{2k}) / |xi|^2`
    hk: Vec<f64>,
    /// `|xi1|^{2s} (1 + xi1^{2k} + xi2^{2k}) / |xi|^2`
    hk_diss: Vec<f64>,
}

impl ModeWeights {
    pub fn new(grid: &Grid2D, params: &ModelParams) -> Self {
        let k1 = grid.wavenumbers(Axis::X1);
        let k2 = grid.wavenumbers(Axis::X2);
        let two_k = 2 * params.k as i32;
        let mut inv_ksq = Vec::with_capacity(grid.len());
        let mut diss = Vec::with_capacity(grid.len());
        let mut hk = Vec::with_capacity(grid.len());
        let mut hk_diss = Vec::with_capacity(grid.len());
        for a in &k1 {
            let sym = if *a == 0.0 {
                if params.s == 0.0 {
                    1.0
                } else {
                    0.0
                }
            } else {
                a.abs().powf(2.0 * params.s)
            };
            for b in &k2 {
                let q = a * a + b * b;
                let inv = if q == 0.0 { 0.0 } else { 1.0 / q };
                inv_ksq.push(inv);
                diss.push(sym * inv);
                let h = 1.0 + a.powi(two_k) + b.powi(two_k);
                hk.push(h * inv);
                hk_diss.push(sym * h * inv);
            }
        }
        Self {
            area: grid.area(),
            inv_ksq,
            diss,
            hk,
            hk_diss,
        }
    }

    fn sum(&self, w: &SpectralField2D, f: impl Fn(usize) -> f64) -> f64 {
        self.area
            * w.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| c.norm_sqr() * f(i))
                .sum::<f64>()
    }

    /// `||u||^2`
    pub fn energy(&self, w: &SpectralField2D) -> f64 {
        self.sum(w, |i| self.inv_ksq[i])
    }

    /// `||Lambda_1^s u||^2`
    pub fn dissipation(&self, w: &SpectralField2D) -> f64 {
        self.sum(w, |i| self.diss[i])
    }

    /// `||u||_{H^k}^2`
    pub fn hk_energy(&self, w: &SpectralField2D) -> f64 {
        self.sum(w, |i| self.hk[i])
    }

    /// `||Lambda_1^s u||_{H^k}^2`
    pub fn hk_dissipation(&self, w: &SpectralField2D) -> f64 {
        self.sum(w, |i| self.hk_diss[i])
    }
}

fn pair(a: f64, b: f64) -> f64 {
    a.hypot(b)
}

/// Evaluates every key except the two accumulated dissipation integrals,
/// which the caller supplies.
pub fn compute_record(
    t: f64,
    omega: &SpectralField2D,
    params: &ModelParams,
    diss: f64,
    diss_hk: f64,
) -> Result<DiagnosticsRecord> {
    let u = biot_savart_spectral(omega);
    let p1u1 = partial_derivative(&u.u1, Axis::X1, 1);
    let p2u1 = partial_derivative(&u.u1, Axis::X2, 1);
    let p1u2 = partial_derivative(&u.u2, Axis::X1, 1);
    let k = params.k;

    let hk_u = pair(sobolev_norm_spectral(&u.u1, k), sobolev_norm_spectral(&u.u2, k));
    let n1 = neg_horizontal_sobolev_norm_spectral(&u.u1, params.sigma, k)?;
    let n2 = neg_horizontal_sobolev_norm_spectral(&u.u2, params.sigma, k)?;

    let (a, b, g) = params.weight_exponents();
    let phys_u1 = inverse_transform(&u.u1);
    let phys_u2 = inverse_transform(&u.u2);
    let phys_p1u1 = inverse_transform(&p1u1);
    let phys_p1u2 = inverse_transform(&p1u2);
    let phys_p2u1 = inverse_transform(&p2u1);
    let w_u = pair(weighted_l2(&phys_u1, a)?, weighted_l2(&phys_u2, a)?);
    let w_p1u = pair(weighted_l2(&phys_p1u1, a)?, weighted_l2(&phys_p1u2, a)?);
    let w_p2u1 = weighted_l2(&phys_p2u1, b)?;
    let w_u2 = weighted_l2(&phys_u2, g)?;
    let w_p1u2 = weighted_l2(&phys_p1u2, g)?;

    Ok(DiagnosticsRecord {
        t,
        values: vec![
            u.u1.l2_norm(),
            u.u2.l2_norm(),
            p1u1.l2_norm(),
            p2u1.l2_norm(),
            p1u2.l2_norm(),
            hk_u,
            pair(n1.norm, n2.norm),
            diss,
            w_u,
            w_p1u,
            w_p2u1,
            w_u2,
            w_p1u2,
            diss_hk,
        ],
    })
}
