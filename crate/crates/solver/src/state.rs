use fracns_core::norms::neg_horizontal_sobolev_norm_spectral;
use fracns_core::operators::{biot_savart_spectral, inverse_laplacian};
use fracns_core::weights::{weight_profile, weighted_l2};
use fracns_core::{
    forward_transform, inverse_transform, multiplier::partial_derivative, Axis, ModelParams,
    RealField2D, SpectralField2D,
};
use serde::{Deserialize, Serialize};

use crate::error::Result;

/// Norms entering the smallness hypotheses on the initial data.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct HypothesisNorms {
    /// `||u0||_{H^k}`
    pub hk_u0: f64,
    /// `||Lambda_1^{-sigma} psi0||`
    pub neg_psi0: f64,
    /// `||Lambda_1^{-sigma} u0_1||`
    pub neg_u01: f64,
    /// `||Lambda_1^{-sigma} d2 u0_1||`
    pub neg_p2u01: f64,
    /// `||Lambda_1^{-sigma} [x2]^gamma psi0||`
    pub neg_w_psi0: f64,
    /// `||Lambda_1^{-sigma} [x2]^a u0||`, `a = (3 gamma + 4)/7`
    pub neg_w_u0: f64,
    /// `||Lambda_1^{-sigma} [x2]^b d2 u0_1||`, `b = (5 gamma + 2)/7`
    pub neg_w_p2u01: f64,
    /// `||[x2]^a u0||`
    pub w_u0: f64,
    /// `||[x2]^b d2 u0_1||`
    pub w_p2u01: f64,
    /// `||[x2]^a d1 u0||`
    pub w_p1u0: f64,
    /// Fraction of `||omega0||^2` carried by `xi1 = 0` modes.
    pub xi1_zero_fraction: f64,
}

impl HypothesisNorms {
    /// Left side of the uniform-bound hypothesis.
    pub fn sum_hk(&self) -> f64 {
        self.hk_u0
    }

    /// Left side of the unweighted decay hypothesis.
    pub fn sum_unweighted(&self) -> f64 {
        self.hk_u0 + self.neg_psi0 + self.neg_u01 + self.neg_p2u01
    }

    /// Left side of the weighted decay hypothesis.
    pub fn sum_weighted(&self) -> f64 {
        self.hk_u0
            + self.neg_w_psi0
            + self.neg_w_u0
            + self.neg_w_p2u01
            + self.w_u0
            + self.w_p2u01
            + self.w_p1u0
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self {
            hk_u0: c * self.hk_u0,
            neg_psi0: c * self.neg_psi0,
            neg_u01: c * self.neg_u01,
            neg_p2u01: c * self.neg_p2u01,
            neg_w_psi0: c * self.neg_w_psi0,
            neg_w_u0: c * self.neg_w_u0,
            neg_w_p2u01: c * self.neg_w_p2u01,
            w_u0: c * self.w_u0,
            w_p2u01: c * self.w_p2u01,
            w_p1u0: c * self.w_p1u0,
            xi1_zero_fraction: self.xi1_zero_fraction,
        }
    }

    pub fn evaluate(omega: &SpectralField2D, params: &ModelParams) -> Result<Self> {
        let g = *omega.grid();
        let sigma = params.sigma;
        let neg = |f: &SpectralField2D| -> Result<f64> {
            Ok(neg_horizontal_sobolev_norm_spectral(f, sigma, 0)?.norm)
        };
        let neg_weighted = |f: &SpectralField2D, gamma: f64| -> Result<f64> {
            let prof = weight_profile(&g, gamma)?;
            let w = forward_transform(&inverse_transform(f).mul_x2_profile(&prof));
            neg(&w)
        };
        let psi = inverse_laplacian(omega);
        let u = biot_savart_spectral(omega);
        let p2u1 = partial_derivative(&u.u1, Axis::X2, 1);
        let p1u1 = partial_derivative(&u.u1, Axis::X1, 1);
        let p1u2 = partial_derivative(&u.u2, Axis::X1, 1);
        let (a, b, gamma) = params.weight_exponents();
        let phys = |f: &SpectralField2D| -> RealField2D { inverse_transform(f) };
        let wl2 = |f: &SpectralField2D, e: f64| -> Result<f64> { Ok(weighted_l2(&phys(f), e)?) };
        let total = omega.energy_sum();
        Ok(Self {
            hk_u0: fracns_core::norms::sobolev_norm_spectral(&u.u1, params.k)
                .hypot(fracns_core::norms::sobolev_norm_spectral(&u.u2, params.k)),
            neg_psi0: neg(&psi)?,
            neg_u01: neg(&u.u1)?,
            neg_p2u01: neg(&p2u1)?,
            neg_w_psi0: neg_weighted(&psi, gamma)?,
            neg_w_u0: neg_weighted(&u.u1, a)?.hypot(neg_weighted(&u.u2, a)?),
            neg_w_p2u01: neg_weighted(&p2u1, b)?,
            w_u0: wl2(&u.u1, a)?.hypot(wl2(&u.u2, a)?),
            w_p2u01: wl2(&p2u1, b)?,
            w_p1u0: wl2(&p1u1, a)?.hypot(wl2(&p1u2, a)?),
            xi1_zero_fraction: if total == 0.0 {
                0.0
            } else {
                omega.xi1_zero_l2().powi(2) / omega.l2_norm().powi(2)
            },
        })
    }
}

/// Time plus vorticity coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct SimState {
    pub t: f64,
    pub omega_hat: SpectralField2D,
    pub params: ModelParams,
    pub hypothesis: HypothesisNorms,
    /// Set when the hypothesis sum of the requested regime exceeds `eps`.
    pub exceeds_eps: bool,
}

impl SimState {
    pub fn omega(&self) -> RealField2D {
        inverse_transform(&self.omega_hat)
    }
}
