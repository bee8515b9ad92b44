//! Norm quadratures: plain, mixed Lebesgue, Sobolev and negative-order
//! horizontal norms.
//!
//! Physical-space norms use the rectangle rule on the uniform grid, which
//! is spectrally accurate for smooth periodic integrands. `L^inf` is the
//! sample maximum, a lower bound on the true supremum.

use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::field::{RealField2D, SpectralField2D};
use crate::grid::Axis;
use crate::multiplier::{lambda1_pow, partial_derivative, ZeroModePolicy};
use crate::transform::forward_transform;

/// Lebesgue exponent `p` in `[1, inf]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    pub fn validate(self) -> Result<Self> {
        match self {
            Exponent::Finite(p) if !(p.is_finite() && p >= 1.0) => Err(CoreError::InvalidParameter(
                format!("Lebesgue exponent {p} must be >= 1"),
            )),
            e => Ok(e),
        }
    }
}

impl From<f64> for Exponent {
    fn from(p: f64) -> Self {
        if p.is_infinite() {
            Exponent::Infinity
        } else {
            Exponent::Finite(p)
        }
    }
}

/// `L^p` norm of equally spaced samples with spacing `h`.
pub fn lp_norm_1d(samples: &[f64], h: f64, p: Exponent) -> f64 {
    match p {
        Exponent::Infinity => samples.iter().fold(0.0_f64, |m, v| m.max(v.abs())),
        Exponent::Finite(p) if p == 2.0 => (h * samples.iter().map(|v| v * v).sum::<f64>()).sqrt(),
        Exponent::Finite(p) if p == 1.0 => h * samples.iter().map(|v| v.abs()).sum::<f64>(),
        Exponent::Finite(p) => {
            // scale by the max to keep large p from overflowing
            let m = samples.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
            if m == 0.0 {
                return 0.0;
            }
            let s: f64 = samples.iter().map(|v| (v.abs() / m).powf(p)).sum();
            m * (h * s).powf(1.0 / p)
        }
    }
}

/// Iterated norm `|| || f ||_{L^{p_first}} ||_{L^{p_second}}`; `first` is
/// the axis reduced first (the inner norm).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixedNormSpec {
    pub p1: Exponent,
    pub p2: Exponent,
    pub first: Axis,
}

impl MixedNormSpec {
    pub fn new(p1: impl Into<Exponent>, p2: impl Into<Exponent>, first: Axis) -> Result<Self> {
        Ok(Self {
            p1: p1.into().validate()?,
            p2: p2.into().validate()?,
            first,
        })
    }

    /// `L^{p1}_{x1} L^{p2}_{x2}` in the usual notation: the `x1` norm is
    /// taken first, then the `x2` norm of the result.
    pub fn x1_then_x2(p1: impl Into<Exponent>, p2: impl Into<Exponent>) -> Result<Self> {
        Self::new(p1, p2, Axis::X1)
    }

    pub fn x2_then_x1(p1: impl Into<Exponent>, p2: impl Into<Exponent>) -> Result<Self> {
        Self::new(p1, p2, Axis::X2)
    }
}

pub fn mixed_norm(f: &RealField2D, spec: &MixedNormSpec) -> f64 {
    let g = *f.grid();
    match spec.first {
        Axis::X1 => {
            let inner: Vec<f64> = (0..g.n2())
                .map(|j| lp_norm_1d(&f.x1_section(j), g.h1(), spec.p1))
                .collect();
            lp_norm_1d(&inner, g.h2(), spec.p2)
        }
        Axis::X2 => {
            let inner: Vec<f64> = (0..g.n1())
                .map(|i| lp_norm_1d(&f.x2_section(i), g.h2(), spec.p2))
                .collect();
            lp_norm_1d(&inner, g.h1(), spec.p1)
        }
    }
}

/// Isotropic `L^p` norm over the box.
pub fn lp_norm(f: &RealField2D, p: impl Into<Exponent>) -> f64 {
    let p = p.into();
    lp_norm_1d(f.data(), f.grid().cell_area(), p)
}

pub fn l2_norm(f: &RealField2D) -> f64 {
    lp_norm(f, 2.0)
}

/// `||f||_{H^k}` with `||f||^2 + ||d1^k f||^2 + ||d2^k f||^2`, evaluated by Parseval.
pub fn sobolev_norm_spectral(f: &SpectralField2D, k: u32) -> f64 {
    let base = f.energy_sum();
    if k == 0 {
        return f.l2_norm();
    }
    let d1 = partial_derivative(f, Axis::X1, k).energy_sum();
    let d2 = partial_derivative(f, Axis::X2, k).energy_sum();
    (f.grid().area() * (base + d1 + d2)).sqrt()
}

pub fn sobolev_norm(f: &RealField2D, k: u32) -> f64 {
    sobolev_norm_spectral(&forward_transform(f), k)
}

/// `||Lambda_1^{-sigma} f||_{H^k}` together with the `L^2` mass of the
/// `xi1 = 0` modes, which the negative power cannot see.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NegNorm {
    pub norm: f64,
    pub zero_mode_mass: f64,
}

pub fn neg_horizontal_sobolev_norm_spectral(f: &SpectralField2D, sigma: f64, k: u32) -> Result<NegNorm> {
    if !(sigma > 0.0 && sigma < 0.5) {
        return Err(CoreError::InvalidParameter(format!(
            "negative order sigma = {sigma} must lie in (0, 1/2)"
        )));
    }
    let g = lambda1_pow(f, -sigma, ZeroModePolicy::ProjectOut)?;
    Ok(NegNorm {
        norm: sobolev_norm_spectral(&g, k),
        zero_mode_mass: f.xi1_zero_l2(),
    })
}

pub fn neg_horizontal_sobolev_norm(f: &RealField2D, sigma: f64, k: u32) -> Result<NegNorm> {
    neg_horizontal_sobolev_norm_spectral(&forward_transform(f), sigma, k)
}
