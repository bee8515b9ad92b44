//! Initial data.

use fracns_core::multiplier::{dealias_two_thirds, project_out_xi1_zero, remove_mean};
use fracns_core::operators::{biot_savart_spectral, laplacian};
use fracns_core::{forward_transform, Axis, Grid2D, ModelParams, Regime, RealField2D, SpectralField2D};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Result, SolverError};
use crate::state::{HypothesisNorms, SimState};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum InitialData {
    /// `psi0 = eps cos(k1 x1) cos(k2 x2)` with the fundamental wavenumbers;
    /// `eps` is the velocity amplitude.
    TaylorGreen,
    /// `psi0 = A f_band(x1) exp(-x2^2 / (2 width^2))` with `f_band` on
    /// modes `1 <= m1 <= band`; `A` is chosen so the hypothesis sum of the
    /// regime equals `eps`.
    BandedStream { band: usize, width: f64 },
    /// Gaussian stream-function coefficients on `1 <= |m1| <= band`,
    /// `|m2| <= band`; `eps` is `max |u0|`.
    RandomBand { seed: u64, band: usize },
    Zero,
}

impl InitialData {
    pub fn name(&self) -> &'static str {
        match self {
            InitialData::TaylorGreen => "taylor_green",
            InitialData::BandedStream { .. } => "banded_stream",
            InitialData::RandomBand { .. } => "random_band",
            InitialData::Zero => "zero",
        }
    }
}

/// `int_cell xi^{2 sigma - 1} d xi` over the spectral cell of mode `m`;
/// the first cell also absorbs `[0, dk/2)`.
fn critical_cell_weight(m: usize, dk: f64, sigma: f64) -> f64 {
    let prim = |x: f64| x.powf(2.0 * sigma) / (2.0 * sigma);
    let lo = if m == 1 { 0.0 } else { (m as f64 - 0.5) * dk };
    let hi = (m as f64 + 0.5) * dk;
    prim(hi) - prim(lo)
}

/// Horizontal profile whose power spectrum follows `|xi1|^{2 sigma - 1}`,
/// the borderline decay for `Lambda_1^{-sigma} u0` to lie in `L^2`. With
/// it, `||u1||` decays at exactly the critical linear rate.
pub fn banded_profile(grid: &Grid2D, band: usize, sigma: f64) -> Vec<f64> {
    let dk = grid.fundamental(Axis::X1);
    let amps: Vec<(f64, f64)> = (1..=band)
        .map(|m| (m as f64 * dk, critical_cell_weight(m, dk, sigma).sqrt()))
        .collect();
    grid.coords(Axis::X1)
        .iter()
        .map(|&x| amps.iter().map(|(k, a)| a * (k * x).cos()).sum())
        .collect()
}

fn stream_to_vorticity(psi: &SpectralField2D) -> SpectralField2D {
    remove_mean(&dealias_two_thirds(&laplacian(psi)))
}

fn taylor_green(grid: &Grid2D, eps: f64) -> SpectralField2D {
    let (k1, k2) = (grid.fundamental(Axis::X1), grid.fundamental(Axis::X2));
    // u has amplitude eps when psi = eps cos cos / k-scale
    let scale = eps / k1.max(k2);
    let psi = RealField2D::from_fn(*grid, |x, y| scale * (k1 * x).cos() * (k2 * y).cos());
    stream_to_vorticity(&forward_transform(&psi))
}

fn banded_unit(grid: &Grid2D, band: usize, width: f64, sigma: f64) -> Result<SpectralField2D> {
    if band == 0 || 3 * band > grid.n1() {
        return Err(SolverError::InvalidConfig(format!(
            "band {band} must lie in [1, n1/3] for n1 = {}",
            grid.n1()
        )));
    }
    if !(width > 0.0) {
        return Err(SolverError::InvalidConfig(format!("envelope width {width} must be positive")));
    }
    let prof = banded_profile(grid, band, sigma);
    let psi = RealField2D::from_fn(*grid, |_, y| (-y * y / (2.0 * width * width)).exp());
    let n2 = grid.n2();
    let data: Vec<f64> = psi
        .data()
        .iter()
        .enumerate()
        .map(|(idx, v)| v * prof[idx / n2])
        .collect();
    let psi = RealField2D::new(*grid, data)?;
    Ok(project_out_xi1_zero(&stream_to_vorticity(&forward_transform(&psi))))
}

fn random_band(grid: &Grid2D, seed: u64, band: usize, eps: f64) -> SpectralField2D {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut psi = SpectralField2D::zeros(*grid);
    let b = band as i64;
    for m1 in -b..=b {
        for m2 in -b..=b {
            let a: f64 = StandardNormal.sample(&mut rng);
            let c: f64 = StandardNormal.sample(&mut rng);
            if m1 != 0 {
                psi.set_mode(m1, m2, Complex64::new(a, c));
            }
        }
    }
    psi.symmetrize();
    let w = stream_to_vorticity(&psi);
    let speed = biot_savart_spectral(&w).to_physical().max_speed();
    if speed == 0.0 {
        w
    } else {
        w.scale(eps / speed)
    }
}

/// Builds the initial state and evaluates the hypothesis norms of `regime`.
pub fn init_from_preset(
    preset: &InitialData,
    grid: Grid2D,
    params: ModelParams,
    eps: f64,
    regime: Regime,
) -> Result<SimState> {
    params.validate()?;
    if !(eps.is_finite() && eps >= 0.0) {
        return Err(SolverError::InvalidConfig(format!("eps = {eps} must be >= 0")));
    }
    let (omega, hyp) = match *preset {
        InitialData::TaylorGreen => {
            let w = taylor_green(&grid, eps);
            let h = HypothesisNorms::evaluate(&w, &params)?;
            (w, h)
        }
        InitialData::RandomBand { seed, band } => {
            let w = random_band(&grid, seed, band, eps);
            let h = HypothesisNorms::evaluate(&w, &params)?;
            (w, h)
        }
        InitialData::Zero => (SpectralField2D::zeros(grid), HypothesisNorms::default()),
        InitialData::BandedStream { band, width } => {
            let w = banded_unit(&grid, band, width, params.sigma)?;
            let h = HypothesisNorms::evaluate(&w, &params)?;
            let sum = hypothesis_sum(&h, regime);
            let c = if sum > 0.0 { eps / sum } else { 0.0 };
            (w.scale(c), h.scaled(c))
        }
    };
    let sum = hypothesis_sum(&hyp, regime);
    let exceeds_eps = sum > eps * (1.0 + 1e-12);
    if exceeds_eps {
        log::warn!(
            "{} data: hypothesis sum {sum:e} for {regime} exceeds eps = {eps:e}",
            preset.name()
        );
    }
    Ok(SimState {
        t: 0.0,
        omega_hat: omega,
        params,
        hypothesis: hyp,
        exceeds_eps,
    })
}

/// Hypothesis sum a regime places on the initial data.
pub fn hypothesis_sum(h: &HypothesisNorms, regime: Regime) -> f64 {
    match regime {
        Regime::Thm1 => h.sum_hk(),
        Regime::Thm3 | Regime::Rem13 => h.sum_unweighted(),
        Regime::Thm4 => h.sum_weighted(),
    }
}
