//! The convolution integral `int (t - tau)^{-alpha} (1 + tau)^{-beta} dtau`
//! and its claimed envelopes.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SuiteError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DecayBranch {
    /// `alpha >= 1`, integral over `[0, t - 1]`, `alpha <= beta`: `(1+t)^{-alpha}`.
    TruncatedAlphaLeBeta,
    /// `alpha >= 1`, `alpha > beta > 1`: `(1+t)^{-beta}`.
    TruncatedAlphaGtBeta,
    /// `alpha < 1`, integral over `[0, t]`, `beta > 1`: `(1+t)^{-alpha}`.
    FullBetaGt1,
    /// `alpha < 1`, `beta = 1`: `(1+t)^{-alpha} ln(1+t)`.
    FullBetaEq1,
    /// `alpha < 1`, `beta < 1`: `(1+t)^{1-alpha-beta}`.
    FullBetaLt1,
}

impl DecayBranch {
    pub fn classify(alpha: f64, beta: f64) -> Result<Self> {
        let bad = |v: &str| SuiteError::Hypothesis {
            lemma: "DEC".into(),
            violated: v.into(),
        };
        if !(alpha.is_finite() && beta.is_finite()) {
            return Err(bad("alpha, beta finite"));
        }
        if alpha >= 1.0 {
            if beta <= 1.0 {
                return Err(bad("alpha >= 1 requires beta > 1"));
            }
            Ok(if alpha <= beta {
                DecayBranch::TruncatedAlphaLeBeta
            } else {
                DecayBranch::TruncatedAlphaGtBeta
            })
        } else if beta > 1.0 {
            Ok(DecayBranch::FullBetaGt1)
        } else if beta == 1.0 {
            Ok(DecayBranch::FullBetaEq1)
        } else {
            Ok(DecayBranch::FullBetaLt1)
        }
    }

    pub fn envelope(&self, alpha: f64, beta: f64, t: f64) -> f64 {
        let a = 1.0 + t;
        match self {
            DecayBranch::TruncatedAlphaLeBeta | DecayBranch::FullBetaGt1 => a.powf(-alpha),
            DecayBranch::TruncatedAlphaGtBeta => a.powf(-beta),
            DecayBranch::FullBetaEq1 => a.powf(-alpha) * a.ln(),
            DecayBranch::FullBetaLt1 => a.powf(1.0 - alpha - beta),
        }
    }

    /// Leading power of the envelope; the logarithm is not counted.
    pub fn power(&self, alpha: f64, beta: f64) -> f64 {
        match self {
            DecayBranch::TruncatedAlphaLeBeta | DecayBranch::FullBetaGt1 | DecayBranch::FullBetaEq1 => -alpha,
            DecayBranch::TruncatedAlphaGtBeta => -beta,
            DecayBranch::FullBetaLt1 => 1.0 - alpha - beta,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayRow {
    pub t: f64,
    pub integral: f64,
    pub envelope: f64,
}

impl DecayRow {
    pub fn ratio(&self) -> f64 {
        self.integral / self.envelope
    }
}

/// Integral of a smooth function over `[a, b]` on panels whose width
/// doubles away from `a`, so a unit-scale feature at `a` is resolved.
fn graded(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let mut total = 0.0;
    let mut lo = a;
    let mut w = 1.0;
    while lo < b {
        let hi = (lo + w).min(b);
        let mid = f(0.5 * (lo + hi));
        let crude = (mid.abs() * (hi - lo)).max(1e-300);
        total += quadrature::integrate(f, lo, hi, 1e-14 * crude).integral;
        lo = hi;
        w *= 2.0;
    }
    total
}

/// `int (t - tau)^{-alpha} (1 + tau)^{-beta} dtau` over `[0, t - 1]` for
/// `alpha >= 1` and over `[0, t]` otherwise.
pub fn decay_integral(alpha: f64, beta: f64, t: f64) -> Result<f64> {
    check_time(alpha, beta, t)?;
    let head = |tau: f64| (1.0 + tau).powf(-beta);
    if alpha >= 1.0 {
        let end = t - 1.0;
        let mid = 0.5 * end;
        let f = |tau: f64| (t - tau).powf(-alpha) * head(tau);
        // mirror the right half so both unit-scale ends get fine panels
        let g = |r: f64| f(end - r);
        Ok(graded(&f, 0.0, mid) + graded(&g, 0.0, end - mid))
    } else {
        let mid = 0.5 * t;
        let f = |tau: f64| (t - tau).powf(-alpha) * head(tau);
        // on [t/2, t] substitute u = (t - tau)^{1 - alpha}
        let e = 1.0 / (1.0 - alpha);
        let g = |u: f64| e * head(t - u.powf(e));
        let upper = (t - mid).powf(1.0 - alpha);
        let near = quadrature::integrate(g, 0.0, upper, 1e-15 * (upper * g(0.0)).max(1e-300)).integral;
        Ok(graded(&f, 0.0, mid) + near)
    }
}

fn check_time(alpha: f64, beta: f64, t: f64) -> Result<DecayBranch> {
    let b = DecayBranch::classify(alpha, beta)?;
    let min_t = if alpha >= 1.0 { 1.0 } else { 0.0 };
    if !(t > min_t && t.is_finite()) {
        return Err(SuiteError::Hypothesis {
            lemma: "DEC".into(),
            violated: format!("t > {min_t}"),
        });
    }
    Ok(b)
}

/// Quadrature values and the branch envelope at every `t`.
pub fn eval_decay_convolution(alpha: f64, beta: f64, t_grid: &[f64]) -> Result<Vec<DecayRow>> {
    t_grid
        .iter()
        .map(|&t| {
            let b = check_time(alpha, beta, t)?;
            Ok(DecayRow {
                t,
                integral: decay_integral(alpha, beta, t)?,
                envelope: b.envelope(alpha, beta, t),
            })
        })
        .collect()
}

/// Least-squares slope of `ln y` against `ln(1 + t)`.
pub fn log_slope(t: &[f64], y: &[f64]) -> f64 {
    let xs: Vec<f64> = t.iter().map(|t| t.ln_1p()).collect();
    let ys: Vec<f64> = y.iter().map(|y| y.ln()).collect();
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

/// One row of the branch table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecaySummary {
    pub alpha: f64,
    pub beta: f64,
    pub branch: DecayBranch,
    /// Smallest constant valid on `[t_lo, t_mid]` and on `[t_lo, t_hi]`.
    pub c_mid: f64,
    pub c_hi: f64,
    /// `c_hi / c_mid - 1`: growth of the best constant over the last decade.
    pub constant_drift: f64,
    /// Fitted log-log slopes of the integral and of the envelope over `[t_mid, t_hi]`.
    pub integral_exponent: f64,
    pub envelope_exponent: f64,
}

impl DecaySummary {
    pub fn exponent_mismatch(&self) -> f64 {
        (self.integral_exponent - self.envelope_exponent).abs()
    }
}

/// Tabulates on 41 log-spaced times in `[10, 1000]`, fitting over `[100, 1000]`.
pub fn summarize_decay(alpha: f64, beta: f64) -> Result<DecaySummary> {
    let branch = DecayBranch::classify(alpha, beta)?;
    let ts: Vec<f64> = (0..=40).map(|i| 10f64.powf(1.0 + i as f64 / 20.0)).collect();
    let rows = eval_decay_convolution(alpha, beta, &ts)?;
    let sup = |hi: usize| rows[..=hi].iter().map(DecayRow::ratio).fold(0.0, f64::max);
    let (c_mid, c_hi) = (sup(20), sup(40));
    let tail = &rows[20..];
    let t: Vec<f64> = tail.iter().map(|r| r.t).collect();
    let i: Vec<f64> = tail.iter().map(|r| r.integral).collect();
    let e: Vec<f64> = tail.iter().map(|r| r.envelope).collect();
    Ok(DecaySummary {
        alpha,
        beta,
        branch,
        c_mid,
        c_hi,
        constant_drift: c_hi / c_mid - 1.0,
        integral_exponent: log_slope(&t, &i),
        envelope_exponent: log_slope(&t, &e),
    })
}

/// The five `(alpha, beta)` pairs covering every branch.
pub const DECAY_TABLE: [(f64, f64); 5] = [(1.25, 2.0), (2.0, 1.25), (0.5, 2.0), (0.5, 1.0), (0.5, 0.3)];
