//! Power-law fits `ln y = c + e ln(1 + t)` by ordinary least squares.

use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};

pub const MIN_FIT_POINTS: usize = 8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub key: String,
    /// Fitted slope; a decaying series has a negative exponent.
    pub exponent: f64,
    pub intercept: f64,
    /// Standard error of the slope.
    pub stderr: f64,
    pub window: [f64; 2],
    pub n_points: usize,
}

impl FitResult {
    /// `-exponent`, comparable with a predicted decay rate.
    pub fn decay_rate(&self) -> f64 {
        -self.exponent
    }
}

/// Fits the points with `window[0] <= t <= window[1]`.
pub fn fit_power_law(key: &str, t: &[f64], y: &[f64], window: [f64; 2]) -> Result<FitResult> {
    let bad = |reason: String| HarnessError::Fit {
        key: key.to_string(),
        reason,
    };
    if t.len() != y.len() {
        return Err(bad(format!("{} times but {} values", t.len(), y.len())));
    }
    if !(window[0] < window[1]) || window[0] < 0.0 {
        return Err(bad(format!("window [{}, {}] is empty", window[0], window[1])));
    }
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (&ti, &yi) in t.iter().zip(y) {
        if ti < window[0] || ti > window[1] {
            continue;
        }
        if !(yi > 0.0 && yi.is_finite()) {
            return Err(bad(format!("value {yi} at t = {ti} is not positive")));
        }
        xs.push(ti.ln_1p());
        ys.push(yi.ln());
    }
    let n = xs.len();
    if n < MIN_FIT_POINTS {
        return Err(bad(format!("{n} points in window, need {MIN_FIT_POINTS}")));
    }
    let nf = n as f64;
    let mx = xs.iter().sum::<f64>() / nf;
    let my = ys.iter().sum::<f64>() / nf;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(bad("all points share one time".into()));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ssr: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    Ok(FitResult {
        key: key.to_string(),
        exponent: slope,
        intercept,
        stderr: (ssr / (nf - 2.0) / sxx).sqrt(),
        window,
        n_points: n,
    })
}

/// Last full decade of `1 + t` ending at `t_end`, clipped so the first
/// `skip` fraction of the run is never used.
pub fn default_window(t_start: f64, t_end: f64, skip: f64) -> [f64; 2] {
    let decade = (1.0 + t_end) / 10.0 - 1.0;
    let transient = t_start + skip * (t_end - t_start);
    [decade.max(transient), t_end]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn log_times(n: usize, lo: f64, hi: f64) -> Vec<f64> {
        (0..n)
            .map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64))
            .collect()
    }

    #[test]
    fn exact_power_law() {
        let t = log_times(50, 10.0, 1000.0);
        let y: Vec<f64> = t.iter().map(|t| (1.0 + t).powf(-0.5)).collect();
        let f = fit_power_law("u", &t, &y, [10.0, 1000.0]).unwrap();
        assert!((f.exponent + 0.5).abs() < 1e-6);
        assert!(f.stderr < 1e-10);
        assert_eq!(f.n_points, 50);
    }

    #[test]
    fn constant_series() {
        let t = log_times(20, 1.0, 100.0);
        let f = fit_power_law("c", &t, &vec![3.0; 20], [0.0, 100.0]).unwrap();
        assert!(f.exponent.abs() < 1e-12);
        assert!((f.intercept - 3f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn oscillating_power_law_over_two_decades() {
        let t = log_times(200, 10.0, 1000.0);
        let y: Vec<f64> = t
            .iter()
            .map(|t| (1.0 + t).powf(-0.5) * (2.0 + t.ln().sin()))
            .collect();
        let f = fit_power_law("osc", &t, &y, [10.0, 1000.0]).unwrap();
        assert!((f.exponent + 0.5).abs() < 0.1, "{}", f.exponent);
    }

    #[test]
    fn rejections() {
        let t = log_times(10, 1.0, 10.0);
        let mut y = vec![1.0; 10];
        assert!(fit_power_law("k", &t, &y[..7], [0.0, 10.0]).is_err());
        assert!(fit_power_law("k", &t[..7], &y[..7], [0.0, 10.0]).is_err());
        y[3] = 0.0;
        assert!(fit_power_law("k", &t, &y, [0.0, 10.0]).is_err());
        assert!(fit_power_law("k", &t, &[1.0; 10], [5.0, 5.0]).is_err());
    }

    #[test]
    fn default_window_is_the_last_decade() {
        assert_eq!(default_window(0.0, 999.0, 0.0), [99.0, 999.0]);
        assert_eq!(default_window(0.0, 999.0, 0.1), [99.9, 999.0]);
        let w = default_window(0.0, 60.0, 0.1);
        assert!((w[0] - 6.0).abs() < 1e-12);
    }
}
