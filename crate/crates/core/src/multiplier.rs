//! Fourier multipliers: the shared kernel plus the fractional and
//! directional powers built on it.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::field::SpectralField2D;
use crate::grid::{Axis, Grid2D};

/// Whether a symbol multiplies by a real value or by `i` times a real value.
///
/// Real symbols must be even (`m(-xi) = m(xi)`), imaginary ones odd, so
/// that real fields map to real fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymbolKind {
    Real,
    Imaginary,
}

/// Treatment of the zero set of a homogeneous symbol (`xi1 = 0` for
/// `Lambda_1`, the origin for `Lambda`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ZeroModePolicy {
    /// Zero the modes on the zero set before scaling.
    ProjectOut,
    /// Use the natural value `0^a` (`0` for `a > 0`, `1` for `a = 0`).
    /// Only valid for `a >= 0`.
    KeepUnchanged,
}

/// Multiplies every coefficient by `symbol(xi1, xi2)` (times `i` for
/// imaginary symbols) and restores Hermitian symmetry.
///
/// The symbol receives true wavenumbers. Odd symbols should be built on
/// [`Grid2D::odd_wavenumber`] instead; see [`apply_symbol_indexed`].
pub fn apply_symbol(
    f: &SpectralField2D,
    kind: SymbolKind,
    symbol: impl Fn(f64, f64) -> f64,
) -> Result<SpectralField2D> {
    let g = *f.grid();
    let k1 = g.wavenumbers(Axis::X1);
    let k2 = g.wavenumbers(Axis::X2);
    apply_symbol_indexed(f, kind, |i, j| (k1[i], k2[j], symbol(k1[i], k2[j])))
}

/// Generic multiplier kernel addressed by storage index. The closure returns
/// `(xi1, xi2, value)`; the wavenumbers are only used for error reports.
pub fn apply_symbol_indexed(
    f: &SpectralField2D,
    kind: SymbolKind,
    symbol: impl Fn(usize, usize) -> (f64, f64, f64),
) -> Result<SpectralField2D> {
    let g = *f.grid();
    let unit = match kind {
        SymbolKind::Real => Complex64::new(1.0, 0.0),
        SymbolKind::Imaginary => Complex64::new(0.0, 1.0),
    };
    let mut out = f.clone();
    {
        let c = out.coeffs_mut();
        for i in 0..g.n1() {
            for j in 0..g.n2() {
                let (xi1, xi2, m) = symbol(i, j);
                if !m.is_finite() {
                    return Err(CoreError::NonFiniteSymbol { xi1, xi2 });
                }
                c[g.index(i, j)] *= unit * m;
            }
        }
    }
    out.symmetrize();
    Ok(out)
}

/// Multiplier without the Hermitian projection, for symbols already known
/// to be Hermitian-preserving at every represented mode.
pub(crate) fn scale_by(f: &SpectralField2D, factor: impl Fn(usize, usize) -> f64) -> SpectralField2D {
    let g = *f.grid();
    let mut out = f.clone();
    let c = out.coeffs_mut();
    for i in 0..g.n1() {
        for j in 0..g.n2() {
            c[g.index(i, j)] *= factor(i, j);
        }
    }
    out
}

fn power_factor(zero: bool, magnitude: f64, a: f64, policy: ZeroModePolicy) -> f64 {
    if zero {
        match policy {
            ZeroModePolicy::ProjectOut => 0.0,
            ZeroModePolicy::KeepUnchanged => 0.0_f64.powf(a),
        }
    } else {
        magnitude.powf(a)
    }
}

fn check_power(a: f64, policy: ZeroModePolicy) -> Result<()> {
    if !a.is_finite() {
        return Err(CoreError::InvalidParameter(format!("power {a} is not finite")));
    }
    if a < 0.0 && policy == ZeroModePolicy::KeepUnchanged {
        return Err(CoreError::NegativePowerOnZeroMode { power: a });
    }
    Ok(())
}

/// Horizontal fractional power `Lambda_1^a`, symbol `|xi1|^a`.
pub fn lambda1_pow(f: &SpectralField2D, a: f64, policy: ZeroModePolicy) -> Result<SpectralField2D> {
    check_power(a, policy)?;
    let g = *f.grid();
    let k1 = g.wavenumbers(Axis::X1);
    let factors: Vec<f64> = k1
        .iter()
        .map(|&x| power_factor(x == 0.0, x.abs(), a, policy))
        .collect();
    Ok(scale_by(f, |i, _| factors[i]))
}

/// Isotropic fractional power `Lambda^a`, symbol `|xi|^a`.
pub fn lambda_pow(f: &SpectralField2D, a: f64, policy: ZeroModePolicy) -> Result<SpectralField2D> {
    check_power(a, policy)?;
    let g = *f.grid();
    let k1 = g.wavenumbers(Axis::X1);
    let k2 = g.wavenumbers(Axis::X2);
    Ok(scale_by(f, |i, j| {
        let r = k1[i].hypot(k2[j]);
        power_factor(i == 0 && j == 0, r, a, policy)
    }))
}

/// `d^order / dx_axis^order`, symbol `(i xi_axis)^order`.
pub fn partial_derivative(f: &SpectralField2D, axis: Axis, order: u32) -> SpectralField2D {
    if order == 0 {
        return f.clone();
    }
    let g = *f.grid();
    let k = if order % 2 == 1 {
        g.odd_wavenumbers(axis)
    } else {
        g.wavenumbers(axis)
    };
    let pow: Vec<f64> = k.iter().map(|x| x.powi(order as i32)).collect();
    let phase = match order % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    };
    let mut out = f.clone();
    let c = out.coeffs_mut();
    for i in 0..g.n1() {
        for j in 0..g.n2() {
            let m = match axis {
                Axis::X1 => pow[i],
                Axis::X2 => pow[j],
            };
            c[g.index(i, j)] *= phase * m;
        }
    }
    out
}

/// Whether a storage index survives the two-thirds rule: `3 |m| <= n`.
#[inline]
pub fn kept_by_two_thirds(grid: &Grid2D, axis: Axis, index: usize) -> bool {
    3 * grid.mode(axis, index).unsigned_abs() as usize <= grid.n(axis)
}

/// Zeroes every mode with `|m_j| > n_j / 3` on either axis.
pub fn dealias_two_thirds(f: &SpectralField2D) -> SpectralField2D {
    let g = *f.grid();
    let keep1: Vec<bool> = (0..g.n1()).map(|i| kept_by_two_thirds(&g, Axis::X1, i)).collect();
    let keep2: Vec<bool> = (0..g.n2()).map(|j| kept_by_two_thirds(&g, Axis::X2, j)).collect();
    scale_by(f, |i, j| if keep1[i] && keep2[j] { 1.0 } else { 0.0 })
}

/// Zeroes the `xi1 = 0` modes.
pub fn project_out_xi1_zero(f: &SpectralField2D) -> SpectralField2D {
    scale_by(f, |i, _| if i == 0 { 0.0 } else { 1.0 })
}

/// Zeroes the `(0, 0)` mode.
pub fn remove_mean(f: &SpectralField2D) -> SpectralField2D {
    scale_by(f, |i, j| if i == 0 && j == 0 { 0.0 } else { 1.0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::RealField2D;
    use crate::transform::{forward_transform, inverse_transform};

    fn g() -> Grid2D {
        Grid2D::periodic_2pi(16).unwrap()
    }

    fn max_diff(a: &RealField2D, b: &RealField2D) -> f64 {
        a.sub(b).unwrap().max_abs()
    }

    #[test]
    fn unit_symbol_is_identity() {
        let f = forward_transform(&RealField2D::from_fn(g(), |x, y| (x + 2.0 * y).sin() + x.cos()));
        let out = apply_symbol(&f, SymbolKind::Real, |_, _| 1.0).unwrap();
        assert!(out.sub(&f).unwrap().max_abs() < 1e-15);
    }

    #[test]
    fn derivative_symbol_on_cosine() {
        let f = forward_transform(&RealField2D::from_fn(g(), |x, _| x.cos()));
        let d = apply_symbol(&f, SymbolKind::Imaginary, |xi1, _| xi1).unwrap();
        let expect = RealField2D::from_fn(g(), |x, _| -x.sin());
        assert!(max_diff(&inverse_transform(&d), &expect) < 1e-13);
    }

    #[test]
    fn laplacian_symbol_on_taylor_green_stream() {
        let psi = RealField2D::from_fn(g(), |x, y| x.cos() * y.cos());
        let f = forward_transform(&psi);
        let out = apply_symbol(&f, SymbolKind::Real, |a, b| a * a + b * b).unwrap();
        assert!(max_diff(&inverse_transform(&out), &psi.scale(2.0)) < 1e-13);
    }

    #[test]
    fn non_finite_symbol_names_wavenumber() {
        let f = forward_transform(&RealField2D::constant(g(), 1.0));
        let err = apply_symbol(&f, SymbolKind::Real, |a, b| 1.0 / (a * a + b * b)).unwrap_err();
        assert_eq!(err, CoreError::NonFiniteSymbol { xi1: 0.0, xi2: 0.0 });
    }

    #[test]
    fn lambda1_single_mode() {
        let f = forward_transform(&RealField2D::from_fn(g(), |x, _| (3.0 * x).cos()));
        let out = lambda1_pow(&f, 1.5, ZeroModePolicy::KeepUnchanged).unwrap();
        let expect = RealField2D::from_fn(g(), |x, _| 3f64.powf(1.5) * (3.0 * x).cos());
        assert!(max_diff(&inverse_transform(&out), &expect) < 1e-12);
    }

    #[test]
    fn lambda1_negative_power_on_constant() {
        let f = forward_transform(&RealField2D::constant(g(), 2.0));
        let out = lambda1_pow(&f, -0.4, ZeroModePolicy::ProjectOut).unwrap();
        assert!(out.max_abs() == 0.0);
        assert_eq!(
            lambda1_pow(&f, -0.4, ZeroModePolicy::KeepUnchanged),
            Err(CoreError::NegativePowerOnZeroMode { power: -0.4 })
        );
    }

    #[test]
    fn lambda1_zero_power_keep_is_identity() {
        let f = forward_transform(&RealField2D::from_fn(g(), |x, y| 1.0 + x.sin() * y.cos()));
        let out = lambda1_pow(&f, 0.0, ZeroModePolicy::KeepUnchanged).unwrap();
        assert_eq!(out, f);
    }

    #[test]
    fn lambda_single_modes() {
        let mode = RealField2D::from_fn(g(), |x, y| (3.0 * x + 4.0 * y).cos());
        let out = lambda_pow(&forward_transform(&mode), -1.0, ZeroModePolicy::ProjectOut).unwrap();
        assert!(max_diff(&inverse_transform(&out), &mode.scale(0.2)) < 1e-13);

        let psi = RealField2D::from_fn(g(), |x, y| x.cos() * y.cos());
        let out = lambda_pow(&forward_transform(&psi), 2.0, ZeroModePolicy::KeepUnchanged).unwrap();
        assert!(max_diff(&inverse_transform(&out), &psi.scale(2.0)) < 1e-12);
    }

    #[test]
    fn derivatives_of_sine() {
        let f = forward_transform(&RealField2D::from_fn(g(), |_, y| y.sin()));
        let d2 = inverse_transform(&partial_derivative(&f, Axis::X2, 1));
        assert!(max_diff(&d2, &RealField2D::from_fn(g(), |_, y| y.cos())) < 1e-13);
        for order in 1..5 {
            let d1 = partial_derivative(&f, Axis::X1, order);
            assert!(d1.max_abs() < 1e-15);
        }
        let d4 = inverse_transform(&partial_derivative(&f, Axis::X2, 4));
        assert!(max_diff(&d4, &RealField2D::from_fn(g(), |_, y| y.sin())) < 1e-12);
    }

    #[test]
    fn dealias_kills_nyquist_and_keeps_low_band() {
        let gr = g();
        let mut nyq = SpectralField2D::zeros(gr);
        nyq.set_mode(-8, 0, Complex64::new(1.0, 0.0));
        assert!(dealias_two_thirds(&nyq).max_abs() == 0.0);

        let low = forward_transform(&RealField2D::from_fn(gr, |x, y| (5.0 * x).cos() * (2.0 * y).sin()));
        assert!(dealias_two_thirds(&low).sub(&low).unwrap().max_abs() < 1e-15);
    }
}
