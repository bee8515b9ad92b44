//! Truncated power weights `[x2]^gamma`, weighted norms and A2 constants.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::field::RealField2D;
use crate::grid::{Axis, Grid2D};
use crate::operators::riesz_product;
use crate::report::{Provenance, RatioReport};
use crate::transform::{forward_transform, inverse_transform};

/// `[x]^gamma`: `1` on `|x| <= 1`, `|x|^gamma` outside.
#[inline]
pub fn truncated_power(x: f64, gamma: f64) -> f64 {
    let a = x.abs();
    if a <= 1.0 {
        1.0
    } else {
        a.powf(gamma)
    }
}

/// Weight `[x2]^gamma` applied along `axis` (always `X2` in the model).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightSpec {
    pub gamma: f64,
    pub axis: Axis,
}

impl WeightSpec {
    pub fn x2(gamma: f64) -> Result<Self> {
        if !gamma.is_finite() {
            return Err(CoreError::InvalidParameter(format!("weight exponent {gamma} is not finite")));
        }
        Ok(Self { gamma, axis: Axis::X2 })
    }

    /// Whether `[x2]^gamma` used as an `L^2` weight is in A2, i.e. `|gamma| < 1`.
    pub fn is_a2(&self) -> bool {
        self.gamma.abs() < 1.0
    }
}

fn check_box(grid: &Grid2D) -> Result<()> {
    if grid.l2() <= 2.0 {
        return Err(CoreError::BoxTooSmall { l2: grid.l2() });
    }
    Ok(())
}

/// `[x2]^gamma` at each `x2` grid coordinate.
pub fn weight_profile(grid: &Grid2D, gamma: f64) -> Result<Vec<f64>> {
    check_box(grid)?;
    Ok(grid.coords(Axis::X2).into_iter().map(|x| truncated_power(x, gamma)).collect())
}

pub fn weight_samples(grid: &Grid2D, gamma: f64) -> Result<RealField2D> {
    let prof = weight_profile(grid, gamma)?;
    Ok(RealField2D::constant(*grid, 1.0).mul_x2_profile(&prof))
}

/// `|| [x2]^gamma f ||_{L^2}` by the rectangle rule.
pub fn weighted_l2(f: &RealField2D, gamma: f64) -> Result<f64> {
    let g = *f.grid();
    let w = weight_profile(&g, gamma)?;
    let n2 = g.n2();
    let s: f64 = f
        .data()
        .iter()
        .enumerate()
        .map(|(idx, v)| {
            let a = v * w[idx % n2];
            a * a
        })
        .sum();
    Ok((s * g.cell_area()).sqrt())
}

/// One-dimensional `|| [x]^gamma f ||_{L^2}` for a section sampled at `coords`.
pub fn weighted_l2_1d(samples: &[f64], coords: &[f64], h: f64, gamma: f64) -> f64 {
    let s: f64 = samples
        .iter()
        .zip(coords)
        .map(|(v, &x)| {
            let a = v * truncated_power(x, gamma);
            a * a
        })
        .sum();
    (s * h).sqrt()
}

/// Fraction of the weighted mass `int f^2 [x2]^{2 gamma}` carried by the
/// outer shell `|x2| >= 0.45 l2`.
pub fn outer_shell_fraction(f: &RealField2D, gamma: f64) -> Result<f64> {
    let g = *f.grid();
    let w = weight_profile(&g, gamma)?;
    let cut = 0.45 * g.l2();
    let (mut shell, mut total) = (0.0, 0.0);
    for i in 0..g.n1() {
        for j in 0..g.n2() {
            let a = f.at(i, j) * w[j];
            let m = a * a;
            total += m;
            if g.x2(j).abs() >= cut {
                shell += m;
            }
        }
    }
    Ok(if total == 0.0 { 0.0 } else { shell / total })
}

/// `int_0^x [y]^kappa dy`, extended as an odd function.
fn weight_primitive(x: f64, kappa: f64) -> f64 {
    let a = x.abs();
    let v = if a <= 1.0 {
        a
    } else if (kappa + 1.0).abs() < 1e-14 {
        1.0 + a.ln()
    } else {
        1.0 + (a.powf(kappa + 1.0) - 1.0) / (kappa + 1.0)
    };
    v.copysign(x)
}

/// Average of `[y]^kappa` over `[a, b]`.
pub fn weight_average(a: f64, b: f64, kappa: f64) -> f64 {
    (weight_primitive(b, kappa) - weight_primitive(a, kappa)) / (b - a)
}

/// Interval family for the A2 supremum: dyadic lengths `2^j`, `j` in
/// `[j_min, j_max]`, each centered at every listed point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct A2Family {
    pub j_min: i32,
    pub j_max: i32,
    pub centers: Vec<f64>,
}

impl A2Family {
    /// Lengths `2^-10 .. 2^12`, centers on the `x2` grid plus the origin.
    pub fn on_grid(grid: &Grid2D) -> Self {
        Self::with_levels(grid, -10, 12)
    }

    pub fn with_levels(grid: &Grid2D, j_min: i32, j_max: i32) -> Self {
        let mut centers = grid.coords(Axis::X2);
        if !centers.iter().any(|&c| c == 0.0) {
            centers.push(0.0);
        }
        Self { j_min, j_max, centers }
    }
}

/// `sup_I (avg_I w)(avg_I w^{-1})` over the family, for `w = [x2]^kappa`.
pub fn a2_constant(kappa: f64, family: &A2Family) -> f64 {
    let mut best = 0.0_f64;
    for j in family.j_min..=family.j_max {
        let half = 0.5 * 2f64.powi(j);
        for &c in &family.centers {
            let (a, b) = (c - half, c + half);
            let p = weight_average(a, b, kappa) * weight_average(a, b, -kappa);
            best = best.max(p);
        }
    }
    best
}

/// Products of Riesz transforms tested against the weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RieszOp {
    R11,
    R12,
    R22,
}

impl RieszOp {
    pub const ALL: [RieszOp; 3] = [RieszOp::R11, RieszOp::R12, RieszOp::R22];

    pub fn apply(&self, f: &RealField2D) -> RealField2D {
        let (a, b) = match self {
            RieszOp::R11 => (Axis::X1, Axis::X1),
            RieszOp::R12 => (Axis::X1, Axis::X2),
            RieszOp::R22 => (Axis::X2, Axis::X2),
        };
        inverse_transform(&riesz_product(&forward_transform(f), a, b))
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            RieszOp::R11 => "R1R1",
            RieszOp::R12 => "R1R2",
            RieszOp::R22 => "R2R2",
        }
    }
}

/// `int |T f|^2 [x2]^kappa / int |f|^2 [x2]^kappa`.
pub fn weighted_operator_ratio(f: &RealField2D, kappa: f64, op: RieszOp) -> Result<RatioReport> {
    let tf = op.apply(f);
    let num = weighted_l2(&tf, 0.5 * kappa)?.powi(2);
    let den = weighted_l2(f, 0.5 * kappa)?.powi(2);
    let mut params = BTreeMap::new();
    params.insert("kappa".to_string(), kappa);
    Ok(RatioReport::new(
        format!("weighted-{}", op.as_str()),
        params,
        num,
        den,
        Provenance {
            seed: None,
            grid: Some(*f.grid()),
            family: String::new(),
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g() -> Grid2D {
        Grid2D::new(16, 64, 8.0, 16.0).unwrap()
    }

    #[test]
    fn point_values() {
        assert_eq!(truncated_power(0.5, 7.0), 1.0);
        assert!((truncated_power(4.0, 0.2) - 1.3195).abs() < 1e-4);
        assert!((truncated_power(-4.0, 0.2) - 1.3195).abs() < 1e-4);
        let w = weight_samples(&g(), 0.0).unwrap();
        assert!(w.data().iter().all(|&v| v == 1.0));
    }

    #[test]
    fn small_box_rejected() {
        let g = Grid2D::new(8, 8, 1.0, 2.0).unwrap();
        assert_eq!(weight_samples(&g, 0.3), Err(CoreError::BoxTooSmall { l2: 2.0 }));
    }

    #[test]
    fn support_inside_unit_strip_is_unweighted() {
        let f = RealField2D::from_fn(g(), |x, y| if y.abs() <= 1.0 { x.cos() + 2.0 } else { 0.0 });
        let plain = crate::norms::l2_norm(&f);
        assert!((weighted_l2(&f, 0.8).unwrap() - plain).abs() < 1e-12 * plain);
    }

    #[test]
    fn primitive_matches_averages() {
        assert!((weight_average(-0.5, 0.5, 3.0) - 1.0).abs() < 1e-15);
        // int_1^4 x^0.5 = (8 - 1) / 1.5
        assert!((weight_average(1.0, 4.0, 0.5) - (7.0 / 1.5) / 3.0).abs() < 1e-14);
        assert!((weight_average(-4.0, -1.0, 0.5) - (7.0 / 1.5) / 3.0).abs() < 1e-14);
        assert!((weight_average(1.0, std::f64::consts::E, -1.0) - 1.0 / (std::f64::consts::E - 1.0)).abs() < 1e-14);
    }

    #[test]
    fn a2_of_constant_weight_is_one() {
        assert!((a2_constant(0.0, &A2Family::on_grid(&g())) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn unweighted_riesz_products_contract() {
        let f = RealField2D::from_fn(g(), |x, y| (x + 0.5 * y).sin() * (-y * y / 8.0).exp());
        for op in RieszOp::ALL {
            let r = weighted_operator_ratio(&f, 0.0, op).unwrap();
            assert!(r.ratio <= 1.0 + 1e-10, "{op:?} {}", r.ratio);
        }
        let z = weighted_operator_ratio(&RealField2D::zeros(g()), 0.5, RieszOp::R12).unwrap();
        assert!(z.degenerate);
    }
}
