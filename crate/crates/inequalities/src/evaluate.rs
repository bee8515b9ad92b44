//! Left and right sides of every case, without constants.

use fracns_core::multiplier::{lambda1_pow, lambda_pow, partial_derivative, project_out_xi1_zero, ZeroModePolicy};
use fracns_core::norms::{l2_norm, lp_norm, mixed_norm, sobolev_norm_spectral, MixedNormSpec};
use fracns_core::operators::{frac_heat_propagate, perp_gradient_spectral, pressure_poisson, velocity_advection_spectral};
use fracns_core::weights::{truncated_power, weighted_l2, weighted_l2_1d, weighted_operator_ratio};
use fracns_core::{forward_transform, inverse_transform, Axis, Provenance, RatioReport, RealField2D, SpectralField2D};

use crate::cases::{recip, InputShape, LemmaCase};
use crate::decay::{decay_integral, DecayBranch};
use crate::error::{Result, SuiteError};

/// A one-dimensional section `f(x_j)` with its derivative.
#[derive(Debug, Clone, PartialEq)]
pub struct Section {
    pub f: Vec<f64>,
    pub df: Vec<f64>,
    pub coords: Vec<f64>,
    pub h: f64,
}

impl Section {
    /// The `x2`-section of `f` through grid column `i`, derivative taken
    /// spectrally in two dimensions.
    pub fn of_field(f: &RealField2D, i: usize) -> Self {
        let g = *f.grid();
        let df = inverse_transform(&partial_derivative(&forward_transform(f), Axis::X2, 1));
        Self {
            f: f.x2_section(i),
            df: df.x2_section(i),
            coords: g.coords(Axis::X2),
            h: g.h2(),
        }
    }

    pub fn scale(&self, c: f64) -> Self {
        Self {
            f: self.f.iter().map(|v| c * v).collect(),
            df: self.df.iter().map(|v| c * v).collect(),
            ..self.clone()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LemmaInputs {
    None,
    One(RealField2D),
    Two(RealField2D, RealField2D),
    Section(Section),
}

impl LemmaInputs {
    fn shape(&self) -> &'static str {
        match self {
            LemmaInputs::None => "no inputs",
            LemmaInputs::One(_) => "one field",
            LemmaInputs::Two(..) => "two fields",
            LemmaInputs::Section(_) => "a section",
        }
    }
}

fn pow_policy(a: f64) -> ZeroModePolicy {
    if a < 0.0 {
        ZeroModePolicy::ProjectOut
    } else {
        ZeroModePolicy::KeepUnchanged
    }
}

fn lam(f: &SpectralField2D, a: f64) -> Result<SpectralField2D> {
    Ok(lambda_pow(f, a, pow_policy(a))?)
}

fn d(f: &SpectralField2D, axis: Axis, order: u32) -> SpectralField2D {
    partial_derivative(f, axis, order)
}

fn phys(f: &SpectralField2D) -> RealField2D {
    inverse_transform(f)
}

fn axis(l: u8) -> Axis {
    if l == 1 {
        Axis::X1
    } else {
        Axis::X2
    }
}

/// Checks the lemma's hypotheses, then evaluates.
pub fn evaluate_ratio(case: &LemmaCase, inputs: &LemmaInputs, provenance: Provenance) -> Result<RatioReport> {
    case.validate()?;
    evaluate_unchecked(case, inputs, provenance)
}

/// Evaluates without the hypothesis check. Used for negative controls,
/// whose parameters lie outside the lemma on purpose.
pub fn evaluate_unchecked(case: &LemmaCase, inputs: &LemmaInputs, provenance: Provenance) -> Result<RatioReport> {
    let (lhs, rhs) = sides(case, inputs)?;
    Ok(RatioReport::new(case.id(), case.params(), lhs, rhs, provenance))
}

fn mismatch(case: &LemmaCase, inputs: &LemmaInputs) -> SuiteError {
    SuiteError::Inputs {
        lemma: case.id().into(),
        reason: format!("expected {:?}, got {}", case.shape(), inputs.shape()),
    }
}

fn one<'a>(case: &LemmaCase, inputs: &'a LemmaInputs) -> Result<&'a RealField2D> {
    match inputs {
        LemmaInputs::One(f) => Ok(f),
        _ => Err(mismatch(case, inputs)),
    }
}

fn two<'a>(case: &LemmaCase, inputs: &'a LemmaInputs) -> Result<(&'a RealField2D, &'a RealField2D)> {
    match inputs {
        LemmaInputs::Two(f, g) if f.grid().same_shape(g.grid()) => Ok((f, g)),
        LemmaInputs::Two(..) => Err(SuiteError::Inputs {
            lemma: case.id().into(),
            reason: "fields live on different grids".into(),
        }),
        _ => Err(mismatch(case, inputs)),
    }
}

fn section<'a>(case: &LemmaCase, inputs: &'a LemmaInputs) -> Result<&'a Section> {
    match inputs {
        LemmaInputs::Section(s) if s.f.len() == s.df.len() && s.f.len() == s.coords.len() => Ok(s),
        LemmaInputs::Section(_) => Err(SuiteError::Inputs {
            lemma: case.id().into(),
            reason: "section arrays differ in length".into(),
        }),
        _ => Err(mismatch(case, inputs)),
    }
}

/// `||E [x2]^eta v||` for a spectral vector field `v`, `E` the decaying semigroup.
fn weighted_vec(v: &[SpectralField2D], eta: f64, nu: f64, s: f64, lag: f64) -> Result<f64> {
    let mut sq = 0.0;
    for c in v {
        let e = frac_heat_propagate(c, nu, s, lag)?;
        sq += weighted_l2(&phys(&e), eta)?.powi(2);
    }
    Ok(sq.sqrt())
}

fn sides(case: &LemmaCase, inputs: &LemmaInputs) -> Result<(f64, f64)> {
    use LemmaCase::*;
    Ok(match *case {
        L21 => {
            let (f, g) = two(case, inputs)?;
            let lhs = mixed_norm(&f.mul(g)?, &MixedNormSpec::x1_then_x2(1.0, 2.0)?);
            let d2f = l2_norm(&phys(&d(&forward_transform(f), Axis::X2, 1)));
            (lhs, (l2_norm(f) * d2f).sqrt() * l2_norm(g))
        }
        L22 => {
            let (f, g) = two(case, inputs)?;
            let d1f = l2_norm(&phys(&d(&forward_transform(f), Axis::X1, 1)));
            let d2g = l2_norm(&phys(&d(&forward_transform(g), Axis::X2, 1)));
            (l2_norm(&f.mul(g)?), (l2_norm(f) * d1f * l2_norm(g) * d2g).sqrt())
        }
        L23 { s1, s2 } => {
            let (f, g) = two(case, inputs)?;
            let s = s1 + s2 - 1.0;
            let lhs = lam(&forward_transform(&f.mul(g)?), s)?.l2_norm();
            let rhs = lam(&forward_transform(f), s1)?.l2_norm() * lam(&forward_transform(g), s2)?.l2_norm();
            (lhs, rhs)
        }
        L24A { m } => {
            let (f, g) = two(case, inputs)?;
            let lhs = lam(&forward_transform(&f.mul(g)?), m)?.l2_norm();
            let mf = phys(&lam(&forward_transform(f), m)?);
            let mg = phys(&lam(&forward_transform(g), m)?);
            (lhs, l2_norm(&mf.mul(g)?) + l2_norm(&f.mul(&mg)?))
        }
        L24B { m1, m2 } => {
            let (f, g) = two(case, inputs)?;
            let lhs = lam(&lam(&forward_transform(&f.mul(g)?), m2)?, m1)?.l2_norm();
            let mf = phys(&lam(&forward_transform(f), m2)?);
            let mg = phys(&lam(&forward_transform(g), m2)?);
            let a = lam(&forward_transform(&mf.mul(g)?), m1)?.l2_norm();
            let b = lam(&forward_transform(&f.mul(&mg)?), m1)?.l2_norm();
            (lhs, a + b)
        }
        L25 { rho, p } => {
            let f = one(case, inputs)?;
            let q = case.derived().unwrap_or(f64::NAN);
            let lf = phys(&lambda_pow(&forward_transform(f), -rho, ZeroModePolicy::ProjectOut)?);
            (lp_norm(&lf, q), lp_norm(f, p))
        }
        L26 { sigma } => {
            let (f, g) = two(case, inputs)?;
            let lhs = lambda1_pow(&forward_transform(&f.mul(g)?), -sigma, ZeroModePolicy::ProjectOut)?.l2_norm();
            let fs = forward_transform(f);
            let d1 = d(&fs, Axis::X1, 1).l2_norm();
            let d2 = d(&fs, Axis::X2, 1).l2_norm();
            let rhs = d2.sqrt() * fs.l2_norm().powf(sigma) * d1.powf(0.5 - sigma) * l2_norm(g);
            (lhs, rhs)
        }
        L27 { sigma, s, nu, p, q, t } => {
            let f = project_out_xi1_zero(&forward_transform(one(case, inputs)?));
            let e = frac_heat_propagate(&f, nu, s, t)?;
            let lf = phys(&lambda1_pow(&e, sigma, ZeroModePolicy::KeepUnchanged)?);
            let lhs = mixed_norm(&lf, &MixedNormSpec::x1_then_x2(q, 2.0)?);
            let rate = -sigma / (2.0 * s) - (recip(p) - recip(q)) / (2.0 * s);
            let rhs = t.powf(rate) * mixed_norm(&phys(&f), &MixedNormSpec::x1_then_x2(p, 2.0)?);
            (lhs, rhs)
        }
        Dec { alpha, beta, t } => {
            if !matches!(inputs, LemmaInputs::None) {
                return Err(mismatch(case, inputs));
            }
            let b = DecayBranch::classify(alpha, beta)?;
            (decay_integral(alpha, beta, t)?, b.envelope(alpha, beta, t))
        }
        L29 { gamma1, gamma2 } => {
            let f = one(case, inputs)?;
            (weighted_l2(f, gamma1)?, weighted_l2(f, gamma2)?)
        }
        L210 { gamma } => {
            let s = section(case, inputs)?;
            (
                weighted_l2_1d(&s.f, &s.coords, s.h, gamma),
                weighted_l2_1d(&s.df, &s.coords, s.h, gamma + 1.0),
            )
        }
        L211 { zeta, theta } => {
            let s = section(case, inputs)?;
            let lhs = s
                .f
                .iter()
                .zip(&s.coords)
                .map(|(v, &x)| truncated_power(x, zeta) * v.abs())
                .fold(0.0, f64::max);
            let w = |v: &[f64], g: f64| weighted_l2_1d(v, &s.coords, s.h, g);
            let rhs = w(&s.f, zeta - 0.5) + (w(&s.f, zeta - theta) * w(&s.df, zeta + theta)).sqrt();
            (lhs, rhs)
        }
        L212 { kappa, op } => {
            let r = weighted_operator_ratio(one(case, inputs)?, kappa, op)?;
            (r.lhs, r.rhs)
        }
        L31 { s, k, ell } => {
            let f = one(case, inputs)?;
            let fs = forward_transform(f);
            let a = axis(ell);
            let top = phys(&d(&fs, a, k));
            let cell = f.grid().cell_area();
            let mut sum = 0.0;
            for beta in 1..=k {
                let x = phys(&d(&fs, a, beta));
                let y = phys(&d(&d(&fs, a, k - beta), Axis::X1, 1));
                sum += x
                    .data()
                    .iter()
                    .zip(y.data())
                    .zip(top.data())
                    .map(|((x, y), z)| x * y * z)
                    .sum::<f64>();
            }
            let ls = sobolev_norm_spectral(&lambda1_pow(&fs, s, ZeroModePolicy::KeepUnchanged)?, k);
            ((sum * cell).abs(), sobolev_norm_spectral(&fs, k) * ls * ls)
        }
        L51A { eta, s, nu, lag } | L51B { eta, s, nu, lag, .. } => {
            let psi = forward_transform(one(case, inputs)?);
            let u = perp_gradient_spectral(&psi).to_physical();
            let n = velocity_advection_spectral(&u);
            let p = forward_transform(&pressure_poisson(&u)?);
            let (num, den) = match *case {
                L51B { i, .. } => {
                    let ai = axis(i);
                    (
                        vec![d(&d(&p, Axis::X1, 1), ai, 1), d(&d(&p, Axis::X2, 1), ai, 1)],
                        vec![d(&n.u1, ai, 1), d(&n.u2, ai, 1)],
                    )
                }
                _ => (vec![d(&p, Axis::X1, 1), d(&p, Axis::X2, 1)], vec![n.u1, n.u2]),
            };
            (weighted_vec(&num, eta, nu, s, lag)?, weighted_vec(&den, eta, nu, s, lag)?)
        }
    })
}

/// Builds the inputs a case expects from one or two sampled fields.
/// Sections go through the central `x1` column.
pub fn inputs_for(case: &LemmaCase, f: RealField2D, g: Option<RealField2D>) -> Result<LemmaInputs> {
    Ok(match case.shape() {
        InputShape::None => LemmaInputs::None,
        InputShape::One | InputShape::Stream => LemmaInputs::One(f),
        InputShape::Two => match g {
            Some(g) => LemmaInputs::Two(f, g),
            None => {
                return Err(SuiteError::Inputs {
                    lemma: case.id().into(),
                    reason: "needs two fields".into(),
                })
            }
        },
        InputShape::Section => {
            let i = f.grid().n1() / 2;
            LemmaInputs::Section(Section::of_field(&f, i))
        }
    })
}
