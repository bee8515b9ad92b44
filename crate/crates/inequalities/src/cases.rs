//! The inequalities under test, one variant per lemma, with the parameter
//! ranges each one is stated for.

use std::collections::BTreeMap;

use fracns_core::weights::RieszOp;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SuiteError};

/// A lemma together with its parameters. Exponents written as `f64::INFINITY`
/// stand for `L^inf`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "lemma")]
pub enum LemmaCase {
    /// `||fg||_{L^1_{x1} L^2_{x2}} <= C ||f||^{1/2} ||d2 f||^{1/2} ||g||`.
    L21,
    /// `||fg|| <= C ||f||^{1/2} ||d1 f||^{1/2} ||g||^{1/2} ||d2 g||^{1/2}`.
    L22,
    /// `||Lambda^s (fg)|| <= C ||Lambda^{s1} f|| ||Lambda^{s2} g||` with
    /// `s + 1 = s1 + s2` in two dimensions.
    L23 { s1: f64, s2: f64 },
    /// `||Lambda^m (fg)|| <= C ||(Lambda^m f) g|| + C ||f Lambda^m g||`.
    L24A { m: f64 },
    /// The same with an outer `Lambda^{m1}` and inner `Lambda^{m2}`.
    L24B { m1: f64, m2: f64 },
    /// `||Lambda^{-rho} f||_{L^q} <= C ||f||_{L^p}` with `1/q + rho/2 = 1/p`.
    L25 { rho: f64, p: f64 },
    /// `||Lambda_1^{-sigma}(fg)|| <= C ||d2 f||^{1/2} ||f||^sigma ||d1 f||^{1/2-sigma} ||g||`.
    L26 { sigma: f64 },
    /// `||Lambda_1^sigma e^{-nu Lambda_1^{2s} t} f||_{L^q_{x1} L^2_{x2}}
    /// <= C t^{-sigma/2s - (1/p - 1/q)/2s} ||f||_{L^p_{x1} L^2_{x2}}`.
    L27 { sigma: f64, s: f64, nu: f64, p: f64, q: f64, t: f64 },
    /// The convolution integral against its envelope at one time `t`.
    Dec { alpha: f64, beta: f64, t: f64 },
    /// `||[x2]^{gamma1} f|| <= ||[x2]^{gamma2} f||`.
    L29 { gamma1: f64, gamma2: f64 },
    /// `||[x]^gamma f|| <= C ||[x]^{gamma+1} f'||` on a line.
    L210 { gamma: f64 },
    /// `||[x]^zeta f||_inf <= C ||[x]^{zeta-1/2} f||
    /// + C ||[x]^{zeta-theta} f||^{1/2} ||[x]^{zeta+theta} f'||^{1/2}` on a line.
    L211 { zeta: f64, theta: f64 },
    /// `int |T f|^2 [x2]^kappa <= C int |f|^2 [x2]^kappa`.
    L212 { kappa: f64, op: RieszOp },
    /// `|sum_beta int d_l^beta f d1 d_l^{k-beta} f d_l^k f| <= C ||f||_{H^k} ||Lambda_1^s f||_{H^k}^2`.
    L31 { s: f64, k: u32, ell: u8 },
    /// `||E [x2]^eta grad p|| <= C ||E [x2]^eta (u.grad u)||` with
    /// `E = e^{-nu Lambda_1^{2s} lag}`.
    L51A { eta: f64, s: f64, nu: f64, lag: f64 },
    /// `||E [x2]^eta grad d_i p|| <= C ||E [x2]^eta d_i (u.grad u)||`.
    L51B { eta: f64, s: f64, nu: f64, lag: f64, i: u8 },
}

/// What a case consumes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputShape {
    None,
    One,
    Two,
    /// An `x2`-section and its derivative.
    Section,
    /// A stream function; the velocity is its perpendicular gradient.
    Stream,
}

fn hyp(lemma: &str, violated: impl Into<String>) -> SuiteError {
    SuiteError::Hypothesis {
        lemma: lemma.to_string(),
        violated: violated.into(),
    }
}

fn check(ok: bool, lemma: &str, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(hyp(lemma, what))
    }
}

/// `1/p` with `1/inf = 0`.
pub(crate) fn recip(p: f64) -> f64 {
    if p.is_infinite() {
        0.0
    } else {
        1.0 / p
    }
}

impl LemmaCase {
    pub fn id(&self) -> &'static str {
        match self {
            LemmaCase::L21 => "L21",
            LemmaCase::L22 => "L22",
            LemmaCase::L23 { .. } => "L23",
            LemmaCase::L24A { .. } => "L24A",
            LemmaCase::L24B { .. } => "L24B",
            LemmaCase::L25 { .. } => "L25",
            LemmaCase::L26 { .. } => "L26",
            LemmaCase::L27 { .. } => "L27",
            LemmaCase::Dec { .. } => "DEC",
            LemmaCase::L29 { .. } => "L29",
            LemmaCase::L210 { .. } => "L210",
            LemmaCase::L211 { .. } => "L211",
            LemmaCase::L212 { .. } => "L212",
            LemmaCase::L31 { .. } => "L31",
            LemmaCase::L51A { .. } => "L51A",
            LemmaCase::L51B { .. } => "L51B",
        }
    }

    pub fn shape(&self) -> InputShape {
        match self {
            LemmaCase::Dec { .. } => InputShape::None,
            LemmaCase::L21 | LemmaCase::L22 | LemmaCase::L23 { .. } | LemmaCase::L24A { .. } => InputShape::Two,
            LemmaCase::L24B { .. } | LemmaCase::L26 { .. } => InputShape::Two,
            LemmaCase::L210 { .. } | LemmaCase::L211 { .. } => InputShape::Section,
            LemmaCase::L51A { .. } | LemmaCase::L51B { .. } => InputShape::Stream,
            _ => InputShape::One,
        }
    }

    /// `s = s1 + s2 - 1` for L23, `q` for L25.
    pub fn derived(&self) -> Option<f64> {
        match *self {
            LemmaCase::L23 { s1, s2 } => Some(s1 + s2 - 1.0),
            LemmaCase::L25 { rho, p } => Some(1.0 / (1.0 / p - 0.5 * rho)),
            _ => None,
        }
    }

    pub fn params(&self) -> BTreeMap<String, f64> {
        let mut m = BTreeMap::new();
        let mut put = |k: &str, v: f64| {
            m.insert(k.to_string(), v);
        };
        match *self {
            LemmaCase::L21 | LemmaCase::L22 => {}
            LemmaCase::L23 { s1, s2 } => {
                put("s1", s1);
                put("s2", s2);
                put("s", s1 + s2 - 1.0);
            }
            LemmaCase::L24A { m } => put("m", m),
            LemmaCase::L24B { m1, m2 } => {
                put("m1", m1);
                put("m2", m2);
            }
            LemmaCase::L25 { rho, p } => {
                put("rho", rho);
                put("p", p);
                put("q", self.derived().unwrap_or(f64::NAN));
            }
            LemmaCase::L26 { sigma } => put("sigma", sigma),
            LemmaCase::L27 { sigma, s, nu, p, q, t } => {
                put("sigma", sigma);
                put("s", s);
                put("nu", nu);
                put("p", p);
                put("q", q);
                put("t", t);
            }
            LemmaCase::Dec { alpha, beta, t } => {
                put("alpha", alpha);
                put("beta", beta);
                put("t", t);
            }
            LemmaCase::L29 { gamma1, gamma2 } => {
                put("gamma1", gamma1);
                put("gamma2", gamma2);
            }
            LemmaCase::L210 { gamma } => put("gamma", gamma),
            LemmaCase::L211 { zeta, theta } => {
                put("zeta", zeta);
                put("theta", theta);
            }
            LemmaCase::L212 { kappa, op } => {
                put("kappa", kappa);
                put(
                    "op",
                    match op {
                        RieszOp::R11 => 11.0,
                        RieszOp::R12 => 12.0,
                        RieszOp::R22 => 22.0,
                    },
                );
            }
            LemmaCase::L31 { s, k, ell } => {
                put("s", s);
                put("k", k as f64);
                put("ell", ell as f64);
            }
            LemmaCase::L51A { eta, s, nu, lag } => {
                put("eta", eta);
                put("s", s);
                put("nu", nu);
                put("lag", lag);
            }
            LemmaCase::L51B { eta, s, nu, lag, i } => {
                put("eta", eta);
                put("s", s);
                put("nu", nu);
                put("lag", lag);
                put("i", i as f64);
            }
        }
        m
    }

    /// Checks the lemma's stated parameter range. Only strictly interior
    /// parameters are accepted where the lemma uses strict inequalities.
    pub fn validate(&self) -> Result<()> {
        let id = self.id();
        let finite = self.params().values().all(|v| v.is_finite() || v.is_infinite());
        check(finite, id, "parameters must not be NaN")?;
        match *self {
            LemmaCase::L21 | LemmaCase::L22 => Ok(()),
            LemmaCase::L23 { s1, s2 } => {
                check(s1 < 1.0 && s2 < 1.0, id, "s1, s2 < d/2 = 1")?;
                check(s1 + s2 > 0.0, id, "s1 + s2 > 0")
            }
            LemmaCase::L24A { m } => check(m > 0.0 && m.is_finite(), id, "m > 0"),
            LemmaCase::L24B { m1, m2 } => {
                check(m1.is_finite(), id, "m1 real")?;
                check(m2 > 0.0 && m2.is_finite(), id, "m2 > 0")
            }
            LemmaCase::L25 { rho, p } => {
                check(rho > 0.0 && rho < 2.0, id, "0 < rho < d = 2")?;
                check(p > 1.0 && p.is_finite(), id, "1 < p")?;
                let q = self.derived().unwrap_or(f64::NAN);
                check(q.is_finite() && q > p, id, "p < q < inf with 1/q + rho/d = 1/p")
            }
            LemmaCase::L26 { sigma } => check(sigma > 0.25 && sigma < 0.5, id, "1/4 < sigma < 1/2"),
            LemmaCase::L27 { sigma, s, nu, p, q, t } => {
                check(sigma >= 0.0 && sigma.is_finite(), id, "sigma >= 0")?;
                check(s > 0.0 && s.is_finite(), id, "alpha = s > 0")?;
                check(nu > 0.0 && nu.is_finite(), id, "nu > 0")?;
                check(p >= 1.0 && p <= q, id, "1 <= p <= q <= inf")?;
                check(t > 0.0 && t.is_finite(), id, "t > 0")
            }
            LemmaCase::Dec { alpha, beta, t } => {
                crate::decay::DecayBranch::classify(alpha, beta)?;
                check(t.is_finite(), id, "t finite")?;
                if alpha >= 1.0 {
                    check(t > 1.0, id, "t > 1")
                } else {
                    check(t > 0.0, id, "t > 0")
                }
            }
            LemmaCase::L29 { gamma1, gamma2 } => {
                check(gamma1.is_finite() && gamma2.is_finite(), id, "finite exponents")?;
                check(gamma1 <= gamma2, id, "gamma1 <= gamma2")
            }
            LemmaCase::L210 { gamma } => check(gamma > 0.0 && gamma <= 1.0, id, "0 < gamma <= 1"),
            LemmaCase::L211 { zeta, theta } => {
                check(zeta > 0.0 && zeta.is_finite(), id, "zeta > 0")?;
                check(theta.is_finite(), id, "theta real")
            }
            LemmaCase::L212 { kappa, .. } => check(kappa > -1.0 && kappa < 1.0, id, "-1 < kappa < 1"),
            LemmaCase::L31 { s, k, ell } => {
                check((0.0..=0.75).contains(&s), id, "0 <= s <= 3/4")?;
                check(k >= 3, id, "k >= 3")?;
                check(ell == 1 || ell == 2, id, "l in {1, 2}")
            }
            LemmaCase::L51A { eta, s, nu, lag } | LemmaCase::L51B { eta, s, nu, lag, .. } => {
                check(eta > 0.5 && eta < 1.5, id, "1/2 < eta < 3/2")?;
                check((0.0..=1.0).contains(&s), id, "0 <= s <= 1")?;
                check(nu > 0.0 && nu.is_finite(), id, "nu > 0")?;
                check(lag >= 0.0 && lag.is_finite(), id, "t - tau >= 0")?;
                if let LemmaCase::L51B { i, .. } = *self {
                    check(i == 1 || i == 2, id, "i in {1, 2}")?;
                }
                Ok(())
            }
        }
    }

    /// Short label with the parameters, e.g. `L23[s1=0.5,s2=0.5,s=0]`.
    pub fn label(&self) -> String {
        let p = self.params();
        if p.is_empty() {
            return self.id().to_string();
        }
        // derived values are rounded so `0.3 + 0.6 - 1` prints as `-0.1`
        let body: Vec<String> = p
            .iter()
            .map(|(k, v)| format!("{k}={}", (v * 1e12).round() / 1e12))
            .collect();
        format!("{}[{}]", self.id(), body.join(","))
    }
}

/// Interior parameter sets for every field-based lemma.
pub fn interior_cases() -> Vec<LemmaCase> {
    let mut v = vec![
        LemmaCase::L21,
        LemmaCase::L22,
        LemmaCase::L23 { s1: 0.5, s2: 0.5 },
        LemmaCase::L23 { s1: 0.75, s2: 0.5 },
        LemmaCase::L24A { m: 1.5 },
        LemmaCase::L24B { m1: -0.5, m2: 1.0 },
        LemmaCase::L25 { rho: 0.5, p: 1.6 },
        LemmaCase::L26 { sigma: 0.4 },
    ];
    for t in [0.1, 1.0, 10.0] {
        v.push(LemmaCase::L27 {
            sigma: 0.5,
            s: 0.8,
            nu: 1.0,
            p: 1.5,
            q: 3.0,
            t,
        });
    }
    v.push(LemmaCase::L29 { gamma1: 0.1, gamma2: 0.3 });
    v.push(LemmaCase::L210 { gamma: 0.5 });
    v.push(LemmaCase::L211 { zeta: 0.5, theta: 0.25 });
    for op in RieszOp::ALL {
        v.push(LemmaCase::L212 { kappa: 0.5, op });
    }
    for s in [0.0, 0.25, 0.5, 0.75] {
        for ell in [1, 2] {
            v.push(LemmaCase::L31 { s, k: 3, ell });
        }
    }
    for lag in [0.0, 0.1, 1.0, 10.0] {
        v.push(LemmaCase::L51A {
            eta: 1.0,
            s: 0.8,
            nu: 1.0,
            lag,
        });
        for i in [1, 2] {
            v.push(LemmaCase::L51B {
                eta: 1.0,
                s: 0.8,
                nu: 1.0,
                lag,
                i,
            });
        }
    }
    v
}
