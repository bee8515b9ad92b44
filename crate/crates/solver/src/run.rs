use fracns_core::operators::biot_savart_spectral;
use fracns_core::SpectralField2D;

use crate::config::{SolverConfig, TimeStep};
use crate::diagnostics::{compute_record, DiagnosticsRecord, ModeWeights};
use crate::error::{Result, SolverError};
use crate::state::SimState;
use crate::stepper::Stepper;

/// Growth factor of `||u||_{H^k}` over its initial value that flags a run.
pub const INSTABILITY_FACTOR: f64 = 10.0;

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub records: Vec<DiagnosticsRecord>,
    pub final_state: SimState,
    pub steps: usize,
    /// `||u||_{H^k}` exceeded [`INSTABILITY_FACTOR`] times its initial value.
    pub instability_candidate: bool,
    /// Set when the state went non-finite; `records` then ends at the last
    /// finite diagnostic.
    pub aborted: Option<SolverError>,
}

fn is_finite(w: &SpectralField2D) -> bool {
    w.coeffs().iter().all(|c| c.re.is_finite() && c.im.is_finite())
}

fn max_speed(w: &SpectralField2D) -> f64 {
    biot_savart_spectral(w).to_physical().max_speed()
}

/// Integrates to `t_end`, recording diagnostics at step 0, every
/// `diag_stride` steps, and at the final step. The dissipation integrals
/// use the trapezoid rule on every step.
pub fn run(state: SimState, config: &SolverConfig) -> Result<RunOutput> {
    config.validate()?;
    let params = state.params;
    let weights = ModeWeights::new(state.omega_hat.grid(), &params);
    let g = *state.omega_hat.grid();
    let hmin = g.h1().min(g.h2());

    let mut omega = state.omega_hat.clone();
    let t0 = state.t;
    let t_end = config.t_end;
    let mut t = t0;
    let (mut diss, mut diss_hk) = (0.0, 0.0);
    let mut d_prev = weights.dissipation(&omega);
    let mut dk_prev = weights.hk_dissipation(&omega);

    let first = compute_record(t, &omega, &params, 0.0, 0.0)?;
    let hk0 = first.get("hk_u").unwrap_or(0.0);
    let mut records = vec![first];
    let mut instability = false;
    let mut steps = 0usize;
    let mut aborted = None;

    let fixed_n = match config.step {
        TimeStep::Fixed { dt } => Some(((t_end - t0) / dt - 1e-9).ceil().max(0.0) as usize),
        TimeStep::Auto { .. } => None,
    };
    let mut speed = max_speed(&omega);
    let mut stepper: Option<Stepper> = None;

    loop {
        let dt = match (config.step, fixed_n) {
            (TimeStep::Fixed { .. }, Some(n)) => {
                if steps >= n {
                    break;
                }
                (t_end - t0) / n as f64
            }
            (TimeStep::Auto { cfl, dt_max }, _) => {
                let remaining = t_end - t;
                if remaining <= 1e-12 * t_end.max(1.0) {
                    break;
                }
                let c = if speed > 0.0 { cfl * hmin / speed } else { dt_max };
                c.min(dt_max).min(remaining)
            }
            _ => unreachable!("fixed steps always have a count"),
        };
        if stepper.as_ref().is_none_or(|s| s.dt() != dt) {
            stepper = Some(Stepper::new(&omega, &params, dt)?);
        }
        let next = stepper.as_ref().expect("stepper set above").step(&omega);
        steps += 1;
        let t_next = match fixed_n {
            Some(n) => t0 + (t_end - t0) * steps as f64 / n as f64,
            None => t + dt,
        };
        if !is_finite(&next) {
            log::error!("non-finite state at t = {t_next}, aborting");
            aborted = Some(SolverError::NonFinite {
                t: t_next,
                last: records.last().cloned().map(Box::new),
            });
            break;
        }
        let d = weights.dissipation(&next);
        let dk = weights.hk_dissipation(&next);
        diss += 0.5 * dt * (d_prev + d);
        diss_hk += 0.5 * dt * (dk_prev + dk);
        d_prev = d;
        dk_prev = dk;
        omega = next;
        t = t_next;

        let last = match fixed_n {
            Some(n) => steps == n,
            None => t_end - t <= 1e-12 * t_end.max(1.0),
        };
        if steps % config.diag_stride == 0 || last {
            let rec = compute_record(t, &omega, &params, diss, diss_hk)?;
            let hk = rec.get("hk_u").unwrap_or(0.0);
            if hk.is_nan() || hk > INSTABILITY_FACTOR * hk0 {
                if !instability {
                    log::warn!("instability candidate at t = {t}: ||u||_Hk = {hk:e}, initial {hk0:e}");
                }
                instability = true;
            }
            records.push(rec);
            if matches!(config.step, TimeStep::Auto { .. }) {
                speed = max_speed(&omega);
            }
        }
    }

    Ok(RunOutput {
        records,
        final_state: SimState {
            t,
            omega_hat: omega,
            ..state
        },
        steps,
        instability_candidate: instability,
        aborted,
    })
}
