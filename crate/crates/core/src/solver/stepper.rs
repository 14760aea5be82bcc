use std::sync::Arc;

use rayon::prelude::*;

use super::params::{CflOptions, SolverParams};
use super::rhs::nonlinear;
use super::state::MhdState;
use crate::error::Result;
use crate::spectral::{gradient_l2_norm_k, inverse_vector, lp_norm, Grid, VectorFieldK};

/// One completed step.
#[derive(Debug, Clone)]
pub struct StepOutcome {
    pub state: MhdState,
    /// `∫ (ν‖∇u‖² + η‖∇b‖²) dt` over the step, with the same RK4 weights as
    /// the state update so that the discrete energy budget closes to the
    /// order of the scheme.
    pub dissipation: f64,
}

/// Integrating-factor (Lawson) RK4 for a fixed `dt`. Diffusion is applied
/// exactly through `e^{-ν|k|²h}` and `e^{-η|k|²h}`.
#[derive(Debug, Clone)]
pub struct Stepper {
    params: SolverParams,
    grid: Arc<Grid>,
    u_half: Vec<f64>,
    u_full: Vec<f64>,
    b_half: Vec<f64>,
    b_full: Vec<f64>,
}

fn decay(grid: &Grid, rate: f64, h: f64) -> Vec<f64> {
    (0..grid.len()).into_par_iter().map(|i| (-rate * grid.k2(i) * h).exp()).collect()
}

/// `sum_k c_k * E_k ⊙ v_k` mode by mode.
fn lincomb(terms: &[(f64, Option<&[f64]>, &VectorFieldK)]) -> VectorFieldK {
    let grid = terms[0].2.grid().clone();
    VectorFieldK::zeros(&grid).map_modes(|idx, _| {
        let mut out = [num_complex::Complex64::default(); 3];
        for (c, e, v) in terms {
            let w = c * e.map_or(1.0, |e| e[idx]);
            for a in 0..3 {
                out[a] += v.comps()[a][idx] * w;
            }
        }
        out
    })
}

impl Stepper {
    pub fn new(grid: &Arc<Grid>, params: SolverParams) -> Result<Self> {
        params.validate()?;
        let h = params.dt;
        Ok(Stepper {
            params,
            grid: grid.clone(),
            u_half: decay(grid, params.nu, 0.5 * h),
            u_full: decay(grid, params.nu, h),
            b_half: decay(grid, params.eta, 0.5 * h),
            b_full: decay(grid, params.eta, h),
        })
    }

    pub fn params(&self) -> &SolverParams {
        &self.params
    }

    fn dissipation_rate(&self, u: &VectorFieldK, b: &VectorFieldK) -> f64 {
        self.params.nu * gradient_l2_norm_k(u).powi(2) + self.params.eta * gradient_l2_norm_k(b).powi(2)
    }

    /// Advances by `dt`. The result is rebuilt from its physical samples, so
    /// it is canonical. Fails with `BlowUpSuspected` on non-finite output.
    pub fn step(&self, state: &MhdState) -> Result<StepOutcome> {
        crate::spectral::same_grid(state.grid(), &self.grid)?;
        let h = self.params.dt;
        let (eu2, eu) = (Some(self.u_half.as_slice()), Some(self.u_full.as_slice()));
        let (eb2, eb) = (Some(self.b_half.as_slice()), Some(self.b_full.as_slice()));
        let (u0, b0) = (state.u_hat(), state.b_hat());

        let (ku1, kb1) = nonlinear(u0, b0);
        let u2 = lincomb(&[(1.0, eu2, u0), (0.5 * h, eu2, &ku1)]);
        let b2 = lincomb(&[(1.0, eb2, b0), (0.5 * h, eb2, &kb1)]);
        let (ku2, kb2) = nonlinear(&u2, &b2);
        let u3 = lincomb(&[(1.0, eu2, u0), (0.5 * h, None, &ku2)]);
        let b3 = lincomb(&[(1.0, eb2, b0), (0.5 * h, None, &kb2)]);
        let (ku3, kb3) = nonlinear(&u3, &b3);
        let u4 = lincomb(&[(1.0, eu, u0), (h, eu2, &ku3)]);
        let b4 = lincomb(&[(1.0, eb, b0), (h, eb2, &kb3)]);
        let (ku4, kb4) = nonlinear(&u4, &b4);

        let w = h / 6.0;
        let u_new = lincomb(&[(1.0, eu, u0), (w, eu, &ku1), (2.0 * w, eu2, &ku2), (2.0 * w, eu2, &ku3), (w, None, &ku4)]);
        let b_new = lincomb(&[(1.0, eb, b0), (w, eb, &kb1), (2.0 * w, eb2, &kb2), (2.0 * w, eb2, &kb3), (w, None, &kb4)]);

        let dissipation = w
            * (self.dissipation_rate(u0, b0)
                + 2.0 * self.dissipation_rate(&u2, &b2)
                + 2.0 * self.dissipation_rate(&u3, &b3)
                + self.dissipation_rate(&u4, &b4));

        let next = MhdState::from_physical(inverse_vector(&u_new), inverse_vector(&b_new), state.t() + h)?;
        next.check_finite()?;
        if !dissipation.is_finite() {
            return Err(crate::Error::BlowUpSuspected { t: next.t(), reason: "non-finite dissipation".into() });
        }
        Ok(StepOutcome { state: next, dissipation })
    }
}

/// One step with fresh integrating factors. Warns when `dt` exceeds the
/// CFL suggestion.
pub fn step(state: &MhdState, params: &SolverParams) -> Result<MhdState> {
    let suggested = suggest_dt(state, &CflOptions::default());
    if params.dt > suggested {
        log::warn!("dt = {} exceeds the CFL suggestion {suggested}", params.dt);
    }
    Ok(Stepper::new(state.grid(), *params)?.step(state)?.state)
}

/// `c · (l/n) / max(‖u‖_∞, ‖b‖_∞, floor)`, capped at `dt_max`.
pub fn suggest_dt(state: &MhdState, opts: &CflOptions) -> f64 {
    let sup = |v| lp_norm(v, f64::INFINITY).expect("p = ∞ is valid");
    let speed = sup(state.u()).max(sup(state.b())).max(opts.speed_floor);
    (opts.courant * state.grid().spacing() / speed).min(opts.dt_max)
}
