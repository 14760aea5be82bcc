use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::solver::{advect, t_term, MhdState, SolverParams, Stepper};
use crate::spectral::{
    curl, gradient_l2_norm_k, gradient_tensor, inverse_vector, l2_norm_k, lp_norm, same_grid, VectorFieldK,
    VectorFieldR,
};

/// Terms of the vorticity/current energy balance for one state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CancellationReport {
    /// `∫(u·∇)w·w`, `∫(u·∇)J·J`, `∫((b·∇)J·w + (b·∇)w·J)`, each divided by
    /// its natural size (see [`vanishing_integrals`]).
    pub vanishing: [f64; 3],
    /// The same integrals without scaling.
    pub raw: [f64; 3],
    /// `∫(w·∇)u·w`.
    pub i: f64,
    /// `∫(J·∇)u·J`.
    pub ii: f64,
    /// `-∫((J·∇)b·w + (w·∇)b·J)`.
    pub iii: f64,
    /// `∫T(b,u)·J`.
    pub iv: f64,
    /// `ν‖∇w‖² + η‖∇J‖²`.
    pub dissipation: f64,
    /// `I + II + III + 2 IV - dissipation`, the rate of `½(‖w‖² + ‖J‖²)`.
    pub enstrophy_rate: f64,
}

impl CancellationReport {
    pub fn max_vanishing(&self) -> f64 {
        self.vanishing.iter().copied().fold(0.0, f64::max)
    }
}

/// `∫ a·c` by grid quadrature.
fn integral(a: &VectorFieldR, c: &VectorFieldR) -> f64 {
    let mut acc = 0.0;
    for k in 0..3 {
        acc += a.comps()[k].iter().zip(&c.comps()[k]).map(|(x, y)| x * y).sum::<f64>();
    }
    acc * a.grid().cell_volume()
}

fn ratio(value: f64, scale: f64) -> f64 {
    if scale == 0.0 {
        value.abs()
    } else {
        value.abs() / scale
    }
}

struct Fields {
    u: VectorFieldR,
    b: VectorFieldR,
    w: VectorFieldR,
    j: VectorFieldR,
    gu: [VectorFieldR; 3],
    gb: [VectorFieldR; 3],
    gw: [VectorFieldR; 3],
    gj: [VectorFieldR; 3],
    w_hat: VectorFieldK,
    j_hat: VectorFieldK,
}

fn fields(u_hat: &VectorFieldK, b_hat: &VectorFieldK) -> Fields {
    let w_hat = curl(u_hat);
    let j_hat = curl(b_hat);
    Fields {
        u: inverse_vector(u_hat),
        b: inverse_vector(b_hat),
        w: inverse_vector(&w_hat),
        j: inverse_vector(&j_hat),
        gu: gradient_tensor(u_hat),
        gb: gradient_tensor(b_hat),
        gw: gradient_tensor(&w_hat),
        gj: gradient_tensor(&j_hat),
        w_hat,
        j_hat,
    }
}

fn vanishing(f: &Fields) -> ([f64; 3], [f64; 3]) {
    let sup = |v: &VectorFieldR| lp_norm(v, f64::INFINITY).expect("p = ∞ is valid");
    let (su, sb) = (sup(&f.u), sup(&f.b));
    let (nw, nj) = (l2_norm_k(&f.w_hat), l2_norm_k(&f.j_hat));
    let (gw, gj) = (gradient_l2_norm_k(&f.w_hat), gradient_l2_norm_k(&f.j_hat));

    let a1 = integral(&advect(&f.u, &f.gw), &f.w);
    let a2 = integral(&advect(&f.u, &f.gj), &f.j);
    let a3 = integral(&advect(&f.b, &f.gj), &f.w) + integral(&advect(&f.b, &f.gw), &f.j);
    let raw = [a1, a2, a3];
    let scaled = [ratio(a1, su * gw * nw), ratio(a2, su * gj * nj), ratio(a3, sb * (gj * nw + gw * nj))];
    (scaled, raw)
}

/// The three integrals that vanish by skew-symmetry of advection, relative
/// to `‖u‖_∞‖∇w‖_2‖w‖_2`, `‖u‖_∞‖∇J‖_2‖J‖_2` and
/// `‖b‖_∞(‖∇J‖_2‖w‖_2 + ‖∇w‖_2‖J‖_2)`. Works on arbitrary coefficients;
/// the quadrature is exact, and the integrals vanish to roundoff, only
/// when the inputs are band-limited to the 2/3 mask.
pub fn vanishing_integrals(u_hat: &VectorFieldK, b_hat: &VectorFieldK) -> Result<[f64; 3]> {
    same_grid(u_hat.grid(), b_hat.grid())?;
    Ok(vanishing(&fields(u_hat, b_hat)).0)
}

pub fn cancellation_checks(state: &MhdState, params: &SolverParams) -> CancellationReport {
    let f = fields(state.u_hat(), state.b_hat());
    let (vanishing, raw) = vanishing(&f);
    let i = integral(&advect(&f.w, &f.gu), &f.w);
    let ii = integral(&advect(&f.j, &f.gu), &f.j);
    let iii = -(integral(&advect(&f.j, &f.gb), &f.w) + integral(&advect(&f.w, &f.gb), &f.j));
    let iv = integral(&t_term(&f.gb, &f.gu), &f.j);
    let dissipation =
        params.nu * gradient_l2_norm_k(&f.w_hat).powi(2) + params.eta * gradient_l2_norm_k(&f.j_hat).powi(2);
    CancellationReport { vanishing, raw, i, ii, iii, iv, dissipation, enstrophy_rate: i + ii + iii + 2.0 * iv - dissipation }
}

/// `½(‖w‖² + ‖J‖²)`.
pub fn half_enstrophy(state: &MhdState) -> f64 {
    0.5 * (l2_norm_k(&curl(state.u_hat())).powi(2) + l2_norm_k(&curl(state.b_hat())).powi(2))
}

/// Balance rate versus a centred difference of `½(‖w‖² + ‖J‖²)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnstrophyRateCheck {
    pub t: f64,
    pub balance: f64,
    pub finite_difference: f64,
}

impl EnstrophyRateCheck {
    pub fn relative_error(&self) -> f64 {
        ratio(self.balance - self.finite_difference, self.balance.abs())
    }
}

/// Steps `state` twice with `params.dt` and compares the balance rate at the
/// middle state with `(Z(t + dt) - Z(t - dt)) / 2dt`.
pub fn enstrophy_rate_check(state: &MhdState, params: &SolverParams) -> Result<EnstrophyRateCheck> {
    let stepper = Stepper::new(state.grid(), *params)?;
    let mid = stepper.step(state)?.state;
    let end = stepper.step(&mid)?.state;
    let fd = (half_enstrophy(&end) - half_enstrophy(state)) / (2.0 * params.dt);
    Ok(EnstrophyRateCheck { t: mid.t(), balance: cancellation_checks(&mid, params).enstrophy_rate, finite_difference: fd })
}
