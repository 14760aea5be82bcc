use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::lpaley::DyadicPartition;
use crate::solver::MhdState;
use crate::spectral::{
    curl, gradient_l2_norm_k, gradient_tensor, inverse_vector, l2_norm_k, lp_norm, lp_norm_of_magnitudes,
    sobolev_norm_vector_k, tensor_magnitudes,
};

/// `‖u‖_{H^s}` and `‖b‖_{H^s}` for one `s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HsNorms {
    pub s: f64,
    pub u: f64,
    pub b: f64,
}

/// `‖u‖_p`, `‖∇u‖_p` and `‖∇×u‖_p` for one `p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LpNorms {
    pub p: f64,
    pub u: f64,
    pub grad_u: f64,
    pub curl_u: f64,
}

/// What [`record`] evaluates besides the fixed norms.
#[derive(Debug, Clone, PartialEq)]
pub struct RecordOptions {
    pub s_list: Vec<f64>,
    pub lp_exponents: Vec<f64>,
}

impl Default for RecordOptions {
    fn default() -> Self {
        RecordOptions { s_list: vec![1.0, 2.0], lp_exponents: vec![f64::INFINITY] }
    }
}

/// Norms of one state. Sup norms are grid maxima.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticRecord {
    pub t: f64,
    pub l2_u: f64,
    pub l2_b: f64,
    pub l2_w: f64,
    pub l2_j: f64,
    /// `‖ω‖_∞` with `ω = ∇×u`.
    pub sup_w: f64,
    /// `‖Δ_j ω‖_∞` for `j = j_min, j_min + 1, ...`.
    pub shell_sup: Vec<f64>,
    pub j_min: i32,
    pub grad_u: f64,
    pub grad_b: f64,
    pub hs: Vec<HsNorms>,
    pub lp: Vec<LpNorms>,
    /// `∫_0^t (ν‖∇u‖² + η‖∇b‖²)`.
    pub energy_diss_accum: f64,
    /// Set when some entry is not finite.
    pub flagged: bool,
}

impl DiagnosticRecord {
    /// `sup_j ‖Δ_j ω‖_∞ = ‖ω‖_{Ḃ^0_{∞,∞}}` over the recorded shells.
    pub fn besov_w(&self) -> f64 {
        self.shell_sup.iter().copied().fold(0.0, f64::max)
    }

    pub fn energy(&self) -> f64 {
        self.l2_u * self.l2_u + self.l2_b * self.l2_b
    }

    /// `E = ‖w‖_2 + ‖J‖_2`.
    pub fn enstrophy_sum(&self) -> f64 {
        self.l2_w + self.l2_j
    }

    /// `‖u‖²_{H^1} + ‖b‖²_{H^1}`.
    pub fn h1_squared(&self) -> f64 {
        self.energy() + self.grad_u * self.grad_u + self.grad_b * self.grad_b
    }

    pub fn shell_indices(&self) -> impl Iterator<Item = i32> + '_ {
        (0..self.shell_sup.len()).map(move |k| self.j_min + k as i32)
    }

    pub fn hs_at(&self, s: f64) -> Option<&HsNorms> {
        self.hs.iter().find(|h| h.s == s)
    }

    pub fn lp_at(&self, p: f64) -> Option<&LpNorms> {
        self.lp.iter().find(|h| h.p == p)
    }

    fn scalars(&self) -> impl Iterator<Item = f64> + '_ {
        [self.t, self.l2_u, self.l2_b, self.l2_w, self.l2_j, self.sup_w, self.grad_u, self.grad_b, self.energy_diss_accum]
            .into_iter()
            .chain(self.shell_sup.iter().copied())
            .chain(self.hs.iter().flat_map(|h| [h.u, h.b]))
            .chain(self.lp.iter().flat_map(|l| [l.u, l.grad_u, l.curl_u]))
    }

    pub(crate) fn refresh_flag(&mut self) {
        let ok = self.scalars().all(|v| v.is_finite() && v >= 0.0);
        self.flagged = !ok;
    }
}

/// Evaluates every monitored norm of `state`. `energy_diss_accum` is left
/// at zero; the driver owns the running dissipation integral.
pub fn record(state: &MhdState, part: &DyadicPartition, opts: &RecordOptions) -> Result<DiagnosticRecord> {
    crate::spectral::same_grid(state.grid(), part.grid())?;
    let grid = state.grid();
    let w_hat = curl(state.u_hat());
    let j_hat = curl(state.b_hat());
    let w = inverse_vector(&w_hat);

    let hs = opts
        .s_list
        .iter()
        .map(|&s| HsNorms { s, u: sobolev_norm_vector_k(state.u_hat(), s), b: sobolev_norm_vector_k(state.b_hat(), s) })
        .collect();

    let mut lp = Vec::with_capacity(opts.lp_exponents.len());
    if !opts.lp_exponents.is_empty() {
        let u = inverse_vector(state.u_hat());
        let grad = tensor_magnitudes(&gradient_tensor(state.u_hat()));
        for &p in &opts.lp_exponents {
            lp.push(LpNorms { p, u: lp_norm(&u, p)?, grad_u: lp_norm_of_magnitudes(grid, &grad, p)?, curl_u: lp_norm(&w, p)? });
        }
    }

    let mut rec = DiagnosticRecord {
        t: state.t(),
        l2_u: l2_norm_k(state.u_hat()),
        l2_b: l2_norm_k(state.b_hat()),
        l2_w: l2_norm_k(&w_hat),
        l2_j: l2_norm_k(&j_hat),
        sup_w: lp_norm(&w, f64::INFINITY)?,
        shell_sup: part.shell_sup_norms(&w_hat)?,
        j_min: part.j_min(),
        grad_u: gradient_l2_norm_k(state.u_hat()),
        grad_b: gradient_l2_norm_k(state.b_hat()),
        hs,
        lp,
        energy_diss_accum: 0.0,
        flagged: false,
    };
    rec.refresh_flag();
    Ok(rec)
}
