use serde::{Deserialize, Serialize};

use super::record::DiagnosticRecord;
use crate::error::{Error, Result};

/// Relative slack when deciding whether records reach back to `T - ε`.
const COVER_TOLERANCE: f64 = 1e-9;

/// Shell-wise window integrals of `‖Δ_j ω‖_∞` ending at the last record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BkmReport {
    pub epsilon: f64,
    pub t_end: f64,
    /// `sup_j ∫_{T-ε}^T ‖Δ_j ω‖_∞ dt`.
    pub delta: f64,
    pub j_min: i32,
    pub per_shell_integrals: Vec<f64>,
    pub argmax_shell: i32,
    /// `(δ, ∫ ‖ω‖_{Ḃ^0_{∞,∞}} dt, ∫ ‖ω‖_∞ dt)` over the same window.
    pub comparison: (f64, f64, f64),
}

impl BkmReport {
    /// `δ ≤ ∫ sup_j ≤ C_h ∫ ‖ω‖_∞`, each up to `rel_tol` relative slack.
    pub fn ordering_holds(&self, kernel_constant: f64, rel_tol: f64) -> bool {
        let (a, b, c) = self.comparison;
        a <= b * (1.0 + rel_tol) && b <= kernel_constant * c * (1.0 + rel_tol)
    }

    /// Whether `δ` reaches the alert level `m`.
    pub fn exceeds(&self, m: f64) -> bool {
        self.delta >= m
    }
}

/// Trapezoid integral over `[start, end]` of the piecewise-linear
/// interpolant through `(t_i, f(r_i))`. Records must be sorted by time.
pub(crate) fn window_integral(records: &[DiagnosticRecord], start: f64, end: f64, f: impl Fn(&DiagnosticRecord) -> f64) -> f64 {
    let mut acc = 0.0;
    for pair in records.windows(2) {
        let (r0, r1) = (&pair[0], &pair[1]);
        let (a, b) = (r0.t.max(start), r1.t.min(end));
        if b <= a || r1.t <= r0.t {
            continue;
        }
        let (f0, f1) = (f(r0), f(r1));
        let at = |t: f64| f0 + (f1 - f0) * (t - r0.t) / (r1.t - r0.t);
        acc += 0.5 * (b - a) * (at(a) + at(b));
    }
    acc
}

/// Checks that the records span `[start, end]` and are ordered in time.
pub(crate) fn check_window(records: &[DiagnosticRecord], start: f64, end: f64) -> Result<()> {
    let (Some(first), Some(last)) = (records.first(), records.last()) else {
        return Err(Error::WindowNotCovered { start, end, from: f64::NAN, to: f64::NAN });
    };
    if records.windows(2).any(|w| !(w[1].t > w[0].t)) {
        return Err(Error::Records("record times must be strictly increasing".into()));
    }
    let slack = COVER_TOLERANCE * end.abs().max(1.0);
    if first.t > start + slack || last.t < end - slack {
        return Err(Error::WindowNotCovered { start, end, from: first.t, to: last.t });
    }
    Ok(())
}

/// Window `[T - ε, T]` with `T` the time of the last record.
pub fn bkm_delta(records: &[DiagnosticRecord], epsilon: f64) -> Result<BkmReport> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::InvalidParameter(format!("window length must be positive, got {epsilon}")));
    }
    let t_end = records.last().map_or(f64::NAN, |r| r.t);
    let start = t_end - epsilon;
    check_window(records, start, t_end)?;
    let shells = records[0].shell_sup.len();
    let j_min = records[0].j_min;
    if records.iter().any(|r| r.shell_sup.len() != shells || r.j_min != j_min) {
        return Err(Error::Records("shell ranges differ between records".into()));
    }
    if shells == 0 {
        return Err(Error::NoShells);
    }

    let per_shell_integrals: Vec<f64> =
        (0..shells).map(|k| window_integral(records, start, t_end, |r| r.shell_sup[k])).collect();
    let (arg, delta) = per_shell_integrals
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |(ia, a), (i, &v)| if v > a { (i, v) } else { (ia, a) });
    let besov = window_integral(records, start, t_end, DiagnosticRecord::besov_w);
    let sup = window_integral(records, start, t_end, |r| r.sup_w);
    Ok(BkmReport {
        epsilon,
        t_end,
        delta,
        j_min,
        per_shell_integrals,
        argmax_shell: j_min + arg as i32,
        comparison: (delta, besov, sup),
    })
}

/// [`bkm_delta`] for each window length of a ladder.
pub fn bkm_ladder(records: &[DiagnosticRecord], epsilons: &[f64]) -> Result<Vec<BkmReport>> {
    epsilons.iter().map(|&e| bkm_delta(records, e)).collect()
}
