use serde::{Deserialize, Serialize};

use super::bkm::{check_window, window_integral};
use super::record::DiagnosticRecord;
use crate::error::{Error, Result};

/// The Serrin-type integrals with their admissibility.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SerrinCriterion {
    /// `∫ ‖u‖_p^q`, `2/q + 3/p ≤ 1`, `3 < p ≤ ∞`.
    Velocity,
    /// `∫ ‖∇u‖_p^q`, `2/q + 3/p ≤ 2`, `3/2 < p ≤ ∞`.
    Gradient,
    /// `∫ ‖∇×u‖_p^q`, `2/q + 3/p ≤ 2`, `3/2 < p < ∞`.
    Vorticity,
}

impl SerrinCriterion {
    pub const ALL: [SerrinCriterion; 3] = [SerrinCriterion::Velocity, SerrinCriterion::Gradient, SerrinCriterion::Vorticity];

    pub fn name(self) -> &'static str {
        match self {
            SerrinCriterion::Velocity => "velocity integral",
            SerrinCriterion::Gradient => "velocity-gradient integral",
            SerrinCriterion::Vorticity => "vorticity integral",
        }
    }

    pub fn check(self, p: f64, q: f64) -> Result<()> {
        let bad = |constraint| Err(Error::Inadmissible { criterion: self.name(), constraint, p, q });
        let scaling = 2.0 / q + 3.0 / p;
        match self {
            SerrinCriterion::Velocity => {
                if !(p > 3.0) {
                    return bad("3 < p <= inf");
                }
                if scaling > 1.0 {
                    return bad("2/q + 3/p <= 1");
                }
            }
            SerrinCriterion::Gradient | SerrinCriterion::Vorticity => {
                if !(p > 1.5) {
                    return bad("3/2 < p");
                }
                if self == SerrinCriterion::Vorticity && p == f64::INFINITY {
                    return bad("p < inf");
                }
                if scaling > 2.0 {
                    return bad("2/q + 3/p <= 2");
                }
            }
        }
        Ok(())
    }

    fn norm(self, r: &DiagnosticRecord, p: f64) -> Result<f64> {
        let lp = r.lp_at(p).ok_or_else(|| Error::MissingNorm(format!("L^{p} norms at t = {}", r.t)))?;
        Ok(match self {
            SerrinCriterion::Velocity => lp.u,
            SerrinCriterion::Gradient => lp.grad_u,
            SerrinCriterion::Vorticity => lp.curl_u,
        })
    }
}

/// One Serrin-type integral: the value, or why it was not evaluated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SerrinEntry {
    pub criterion: SerrinCriterion,
    pub value: std::result::Result<f64, String>,
}

/// Time integrals over the full record span.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuxiliaryReport {
    pub p: f64,
    pub q: f64,
    pub serrin: Vec<SerrinEntry>,
    /// `∫ ‖ω‖_{Ḃ^0_{∞,∞}} dt`.
    pub besov_integral: f64,
    /// `∫ ‖ω‖_∞ dt`.
    pub sup_integral: f64,
}

impl AuxiliaryReport {
    /// The integral for `c`, or `None` when `(p, q)` is inadmissible for it.
    pub fn value(&self, c: SerrinCriterion) -> Option<f64> {
        self.serrin.iter().find(|e| e.criterion == c).and_then(|e| e.value.as_ref().ok().copied())
    }
}

/// Trapezoid integrals of `‖u‖_p^q`, `‖∇u‖_p^q`, `‖∇×u‖_p^q` (each only
/// when `(p, q)` is admissible for it), `‖ω‖_{Ḃ^0_{∞,∞}}` and `‖ω‖_∞`.
/// Fails only when `(p, q)` is admissible for none of the three.
pub fn auxiliary_criteria(records: &[DiagnosticRecord], p: f64, q: f64) -> Result<AuxiliaryReport> {
    if !(q >= 1.0 && q.is_finite()) {
        return Err(Error::InvalidExponent(q));
    }
    if !(p >= 1.0) {
        return Err(Error::InvalidExponent(p));
    }
    let (start, end) = match (records.first(), records.last()) {
        (Some(a), Some(b)) => (a.t, b.t),
        _ => return Err(Error::Records("no records".into())),
    };
    check_window(records, start, end)?;

    let mut serrin = Vec::new();
    let mut first_error = None;
    for c in SerrinCriterion::ALL {
        let value = match c.check(p, q) {
            Ok(()) => {
                let norms = records.iter().map(|r| c.norm(r, p)).collect::<Result<Vec<f64>>>()?;
                Ok(integrate_series(records, &norms, q))
            }
            Err(e) => {
                let msg = e.to_string();
                first_error.get_or_insert(e);
                Err(msg)
            }
        };
        serrin.push(SerrinEntry { criterion: c, value });
    }
    if serrin.iter().all(|e| e.value.is_err()) {
        return Err(first_error.expect("an error was recorded"));
    }
    Ok(AuxiliaryReport {
        p,
        q,
        serrin,
        besov_integral: window_integral(records, start, end, DiagnosticRecord::besov_w),
        sup_integral: window_integral(records, start, end, |r| r.sup_w),
    })
}

/// A single Serrin-type integral; inadmissible `(p, q)` is an error naming
/// the violated constraint.
pub fn serrin_integral(records: &[DiagnosticRecord], c: SerrinCriterion, p: f64, q: f64) -> Result<f64> {
    c.check(p, q)?;
    let report = auxiliary_criteria(records, p, q)?;
    Ok(report.value(c).expect("admissible criterion is evaluated"))
}

fn integrate_series(records: &[DiagnosticRecord], norms: &[f64], q: f64) -> f64 {
    records
        .windows(2)
        .zip(norms.windows(2))
        .map(|(r, n)| 0.5 * (r[1].t - r[0].t) * (n[0].powf(q) + n[1].powf(q)))
        .sum()
}
