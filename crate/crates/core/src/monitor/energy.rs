use serde::{Deserialize, Serialize};

use super::record::DiagnosticRecord;

/// Energy balance along a record series, relative to the first record `s`:
/// `r(t) = E(s) - E(t) - 2 ∫_s^t (ν‖∇u‖² + η‖∇b‖²)` with
/// `E = ‖u‖² + ‖b‖²`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnergyBudget {
    pub times: Vec<f64>,
    pub residuals: Vec<f64>,
    pub max_abs: f64,
    /// Sign of the residual of largest magnitude (`0` when all vanish).
    pub sign: i8,
    /// `max_abs / E(s)` (or `max_abs` when `E(s) = 0`).
    pub relative: f64,
}

pub fn energy_budget(records: &[DiagnosticRecord]) -> EnergyBudget {
    let Some(first) = records.first() else {
        return EnergyBudget { times: vec![], residuals: vec![], max_abs: 0.0, sign: 0, relative: 0.0 };
    };
    let e0 = first.energy();
    let residuals: Vec<f64> = records
        .iter()
        .map(|r| e0 - r.energy() - 2.0 * (r.energy_diss_accum - first.energy_diss_accum))
        .collect();
    let worst = residuals.iter().copied().fold(0.0f64, |a, r| if r.abs() > a.abs() { r } else { a });
    let max_abs = worst.abs();
    EnergyBudget {
        times: records.iter().map(|r| r.t).collect(),
        residuals,
        max_abs,
        sign: if worst > 0.0 {
            1
        } else if worst < 0.0 {
            -1
        } else {
            0
        },
        relative: if e0 > 0.0 { max_abs / e0 } else { max_abs },
    }
}
