use serde::{Deserialize, Serialize};

use super::record::DiagnosticRecord;
use crate::error::{Error, Result};

/// Pointwise-in-time comparison of `‖u‖²_{H^s} + ‖b‖²_{H^s}` with
/// `C_0 exp(t · sup_{t' < t} ‖(u, b)‖⁴_{H^1})`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HsGrowthReport {
    pub s: f64,
    /// `slack · (‖u_0‖²_{H^s} + ‖b_0‖²_{H^s})`.
    pub c0: f64,
    pub times: Vec<f64>,
    pub ratios: Vec<f64>,
    pub max_ratio: f64,
    pub holds: bool,
}

pub fn hs_growth_check(records: &[DiagnosticRecord], s: f64, slack: f64) -> Result<HsGrowthReport> {
    if !(slack >= 1.0) {
        return Err(Error::InvalidParameter(format!("slack factor must be at least 1, got {slack}")));
    }
    let lhs = records
        .iter()
        .map(|r| {
            let h = r.hs_at(s).ok_or_else(|| Error::MissingNorm(format!("H^{s} norms at t = {}", r.t)))?;
            Ok(h.u * h.u + h.b * h.b)
        })
        .collect::<Result<Vec<f64>>>()?;
    let Some(&lhs0) = lhs.first() else {
        return Err(Error::Records("no records".into()));
    };
    let c0 = slack * lhs0;
    let t0 = records[0].t;

    let mut sup_h1 = 0.0f64;
    let mut ratios = Vec::with_capacity(lhs.len());
    for (r, &l) in records.iter().zip(&lhs) {
        let bound = c0 * ((r.t - t0) * sup_h1.powi(2)).exp();
        ratios.push(if l == 0.0 { 0.0 } else { l / bound });
        // sup over [t0, t): the current record enters the next bound
        sup_h1 = sup_h1.max(r.h1_squared());
    }
    let max_ratio = ratios.iter().copied().fold(0.0, f64::max);
    Ok(HsGrowthReport { s, c0, times: records.iter().map(|r| r.t).collect(), ratios, max_ratio, holds: max_ratio <= 1.0 })
}
