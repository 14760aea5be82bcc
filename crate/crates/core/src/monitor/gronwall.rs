use std::f64::consts::{E, LN_2};

use serde::{Deserialize, Serialize};

use super::record::DiagnosticRecord;
use crate::error::{Error, Result};

/// Shell cutoff and logarithmic energy used in the continuation argument.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GronwallReport {
    pub t: f64,
    /// `E = ‖w‖_2 + ‖J‖_2`.
    pub e: f64,
    /// `floor(2/ln 2 · ln(e + C E / min(ν, η))) + 1`.
    pub n: u64,
    /// `ln(sup E + e)`, the supremum over the records seen so far.
    pub z: f64,
    pub c_gronwall: f64,
}

/// `N` for a given `E`.
pub fn shell_cutoff(e: f64, c: f64, nu: f64, eta: f64) -> u64 {
    let x = E + c * e / nu.min(eta);
    (2.0 / LN_2 * x.ln()).floor() as u64 + 1
}

fn check(c: f64, nu: f64, eta: f64) -> Result<()> {
    if !(c > 0.0) {
        return Err(Error::InvalidParameter(format!("Gronwall constant must be positive, got {c}")));
    }
    if !(nu > 0.0 && eta > 0.0) {
        return Err(Error::IdealMhd { nu, eta });
    }
    Ok(())
}

/// Quantities for a single record, with `sup E` taken as its own `E`.
pub fn gronwall_quantities(record: &DiagnosticRecord, c: f64, nu: f64, eta: f64) -> Result<GronwallReport> {
    check(c, nu, eta)?;
    let e = record.enstrophy_sum();
    Ok(GronwallReport { t: record.t, e, n: shell_cutoff(e, c, nu, eta), z: (e + E).ln(), c_gronwall: c })
}

/// Quantities along a series; `Z` uses the running supremum of `E`.
pub fn gronwall_series(records: &[DiagnosticRecord], c: f64, nu: f64, eta: f64) -> Result<Vec<GronwallReport>> {
    check(c, nu, eta)?;
    let mut sup = 0.0f64;
    records
        .iter()
        .map(|r| {
            let mut rep = gronwall_quantities(r, c, nu, eta)?;
            sup = sup.max(rep.e);
            rep.z = (sup + E).ln();
            Ok(rep)
        })
        .collect()
}
