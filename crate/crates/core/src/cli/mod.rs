//! Run configuration, orchestration, persistence and report output.

mod config;
mod records;
mod run;
mod snapshot;
mod verify;

use std::path::Path;

use serde::Serialize;

pub use config::{parse_config, InitialConditionSpec, RunConfig, DEFAULT_OUTPUT};
pub use records::{parse_records, read_records, truncate_records, RecordLayout, RecordsWriter};
pub use run::{checkpoint_paths, run, write_reports, BkmSummary, CheckpointMeta, RunOutcome, RunStatus, RECORDS_FILE};
pub use snapshot::{decode_snapshot, encode_snapshot, read_snapshot, write_snapshot, Snapshot, HEADER_LEN, MAGIC, VERSION};
pub use verify::{self_checks, Check};

use crate::error::{Error, Result};
use crate::monitor::{bkm_ladder, energy_budget, BkmReport, EnergyBudget};
use crate::spectral::{curl, inverse_vector, l2_norm_k, lp_norm};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_BLOW_UP: i32 = 3;
pub const EXIT_IO: i32 = 4;

/// Process exit status for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config(_)
        | Error::IdealMhd { .. }
        | Error::UnknownInitialCondition(_)
        | Error::InvalidGrid(_)
        | Error::ConfigHashMismatch { .. } => EXIT_CONFIG,
        Error::BlowUpSuspected { .. } => EXIT_BLOW_UP,
        Error::Io { .. } => EXIT_IO,
        _ => EXIT_FAILURE,
    }
}

/// Header fields and a few norms of a snapshot.
#[derive(Debug, Clone, Serialize)]
pub struct SnapshotSummary {
    pub n: usize,
    pub l: f64,
    pub t: f64,
    pub nu: f64,
    pub eta: f64,
    pub l2_u: f64,
    pub l2_b: f64,
    pub sup_w: f64,
    pub divergence: f64,
}

pub fn inspect(path: &Path) -> Result<SnapshotSummary> {
    let snap = read_snapshot(path)?;
    let s = &snap.state;
    Ok(SnapshotSummary {
        n: s.grid().n(),
        l: s.grid().l(),
        t: s.t(),
        nu: snap.nu,
        eta: snap.eta,
        l2_u: l2_norm_k(s.u_hat()),
        l2_b: l2_norm_k(s.b_hat()),
        sup_w: lp_norm(&inverse_vector(&curl(s.u_hat())), f64::INFINITY)?,
        divergence: s.divergence_defect(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct Analysis {
    pub bkm: Vec<BkmReport>,
    pub energy: EnergyBudget,
}

/// Window ladder and energy budget of an existing records file.
pub fn analyze(path: &Path, eps: &[f64]) -> Result<Analysis> {
    let records = read_records(path)?;
    Ok(Analysis { bkm: bkm_ladder(&records, eps)?, energy: energy_budget(&records) })
}
