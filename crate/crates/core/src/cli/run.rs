use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::config::RunConfig;
use super::records::{truncate_records, RecordLayout, RecordsWriter};
use super::snapshot::{read_snapshot, write_snapshot};
use crate::error::{Error, Result};
use crate::lpaley::{build_partition, DyadicPartition};
use crate::monitor::{
    auxiliary_criteria, bkm_delta, energy_budget, gronwall_series, hs_growth_check, record, AuxiliaryReport, BkmReport,
    DiagnosticRecord, EnergyBudget, HsGrowthReport, RecordOptions,
};
use crate::solver::{initial_condition, suggest_dt, MhdState, Stepper};
use crate::spectral::make_grid;

pub const RECORDS_FILE: &str = "records.csv";

/// How a run ended.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum RunStatus {
    Completed,
    BlowUpSuspected { t: f64, reason: String },
}

/// Checkpoint sidecar, stored next to the snapshot as JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckpointMeta {
    pub config_hash: String,
    pub step: usize,
    /// Bit pattern of the running dissipation integral (exact round trip).
    pub dissipation_bits: u64,
}

/// Window reports plus the ordering check against the kernel constant.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BkmSummary {
    pub kernel_constant: f64,
    pub m_alert: Option<f64>,
    pub reports: Vec<BkmReport>,
    pub ordering_holds: Vec<bool>,
    pub alert: bool,
    /// Windows that the records could not cover (e.g. after an early halt).
    pub skipped: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub status: RunStatus,
    pub steps: usize,
    pub t: f64,
    pub records: Vec<DiagnosticRecord>,
    pub bkm: BkmSummary,
    pub energy: EnergyBudget,
}

pub fn checkpoint_paths(dir: &Path, step: usize) -> (PathBuf, PathBuf) {
    (dir.join(format!("checkpoint_{step:08}.snap")), dir.join(format!("checkpoint_{step:08}.json")))
}

fn sidecar_for(snapshot: &Path) -> PathBuf {
    snapshot.with_extension("json")
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).expect("report serializes");
    std::fs::write(path, text + "\n").map_err(|e| Error::io(path, e))
}

struct Session {
    state: MhdState,
    step: usize,
    dissipation: f64,
    records: Vec<DiagnosticRecord>,
    writer: RecordsWriter,
}

fn start_fresh(config: &RunConfig, part: &DyadicPartition, opts: &RecordOptions, records_path: &Path) -> Result<Session> {
    let grid = part.grid();
    let state = initial_condition(&config.ic.parsed()?, config.ic.amplitude, grid)?.canonicalized()?;
    let first = record(&state, part, opts)?;
    let mut writer = RecordsWriter::create(records_path, RecordLayout::of(&first))?;
    writer.write(&first, records_path)?;
    Ok(Session { state, step: 0, dissipation: 0.0, records: vec![first], writer })
}

fn start_resumed(config: &RunConfig, part: &DyadicPartition, opts: &RecordOptions, records_path: &Path, ckpt: &Path) -> Result<Session> {
    let meta_path = sidecar_for(ckpt);
    let text = std::fs::read_to_string(&meta_path).map_err(|e| Error::io(&meta_path, e))?;
    let meta: CheckpointMeta = serde_json::from_str(&text).map_err(|e| Error::Config(format!("checkpoint metadata: {e}")))?;
    let expected = config.hash();
    if meta.config_hash != expected {
        return Err(Error::ConfigHashMismatch { expected, found: meta.config_hash });
    }
    let snap = read_snapshot(ckpt)?;
    crate::spectral::same_grid(snap.state.grid(), part.grid())?;
    let records = truncate_records(records_path, snap.state.t())?;
    let layout = RecordLayout::of(&record(&snap.state, part, opts)?);
    if records.is_empty() {
        return Err(Error::Records("records file is empty".into()));
    }
    let writer = RecordsWriter::append(records_path, layout)?;
    Ok(Session { state: snap.state, step: meta.step, dissipation: f64::from_bits(meta.dissipation_bits), records, writer })
}

/// Steps the configured run, writing records, checkpoints and reports into
/// the output directory. A suspected blow-up ends the run early with the
/// corresponding status; reports are still written from the records so far.
pub fn run(config: &RunConfig, resume: Option<&Path>) -> Result<RunOutcome> {
    let out = &config.output;
    std::fs::create_dir_all(out).map_err(|e| Error::io(out, e))?;
    let grid = make_grid(config.n, config.l)?;
    let part = build_partition(&grid)?;
    let opts = RecordOptions { s_list: config.s_list.clone(), lp_exponents: config.lp_exponents() };
    let stepper = Stepper::new(&grid, config.params)?;
    let records_path = out.join(RECORDS_FILE);

    let mut session = match resume {
        Some(ckpt) => start_resumed(config, &part, &opts, &records_path, ckpt)?,
        None => start_fresh(config, &part, &opts, &records_path)?,
    };
    let total = config.params.step_count();
    let hash = config.hash();
    let mut status = RunStatus::Completed;
    let mut warned = false;

    while session.step < total {
        if !warned && config.params.dt > suggest_dt(&session.state, &config.cfl) {
            log::warn!("dt = {} exceeds the CFL suggestion at t = {}", config.params.dt, session.state.t());
            warned = true;
        }
        let outcome = match stepper.step(&session.state) {
            Ok(o) => o,
            Err(Error::BlowUpSuspected { t, reason }) => {
                status = RunStatus::BlowUpSuspected { t, reason };
                break;
            }
            Err(e) => return Err(e),
        };
        session.state = outcome.state;
        session.dissipation += outcome.dissipation;
        session.step += 1;

        if session.step % config.cadence == 0 || session.step == total {
            let mut rec = record(&session.state, &part, &opts)?;
            rec.energy_diss_accum = session.dissipation;
            session.writer.write(&rec, &records_path)?;
            let sup_w = rec.sup_w;
            session.records.push(rec);
            if sup_w > config.omega_max {
                status = RunStatus::BlowUpSuspected {
                    t: session.state.t(),
                    reason: format!("‖ω‖_∞ = {sup_w:e} exceeds the ceiling {:e}", config.omega_max),
                };
                break;
            }
        }
        if config.checkpoint_interval > 0 && session.step % config.checkpoint_interval == 0 {
            let (snap, meta) = checkpoint_paths(out, session.step);
            write_snapshot(&session.state, config.params.nu, config.params.eta, &snap)?;
            let m = CheckpointMeta { config_hash: hash.clone(), step: session.step, dissipation_bits: session.dissipation.to_bits() };
            write_json(&meta, &m)?;
        }
    }
    if let RunStatus::BlowUpSuspected { t, reason } = &status {
        log::error!("blow-up suspected at t = {t}: {reason}");
    }

    let (bkm, energy) = write_reports(config, &part, &session.records)?;
    write_json(&out.join("summary.json"), &serde_json::json!({
        "status": status,
        "steps": session.step,
        "t": session.state.t(),
        "config_hash": hash,
    }))?;
    Ok(RunOutcome { status, steps: session.step, t: session.state.t(), records: session.records, bkm, energy })
}

/// Writes `bkm.json`, `auxiliary.json`, `gronwall.csv`, `energy.json` and
/// `hs.json` from a record series.
pub fn write_reports(config: &RunConfig, part: &DyadicPartition, records: &[DiagnosticRecord]) -> Result<(BkmSummary, EnergyBudget)> {
    let out = &config.output;
    let c_h = part.kernel_constant();
    let mut reports = Vec::new();
    let mut skipped = Vec::new();
    for &eps in &config.eps {
        match bkm_delta(records, eps) {
            Ok(r) => reports.push(r),
            Err(Error::WindowNotCovered { .. }) => skipped.push(eps),
            Err(e) => return Err(e),
        }
    }
    let ordering_holds = reports.iter().map(|r| r.ordering_holds(c_h, 1e-12)).collect();
    let alert = config.m_alert.is_some_and(|m| reports.iter().any(|r| r.exceeds(m)));
    if alert {
        log::warn!("δ reached the alert level {:?}", config.m_alert);
    }
    let bkm = BkmSummary { kernel_constant: c_h, m_alert: config.m_alert, reports, ordering_holds, alert, skipped };
    write_json(&out.join("bkm.json"), &bkm)?;

    let aux: Vec<std::result::Result<AuxiliaryReport, String>> = config
        .serrin
        .iter()
        .map(|&[p, q]| auxiliary_criteria(records, p, q).map_err(|e| e.to_string()))
        .collect();
    write_json(&out.join("auxiliary.json"), &aux)?;

    let gronwall = gronwall_series(records, config.c_gronwall, config.params.nu, config.params.eta)?;
    let path = out.join("gronwall.csv");
    let mut w = csv::Writer::from_path(&path).map_err(|e| Error::Records(e.to_string()))?;
    w.write_record(["t", "E", "N", "Z"]).map_err(|e| Error::Records(e.to_string()))?;
    for g in &gronwall {
        w.write_record([format!("{:e}", g.t), format!("{:e}", g.e), g.n.to_string(), format!("{:e}", g.z)])
            .map_err(|e| Error::Records(e.to_string()))?;
    }
    w.flush().map_err(|e| Error::io(&path, e))?;

    let energy = energy_budget(records);
    write_json(&out.join("energy.json"), &energy)?;

    let hs: Vec<std::result::Result<HsGrowthReport, String>> = config
        .s_list
        .iter()
        .map(|&s| hs_growth_check(records, s, config.hs_slack).map_err(|e| e.to_string()))
        .collect();
    write_json(&out.join("hs.json"), &hs)?;
    Ok((bkm, energy))
}
