use std::f64::consts::PI;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::solver::{CflOptions, InitialCondition, SolverParams};
use crate::spectral::make_grid;

/// Flat TOML document. `n`, `nu`, `eta`, `dt`, `t_end` and `ic` are required.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    n: usize,
    l: Option<f64>,
    nu: f64,
    eta: f64,
    dt: f64,
    t_end: f64,
    ic: String,
    amplitude: Option<f64>,
    seed: Option<u64>,
    cadence: Option<usize>,
    eps: Option<Vec<f64>>,
    c_gronwall: Option<f64>,
    m_alert: Option<f64>,
    s_list: Option<Vec<f64>>,
    serrin: Option<Vec<[f64; 2]>>,
    hs_slack: Option<f64>,
    omega_max: Option<f64>,
    courant: Option<f64>,
    dt_max: Option<f64>,
    checkpoint_interval: Option<usize>,
    output: Option<PathBuf>,
}

/// Everything a run needs, with defaults filled in.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub n: usize,
    pub l: f64,
    pub params: SolverParams,
    pub ic: InitialConditionSpec,
    /// Record every `cadence` steps (the initial state is always recorded).
    pub cadence: usize,
    /// Window lengths for the blow-up monitor.
    pub eps: Vec<f64>,
    pub c_gronwall: f64,
    /// Alert level for `δ`; no alert when absent.
    pub m_alert: Option<f64>,
    pub s_list: Vec<f64>,
    /// `(p, q)` pairs for the Serrin-type integrals.
    pub serrin: Vec<[f64; 2]>,
    pub hs_slack: f64,
    /// `‖ω‖_∞` ceiling treated as blow-up.
    pub omega_max: f64,
    pub cfl: CflOptions,
    /// Steps between checkpoints; 0 disables them.
    pub checkpoint_interval: usize,
    pub output: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InitialConditionSpec {
    pub name: String,
    pub amplitude: f64,
}

impl InitialConditionSpec {
    pub fn parsed(&self) -> Result<InitialCondition> {
        self.name.parse()
    }
}

pub const DEFAULT_OUTPUT: &str = "output";

fn config_err(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

/// Parses and validates a TOML run configuration.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| config_err(e.message().to_string()))?;
    if !(raw.nu > 0.0 && raw.eta > 0.0) {
        return Err(Error::IdealMhd { nu: raw.nu, eta: raw.eta });
    }
    let params = SolverParams::new(raw.nu, raw.eta, raw.dt, raw.t_end).map_err(|e| config_err(e.to_string()))?;
    let l = raw.l.unwrap_or(2.0 * PI);
    make_grid(raw.n, l).map_err(|e| config_err(e.to_string()))?;

    // `random_band(j)` takes its seed from the `seed` key
    let mut name = raw.ic.trim().to_string();
    if name.starts_with("random_band(") && !name.contains(',') {
        let seed = raw.seed.ok_or_else(|| config_err("random_band(j) needs a `seed` key"))?;
        name = format!("{}, {seed})", name.trim_end_matches(')'));
    }
    let ic = InitialConditionSpec { name, amplitude: raw.amplitude.unwrap_or(1.0) };
    ic.parsed()?;
    if !ic.amplitude.is_finite() {
        return Err(config_err("amplitude must be finite"));
    }

    let cadence = raw.cadence.unwrap_or(1);
    if cadence == 0 {
        return Err(config_err("cadence must be at least 1 step"));
    }
    let eps = raw.eps.unwrap_or_else(|| vec![raw.t_end / 4.0, raw.t_end / 16.0]);
    if eps.is_empty() || eps.iter().any(|&e| !(e > 0.0 && e <= raw.t_end)) {
        return Err(config_err(format!("eps values must lie in (0, t_end = {}]", raw.t_end)));
    }
    let positive = |name: &str, v: f64| {
        if v > 0.0 && !v.is_nan() {
            Ok(v)
        } else {
            Err(config_err(format!("{name} must be positive, got {v}")))
        }
    };
    let c_gronwall = positive("c_gronwall", raw.c_gronwall.unwrap_or(1.0))?;
    let m_alert = raw.m_alert.map(|m| positive("m_alert", m)).transpose()?;
    let omega_max = positive("omega_max", raw.omega_max.unwrap_or(1e8))?;
    let hs_slack = raw.hs_slack.unwrap_or(1.0);
    if !(hs_slack >= 1.0) {
        return Err(config_err("hs_slack must be at least 1"));
    }
    let defaults = CflOptions::default();
    let cfl = CflOptions {
        courant: positive("courant", raw.courant.unwrap_or(defaults.courant))?,
        speed_floor: defaults.speed_floor,
        dt_max: positive("dt_max", raw.dt_max.unwrap_or(defaults.dt_max))?,
    };
    let s_list = raw.s_list.unwrap_or_else(|| vec![1.0, 2.0]);
    if s_list.iter().any(|s| !s.is_finite()) {
        return Err(config_err("s_list entries must be finite"));
    }
    let serrin = raw.serrin.unwrap_or_else(|| vec![[4.0, 8.0]]);
    if serrin.iter().any(|[p, q]| !(*p >= 1.0) || !(*q >= 1.0 && q.is_finite())) {
        return Err(config_err("serrin pairs need p >= 1 and finite q >= 1"));
    }

    Ok(RunConfig {
        n: raw.n,
        l,
        params,
        ic,
        cadence,
        eps,
        c_gronwall,
        m_alert,
        s_list,
        serrin,
        hs_slack,
        omega_max,
        cfl,
        checkpoint_interval: raw.checkpoint_interval.unwrap_or(100),
        output: raw.output.unwrap_or_else(|| PathBuf::from(DEFAULT_OUTPUT)),
    })
}

impl RunConfig {
    /// Hex SHA-256 of the configuration without its output directory and
    /// checkpoint interval, neither of which affects the trajectory.
    pub fn hash(&self) -> String {
        let mut c = self.clone();
        c.output = PathBuf::new();
        c.checkpoint_interval = 0;
        let bytes = serde_json::to_vec(&c).expect("config serializes");
        hex::encode(Sha256::digest(bytes))
    }

    /// `p` values whose norms must be recorded.
    pub fn lp_exponents(&self) -> Vec<f64> {
        let mut ps: Vec<f64> = Vec::new();
        for [p, _] in &self.serrin {
            if !ps.contains(p) {
                ps.push(*p);
            }
        }
        ps
    }
}
