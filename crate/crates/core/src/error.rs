//! Crate-wide error type.

use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("grid mismatch: operands live on different grids")]
    GridMismatch,

    #[error("invalid exponent p = {0}: must satisfy p >= 1")]
    InvalidExponent(f64),

    #[error("vorticity has a nonzero mean mode (|w(0)| = {0:e}); Biot-Savart inversion needs mean-free input")]
    NonzeroMean(f64),

    #[error("shell index {j} outside partition range [{min}, {max}]")]
    ShellOutOfRange { j: i32, min: i32, max: i32 },

    #[error("grid too small to host a dyadic shell")]
    NoShells,

    #[error("shell {0} of the field is identically zero; ratio undefined")]
    EmptyShell(i32),

    #[error("bernstein probe requires p <= q (got p = {p}, q = {q})")]
    BernsteinExponents { p: f64, q: f64 },

    #[error("ideal MHD out of scope: nu and eta must both be positive (nu = {nu}, eta = {eta}); whether the criterion holds without dissipation is open")]
    IdealMhd { nu: f64, eta: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown initial condition `{0}`")]
    UnknownInitialCondition(String),

    #[error("blow-up suspected at t = {t}: {reason}")]
    BlowUpSuspected { t: f64, reason: String },

    #[error("window [{start}, {end}] not covered by records spanning [{from}, {to}]")]
    WindowNotCovered { start: f64, end: f64, from: f64, to: f64 },

    #[error("inadmissible exponents for {criterion}: violates {constraint} (p = {p}, q = {q})")]
    Inadmissible { criterion: &'static str, constraint: &'static str, p: f64, q: f64 },

    #[error("records do not carry {0}")]
    MissingNorm(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("bad snapshot magic")]
    BadMagic,

    #[error("snapshot format version {found} not supported (expected {expected})")]
    VersionMismatch { found: u32, expected: u32 },

    #[error("snapshot declares {0} fields, expected 6")]
    FieldCount(u32),

    #[error("truncated {0}")]
    Truncated(&'static str),

    #[error("snapshot size mismatch: header declares {expected} payload bytes, file holds {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("checkpoint was written under config hash {found}, current config hashes to {expected}")]
    ConfigHashMismatch { expected: String, found: String },

    #[error("records file: {0}")]
    Records(String),

    #[error("I/O error on {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}
