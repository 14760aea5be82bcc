//! Binary snapshot: a 52-byte little-endian header
//!
//! ```text
//! magic "MHDSNAP\0" | version u32 | n u32 | l f64 | t f64 | nu f64 | eta f64 | field_count u32
//! ```
//!
//! followed by `field_count · n³` f64 values: the real-space components
//! `u_x, u_y, u_z, b_x, b_y, b_z`, each x-fastest.

use std::path::Path;

use crate::error::{Error, Result};
use crate::solver::MhdState;
use crate::spectral::{make_grid, VectorFieldR};

pub const MAGIC: &[u8; 8] = b"MHDSNAP\0";
pub const VERSION: u32 = 1;
pub const HEADER_LEN: usize = 52;
const FIELD_COUNT: u32 = 6;

/// A decoded snapshot.
#[derive(Debug, Clone)]
pub struct Snapshot {
    pub state: MhdState,
    pub nu: f64,
    pub eta: f64,
}

pub fn encode_snapshot(state: &MhdState, nu: f64, eta: f64) -> Vec<u8> {
    let grid = state.grid();
    let mut out = Vec::with_capacity(HEADER_LEN + 6 * 8 * grid.len());
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    out.extend_from_slice(&(grid.n() as u32).to_le_bytes());
    for v in [grid.l(), state.t(), nu, eta] {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out.extend_from_slice(&FIELD_COUNT.to_le_bytes());
    for field in [state.u(), state.b()] {
        for comp in field.comps() {
            for v in comp {
                out.extend_from_slice(&v.to_le_bytes());
            }
        }
    }
    out
}

fn u32_at(b: &[u8], at: usize) -> u32 {
    u32::from_le_bytes(b[at..at + 4].try_into().expect("4 bytes"))
}

fn f64_at(b: &[u8], at: usize) -> f64 {
    f64::from_le_bytes(b[at..at + 8].try_into().expect("8 bytes"))
}

pub fn decode_snapshot(bytes: &[u8]) -> Result<Snapshot> {
    if bytes.len() < MAGIC.len() {
        return Err(Error::Truncated("header"));
    }
    if &bytes[..8] != MAGIC {
        return Err(Error::BadMagic);
    }
    if bytes.len() < HEADER_LEN {
        return Err(Error::Truncated("header"));
    }
    let version = u32_at(bytes, 8);
    if version != VERSION {
        return Err(Error::VersionMismatch { found: version, expected: VERSION });
    }
    let n = u32_at(bytes, 12) as usize;
    let (l, t, nu, eta) = (f64_at(bytes, 16), f64_at(bytes, 24), f64_at(bytes, 32), f64_at(bytes, 40));
    let fields = u32_at(bytes, 48);
    if fields != FIELD_COUNT {
        return Err(Error::FieldCount(fields));
    }
    let grid = make_grid(n, l)?;
    let payload = &bytes[HEADER_LEN..];
    if payload.len() % 8 != 0 {
        return Err(Error::Truncated("payload"));
    }
    let expected = fields as usize * grid.len() * 8;
    if payload.len() != expected {
        return Err(Error::SizeMismatch { expected, found: payload.len() });
    }
    let values: Vec<f64> = payload.chunks_exact(8).map(|c| f64::from_le_bytes(c.try_into().expect("8 bytes"))).collect();
    let len = grid.len();
    let comp = |k: usize| values[k * len..(k + 1) * len].to_vec();
    let u = VectorFieldR::from_components(&grid, [comp(0), comp(1), comp(2)])?;
    let b = VectorFieldR::from_components(&grid, [comp(3), comp(4), comp(5)])?;
    Ok(Snapshot { state: MhdState::from_physical(u, b, t)?, nu, eta })
}

pub fn write_snapshot(state: &MhdState, nu: f64, eta: f64, path: &Path) -> Result<()> {
    std::fs::write(path, encode_snapshot(state, nu, eta)).map_err(|e| Error::io(path, e))
}

pub fn read_snapshot(path: &Path) -> Result<Snapshot> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    decode_snapshot(&bytes)
}
