//! Time-series file: one header row, then one row per recorded state.
//! Numbers use the shortest round-trip exponent form; `shell_{j}` columns
//! hold `‖Δ_j ω‖_∞`.

use std::fs::{File, OpenOptions};
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::monitor::{DiagnosticRecord, HsNorms, LpNorms};

const FIXED: [&str; 10] =
    ["t", "l2_u", "l2_b", "l2_w", "l2_j", "sup_w", "grad_u", "grad_b", "energy_diss_accum", "flagged"];

/// Column structure shared by every row of a file.
#[derive(Debug, Clone, PartialEq)]
pub struct RecordLayout {
    pub s_list: Vec<f64>,
    pub lp_exponents: Vec<f64>,
    pub j_min: i32,
    pub shells: usize,
}

impl RecordLayout {
    pub fn of(record: &DiagnosticRecord) -> Self {
        RecordLayout {
            s_list: record.hs.iter().map(|h| h.s).collect(),
            lp_exponents: record.lp.iter().map(|l| l.p).collect(),
            j_min: record.j_min,
            shells: record.shell_sup.len(),
        }
    }

    pub fn header(&self) -> Vec<String> {
        let mut h: Vec<String> = FIXED.iter().map(|s| s.to_string()).collect();
        for s in &self.s_list {
            h.push(format!("hs_u_{s}"));
            h.push(format!("hs_b_{s}"));
        }
        for p in &self.lp_exponents {
            h.push(format!("lp_u_{p}"));
            h.push(format!("lp_grad_u_{p}"));
            h.push(format!("lp_curl_u_{p}"));
        }
        for k in 0..self.shells {
            h.push(format!("shell_{}", self.j_min + k as i32));
        }
        h
    }

    fn parse_header(header: &[String]) -> Result<Self> {
        let bad = |msg: String| Error::Records(msg);
        if header.len() < FIXED.len() || header[..FIXED.len()].iter().zip(FIXED).any(|(a, b)| a != b) {
            return Err(bad("header does not start with the fixed columns".into()));
        }
        let num = |s: &str| s.parse::<f64>().map_err(|_| bad(format!("bad column suffix in `{s}`")));
        let mut layout = RecordLayout { s_list: vec![], lp_exponents: vec![], j_min: 0, shells: 0 };
        let mut rest = header[FIXED.len()..].iter().peekable();
        while let Some(col) = rest.next_if(|c| c.starts_with("hs_u_")) {
            layout.s_list.push(num(&col["hs_u_".len()..])?);
            rest.next().filter(|c| c.starts_with("hs_b_")).ok_or_else(|| bad("hs_b column missing".into()))?;
        }
        while let Some(col) = rest.next_if(|c| c.starts_with("lp_u_")) {
            layout.lp_exponents.push(num(&col["lp_u_".len()..])?);
            for prefix in ["lp_grad_u_", "lp_curl_u_"] {
                rest.next().filter(|c| c.starts_with(prefix)).ok_or_else(|| bad(format!("{prefix} column missing")))?;
            }
        }
        for (k, col) in rest.enumerate() {
            let j: i32 = col
                .strip_prefix("shell_")
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| bad(format!("unexpected column `{col}`")))?;
            if k == 0 {
                layout.j_min = j;
            } else if j != layout.j_min + k as i32 {
                return Err(bad("shell columns are not consecutive".into()));
            }
            layout.shells += 1;
        }
        Ok(layout)
    }

    fn row(&self, r: &DiagnosticRecord) -> Result<Vec<String>> {
        if RecordLayout::of(r) != *self {
            return Err(Error::Records("record does not match the file layout".into()));
        }
        let f = |v: f64| format!("{v:e}");
        let mut row: Vec<String> = [r.t, r.l2_u, r.l2_b, r.l2_w, r.l2_j, r.sup_w, r.grad_u, r.grad_b, r.energy_diss_accum]
            .into_iter()
            .map(f)
            .collect();
        row.push(if r.flagged { "1" } else { "0" }.into());
        for h in &r.hs {
            row.extend([f(h.u), f(h.b)]);
        }
        for l in &r.lp {
            row.extend([f(l.u), f(l.grad_u), f(l.curl_u)]);
        }
        row.extend(r.shell_sup.iter().map(|&v| f(v)));
        Ok(row)
    }

    fn parse_row(&self, row: &csv::StringRecord) -> Result<DiagnosticRecord> {
        let expected = FIXED.len() + 2 * self.s_list.len() + 3 * self.lp_exponents.len() + self.shells;
        if row.len() != expected {
            return Err(Error::Records(format!("row has {} fields, expected {expected}", row.len())));
        }
        let v: Vec<f64> = row
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != FIXED.len() - 1)
            .map(|(_, s)| s.parse::<f64>().map_err(|_| Error::Records(format!("bad number `{s}`"))))
            .collect::<Result<_>>()?;
        let flagged = match &row[FIXED.len() - 1] {
            "0" => false,
            "1" => true,
            other => return Err(Error::Records(format!("bad flag `{other}`"))),
        };
        let mut at = FIXED.len() - 1;
        let mut take = |k: usize| {
            let s = &v[at..at + k];
            at += k;
            s.to_vec()
        };
        let hs = self.s_list.iter().map(|&s| {
            let x = take(2);
            HsNorms { s, u: x[0], b: x[1] }
        });
        let hs: Vec<HsNorms> = hs.collect();
        let lp: Vec<LpNorms> = self
            .lp_exponents
            .iter()
            .map(|&p| {
                let x = take(3);
                LpNorms { p, u: x[0], grad_u: x[1], curl_u: x[2] }
            })
            .collect();
        let shell_sup = take(self.shells);
        Ok(DiagnosticRecord {
            t: v[0],
            l2_u: v[1],
            l2_b: v[2],
            l2_w: v[3],
            l2_j: v[4],
            sup_w: v[5],
            grad_u: v[6],
            grad_b: v[7],
            energy_diss_accum: v[8],
            flagged,
            hs,
            lp,
            shell_sup,
            j_min: self.j_min,
        })
    }
}

/// Appends rows and flushes after each one, so an interrupted run leaves a
/// prefix of the complete file.
pub struct RecordsWriter {
    layout: RecordLayout,
    out: csv::Writer<File>,
}

impl RecordsWriter {
    /// Creates (or truncates) the file and writes the header.
    pub fn create(path: &Path, layout: RecordLayout) -> Result<Self> {
        let file = File::create(path).map_err(|e| Error::io(path, e))?;
        let mut w = RecordsWriter { layout, out: csv::WriterBuilder::new().has_headers(false).from_writer(file) };
        let header = w.layout.header();
        w.out.write_record(&header).map_err(|e| Error::Records(e.to_string()))?;
        w.flush(path)?;
        Ok(w)
    }

    /// Opens an existing file for appending.
    pub fn append(path: &Path, layout: RecordLayout) -> Result<Self> {
        let file = OpenOptions::new().append(true).open(path).map_err(|e| Error::io(path, e))?;
        Ok(RecordsWriter { layout, out: csv::WriterBuilder::new().has_headers(false).from_writer(file) })
    }

    pub fn write(&mut self, record: &DiagnosticRecord, path: &Path) -> Result<()> {
        let row = self.layout.row(record)?;
        self.out.write_record(&row).map_err(|e| Error::Records(e.to_string()))?;
        self.flush(path)
    }

    fn flush(&mut self, path: &Path) -> Result<()> {
        self.out.flush().map_err(|e| Error::io(path, e))
    }
}

/// Parses a records file.
pub fn read_records(path: &Path) -> Result<Vec<DiagnosticRecord>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    parse_records(file)
}

pub fn parse_records(input: impl std::io::Read) -> Result<Vec<DiagnosticRecord>> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let header: Vec<String> =
        rdr.headers().map_err(|e| Error::Records(e.to_string()))?.iter().map(str::to_string).collect();
    let layout = RecordLayout::parse_header(&header)?;
    rdr.records().map(|row| layout.parse_row(&row.map_err(|e| Error::Records(e.to_string()))?)).collect()
}

/// Drops every row with `t > t_max` in place and returns the kept records.
/// Kept lines are written back byte for byte.
pub fn truncate_records(path: &Path, t_max: f64) -> Result<Vec<DiagnosticRecord>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut kept = String::with_capacity(text.len());
    for (i, line) in text.split_inclusive('\n').enumerate() {
        if i > 0 {
            let t: f64 = line
                .split(',')
                .next()
                .and_then(|s| s.trim().parse().ok())
                .ok_or_else(|| Error::Records(format!("bad row {i}")))?;
            if t > t_max {
                break;
            }
        }
        kept.push_str(line);
    }
    let mut f = File::create(path).map_err(|e| Error::io(path, e))?;
    f.write_all(kept.as_bytes()).map_err(|e| Error::io(path, e))?;
    parse_records(kept.as_bytes())
}
