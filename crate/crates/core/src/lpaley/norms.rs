use super::partition::{chi, DyadicPartition, Shell, SpectralField};
use crate::error::{Error, Result};
use crate::spectral::{inverse, lambda_s, lp_norm, lp_norm_of_magnitudes, ScalarFieldK};

/// Parameters of a Besov norm `B^s_{p,q}` (homogeneous or not).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormRequest {
    pub s: f64,
    pub p: f64,
    pub q: f64,
    pub homogeneous: bool,
}

impl NormRequest {
    pub fn new(s: f64, p: f64, q: f64, homogeneous: bool) -> Result<Self> {
        for e in [p, q] {
            if !(e >= 1.0) {
                return Err(Error::InvalidExponent(e));
            }
        }
        Ok(NormRequest { s, p, q, homogeneous })
    }

    /// `Ḃ^0_{∞,∞}`.
    pub fn besov_zero_inf() -> Self {
        NormRequest { s: 0.0, p: f64::INFINITY, q: f64::INFINITY, homogeneous: true }
    }
}

/// `ℓ^q` norm of a finite nonnegative sequence (supremum for `q = ∞`).
fn lq_sum(terms: impl Iterator<Item = f64>, q: f64) -> f64 {
    if q == f64::INFINITY {
        terms.fold(0.0, f64::max)
    } else {
        terms.map(|t| t.powf(q)).sum::<f64>().powf(1.0 / q)
    }
}

/// Besov norm over the partition's shell range.
///
/// Homogeneous: `(Σ_j 2^{jsq} ‖Δ_j f‖_p^q)^{1/q}` over `[j_min, j_max]`.
/// Inhomogeneous: `‖S_0 f‖_p + ‖{2^{js} ‖Δ_j f‖_p}_{j >= 0}‖_{ℓ^q}`.
pub fn besov_norm<F: SpectralField>(f: &F, r: &NormRequest, part: &DyadicPartition) -> Result<f64> {
    let r = NormRequest::new(r.s, r.p, r.q, r.homogeneous)?;
    crate::spectral::same_grid(part.grid(), f.grid())?;
    let grid = part.grid();
    let first = if r.homogeneous { part.j_min() } else { 0.max(part.j_min()) };
    let mut terms = Vec::new();
    for j in first..=part.j_max() {
        if !part.is_occupied(j) {
            continue;
        }
        let block = part.project_shell(f, Shell::Index(j))?;
        let norm = lp_norm_of_magnitudes(grid, &block.physical_magnitudes(), r.p)?;
        terms.push((j as f64 * r.s).exp2() * norm);
    }
    let tail = lq_sum(terms.into_iter(), r.q);
    if r.homogeneous {
        return Ok(tail);
    }
    let low_mask: Vec<f64> = (0..grid.len()).map(|i| chi(grid.kmag(i))).collect();
    let low = lp_norm_of_magnitudes(grid, &f.masked(&low_mask).physical_magnitudes(), r.p)?;
    Ok(low + tail)
}

/// `‖f‖_{H^s} = ‖Λ^s f‖_{L^2}`, evaluated by quadrature in physical space.
pub fn sobolev_norm(f: &ScalarFieldK, s: f64) -> f64 {
    lp_norm(&inverse(&lambda_s(f, s)), 2.0).expect("p = 2 is valid")
}
