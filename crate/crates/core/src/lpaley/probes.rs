//! Empirical probes of the Bernstein and commutator inequalities. Nothing
//! here assumes a value for the inequality constants; the probes return ratios.

use num_complex::Complex64;

use super::partition::{DyadicPartition, Shell, SpectralField};
use crate::error::{Error, Result};
use crate::spectral::{bessel_symbol, lp_norm_of_magnitudes, Grid, ScalarFieldK};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Multi-indices `α ∈ N^3` with `|α| = order`.
pub fn multi_indices(order: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in 0..=order {
        for b in 0..=order - a {
            out.push([a, b, order - a - b]);
        }
    }
    out
}

/// `max_{|α| = order} ‖∂^α Δ_j f‖_q / (2^{j·order + 3j(1/p - 1/q)} ‖Δ_j f‖_p)`.
pub fn bernstein_ratio(f: &ScalarFieldK, j: i32, order: u32, p: f64, q: f64, part: &DyadicPartition) -> Result<f64> {
    for e in [p, q] {
        if !(e >= 1.0) {
            return Err(Error::InvalidExponent(e));
        }
    }
    if p > q {
        return Err(Error::BernsteinExponents { p, q });
    }
    let block = part.project_shell(f, Shell::Index(j))?;
    let grid = part.grid();
    let base = lp_norm_of_magnitudes(grid, &block.physical_magnitudes(), p)?;
    if base == 0.0 {
        return Err(Error::EmptyShell(j));
    }
    let exponent = j as f64 * order as f64 + 3.0 * j as f64 * (1.0 / p - 1.0 / q);
    let denom = exponent.exp2() * base;
    let mut worst = 0.0f64;
    for alpha in multi_indices(order) {
        let d = block.map_modes(|i, c| c * derivative_symbol(grid, i, alpha));
        let num = lp_norm_of_magnitudes(grid, &d.physical_magnitudes(), q)?;
        worst = worst.max(num / denom);
    }
    Ok(worst)
}

fn derivative_symbol(grid: &Grid, idx: usize, alpha: [u32; 3]) -> Complex64 {
    let k = grid.deriv_vector(idx);
    let mut s = Complex64::new(1.0, 0.0);
    for a in 0..3 {
        for _ in 0..alpha[a] {
            s *= I * k[a];
        }
    }
    s
}

/// Exponents `(p; p1, p2; p3, p4)` for the commutator bracket, with
/// `1/p = 1/p1 + 1/p2 = 1/p3 + 1/p4`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CommutatorExponents {
    pub p: f64,
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
    pub p4: f64,
}

impl CommutatorExponents {
    /// The `L^2` split `1/2 = 1/∞ + 1/2 = 1/2 + 1/∞`.
    pub const L2: CommutatorExponents =
        CommutatorExponents { p: 2.0, p1: f64::INFINITY, p2: 2.0, p3: 2.0, p4: f64::INFINITY };

    pub fn validate(&self) -> Result<()> {
        let open = |e: f64| e > 1.0 && e < f64::INFINITY;
        if !open(self.p) || !open(self.p2) || !open(self.p3) {
            return Err(Error::InvalidParameter("commutator needs p, p2, p3 in (1, ∞)".into()));
        }
        if self.p1 < 1.0 || self.p4 < 1.0 {
            return Err(Error::InvalidParameter("commutator needs p1, p4 >= 1".into()));
        }
        let inv = |e: f64| 1.0 / e;
        let tol = 1e-12;
        if (inv(self.p) - inv(self.p1) - inv(self.p2)).abs() > tol
            || (inv(self.p) - inv(self.p3) - inv(self.p4)).abs() > tol
        {
            return Err(Error::InvalidParameter("commutator exponents must satisfy 1/p = 1/p1 + 1/p2 = 1/p3 + 1/p4".into()));
        }
        Ok(())
    }
}

/// Output of [`commutator_residual`].
#[derive(Debug, Clone)]
pub struct CommutatorReport {
    /// Coefficients of `Λ^s(fg) - f Λ^s g` (products dealiased).
    pub residual: ScalarFieldK,
    /// `‖Λ^s(fg) - f Λ^s g‖_p`.
    pub lhs: f64,
    /// `‖∇f‖_{p1} ‖g‖_{H^{s-1,p2}} + ‖f‖_{H^{s,p3}} ‖g‖_{p4}`.
    pub bracket: f64,
}

impl CommutatorReport {
    /// Empirical constant `lhs / bracket` (zero when both vanish).
    pub fn ratio(&self) -> f64 {
        if self.lhs == 0.0 {
            0.0
        } else {
            self.lhs / self.bracket
        }
    }
}

/// Commutator `Λ^s(fg) - f Λ^s g` with its `L^p` norm and the right-hand
/// bracket of the Kato-Ponce estimate. Inputs may be complex-valued
/// (non-Hermitian coefficients); products are formed in physical space and
/// truncated to the 2/3 mask.
pub fn commutator_residual(f: &ScalarFieldK, g: &ScalarFieldK, s: f64, exps: CommutatorExponents) -> Result<CommutatorReport> {
    if !(s > 0.0) {
        return Err(Error::InvalidParameter(format!("commutator needs s > 0, got {s}")));
    }
    exps.validate()?;
    crate::spectral::same_grid(f.grid(), g.grid())?;
    let grid = f.grid().clone();

    let fx = f.to_complex_physical();
    let gx = g.to_complex_physical();
    let lambda_g = g.map_modes(|i, c| c * bessel_symbol(grid.k2(i), s)).to_complex_physical();

    let product = |a: &[Complex64], b: &[Complex64]| -> ScalarFieldK {
        let data: Vec<Complex64> = a.iter().zip(b).map(|(x, y)| x * y).collect();
        ScalarFieldK::from_complex_physical(&grid, data).expect("length matches").dealiased()
    };
    let fg = product(&fx, &gx);
    let f_lambda_g = product(&fx, &lambda_g);
    let lambda_fg = fg.map_modes(|i, c| c * bessel_symbol(grid.k2(i), s));
    let residual = lambda_fg.sub(&f_lambda_g)?;

    let lp_complex = |v: &[Complex64], p: f64| -> Result<f64> {
        let mags: Vec<f64> = v.iter().map(|c| c.norm()).collect();
        lp_norm_of_magnitudes(&grid, &mags, p)
    };
    let lhs = lp_complex(&residual.to_complex_physical(), exps.p)?;

    let grad: Vec<Vec<Complex64>> = (0..3)
        .map(|a| f.map_modes(|i, c| I * grid.deriv_vector(i)[a] * c).to_complex_physical())
        .collect();
    let grad_mag: Vec<f64> = (0..grid.len())
        .map(|x| (grad[0][x].norm_sqr() + grad[1][x].norm_sqr() + grad[2][x].norm_sqr()).sqrt())
        .collect();
    let grad_f = lp_norm_of_magnitudes(&grid, &grad_mag, exps.p1)?;
    let g_s1 = lp_complex(&g.map_modes(|i, c| c * bessel_symbol(grid.k2(i), s - 1.0)).to_complex_physical(), exps.p2)?;
    let f_s = lp_complex(&f.map_modes(|i, c| c * bessel_symbol(grid.k2(i), s)).to_complex_physical(), exps.p3)?;
    let g_p4 = lp_complex(&gx, exps.p4)?;

    Ok(CommutatorReport { residual, lhs, bracket: grad_f * g_s1 + f_s * g_p4 })
}
