//! Fourier-multiplier calculus on the periodic box.

use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;

use super::field::{inverse, inverse_vector, ScalarFieldK, ScalarFieldR, VectorFieldK, VectorFieldR};
use super::grid::Grid;
use crate::error::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

#[inline]
fn cross(a: [Complex64; 3], b: [Complex64; 3]) -> [Complex64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

#[inline]
fn ik(k: [f64; 3]) -> [Complex64; 3] {
    [I * k[0], I * k[1], I * k[2]]
}

/// `∂/∂x_axis` as a Fourier multiplier.
pub fn derivative(f: &ScalarFieldK, axis: usize) -> ScalarFieldK {
    let g = f.grid().clone();
    f.map_modes(|i, c| I * g.deriv_vector(i)[axis] * c)
}

/// `(ik × v̂)` mode by mode.
pub fn curl(v: &VectorFieldK) -> VectorFieldK {
    let g = v.grid().clone();
    v.map_modes(|i, c| cross(ik(g.deriv_vector(i)), c))
}

pub fn divergence(v: &VectorFieldK) -> ScalarFieldK {
    let g = v.grid().clone();
    let coeffs = (0..g.len())
        .into_par_iter()
        .map(|i| {
            let k = g.deriv_vector(i);
            I * (k[0] * v.comps[0][i] + k[1] * v.comps[1][i] + k[2] * v.comps[2][i])
        })
        .collect();
    ScalarFieldK { grid: g, coeffs }
}

pub fn gradient(f: &ScalarFieldK) -> VectorFieldK {
    let g = f.grid().clone();
    let comps = std::array::from_fn(|a| derivative(f, a).coeffs);
    VectorFieldK { grid: g, comps }
}

/// Multiplies every mode by `-|k|^2`.
pub fn laplacian(v: &VectorFieldK) -> VectorFieldK {
    let g = v.grid().clone();
    v.map_modes(|i, c| {
        let s = -g.k2(i);
        [c[0] * s, c[1] * s, c[2] * s]
    })
}

/// Orthogonal projection onto divergence-free fields:
/// `v̂ - k (k·v̂)/|k|^2`, with the mean mode passed through.
pub fn leray_project(v: &VectorFieldK) -> VectorFieldK {
    let g = v.grid().clone();
    v.map_modes(|i, c| {
        let k = g.deriv_vector(i);
        let k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
        if k2 == 0.0 {
            return c;
        }
        let kv = (c[0] * k[0] + c[1] * k[1] + c[2] * k[2]) / k2;
        [c[0] - kv * k[0], c[1] - kv * k[1], c[2] - kv * k[2]]
    })
}

/// Tolerance on `|ŵ(0)| / max|ŵ|` accepted by [`biot_savart`].
pub const MEAN_MODE_TOLERANCE: f64 = 1e-12;

/// Mean-free, divergence-free velocity with curl equal to `w`:
/// `û = (ik × ŵ)/|k|^2` for `k ≠ 0`.
pub fn biot_savart(w: &VectorFieldK) -> Result<VectorFieldK> {
    let mean = (0..3).map(|a| w.comps[a][0].norm()).fold(0.0, f64::max);
    let scale = w.max_abs();
    if mean > MEAN_MODE_TOLERANCE * scale.max(f64::MIN_POSITIVE) && mean > 0.0 {
        return Err(Error::NonzeroMean(mean));
    }
    let g = w.grid().clone();
    Ok(w.map_modes(|i, c| {
        let k = g.deriv_vector(i);
        let k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
        if k2 == 0.0 {
            return [Complex64::default(); 3];
        }
        let u = cross(ik(k), c);
        [u[0] / k2, u[1] / k2, u[2] / k2]
    }))
}

/// Riesz transform `R_axis` with multiplier `-i k_axis / |k|`; the mean mode maps to zero.
/// `axis` is zero-based (0, 1, 2 for x, y, z).
pub fn riesz(axis: usize, f: &ScalarFieldK) -> ScalarFieldK {
    assert!(axis < 3, "Riesz axis must be 0, 1 or 2");
    let g = f.grid().clone();
    f.map_modes(|i, c| {
        let k = g.deriv_vector(i);
        let mag = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt();
        if mag == 0.0 {
            Complex64::default()
        } else {
            -I * (k[axis] / mag) * c
        }
    })
}

/// Bessel potential `Λ^s = (I - Δ)^{s/2}`.
pub fn lambda_s(f: &ScalarFieldK, s: f64) -> ScalarFieldK {
    let g = f.grid().clone();
    f.map_modes(|i, c| c * bessel_symbol(g.k2(i), s))
}

pub fn lambda_s_vector(v: &VectorFieldK, s: f64) -> VectorFieldK {
    let g = v.grid().clone();
    v.map_modes(|i, c| {
        let m = bessel_symbol(g.k2(i), s);
        [c[0] * m, c[1] * m, c[2] * m]
    })
}

#[inline]
pub(crate) fn bessel_symbol(k2: f64, s: f64) -> f64 {
    if s == 0.0 {
        1.0
    } else {
        (1.0 + k2).powf(0.5 * s)
    }
}

/// Fields with a pointwise magnitude in physical space.
pub trait PointwiseMagnitude {
    fn grid(&self) -> &Arc<Grid>;
    fn magnitudes(&self) -> Vec<f64>;
}

impl PointwiseMagnitude for ScalarFieldR {
    fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }
    fn magnitudes(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.abs()).collect()
    }
}

impl PointwiseMagnitude for VectorFieldR {
    fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }
    fn magnitudes(&self) -> Vec<f64> {
        self.magnitude().values
    }
}

/// Rectangle-rule `L^p` norm, `((l/n)^3 Σ |f|^p)^{1/p}`; grid maximum for `p = ∞`.
pub fn lp_norm(f: &impl PointwiseMagnitude, p: f64) -> Result<f64> {
    lp_norm_of_magnitudes(f.grid(), &f.magnitudes(), p)
}

/// `L^p` norm of a sequence of pointwise magnitudes sampled on `grid`.
/// Summation runs sequentially in storage order.
pub fn lp_norm_of_magnitudes(grid: &Grid, mags: &[f64], p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::InvalidExponent(p));
    }
    if p == f64::INFINITY {
        return Ok(mags.iter().copied().fold(0.0, f64::max));
    }
    let w = grid.cell_volume();
    let sum: f64 = if p == 1.0 {
        mags.iter().sum()
    } else if p == 2.0 {
        mags.iter().map(|m| m * m).sum()
    } else {
        mags.iter().map(|m| m.powf(p)).sum()
    };
    Ok((w * sum).powf(1.0 / p))
}

/// `L^p` norm of the physical-space image of spectral coefficients.
pub fn lp_norm_scalar_k(f: &ScalarFieldK, p: f64) -> Result<f64> {
    lp_norm(&inverse(f), p)
}

pub fn lp_norm_vector_k(v: &VectorFieldK, p: f64) -> Result<f64> {
    lp_norm(&inverse_vector(v), p)
}

/// `L^2` inner product computed from coefficients (Parseval): `(l^3/n^6) Σ Re(f̂ ĝ*)`.
pub fn inner_product(f: &VectorFieldK, g: &VectorFieldK) -> f64 {
    let grid = f.grid();
    let n3 = grid.len() as f64;
    let mut acc = 0.0;
    for a in 0..3 {
        acc += f.comps[a].iter().zip(&g.comps[a]).map(|(x, y)| (x * y.conj()).re).sum::<f64>();
    }
    acc * grid.volume() / (n3 * n3)
}

pub fn inner_product_scalar(f: &ScalarFieldK, g: &ScalarFieldK) -> f64 {
    let grid = f.grid();
    let n3 = grid.len() as f64;
    let acc: f64 = f.coeffs.iter().zip(&g.coeffs).map(|(x, y)| (x * y.conj()).re).sum();
    acc * grid.volume() / (n3 * n3)
}

/// `‖v‖_2` from coefficients.
pub fn l2_norm_k(v: &VectorFieldK) -> f64 {
    inner_product(v, v).max(0.0).sqrt()
}

pub fn l2_norm_scalar_k(f: &ScalarFieldK) -> f64 {
    inner_product_scalar(f, f).max(0.0).sqrt()
}

/// `‖∇v‖_2` (Frobenius) from coefficients: `(l^3/n^6) Σ |k|^2 |v̂|^2`.
pub fn gradient_l2_norm_k(v: &VectorFieldK) -> f64 {
    weighted_l2(v, |k2| k2).sqrt()
}

/// `‖Λ^s v‖_2` from coefficients.
pub fn sobolev_norm_vector_k(v: &VectorFieldK, s: f64) -> f64 {
    weighted_l2(v, |k2| bessel_symbol(k2, s).powi(2)).sqrt()
}

fn weighted_l2(v: &VectorFieldK, weight: impl Fn(f64) -> f64) -> f64 {
    let g = v.grid();
    let n3 = g.len() as f64;
    let mut acc = 0.0;
    for i in 0..g.len() {
        let m = v.comps[0][i].norm_sqr() + v.comps[1][i].norm_sqr() + v.comps[2][i].norm_sqr();
        if m != 0.0 {
            acc += weight(g.k2(i)) * m;
        }
    }
    acc * g.volume() / (n3 * n3)
}

/// Physical-space gradient tensor: `out[i][j] = ∂_j v_i`.
pub fn gradient_tensor(v: &VectorFieldK) -> [VectorFieldR; 3] {
    std::array::from_fn(|i| inverse_vector(&gradient(&v.component(i))))
}

/// Pointwise Frobenius magnitude of a gradient tensor.
pub fn tensor_magnitudes(t: &[VectorFieldR; 3]) -> Vec<f64> {
    let n = t[0].grid.len();
    (0..n)
        .into_par_iter()
        .map(|x| {
            let mut s = 0.0;
            for row in t {
                for c in &row.comps {
                    s += c[x] * c[x];
                }
            }
            s.sqrt()
        })
        .collect()
}

/// `‖∇·v‖_2 / ‖v‖_2`, or the absolute divergence norm when `v = 0`.
pub fn relative_divergence(v: &VectorFieldK) -> f64 {
    let d = l2_norm_scalar_k(&divergence(v));
    let scale = l2_norm_k(v);
    if scale == 0.0 {
        d
    } else {
        d / scale
    }
}
