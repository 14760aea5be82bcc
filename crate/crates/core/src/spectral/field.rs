use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;

use super::grid::Grid;
use crate::error::{Error, Result};

/// Fourier coefficients of a scalar field (forward-transform convention).
#[derive(Debug, Clone)]
pub struct ScalarFieldK {
    pub(crate) grid: Arc<Grid>,
    pub(crate) coeffs: Vec<Complex64>,
}

/// Fourier coefficients of a 3-component vector field.
#[derive(Debug, Clone)]
pub struct VectorFieldK {
    pub(crate) grid: Arc<Grid>,
    pub(crate) comps: [Vec<Complex64>; 3],
}

/// Real samples of a scalar field, x-fastest.
#[derive(Debug, Clone)]
pub struct ScalarFieldR {
    pub(crate) grid: Arc<Grid>,
    pub(crate) values: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct VectorFieldR {
    pub(crate) grid: Arc<Grid>,
    pub(crate) comps: [Vec<f64>; 3],
}

pub(crate) fn same_grid(a: &Arc<Grid>, b: &Arc<Grid>) -> Result<()> {
    if Arc::ptr_eq(a, b) || **a == **b {
        Ok(())
    } else {
        Err(Error::GridMismatch)
    }
}

fn check_len(grid: &Grid, len: usize) -> Result<()> {
    if len == grid.len() {
        Ok(())
    } else {
        Err(Error::InvalidGrid(format!("expected {} values, got {len}", grid.len())))
    }
}

impl ScalarFieldK {
    pub fn zeros(grid: &Arc<Grid>) -> Self {
        ScalarFieldK { grid: grid.clone(), coeffs: vec![Complex64::default(); grid.len()] }
    }

    pub fn from_coeffs(grid: &Arc<Grid>, coeffs: Vec<Complex64>) -> Result<Self> {
        check_len(grid, coeffs.len())?;
        Ok(ScalarFieldK { grid: grid.clone(), coeffs })
    }

    /// Builds coefficients mode by mode from the flat index.
    pub fn from_fn(grid: &Arc<Grid>, f: impl Fn(usize) -> Complex64 + Sync) -> Self {
        let coeffs = (0..grid.len()).into_par_iter().map(&f).collect();
        ScalarFieldK { grid: grid.clone(), coeffs }
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Coefficient at integer wavevector `m`.
    pub fn at(&self, m: [i64; 3]) -> Complex64 {
        self.coeffs[self.grid.mode_index(m)]
    }

    /// Multiplies each mode by `f(idx)`.
    pub fn map_modes(&self, f: impl Fn(usize, Complex64) -> Complex64 + Sync) -> Self {
        let coeffs = self.coeffs.par_iter().enumerate().map(|(i, &c)| f(i, c)).collect();
        ScalarFieldK { grid: self.grid.clone(), coeffs }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        same_grid(&self.grid, &other.grid)?;
        Ok(self.map_modes(|i, c| c + other.coeffs[i]))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        same_grid(&self.grid, &other.grid)?;
        Ok(self.map_modes(|i, c| c - other.coeffs[i]))
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map_modes(|_, c| c * s)
    }

    /// Zeroes every mode outside the 2/3 mask.
    pub fn dealiased(&self) -> Self {
        let g = self.grid.clone();
        self.map_modes(|i, c| if g.dealias(i) { c } else { Complex64::default() })
    }

    /// Forward transform of complex physical-space samples.
    pub fn from_complex_physical(grid: &Arc<Grid>, mut data: Vec<Complex64>) -> Result<Self> {
        check_len(grid, data.len())?;
        grid.fft().forward(&mut data);
        Ok(ScalarFieldK { grid: grid.clone(), coeffs: data })
    }

    /// Inverse transform keeping complex values (for non-Hermitian input).
    pub fn to_complex_physical(&self) -> Vec<Complex64> {
        let mut data = self.coeffs.clone();
        self.grid.fft().inverse(&mut data);
        data
    }

    /// Largest Hermitian-symmetry defect `|c(-k) - conj(c(k))|`.
    pub fn hermitian_defect(&self) -> f64 {
        let g = &self.grid;
        let half = (g.n() / 2) as i64;
        (0..g.len())
            .filter(|&i| g.mode(i).iter().all(|&m| m != -half))
            .map(|i| (self.coeffs[g.conjugate_index(i)] - self.coeffs[i].conj()).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

impl VectorFieldK {
    pub fn zeros(grid: &Arc<Grid>) -> Self {
        let z = vec![Complex64::default(); grid.len()];
        VectorFieldK { grid: grid.clone(), comps: [z.clone(), z.clone(), z] }
    }

    pub fn from_components(x: ScalarFieldK, y: ScalarFieldK, z: ScalarFieldK) -> Result<Self> {
        same_grid(&x.grid, &y.grid)?;
        same_grid(&x.grid, &z.grid)?;
        Ok(VectorFieldK { grid: x.grid, comps: [x.coeffs, y.coeffs, z.coeffs] })
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn comps(&self) -> &[Vec<Complex64>; 3] {
        &self.comps
    }

    pub fn comps_mut(&mut self) -> &mut [Vec<Complex64>; 3] {
        &mut self.comps
    }

    pub fn component(&self, axis: usize) -> ScalarFieldK {
        ScalarFieldK { grid: self.grid.clone(), coeffs: self.comps[axis].clone() }
    }

    /// Applies `f(idx, [cx, cy, cz])` mode by mode.
    pub fn map_modes(&self, f: impl Fn(usize, [Complex64; 3]) -> [Complex64; 3] + Sync) -> Self {
        let out: Vec<[Complex64; 3]> = (0..self.grid.len())
            .into_par_iter()
            .map(|i| f(i, [self.comps[0][i], self.comps[1][i], self.comps[2][i]]))
            .collect();
        let mut comps = [Vec::with_capacity(out.len()), Vec::with_capacity(out.len()), Vec::with_capacity(out.len())];
        for v in out {
            for a in 0..3 {
                comps[a].push(v[a]);
            }
        }
        VectorFieldK { grid: self.grid.clone(), comps }
    }

    /// Multiplies all components by a real per-mode mask.
    pub fn apply_mask(&self, mask: &[f64]) -> Self {
        let comps = std::array::from_fn(|a| {
            self.comps[a].par_iter().zip(mask.par_iter()).map(|(&c, &m)| c * m).collect()
        });
        VectorFieldK { grid: self.grid.clone(), comps }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        same_grid(&self.grid, &other.grid)?;
        Ok(self.axpy(1.0, other))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        same_grid(&self.grid, &other.grid)?;
        Ok(self.axpy(-1.0, other))
    }

    /// `self + a * other`.
    pub(crate) fn axpy(&self, a: f64, other: &Self) -> Self {
        let comps = std::array::from_fn(|c| {
            self.comps[c].par_iter().zip(other.comps[c].par_iter()).map(|(&x, &y)| x + y * a).collect()
        });
        VectorFieldK { grid: self.grid.clone(), comps }
    }

    pub fn scale(&self, s: f64) -> Self {
        let comps = std::array::from_fn(|c| self.comps[c].par_iter().map(|&x| x * s).collect());
        VectorFieldK { grid: self.grid.clone(), comps }
    }

    pub fn dealiased(&self) -> Self {
        let g = self.grid.clone();
        self.map_modes(|i, c| if g.dealias(i) { c } else { [Complex64::default(); 3] })
    }

    pub fn max_abs(&self) -> f64 {
        self.comps.iter().flatten().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn hermitian_defect(&self) -> f64 {
        (0..3).map(|a| self.component(a).hermitian_defect()).fold(0.0, f64::max)
    }

    /// Largest coefficient magnitude outside the 2/3 mask.
    pub fn aliased_content(&self) -> f64 {
        (0..self.grid.len())
            .filter(|&i| !self.grid.dealias(i))
            .flat_map(|i| self.comps.iter().map(move |c| c[i].norm()))
            .fold(0.0, f64::max)
    }
}

impl ScalarFieldR {
    pub fn zeros(grid: &Arc<Grid>) -> Self {
        ScalarFieldR { grid: grid.clone(), values: vec![0.0; grid.len()] }
    }

    pub fn from_values(grid: &Arc<Grid>, values: Vec<f64>) -> Result<Self> {
        check_len(grid, values.len())?;
        Ok(ScalarFieldR { grid: grid.clone(), values })
    }

    /// Samples `f(x, y, z)` at the grid points.
    pub fn from_fn(grid: &Arc<Grid>, f: impl Fn(f64, f64, f64) -> f64 + Sync) -> Self {
        let g = grid.clone();
        let values = (0..grid.len())
            .into_par_iter()
            .map(|i| {
                let [a, b, c] = g.coords(i);
                f(g.coordinate(a), g.coordinate(b), g.coordinate(c))
            })
            .collect();
        ScalarFieldR { grid: grid.clone(), values }
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
}

impl VectorFieldR {
    pub fn zeros(grid: &Arc<Grid>) -> Self {
        let z = vec![0.0; grid.len()];
        VectorFieldR { grid: grid.clone(), comps: [z.clone(), z.clone(), z] }
    }

    pub fn from_components(grid: &Arc<Grid>, comps: [Vec<f64>; 3]) -> Result<Self> {
        for c in &comps {
            check_len(grid, c.len())?;
        }
        Ok(VectorFieldR { grid: grid.clone(), comps })
    }

    pub fn from_fn(grid: &Arc<Grid>, f: impl Fn(f64, f64, f64) -> [f64; 3] + Sync) -> Self {
        let samples: Vec<[f64; 3]> = (0..grid.len())
            .into_par_iter()
            .map(|i| {
                let [a, b, c] = grid.coords(i);
                f(grid.coordinate(a), grid.coordinate(b), grid.coordinate(c))
            })
            .collect();
        let comps = std::array::from_fn(|a| samples.iter().map(|s| s[a]).collect());
        VectorFieldR { grid: grid.clone(), comps }
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn comps(&self) -> &[Vec<f64>; 3] {
        &self.comps
    }

    pub fn component(&self, axis: usize) -> ScalarFieldR {
        ScalarFieldR { grid: self.grid.clone(), values: self.comps[axis].clone() }
    }

    /// Pointwise Euclidean magnitude.
    pub fn magnitude(&self) -> ScalarFieldR {
        let values = (0..self.grid.len())
            .into_par_iter()
            .map(|i| {
                let (x, y, z) = (self.comps[0][i], self.comps[1][i], self.comps[2][i]);
                (x * x + y * y + z * z).sqrt()
            })
            .collect();
        ScalarFieldR { grid: self.grid.clone(), values }
    }

    pub fn is_finite(&self) -> bool {
        self.comps.iter().flatten().all(|v| v.is_finite())
    }
}

/// Forward transform: `f̂(k) = Σ_x f(x) e^{-ik·x}`.
pub fn transform(f: &ScalarFieldR) -> ScalarFieldK {
    let mut data: Vec<Complex64> = f.values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    f.grid.fft().forward(&mut data);
    ScalarFieldK { grid: f.grid.clone(), coeffs: data }
}

/// Inverse transform, keeping the real part.
pub fn inverse(f: &ScalarFieldK) -> ScalarFieldR {
    let data = f.to_complex_physical();
    ScalarFieldR { grid: f.grid.clone(), values: data.into_iter().map(|c| c.re).collect() }
}

pub fn transform_vector(v: &VectorFieldR) -> VectorFieldK {
    let comps = std::array::from_fn(|a| transform(&v.component(a)).coeffs);
    VectorFieldK { grid: v.grid.clone(), comps }
}

pub fn inverse_vector(v: &VectorFieldK) -> VectorFieldR {
    let comps = std::array::from_fn(|a| inverse(&v.component(a)).values);
    VectorFieldR { grid: v.grid.clone(), comps }
}
