use std::ops::RangeInclusive;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral::{inverse, inverse_vector, Grid, ScalarFieldK, VectorFieldK};

/// Smooth step: 1 for `r <= 0`, 0 for `r >= 1`, `C^∞` in between.
fn smooth_step(r: f64) -> f64 {
    if r <= 0.0 {
        1.0
    } else if r >= 1.0 {
        0.0
    } else {
        let g = |t: f64| (-1.0 / t).exp();
        g(1.0 - r) / (g(r) + g(1.0 - r))
    }
}

/// Radial low-pass profile: `χ ≡ 1` on `|ξ| <= 1`, `χ = 0` for `|ξ| >= 4/3`.
pub fn chi(radius: f64) -> f64 {
    smooth_step((radius - 1.0) * 3.0)
}

/// Annulus profile `φ(ξ) = χ(ξ/2) - χ(ξ)`, supported in `1 <= |ξ| <= 8/3`.
pub fn phi(radius: f64) -> f64 {
    chi(0.5 * radius) - chi(radius)
}

/// Which frequency block to extract.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shell {
    /// The low-frequency block `χ(2^{-j_min} D)`.
    Low,
    /// `Δ_j = φ(2^{-j} D)`.
    Index(i32),
}

/// Fourier-side fields that can be filtered by a real per-mode mask.
pub trait SpectralField: Sized {
    fn grid(&self) -> &Arc<Grid>;
    fn masked(&self, mask: &[f64]) -> Self;
    /// Pointwise magnitudes of the physical-space image.
    fn physical_magnitudes(&self) -> Vec<f64>;
}

impl SpectralField for ScalarFieldK {
    fn grid(&self) -> &Arc<Grid> {
        ScalarFieldK::grid(self)
    }
    fn masked(&self, mask: &[f64]) -> Self {
        self.map_modes(|i, c| c * mask[i])
    }
    fn physical_magnitudes(&self) -> Vec<f64> {
        inverse(self).values().iter().map(|v| v.abs()).collect()
    }
}

impl SpectralField for VectorFieldK {
    fn grid(&self) -> &Arc<Grid> {
        VectorFieldK::grid(self)
    }
    fn masked(&self, mask: &[f64]) -> Self {
        self.apply_mask(mask)
    }
    fn physical_magnitudes(&self) -> Vec<f64> {
        inverse_vector(self).magnitude().into_values()
    }
}

/// Dyadic partition of unity sampled on a grid's wavenumber lattice.
#[derive(Debug, Clone)]
pub struct DyadicPartition {
    grid: Arc<Grid>,
    j_min: i32,
    j_max: i32,
    chi_mask: Vec<f64>,
    phi_masks: Vec<Vec<f64>>,
    occupied: Vec<bool>,
}

/// Builds `χ(2^{-j_min} k)` and `φ(2^{-j} k)` for every shell needed to
/// cover the retained nonzero modes of `grid`.
pub fn build_partition(grid: &Arc<Grid>) -> Result<DyadicPartition> {
    let (mut k_min, mut k_max) = (f64::INFINITY, 0.0f64);
    for i in 1..grid.len() {
        if grid.dealias(i) {
            let k = grid.kmag(i);
            k_min = k_min.min(k);
            k_max = k_max.max(k);
        }
    }
    if k_max == 0.0 {
        return Err(Error::NoShells);
    }
    let j_min = (k_min * 3.0 / 8.0).log2().floor() as i32;
    let j_max = (k_max * 4.0 / 3.0).log2().ceil() as i32;

    let radii: Vec<f64> = (0..grid.len()).map(|i| grid.kmag(i)).collect();
    let chi_mask = radii.iter().map(|&r| chi(r * (-j_min as f64).exp2())).collect();
    let phi_masks: Vec<Vec<f64>> = (j_min..=j_max)
        .map(|j| {
            let s = (-j as f64).exp2();
            radii.iter().map(|&r| phi(r * s)).collect()
        })
        .collect();
    let occupied = phi_masks
        .iter()
        .map(|m| m.iter().enumerate().any(|(i, &v)| v != 0.0 && grid.dealias(i)))
        .collect();
    Ok(DyadicPartition { grid: grid.clone(), j_min, j_max, chi_mask, phi_masks, occupied })
}

impl DyadicPartition {
    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn j_min(&self) -> i32 {
        self.j_min
    }

    pub fn j_max(&self) -> i32 {
        self.j_max
    }

    pub fn shells(&self) -> RangeInclusive<i32> {
        self.j_min..=self.j_max
    }

    pub fn shell_count(&self) -> usize {
        (self.j_max - self.j_min + 1) as usize
    }

    pub fn chi_mask(&self) -> &[f64] {
        &self.chi_mask
    }

    pub fn phi_mask(&self, j: i32) -> Result<&[f64]> {
        self.check(j)?;
        Ok(&self.phi_masks[(j - self.j_min) as usize])
    }

    /// Whether shell `j` touches any retained mode.
    pub fn is_occupied(&self, j: i32) -> bool {
        self.shells().contains(&j) && self.occupied[(j - self.j_min) as usize]
    }

    fn check(&self, j: i32) -> Result<()> {
        if self.shells().contains(&j) {
            Ok(())
        } else {
            Err(Error::ShellOutOfRange { j, min: self.j_min, max: self.j_max })
        }
    }

    fn check_grid(&self, g: &Arc<Grid>) -> Result<()> {
        crate::spectral::same_grid(&self.grid, g)
    }

    /// `Δ_j f` for `Shell::Index(j)`, the χ block for `Shell::Low`.
    pub fn project_shell<F: SpectralField>(&self, f: &F, shell: Shell) -> Result<F> {
        self.check_grid(f.grid())?;
        let mask = match shell {
            Shell::Low => &self.chi_mask[..],
            Shell::Index(j) => self.phi_mask(j)?,
        };
        Ok(f.masked(mask))
    }

    /// `S_j f = χ(2^{-j} D) f` for any integer `j`.
    pub fn low_pass<F: SpectralField>(&self, f: &F, j: i32) -> Result<F> {
        self.check_grid(f.grid())?;
        let s = (-j as f64).exp2();
        let mask: Vec<f64> = (0..self.grid.len()).map(|i| chi(self.grid.kmag(i) * s)).collect();
        Ok(f.masked(&mask))
    }

    /// `‖Δ_j f‖_∞` (grid maximum) for every shell, in shell order.
    /// Shells that miss every retained mode are reported as zero without a transform.
    pub fn shell_sup_norms<F: SpectralField>(&self, f: &F) -> Result<Vec<f64>> {
        self.check_grid(f.grid())?;
        Ok(self
            .shells()
            .map(|j| {
                if !self.is_occupied(j) {
                    return 0.0;
                }
                let block = f.masked(&self.phi_masks[(j - self.j_min) as usize]);
                block.physical_magnitudes().into_iter().fold(0.0, f64::max)
            })
            .collect())
    }

    /// `C_h = max_j (l/n)^3 Σ_x |h_j(x)|`, where `h_j` is the periodic kernel
    /// of `φ(2^{-j} D)`. Bounds `sup_j ‖Δ_j f‖_∞ <= C_h ‖f‖_∞` on grid maxima.
    pub fn kernel_constant(&self) -> f64 {
        let g = &self.grid;
        self.phi_masks
            .iter()
            .map(|mask| {
                let coeffs = mask.iter().map(|&m| Complex64::new(m, 0.0)).collect();
                let k = ScalarFieldK::from_coeffs(g, coeffs).expect("mask length matches grid");
                // inverse transform already carries the 1/n^3 = (l/n)^3 / l^3 weight
                k.to_complex_physical().iter().map(|c| c.norm()).sum::<f64>()
            })
            .fold(0.0, f64::max)
    }
}
