use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use super::fft::Fft3;
use crate::error::{Error, Result};

/// Periodic box `[0, l)^3` sampled at `n` points per axis.
///
/// Storage order everywhere in the crate is x-fastest: the flat index of
/// `(ix, iy, iz)` is `ix + n * (iy + n * iz)`, in physical and Fourier space
/// alike. Fourier index `i` carries the integer wavenumber `m = i` for
/// `i < n/2` and `m = i - n` otherwise, so each axis spans `[-n/2, n/2 - 1]`.
pub struct Grid {
    n: usize,
    l: f64,
    scale: f64,
    modes: Vec<i64>,
    deriv: Vec<f64>,
    keep: Vec<bool>,
    fft: Fft3,
}

impl fmt::Debug for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Grid").field("n", &self.n).field("l", &self.l).finish()
    }
}

impl PartialEq for Grid {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.l.to_bits() == other.l.to_bits()
    }
}

/// Builds a shared grid. `n` must be even and at least 4, `l` positive.
pub fn make_grid(n: usize, l: f64) -> Result<Arc<Grid>> {
    if n < 4 {
        return Err(Error::InvalidGrid(format!("n = {n} is below the minimum of 4")));
    }
    if n % 2 != 0 {
        return Err(Error::InvalidGrid(format!("n = {n} must be even")));
    }
    if !(l > 0.0 && l.is_finite()) {
        return Err(Error::InvalidGrid(format!("box length l = {l} must be positive")));
    }
    let scale = 2.0 * PI / l;
    let half = (n / 2) as i64;
    let modes: Vec<i64> = (0..n as i64).map(|i| if i < half { i } else { i - n as i64 }).collect();
    // The Nyquist mode has no real-valued odd derivative.
    let deriv = modes
        .iter()
        .map(|&m| if m == -half { 0.0 } else { scale * m as f64 })
        .collect();
    let keep = modes.iter().map(|&m| 3 * m.unsigned_abs() < n as u64).collect();
    Ok(Arc::new(Grid { n, l, scale, modes, deriv, keep, fft: Fft3::new(n) }))
}

impl Grid {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn l(&self) -> f64 {
        self.l
    }

    /// Number of samples (and of Fourier modes), `n^3`.
    pub fn len(&self) -> usize {
        self.n * self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Wavenumber unit `2π / l`.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn spacing(&self) -> f64 {
        self.l / self.n as f64
    }

    /// Quadrature weight `(l/n)^3`.
    pub fn cell_volume(&self) -> f64 {
        self.spacing().powi(3)
    }

    pub fn volume(&self) -> f64 {
        self.l.powi(3)
    }

    pub(crate) fn fft(&self) -> &Fft3 {
        &self.fft
    }

    /// Integer wavenumbers along one axis in storage order.
    pub fn axis_modes(&self) -> &[i64] {
        &self.modes
    }

    /// Physical wavenumbers `2π m / l` along one axis in storage order.
    pub fn axis_wavenumbers(&self) -> Vec<f64> {
        self.modes.iter().map(|&m| self.scale * m as f64).collect()
    }

    #[inline]
    pub fn index(&self, ix: usize, iy: usize, iz: usize) -> usize {
        ix + self.n * (iy + self.n * iz)
    }

    #[inline]
    pub fn coords(&self, idx: usize) -> [usize; 3] {
        let n = self.n;
        [idx % n, (idx / n) % n, idx / (n * n)]
    }

    /// Integer wavevector of a flat mode index.
    #[inline]
    pub fn mode(&self, idx: usize) -> [i64; 3] {
        let [a, b, c] = self.coords(idx);
        [self.modes[a], self.modes[b], self.modes[c]]
    }

    /// Flat index of the mode with integer wavevector `m` (each component in `[-n/2, n/2)`).
    pub fn mode_index(&self, m: [i64; 3]) -> usize {
        let n = self.n as i64;
        let wrap = |v: i64| v.rem_euclid(n) as usize;
        self.index(wrap(m[0]), wrap(m[1]), wrap(m[2]))
    }

    /// Flat index of `-k`.
    #[inline]
    pub fn conjugate_index(&self, idx: usize) -> usize {
        let n = self.n;
        let [a, b, c] = self.coords(idx);
        self.index((n - a) % n, (n - b) % n, (n - c) % n)
    }

    /// Physical wavevector `2π m / l`.
    #[inline]
    pub fn wavevector(&self, idx: usize) -> [f64; 3] {
        let m = self.mode(idx);
        [self.scale * m[0] as f64, self.scale * m[1] as f64, self.scale * m[2] as f64]
    }

    /// Wavevector used for odd derivatives: the Nyquist component is zeroed.
    #[inline]
    pub fn deriv_vector(&self, idx: usize) -> [f64; 3] {
        let [a, b, c] = self.coords(idx);
        [self.deriv[a], self.deriv[b], self.deriv[c]]
    }

    /// `|k|^2`, computed from the integer lattice so that it is exactly
    /// invariant under permutations and sign flips of `k`.
    #[inline]
    pub fn k2(&self, idx: usize) -> f64 {
        let m = self.mode(idx);
        let s = m[0] * m[0] + m[1] * m[1] + m[2] * m[2];
        self.scale * self.scale * s as f64
    }

    #[inline]
    pub fn kmag(&self, idx: usize) -> f64 {
        self.k2(idx).sqrt()
    }

    /// 2/3-rule mask: every `|m_i| < n/3`.
    #[inline]
    pub fn dealias(&self, idx: usize) -> bool {
        let [a, b, c] = self.coords(idx);
        self.keep[a] && self.keep[b] && self.keep[c]
    }

    pub fn dealias_mask(&self) -> Vec<bool> {
        (0..self.len()).map(|i| self.dealias(i)).collect()
    }

    /// Largest retained integer wavenumber per axis.
    pub fn max_retained_mode(&self) -> i64 {
        ((self.n - 1) / 3) as i64
    }

    /// Physical coordinate of sample `i` along an axis.
    pub fn coordinate(&self, i: usize) -> f64 {
        self.spacing() * i as f64
    }
}
