//! Three-dimensional complex FFT built from 1D `rustfft` passes.
//!
//! Forward transforms are unnormalized; the inverse divides by `n^3`.
//! Every output element is produced by a fixed sequence of operations, so
//! results do not depend on the rayon thread count.

use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};

pub(crate) struct Fft3 {
    n: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl Fft3 {
    pub fn new(n: usize) -> Self {
        let mut planner = FftPlanner::new();
        Fft3 { n, forward: planner.plan_fft_forward(n), inverse: planner.plan_fft_inverse(n) }
    }

    pub fn forward(&self, data: &mut [Complex64]) {
        self.run(data, &self.forward);
    }

    pub fn inverse(&self, data: &mut [Complex64]) {
        self.run(data, &self.inverse);
        let norm = 1.0 / (self.n * self.n * self.n) as f64;
        data.par_iter_mut().for_each(|v| *v *= norm);
    }

    fn run(&self, data: &mut [Complex64], plan: &Arc<dyn Fft<f64>>) {
        let n = self.n;
        let plane = n * n;
        assert_eq!(data.len(), plane * n);
        let scratch_len = plan.get_inplace_scratch_len();

        // x: lines are contiguous
        data.par_chunks_mut(plane).for_each(|chunk| {
            let mut scratch = vec![Complex64::default(); scratch_len];
            plan.process_with_scratch(chunk, &mut scratch);
        });

        let mut tmp = vec![Complex64::default(); data.len()];

        // y: gather line (ix, iz) into tmp[(ix + n iz) n + iy]
        tmp.par_chunks_mut(plane).enumerate().for_each(|(iz, block)| {
            let src = &data[iz * plane..(iz + 1) * plane];
            for ix in 0..n {
                let line = &mut block[ix * n..(ix + 1) * n];
                for (iy, v) in line.iter_mut().enumerate() {
                    *v = src[ix + n * iy];
                }
            }
            let mut scratch = vec![Complex64::default(); scratch_len];
            plan.process_with_scratch(block, &mut scratch);
        });
        data.par_chunks_mut(plane).enumerate().for_each(|(iz, dst)| {
            let block = &tmp[iz * plane..(iz + 1) * plane];
            for iy in 0..n {
                for ix in 0..n {
                    dst[ix + n * iy] = block[ix * n + iy];
                }
            }
        });

        // z: gather line (ix, iy) into tmp[(ix + n iy) n + iz]
        {
            let src: &[Complex64] = data;
            tmp.par_chunks_mut(n).enumerate().for_each(|(line, out)| {
                for (iz, v) in out.iter_mut().enumerate() {
                    *v = src[line + plane * iz];
                }
            });
        }
        tmp.par_chunks_mut(plane).for_each(|chunk| {
            let mut scratch = vec![Complex64::default(); scratch_len];
            plan.process_with_scratch(chunk, &mut scratch);
        });
        data.par_chunks_mut(plane).enumerate().for_each(|(iz, dst)| {
            for (line, v) in dst.iter_mut().enumerate() {
                *v = tmp[line * n + iz];
            }
        });
    }
}
