//! Real and Fourier representations of fields on the periodic box, and the
//! spectral calculus built on them (derivatives, curl, Leray projection,
//! Biot-Savart inversion, Riesz transforms, Bessel potentials, `L^p` norms).

mod fft;
mod field;
mod grid;
mod ops;

pub use field::{
    inverse, inverse_vector, transform, transform_vector, ScalarFieldK, ScalarFieldR, VectorFieldK,
    VectorFieldR,
};
pub use grid::{make_grid, Grid};
pub use ops::{
    biot_savart, curl, derivative, divergence, gradient, gradient_l2_norm_k, gradient_tensor,
    inner_product, inner_product_scalar, l2_norm_k, l2_norm_scalar_k, lambda_s, lambda_s_vector,
    laplacian, leray_project, lp_norm, lp_norm_of_magnitudes, lp_norm_scalar_k, lp_norm_vector_k,
    relative_divergence, riesz, sobolev_norm_vector_k, tensor_magnitudes, PointwiseMagnitude,
    MEAN_MODE_TOLERANCE,
};

pub(crate) use field::same_grid;
pub(crate) use ops::bessel_symbol;

use std::sync::Arc;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Seeded random real vector field, uniform in `[-1, 1]` per sample.
pub fn random_physical_vector(grid: &Arc<Grid>, seed: u64) -> VectorFieldR {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let comps = std::array::from_fn(|_| (0..grid.len()).map(|_| rng.gen_range(-1.0..1.0)).collect());
    VectorFieldR { grid: grid.clone(), comps }
}

/// Seeded random divergence-free field in Fourier space. With `dealias`
/// the 2/3 mask is applied; otherwise only the Nyquist planes are cleared.
pub fn random_solenoidal(grid: &Arc<Grid>, seed: u64, dealias: bool) -> VectorFieldK {
    let v = transform_vector(&random_physical_vector(grid, seed));
    let half = (grid.n() / 2) as i64;
    let g = grid.clone();
    let v = v.map_modes(|i, c| {
        let keep = if dealias { g.dealias(i) } else { g.mode(i).iter().all(|&m| m != -half) };
        if keep {
            c
        } else {
            [Default::default(); 3]
        }
    });
    leray_project(&v)
}
