use num_complex::Complex64;
use rayon::prelude::*;

use super::params::SolverParams;
use super::state::MhdState;
use crate::spectral::{
    inverse_vector, laplacian, leray_project, same_grid, transform, ScalarFieldR, VectorFieldK, VectorFieldR,
};

const I: Complex64 = Complex64::new(0.0, 1.0);
const PAIRS: [(usize, usize); 6] = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];

fn forward(grid: &std::sync::Arc<crate::spectral::Grid>, values: Vec<f64>) -> Vec<Complex64> {
    transform(&ScalarFieldR { grid: grid.clone(), values }).coeffs
}

fn pointwise(a: &[f64], b: &[f64], c: &[f64], d: &[f64]) -> Vec<f64> {
    a.par_iter().zip(b).zip(c.par_iter().zip(d)).map(|((a, b), (c, d))| a * b - c * d).collect()
}

/// Dealiased nonlinear terms in divergence form:
/// `du = P(-∇·(u⊗u - b⊗b))`, `db = ∇·(u⊗b - b⊗u)`, where `P` is the Leray
/// projection. Products are formed in physical space; the results are zero
/// outside the 2/3 mask.
pub fn nonlinear(u_hat: &VectorFieldK, b_hat: &VectorFieldK) -> (VectorFieldK, VectorFieldK) {
    same_grid(u_hat.grid(), b_hat.grid()).expect("velocity and magnetic field share a grid");
    let grid = u_hat.grid().clone();
    let u = inverse_vector(u_hat);
    let b = inverse_vector(b_hat);

    // symmetric stress u_i u_j - b_i b_j
    let stress: Vec<Vec<Complex64>> = PAIRS
        .iter()
        .map(|&(i, j)| forward(&grid, pointwise(&u.comps[i], &u.comps[j], &b.comps[i], &b.comps[j])))
        .collect();
    let s = |i: usize, j: usize| {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        &stress[PAIRS.iter().position(|&p| p == (a, b)).expect("pair listed")]
    };
    // antisymmetric induction tensor u_i b_j - b_i u_j, stored for i < j
    let q01 = forward(&grid, pointwise(&u.comps[0], &b.comps[1], &b.comps[0], &u.comps[1]));
    let q02 = forward(&grid, pointwise(&u.comps[0], &b.comps[2], &b.comps[0], &u.comps[2]));
    let q12 = forward(&grid, pointwise(&u.comps[1], &b.comps[2], &b.comps[1], &u.comps[2]));

    let du = VectorFieldK::zeros(&grid).map_modes(|idx, _| {
        if !grid.dealias(idx) {
            return [Complex64::default(); 3];
        }
        let k = grid.deriv_vector(idx);
        std::array::from_fn(|i| -I * (k[0] * s(i, 0)[idx] + k[1] * s(i, 1)[idx] + k[2] * s(i, 2)[idx]))
    });
    let db = VectorFieldK::zeros(&grid).map_modes(|idx, _| {
        if !grid.dealias(idx) {
            return [Complex64::default(); 3];
        }
        let k = grid.deriv_vector(idx);
        let (a, b, c) = (q01[idx], q02[idx], q12[idx]);
        [I * (k[1] * a + k[2] * b), I * (-k[0] * a + k[2] * c), I * (-k[0] * b - k[1] * c)]
    });
    (leray_project(&du), db)
}

/// Full right-hand side `(du/dt, db/dt)` including diffusion.
pub fn rhs(state: &MhdState, params: &SolverParams) -> (VectorFieldK, VectorFieldK) {
    let (du, db) = nonlinear(state.u_hat(), state.b_hat());
    let du = du.axpy(params.nu, &laplacian(state.u_hat()));
    let db = db.axpy(params.eta, &laplacian(state.b_hat()));
    (du, db)
}

/// `(a·∇)c` given `grad_c[i].comps[j] = ∂_j c_i`.
pub(crate) fn advect(a: &VectorFieldR, grad_c: &[VectorFieldR; 3]) -> VectorFieldR {
    let comps = std::array::from_fn(|i| {
        (0..a.grid.len())
            .into_par_iter()
            .map(|x| (0..3).map(|j| a.comps[j][x] * grad_c[i].comps[j][x]).sum())
            .collect()
    });
    VectorFieldR { grid: a.grid.clone(), comps }
}

/// `T(b,u)_i = ε_{iac} ∂_a b · ∂_c u` with `∂_a b · ∂_c u = Σ_m ∂_a b_m ∂_c u_m`.
pub(crate) fn t_term(grad_b: &[VectorFieldR; 3], grad_u: &[VectorFieldR; 3]) -> VectorFieldR {
    let dot = |x: usize, a: usize, c: usize| -> f64 { (0..3).map(|m| grad_b[m].comps[a][x] * grad_u[m].comps[c][x]).sum() };
    let comps = std::array::from_fn(|i| {
        let (a, c) = ((i + 1) % 3, (i + 2) % 3);
        (0..grad_b[0].grid.len()).into_par_iter().map(|x| dot(x, a, c) - dot(x, c, a)).collect()
    });
    VectorFieldR { grid: grad_b[0].grid.clone(), comps }
}

/// Pointwise linear combination `Σ c_k v_k` of physical fields.
pub(crate) fn combine(terms: &[(f64, &VectorFieldR)]) -> VectorFieldR {
    let grid = terms[0].1.grid.clone();
    let comps = std::array::from_fn(|i| {
        (0..grid.len()).into_par_iter().map(|x| terms.iter().map(|(c, v)| c * v.comps[i][x]).sum()).collect()
    });
    VectorFieldR { grid, comps }
}
