use super::params::SolverParams;
use super::rhs::{advect, combine, nonlinear, t_term};
use super::state::MhdState;
use crate::spectral::{curl, gradient_tensor, inverse_vector, l2_norm_k, laplacian, transform_vector, VectorFieldK};

/// Mismatch between two evaluations of the vorticity/current system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VorticityResidual {
    pub residual_w: f64,
    pub residual_j: f64,
    /// `false` when the reference norm vanished and the value is absolute.
    pub relative_w: bool,
    pub relative_j: bool,
}

fn relative(a: &VectorFieldK, b: &VectorFieldK) -> (f64, bool) {
    let diff = l2_norm_k(&a.axpy(-1.0, b));
    let scale = l2_norm_k(a);
    if scale == 0.0 {
        (diff, false)
    } else {
        (diff / scale, true)
    }
}

/// Compares `∂_t(w, J)` obtained as the curl of the momentum and induction
/// right-hand sides (route A) with the expanded form
///
/// ```text
/// ∂_t w = -(u·∇)w + (w·∇)u + (b·∇)J - (J·∇)b + νΔw
/// ∂_t J = -(u·∇)J + (J·∇)u + (b·∇)w - (w·∇)b + 2T(b,u) + ηΔJ
/// ```
///
/// (route B), with `w = ∇×u`, `J = ∇×b` and every product dealiased.
pub fn vorticity_system_residual(state: &MhdState, params: &SolverParams) -> VorticityResidual {
    let (u_hat, b_hat) = (state.u_hat(), state.b_hat());
    let w_hat = curl(u_hat);
    let j_hat = curl(b_hat);

    let (du, db) = nonlinear(u_hat, b_hat);
    let a_w = curl(&du).axpy(params.nu, &laplacian(&w_hat));
    let a_j = curl(&db).axpy(params.eta, &laplacian(&j_hat));

    let (u, b, w, j) = (inverse_vector(u_hat), inverse_vector(b_hat), inverse_vector(&w_hat), inverse_vector(&j_hat));
    let (gu, gb, gw, gj) = (gradient_tensor(u_hat), gradient_tensor(b_hat), gradient_tensor(&w_hat), gradient_tensor(&j_hat));

    let bw = combine(&[(-1.0, &advect(&u, &gw)), (1.0, &advect(&w, &gu)), (1.0, &advect(&b, &gj)), (-1.0, &advect(&j, &gb))]);
    let bj = combine(&[
        (-1.0, &advect(&u, &gj)),
        (1.0, &advect(&j, &gu)),
        (1.0, &advect(&b, &gw)),
        (-1.0, &advect(&w, &gb)),
        (2.0, &t_term(&gb, &gu)),
    ]);
    let b_w = transform_vector(&bw).dealiased().axpy(params.nu, &laplacian(&w_hat));
    let b_j = transform_vector(&bj).dealiased().axpy(params.eta, &laplacian(&j_hat));

    let (residual_w, relative_w) = relative(&a_w, &b_w);
    let (residual_j, relative_j) = relative(&a_j, &b_j);
    VorticityResidual { residual_w, residual_j, relative_w, relative_j }
}
