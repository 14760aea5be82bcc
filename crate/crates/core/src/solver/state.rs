use std::sync::Arc;

use crate::error::{Error, Result};
use crate::spectral::{
    inverse_vector, l2_norm_k, leray_project, relative_divergence, same_grid, transform_vector, Grid, VectorFieldK,
    VectorFieldR,
};

/// Velocity/magnetic pair on the periodic box.
///
/// The physical samples are authoritative: the coefficients are always
/// `P(F(u))` with `F` the forward transform and `P` the 2/3 mask followed by
/// the Leray projection. A state therefore round-trips bit-exactly through
/// its real-space samples (see `cli::snapshot`). Pressure is never stored.
#[derive(Debug, Clone)]
pub struct MhdState {
    u_hat: VectorFieldK,
    b_hat: VectorFieldK,
    u: VectorFieldR,
    b: VectorFieldR,
    t: f64,
}

fn canonical(v: &VectorFieldK) -> VectorFieldK {
    leray_project(&v.dealiased())
}

impl MhdState {
    /// Canonical state from real-space samples.
    pub fn from_physical(u: VectorFieldR, b: VectorFieldR, t: f64) -> Result<Self> {
        same_grid(u.grid(), b.grid())?;
        let u_hat = canonical(&transform_vector(&u));
        let b_hat = canonical(&transform_vector(&b));
        Ok(MhdState { u_hat, b_hat, u, b, t })
    }

    /// State from coefficients; the mask and projection are applied and the
    /// samples recomputed. Use [`MhdState::canonicalized`] before persisting.
    pub fn from_spectral(u_hat: &VectorFieldK, b_hat: &VectorFieldK, t: f64) -> Result<Self> {
        same_grid(u_hat.grid(), b_hat.grid())?;
        let u_hat = canonical(u_hat);
        let b_hat = canonical(b_hat);
        let u = inverse_vector(&u_hat);
        let b = inverse_vector(&b_hat);
        Ok(MhdState { u_hat, b_hat, u, b, t })
    }

    pub fn zero(grid: &Arc<Grid>) -> Self {
        MhdState {
            u_hat: VectorFieldK::zeros(grid),
            b_hat: VectorFieldK::zeros(grid),
            u: VectorFieldR::zeros(grid),
            b: VectorFieldR::zeros(grid),
            t: 0.0,
        }
    }

    /// Rebuilds the state from its own samples.
    pub fn canonicalized(&self) -> Result<Self> {
        Self::from_physical(self.u.clone(), self.b.clone(), self.t)
    }

    pub fn grid(&self) -> &Arc<Grid> {
        self.u_hat.grid()
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn with_time(mut self, t: f64) -> Self {
        self.t = t;
        self
    }

    pub fn u_hat(&self) -> &VectorFieldK {
        &self.u_hat
    }

    pub fn b_hat(&self) -> &VectorFieldK {
        &self.b_hat
    }

    pub fn u(&self) -> &VectorFieldR {
        &self.u
    }

    pub fn b(&self) -> &VectorFieldR {
        &self.b
    }

    pub fn is_finite(&self) -> bool {
        self.u.is_finite() && self.b.is_finite()
    }

    /// Largest of `‖∇·u‖_2/‖u‖_2` and `‖∇·b‖_2/‖b‖_2`.
    pub fn divergence_defect(&self) -> f64 {
        relative_divergence(&self.u_hat).max(relative_divergence(&self.b_hat))
    }

    /// `‖u - b‖_2`.
    pub fn alignment_defect(&self) -> f64 {
        l2_norm_k(&self.u_hat.axpy(-1.0, &self.b_hat))
    }

    pub(crate) fn check_finite(&self) -> Result<()> {
        if self.is_finite() {
            Ok(())
        } else {
            Err(Error::BlowUpSuspected { t: self.t, reason: "non-finite field values".into() })
        }
    }
}
