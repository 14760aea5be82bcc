//! Pseudo-spectral time integration of viscous, resistive incompressible
//! MHD on the periodic box:
//!
//! ```text
//! ∂_t u + (u·∇)u = -∇(p + |b|²/2) + (b·∇)b + νΔu
//! ∂_t b + (u·∇)b = (b·∇)u + ηΔb,        ∇·u = ∇·b = 0
//! ```
//!
//! Pressure is removed by the Leray projection, products are dealiased
//! with the 2/3 rule, and diffusion is integrated exactly.

mod init;
mod params;
mod rhs;
mod state;
mod stepper;
mod vorticity;

pub use init::{initial_condition, initial_condition_named, InitialCondition};
pub use params::{CflOptions, SolverParams};
pub use rhs::{nonlinear, rhs};
pub use state::MhdState;
pub use stepper::{step, suggest_dt, StepOutcome, Stepper};
pub use vorticity::{vorticity_system_residual, VorticityResidual};

pub(crate) use rhs::{advect, t_term};
