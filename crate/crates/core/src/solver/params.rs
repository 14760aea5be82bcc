use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Physical and time-stepping parameters. The scheme is always
/// integrating-factor RK4.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverParams {
    /// Kinematic viscosity.
    pub nu: f64,
    /// Magnetic diffusivity.
    pub eta: f64,
    pub dt: f64,
    pub t_end: f64,
}

impl SolverParams {
    pub fn new(nu: f64, eta: f64, dt: f64, t_end: f64) -> Result<Self> {
        let p = SolverParams { nu, eta, dt, t_end };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.nu > 0.0 && self.eta > 0.0) {
            return Err(Error::IdealMhd { nu: self.nu, eta: self.eta });
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::InvalidParameter(format!("dt = {} must be positive", self.dt)));
        }
        if !(self.t_end > 0.0 && self.t_end.is_finite()) {
            return Err(Error::InvalidParameter(format!("t_end = {} must be positive", self.t_end)));
        }
        Ok(())
    }

    /// Number of steps needed to reach `t_end` (the last step may overshoot
    /// by less than one ulp-scale rounding of `dt`).
    pub fn step_count(&self) -> usize {
        (self.t_end / self.dt - 1e-9).ceil().max(0.0) as usize
    }
}

/// CFL-style time step suggestion parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CflOptions {
    pub courant: f64,
    /// Lower bound on the velocity scale, so a quiescent state gets a finite step.
    pub speed_floor: f64,
    pub dt_max: f64,
}

impl Default for CflOptions {
    fn default() -> Self {
        CflOptions { courant: 0.5, speed_floor: 1e-12, dt_max: 0.1 }
    }
}
