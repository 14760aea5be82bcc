//! Pseudo-spectral incompressible MHD on the periodic box with a
//! Littlewood-Paley diagnostics engine for shell-wise vorticity blow-up
//! monitoring.

pub mod cli;
pub mod error;
pub mod lpaley;
pub mod monitor;
pub mod solver;
pub mod spectral;

pub use error::{Error, Result};
