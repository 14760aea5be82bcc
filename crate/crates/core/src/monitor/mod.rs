//! Diagnostics over a trajectory: per-state records, the shell-wise
//! vorticity blow-up monitor over shrinking windows, comparison criteria,
//! the energy and enstrophy balances, and the quantities of the
//! continuation argument.
//!
//! All time integrals use the trapezoid rule on the recorded times, except
//! the dissipation integral, which the stepper accumulates with its own
//! stage weights.

mod auxiliary;
mod bkm;
mod cancellation;
mod energy;
mod gronwall;
mod hs;
mod record;

pub use auxiliary::{auxiliary_criteria, serrin_integral, AuxiliaryReport, SerrinCriterion, SerrinEntry};
pub use bkm::{bkm_delta, bkm_ladder, BkmReport};
pub use cancellation::{
    cancellation_checks, enstrophy_rate_check, half_enstrophy, vanishing_integrals, CancellationReport,
    EnstrophyRateCheck,
};
pub use energy::{energy_budget, EnergyBudget};
pub use gronwall::{gronwall_quantities, gronwall_series, shell_cutoff, GronwallReport};
pub use hs::{hs_growth_check, HsGrowthReport};
pub use record::{record, DiagnosticRecord, HsNorms, LpNorms, RecordOptions};

#[cfg(test)]
mod tests;
