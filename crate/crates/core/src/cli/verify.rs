use std::f64::consts::PI;

use crate::error::Result;
use crate::lpaley::{build_partition, Shell};
use crate::monitor::{cancellation_checks, shell_cutoff};
use crate::solver::{initial_condition_named, nonlinear, vorticity_system_residual, MhdState, SolverParams, Stepper};
use crate::spectral::{
    inner_product, inverse_vector, l2_norm_k, make_grid, random_solenoidal, transform_vector, VectorFieldK,
};

use super::snapshot::{decode_snapshot, encode_snapshot};

/// Outcome of one self-check.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub value: f64,
    pub limit: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.value <= self.limit
    }
}

fn random_state(n: usize, seed: u64) -> Result<MhdState> {
    let g = make_grid(n, 2.0 * PI)?;
    MhdState::from_spectral(&random_solenoidal(&g, seed, true), &random_solenoidal(&g, seed + 1, true), 0.0)
}

/// Quick consistency checks on small grids.
pub fn self_checks() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let g = make_grid(16, 2.0 * PI)?;
    let s = random_state(16, 1)?;
    let params = SolverParams::new(0.02, 0.02, 0.01, 1.0)?;

    let round = inverse_vector(&transform_vector(s.u()));
    let err = (0..3)
        .flat_map(|a| round.comps()[a].iter().zip(&s.u().comps()[a]).map(|(x, y)| (x - y).abs()))
        .fold(0.0, f64::max);
    out.push(Check { name: "transform round trip", value: err, limit: 1e-12 });

    let part = build_partition(&g)?;
    // S_{j_min} f + Σ_j Δ_j f = f on retained modes
    let mut shells = part.low_pass(s.u_hat(), part.j_min())?;
    for j in part.shells() {
        shells = shells.add(&part.project_shell(s.u_hat(), Shell::Index(j))?)?;
    }
    out.push(Check {
        name: "partition of unity",
        value: l2_norm_k(&shells.sub(s.u_hat())?) / l2_norm_k(s.u_hat()),
        limit: 1e-14,
    });

    let nu = 0.05;
    let abc = initial_condition_named("aligned(abc)", 1.0, &g)?;
    let stepper = Stepper::new(&g, SolverParams::new(nu, nu, 0.05, 0.5)?)?;
    let mut st = abc.clone();
    for _ in 0..10 {
        st = stepper.step(&st)?.state;
    }
    let exact = abc.u_hat().scale((-nu * st.t()).exp());
    out.push(Check { name: "exact Beltrami decay", value: l2_norm_k(&st.u_hat().sub(&exact)?) / l2_norm_k(&exact), limit: 1e-10 });

    let (du, db) = nonlinear(s.u_hat(), s.b_hat());
    let transfer = inner_product(&du, s.u_hat()) + inner_product(&db, s.b_hat());
    let scale = l2_norm_k(&du) * l2_norm_k(s.u_hat()) + l2_norm_k(&db) * l2_norm_k(s.b_hat());
    out.push(Check { name: "energy-neutral nonlinearity", value: transfer.abs() / scale, limit: 1e-11 });

    out.push(Check { name: "advective cancellations", value: cancellation_checks(&s, &params).max_vanishing(), limit: 1e-11 });

    let r = vorticity_system_residual(&s, &params);
    out.push(Check { name: "vorticity system", value: r.residual_w.max(r.residual_j), limit: 1e-10 });

    out.push(Check { name: "shell cutoff N(E=0, C=1, nu=eta=1) = 3", value: (shell_cutoff(0.0, 1.0, 1.0, 1.0) as f64 - 3.0).abs(), limit: 0.0 });

    let canon = s.canonicalized()?;
    let back = decode_snapshot(&encode_snapshot(&canon, 0.1, 0.2))?.state;
    let same = back.u().comps() == canon.u().comps() && back.b_hat().comps() == canon.b_hat().comps();
    out.push(Check { name: "snapshot round trip", value: if same { 0.0 } else { 1.0 }, limit: 0.0 });

    let zero = VectorFieldK::zeros(&g);
    let z = MhdState::from_spectral(&zero, &zero, 0.0)?;
    out.push(Check { name: "zero state fixed point", value: stepper.step(&z)?.state.u_hat().max_abs(), limit: 0.0 });
    Ok(out)
}
