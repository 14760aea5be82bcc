use std::f64::consts::{E, PI};

use super::*;
use crate::error::Error;
use crate::lpaley::build_partition;
use crate::solver::{initial_condition_named, MhdState, SolverParams, Stepper};
use crate::spectral::{make_grid, random_solenoidal, VectorFieldK};

fn synthetic(t: f64, shell_sup: Vec<f64>) -> DiagnosticRecord {
    let sup_w = shell_sup.iter().copied().fold(0.0, f64::max);
    DiagnosticRecord {
        t,
        l2_u: 0.0,
        l2_b: 0.0,
        l2_w: 0.0,
        l2_j: 0.0,
        sup_w,
        shell_sup,
        j_min: -1,
        grad_u: 0.0,
        grad_b: 0.0,
        hs: vec![],
        lp: vec![],
        energy_diss_accum: 0.0,
        flagged: false,
    }
}

fn series(n: usize, t_end: f64, f: impl Fn(f64) -> Vec<f64>) -> Vec<DiagnosticRecord> {
    (0..=n).map(|i| t_end * i as f64 / n as f64).map(|t| synthetic(t, f(t))).collect()
}

fn params(nu: f64, eta: f64, dt: f64) -> SolverParams {
    SolverParams::new(nu, eta, dt, 1.0).unwrap()
}

#[test]
fn zero_state_record_is_zero() {
    let g = make_grid(16, 2.0 * PI).unwrap();
    let part = build_partition(&g).unwrap();
    let r = record(&MhdState::zero(&g), &part, &RecordOptions::default()).unwrap();
    assert_eq!(r.shell_sup.len(), part.shell_count());
    assert!(r.shell_sup.iter().all(|&v| v == 0.0));
    assert_eq!([r.l2_u, r.l2_b, r.l2_w, r.l2_j, r.sup_w, r.grad_u, r.grad_b], [0.0; 7]);
    assert!(r.hs.iter().all(|h| h.u == 0.0 && h.b == 0.0));
    assert!(!r.flagged);
}

#[test]
fn kolmogorov_record_norms() {
    let g = make_grid(16, 2.0 * PI).unwrap();
    let part = build_partition(&g).unwrap();
    let s = initial_condition_named("kolmogorov", 1.0, &g).unwrap();
    let r = record(&s, &part, &RecordOptions { s_list: vec![1.0], lp_exponents: vec![2.0, f64::INFINITY] }).unwrap();
    assert!((r.l2_w - 2.0 * PI.powf(1.5)).abs() < 1e-12);
    assert!((r.sup_w - 1.0).abs() < 1e-14);
    assert!((r.l2_u - 2.0 * PI.powf(1.5)).abs() < 1e-12);
    assert!((r.grad_u - r.l2_u).abs() < 1e-12);
    assert_eq!(r.l2_b, 0.0);
    // ‖u‖_{H^1}² = 2‖u‖² for |k| = 1
    let h = r.hs_at(1.0).unwrap();
    assert!((h.u - 2f64.sqrt() * r.l2_u).abs() < 1e-12);
    let lp = r.lp_at(2.0).unwrap();
    assert!((lp.u - r.l2_u).abs() < 1e-12 && (lp.curl_u - r.l2_w).abs() < 1e-12);
    assert!((r.lp_at(f64::INFINITY).unwrap().u - 1.0).abs() < 1e-14);
}

#[test]
fn single_shell_vorticity_has_one_entry() {
    let g = make_grid(32, 2.0 * PI).unwrap();
    let part = build_partition(&g).unwrap();
    let s = initial_condition_named("random_band(2, 5)", 1.0, &g).unwrap();
    let r = record(&s, &part, &RecordOptions::default()).unwrap();
    let nonzero: Vec<i32> = r.shell_indices().zip(&r.shell_sup).filter(|(_, &v)| v != 0.0).map(|(j, _)| j).collect();
    assert_eq!(nonzero, vec![2]);
    assert!((r.besov_w() - r.sup_w).abs() <= 1e-12 * r.sup_w);
}

#[test]
fn bkm_constant_integrand() {
    let recs = series(10, 1.0, |_| vec![0.5, 2.0, 1.0]);
    let rep = bkm_delta(&recs, 1.0).unwrap();
    assert!((rep.delta - 2.0).abs() < 1e-14);
    assert_eq!(rep.argmax_shell, 0);
    assert!((rep.per_shell_integrals[0] - 0.5).abs() < 1e-14);
}

#[test]
fn bkm_two_point_trapezoid() {
    let recs = vec![synthetic(0.0, vec![1.0, 3.0]), synthetic(1.0, vec![2.0, 7.0])];
    let rep = bkm_delta(&recs, 1.0).unwrap();
    assert_eq!(rep.per_shell_integrals, vec![1.5, 5.0]);
    assert_eq!(rep.delta, 5.0);
    // half window interpolates at t = 0.5: shell 1 has value 5 there
    let half = bkm_delta(&recs, 0.5).unwrap();
    assert!((half.per_shell_integrals[1] - 0.5 * 0.5 * (5.0 + 7.0)).abs() < 1e-15);
}

#[test]
fn bkm_exponential_matches_analytic_integral() {
    let amps = [0.3, 1.7, 0.9];
    let recs = series(1000, 1.0, |t| amps.iter().map(|a| a * (-t).exp()).collect());
    let rep = bkm_delta(&recs, 1.0).unwrap();
    for (got, a) in rep.per_shell_integrals.iter().zip(amps) {
        assert!((got - (1.0 - (-1.0f64).exp()) * a).abs() < 1e-6);
    }
}

#[test]
fn bkm_window_must_be_covered() {
    let recs = series(4, 1.0, |_| vec![1.0]);
    assert!(matches!(bkm_delta(&recs, 1.5), Err(Error::WindowNotCovered { .. })));
    assert!(bkm_delta(&recs, 0.0).is_err());
    assert!(bkm_delta(&[], 1.0).is_err());
    let mut shuffled = recs.clone();
    shuffled.swap(1, 2);
    assert!(matches!(bkm_delta(&shuffled, 0.5), Err(Error::Records(_))));
}

#[test]
fn bkm_delta_nondecreasing_in_window() {
    let recs = series(200, 2.0, |t| vec![(3.0 * t).sin().abs(), 1.0 + t * t, (t - 1.0).abs()]);
    let ladder = bkm_ladder(&recs, &[2.0, 1.0, 0.5, 0.125, 0.01]).unwrap();
    for w in ladder.windows(2) {
        assert!(w[0].delta >= w[1].delta);
    }
    for rep in &ladder {
        assert!(rep.ordering_holds(1.0, 1e-12));
        assert_eq!(rep.t_end, 2.0);
    }
}

#[test]
fn auxiliary_unit_sup_norm() {
    let mut recs = series(8, 1.0, |_| vec![1.0]);
    for r in &mut recs {
        r.lp = vec![LpNorms { p: f64::INFINITY, u: 1.0, grad_u: 2.0, curl_u: 3.0 }];
    }
    let rep = auxiliary_criteria(&recs, f64::INFINITY, 2.0).unwrap();
    assert!((rep.value(SerrinCriterion::Velocity).unwrap() - 1.0).abs() < 1e-15);
    assert!((rep.value(SerrinCriterion::Gradient).unwrap() - 4.0).abs() < 1e-15);
    // vorticity criterion needs p < ∞
    assert_eq!(rep.value(SerrinCriterion::Vorticity), None);
    let err = serrin_integral(&recs, SerrinCriterion::Vorticity, f64::INFINITY, 2.0).unwrap_err();
    assert!(err.to_string().contains("p < inf"));
    assert!((rep.besov_integral - 1.0).abs() < 1e-15 && (rep.sup_integral - 1.0).abs() < 1e-15);
    // norms for other exponents were not recorded
    assert!(matches!(auxiliary_criteria(&recs, 4.0, 8.0), Err(Error::MissingNorm(_))));
}

#[test]
fn serrin_admissibility() {
    assert!(SerrinCriterion::Velocity.check(4.0, 8.0).is_ok());
    assert!(SerrinCriterion::Velocity.check(f64::INFINITY, 2.0).is_ok());
    let err = SerrinCriterion::Velocity.check(4.0, 7.0).unwrap_err();
    assert!(err.to_string().contains("2/q + 3/p <= 1"), "{err}");
    assert!(SerrinCriterion::Velocity.check(3.0, 1e9).unwrap_err().to_string().contains("3 < p"));
    assert!(SerrinCriterion::Gradient.check(3.0, 2.0).is_ok());
    assert!(SerrinCriterion::Gradient.check(1.5, 1e9).unwrap_err().to_string().contains("3/2 < p"));
    assert!(SerrinCriterion::Gradient.check(2.0, 1.0).unwrap_err().to_string().contains("2/q + 3/p <= 2"));
    assert!(SerrinCriterion::Vorticity.check(3.0, 2.0).is_ok());

    let recs = series(2, 1.0, |_| vec![1.0]);
    let err = auxiliary_criteria(&recs, 1.6, 1.0).unwrap_err();
    assert!(matches!(err, Error::Inadmissible { .. }));
    assert!(matches!(auxiliary_criteria(&recs, 4.0, f64::INFINITY), Err(Error::InvalidExponent(_))));
}

#[test]
fn energy_budget_zero_and_exact() {
    let recs = series(3, 1.0, |_| vec![0.0]);
    let b = energy_budget(&recs);
    assert_eq!((b.max_abs, b.sign), (0.0, 0));

    // exact decay E(t) = E0 e^{-2t}, dissipation integral (E0/2)(1 - e^{-2t})
    let mut recs = series(10, 1.0, |_| vec![0.0]);
    for r in &mut recs {
        r.l2_u = (-r.t).exp();
        r.energy_diss_accum = 0.5 * (1.0 - (-2.0 * r.t).exp());
    }
    assert!(energy_budget(&recs).max_abs < 1e-15);
    recs[4].l2_u *= 1.001;
    let b = energy_budget(&recs);
    assert_eq!(b.sign, -1);
    assert!(b.max_abs > 1e-4);
}

#[test]
fn gronwall_formula() {
    let mut r = synthetic(0.0, vec![]);
    let rep = gronwall_quantities(&r, 1.0, 1.0, 1.0).unwrap();
    assert_eq!(rep.n, 3);
    assert_eq!(rep.z, 1.0);
    r.l2_w = 3.0;
    r.l2_j = 4.0;
    let rep = gronwall_quantities(&r, 2.0, 0.5, 0.1).unwrap();
    assert_eq!(rep.e, 7.0);
    // 2/ln2 · ln(e + 140) = 14.30...
    assert_eq!(rep.n, 15);
    assert!((rep.z - (7.0 + E).ln()).abs() < 1e-15);
    assert!(gronwall_quantities(&r, 0.0, 1.0, 1.0).is_err());
    assert!(matches!(gronwall_quantities(&r, 1.0, 0.0, 1.0), Err(Error::IdealMhd { .. })));
}

#[test]
fn gronwall_cutoff_monotone_and_running_sup() {
    let mut last = 0;
    for k in 0..200 {
        let n = shell_cutoff(k as f64 * 0.37, 1.3, 0.01, 0.02);
        assert!(n >= last && n >= 1);
        last = n;
    }
    let mut recs = series(3, 1.0, |_| vec![]);
    for (r, e) in recs.iter_mut().zip([1.0, 5.0, 2.0, 0.5]) {
        r.l2_w = e;
    }
    let s = gronwall_series(&recs, 1.0, 1.0, 1.0).unwrap();
    assert!((s[3].z - (5.0 + E).ln()).abs() < 1e-15);
    assert!(s[3].n < s[1].n);
}

#[test]
fn cancellation_vanishes_on_dealiased_states() {
    let g = make_grid(16, 2.0 * PI).unwrap();
    for seed in 0..3 {
        let s = MhdState::from_spectral(&random_solenoidal(&g, seed, true), &random_solenoidal(&g, seed + 50, true), 0.0)
            .unwrap();
        let rep = cancellation_checks(&s, &params(0.01, 0.01, 0.01));
        assert!(rep.max_vanishing() <= 1e-11, "{rep:?}");
        assert!(rep.raw.iter().any(|&v| v != 0.0) || rep.max_vanishing() == 0.0);
    }
}

#[test]
fn cancellation_is_generically_violated_without_dealiasing() {
    let g = make_grid(16, 2.0 * PI).unwrap();
    let v = vanishing_integrals(&random_solenoidal(&g, 1, false), &random_solenoidal(&g, 2, false)).unwrap();
    assert!(v.iter().all(|&x| x > 1e-6), "{v:?}");
}

#[test]
fn magnetic_terms_vanish_without_field() {
    let g = make_grid(16, 2.0 * PI).unwrap();
    let s = MhdState::from_spectral(&random_solenoidal(&g, 3, true), &VectorFieldK::zeros(&g), 0.0).unwrap();
    let rep = cancellation_checks(&s, &params(0.01, 0.01, 0.01));
    assert_eq!((rep.iii, rep.iv, rep.ii), (0.0, 0.0, 0.0));
    assert!(rep.i != 0.0);
}

#[test]
fn enstrophy_balance_matches_finite_difference() {
    let g = make_grid(16, 2.0 * PI).unwrap();
    let s = MhdState::from_spectral(&random_solenoidal(&g, 9, true), &random_solenoidal(&g, 19, true), 0.0).unwrap();
    let errs: Vec<f64> = [4e-3, 2e-3, 1e-3]
        .iter()
        .map(|&dt| enstrophy_rate_check(&s, &params(0.02, 0.03, dt)).unwrap())
        .map(|c| (c.balance - c.finite_difference).abs())
        .collect();
    // centred difference around a state one step in: error ~ dt²
    assert!(errs[0] / errs[1] > 3.0 && errs[1] / errs[2] > 3.0, "{errs:?}");
    let c = enstrophy_rate_check(&s, &params(0.02, 0.03, 1e-3)).unwrap();
    assert!(c.relative_error() < 1e-3, "{c:?}");
}

#[test]
fn hs_growth_zero_and_decay() {
    let g = make_grid(16, 2.0 * PI).unwrap();
    let part = build_partition(&g).unwrap();
    let opts = RecordOptions::default();
    let zeros: Vec<DiagnosticRecord> = (0..3)
        .map(|k| record(&MhdState::zero(&g).with_time(k as f64), &part, &opts).unwrap())
        .collect();
    let rep = hs_growth_check(&zeros, 2.0, 1.0).unwrap();
    assert_eq!(rep.max_ratio, 0.0);
    assert!(rep.holds);

    let nu = 0.05;
    let stepper = Stepper::new(&g, params(nu, nu, 0.05)).unwrap();
    let mut s = initial_condition_named("aligned(abc)", 1.0, &g).unwrap();
    let mut recs = vec![record(&s, &part, &opts).unwrap()];
    for _ in 0..10 {
        s = stepper.step(&s).unwrap().state;
        recs.push(record(&s, &part, &opts).unwrap());
    }
    for s_exp in [1.0, 2.0] {
        let rep = hs_growth_check(&recs, s_exp, 1.0).unwrap();
        assert!(rep.holds && rep.max_ratio <= 1.0);
        assert!(rep.ratios[1..].iter().all(|&r| r < 1.0));
    }
    assert!(matches!(hs_growth_check(&recs, 3.0, 1.0), Err(Error::MissingNorm(_))));
}
