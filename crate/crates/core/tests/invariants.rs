use std::f64::consts::PI;

use proptest::prelude::*;

use mhd_bkm::cli::{decode_snapshot, encode_snapshot, parse_records, RecordLayout, RecordsWriter};
use mhd_bkm::lpaley::build_partition;
use mhd_bkm::monitor::{bkm_delta, record, DiagnosticRecord, RecordOptions};
use mhd_bkm::solver::{initial_condition_named, nonlinear, MhdState, SolverParams, Stepper};
use mhd_bkm::spectral::{inner_product, l2_norm_k, make_grid, random_solenoidal};

#[test]
fn divergence_free_over_1000_steps() {
    let g = make_grid(16, 2.0 * PI).unwrap();
    let stepper = Stepper::new(&g, SolverParams::new(0.02, 0.01, 0.01, 10.0).unwrap()).unwrap();
    let mut s = initial_condition_named("orszag_tang_3d", 1.0, &g).unwrap().canonicalized().unwrap();
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        s = stepper.step(&s).unwrap().state;
        worst = worst.max(s.divergence_defect());
    }
    assert!(worst <= 1e-11, "{worst:e}");
}

fn synthetic(times: &[f64], shells: &[Vec<f64>], sup: &[f64]) -> Vec<DiagnosticRecord> {
    times
        .iter()
        .zip(shells)
        .zip(sup)
        .map(|((&t, s), &w)| DiagnosticRecord {
            t,
            l2_u: 0.0,
            l2_b: 0.0,
            l2_w: 0.0,
            l2_j: 0.0,
            sup_w: w,
            shell_sup: s.clone(),
            j_min: -1,
            grad_u: 0.0,
            grad_b: 0.0,
            hs: Vec::new(),
            lp: Vec::new(),
            energy_diss_accum: 0.0,
            flagged: false,
        })
        .collect()
}

fn series() -> impl Strategy<Value = (Vec<f64>, Vec<Vec<f64>>)> {
    (2usize..20).prop_flat_map(|len| {
        (
            prop::collection::vec(0.01f64..0.5, len),
            prop::collection::vec(prop::collection::vec(0.0f64..10.0, 4), len),
        )
            .prop_map(|(steps, shells)| {
                let mut t = 0.0;
                let times = steps
                    .iter()
                    .map(|d| {
                        let now = t;
                        t += d;
                        now
                    })
                    .collect();
                (times, shells)
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn window_ordering_and_monotonicity((times, shells) in series(), fracs in prop::collection::vec(0.01f64..1.0, 1..6)) {
        // sup_w is chosen at the largest admissible value for C_h = 1
        let sup: Vec<f64> = shells.iter().map(|s| s.iter().cloned().fold(0.0, f64::max)).collect();
        let recs = synthetic(&times, &shells, &sup);
        let span = times.last().unwrap() - times[0];
        let mut eps: Vec<f64> = fracs.iter().map(|f| f * span).collect();
        eps.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut last = 0.0;
        for e in eps {
            let r = bkm_delta(&recs, e).unwrap();
            prop_assert!(r.ordering_holds(1.0, 1e-12));
            prop_assert!(r.delta >= last * (1.0 - 1e-12));
            last = r.delta;
        }
    }

    #[test]
    fn nonlinearity_conserves_energy(seed in 0u64..10_000) {
        let g = make_grid(8, 2.0 * PI).unwrap();
        let (u, b) = (random_solenoidal(&g, seed, true), random_solenoidal(&g, seed + 1, true));
        let (du, db) = nonlinear(&u, &b);
        let transfer = inner_product(&du, &u) + inner_product(&db, &b);
        let scale = l2_norm_k(&du) * l2_norm_k(&u) + l2_norm_k(&db) * l2_norm_k(&b);
        prop_assert!(transfer.abs() <= 1e-11 * scale);
    }

    #[test]
    fn snapshot_round_trip(seed in 0u64..10_000, t in 0.0f64..100.0, nu in 1e-6f64..1.0) {
        let g = make_grid(8, 2.0 * PI).unwrap();
        let s = MhdState::from_spectral(&random_solenoidal(&g, seed, true), &random_solenoidal(&g, seed + 3, true), t)
            .unwrap()
            .canonicalized()
            .unwrap();
        let bytes = encode_snapshot(&s, nu, 2.0 * nu);
        let back = decode_snapshot(&bytes).unwrap();
        prop_assert_eq!(back.state.t().to_bits(), t.to_bits());
        prop_assert_eq!(back.state.u().comps(), s.u().comps());
        prop_assert_eq!(back.state.b_hat().comps(), s.b_hat().comps());
    }

    #[test]
    fn records_text_round_trip(values in prop::collection::vec(prop::num::f64::NORMAL | prop::num::f64::SUBNORMAL | prop::num::f64::ZERO, 4)) {
        let g = make_grid(8, 2.0 * PI).unwrap();
        let part = build_partition(&g).unwrap();
        let mut r = record(&MhdState::zero(&g), &part, &RecordOptions::default()).unwrap();
        r.t = values[0].abs();
        r.l2_u = values[1];
        r.energy_diss_accum = values[2];
        r.shell_sup[0] = values[3];
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.csv");
        let mut w = RecordsWriter::create(&path, RecordLayout::of(&r)).unwrap();
        w.write(&r, &path).unwrap();
        drop(w);
        let back = parse_records(std::fs::File::open(&path).unwrap()).unwrap();
        prop_assert_eq!(back.len(), 1);
        prop_assert_eq!(back[0].l2_u.to_bits(), r.l2_u.to_bits());
        prop_assert_eq!(back[0].energy_diss_accum.to_bits(), r.energy_diss_accum.to_bits());
        prop_assert_eq!(back[0].shell_sup[0].to_bits(), r.shell_sup[0].to_bits());
    }
}
