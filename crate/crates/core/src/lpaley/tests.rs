use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use proptest::prelude::*;

use super::*;
use crate::spectral::*;

fn box2pi(n: usize) -> Arc<Grid> {
    make_grid(n, 2.0 * PI).unwrap()
}

fn random_scalar(g: &Arc<Grid>, seed: u64) -> ScalarFieldK {
    transform(&random_physical_vector(g, seed).component(0)).dealiased()
}

fn single_mode(g: &Arc<Grid>, m: [i64; 3]) -> ScalarFieldK {
    let mut f = ScalarFieldK::zeros(g);
    f.coeffs_mut()[g.mode_index(m)] = Complex64::new(g.len() as f64, 0.0);
    f
}

fn real_mode(g: &Arc<Grid>, m: [i64; 3]) -> ScalarFieldK {
    let mut f = ScalarFieldK::zeros(g);
    let h = 0.5 * g.len() as f64;
    f.coeffs_mut()[g.mode_index(m)] = Complex64::new(h, 0.0);
    f.coeffs_mut()[g.mode_index([-m[0], -m[1], -m[2]])] = Complex64::new(h, 0.0);
    f
}

#[test]
fn profile_values() {
    assert_eq!(chi(0.0), 1.0);
    assert_eq!(chi(0.75), 1.0);
    assert_eq!(chi(1.0), 1.0);
    assert_eq!(chi(4.0 / 3.0), 0.0);
    assert_eq!(chi(1.5), 0.0);
    assert_eq!(phi(1.5), 1.0);
    assert_eq!(phi(0.0), 0.0);
    assert!(chi(1.1) > 0.0 && chi(1.1) < 1.0);
    for i in 0..=400 {
        let r = i as f64 * 0.01;
        let v = phi(r);
        assert!((0.0..=1.0).contains(&v));
        if !(1.0..=8.0 / 3.0).contains(&r) {
            assert_eq!(v, 0.0, "r = {r}");
        }
    }
}

#[test]
fn shell_range_formula() {
    let g = box2pi(8);
    let p = build_partition(&g).unwrap();
    // k_min = 1, k_max = 2√3
    assert_eq!(p.j_min(), (3.0f64 / 8.0).log2().floor() as i32);
    assert_eq!(p.j_max(), (2.0 * 3f64.sqrt() * 4.0 / 3.0).log2().ceil() as i32);
    assert_eq!(p.shell_count(), (p.j_max() - p.j_min() + 1) as usize);
}

#[test]
fn mode_three_lives_in_shell_one() {
    let g = box2pi(8);
    let p = build_partition(&g).unwrap();
    let idx = g.mode_index([3, 0, 0]);
    for j in p.shells() {
        let v = p.phi_mask(j).unwrap()[idx];
        assert_eq!(v, if j == 1 { 1.0 } else { 0.0 }, "shell {j}");
    }
    assert_eq!(p.chi_mask()[idx], 0.0);
}

#[test]
fn origin_belongs_to_low_block() {
    let p = build_partition(&box2pi(16)).unwrap();
    assert_eq!(p.chi_mask()[0], 1.0);
    for j in p.shells() {
        assert_eq!(p.phi_mask(j).unwrap()[0], 0.0);
    }
}

#[test]
fn partition_is_exact_on_retained_modes() {
    for n in [8, 16, 32] {
        let g = box2pi(n);
        let p = build_partition(&g).unwrap();
        for i in 0..g.len() {
            if !g.dealias(i) {
                continue;
            }
            let shells: f64 = p.shells().map(|j| p.phi_mask(j).unwrap()[i]).sum();
            assert!((p.chi_mask()[i] + shells - 1.0).abs() <= 1e-14);
            if i != 0 {
                assert!((shells - 1.0).abs() <= 1e-14);
            }
        }
    }
}

#[test]
fn masks_are_radial() {
    let g = box2pi(16);
    let p = build_partition(&g).unwrap();
    let a = g.mode_index([1, 2, 3]);
    for m in [[3, 1, 2], [-2, 3, -1], [2, -3, 1]] {
        let b = g.mode_index(m);
        for j in p.shells() {
            assert_eq!(p.phi_mask(j).unwrap()[a], p.phi_mask(j).unwrap()[b]);
        }
    }
}

#[test]
fn support_inside_annulus() {
    let g = box2pi(16);
    let p = build_partition(&g).unwrap();
    for j in p.shells() {
        let s = (-j as f64).exp2();
        for (i, &v) in p.phi_mask(j).unwrap().iter().enumerate() {
            let r = g.kmag(i) * s;
            if !(0.75..=8.0 / 3.0).contains(&r) {
                assert_eq!(v, 0.0);
            }
        }
    }
}

#[test]
fn single_exponential_is_one_shell() {
    let g = box2pi(16);
    let p = build_partition(&g).unwrap();
    let f = single_mode(&g, [3, 0, 0]);
    for j in p.shells() {
        let d = p.project_shell(&f, Shell::Index(j)).unwrap();
        let err = d.sub(&f).unwrap().max_abs();
        if j == 1 {
            assert_eq!(err, 0.0);
        } else {
            assert_eq!(d.max_abs(), 0.0);
        }
    }
}

#[test]
fn blocks_annihilate_constants() {
    let g = box2pi(16);
    let p = build_partition(&g).unwrap();
    let c = transform(&ScalarFieldR::from_fn(&g, |_, _, _| 3.0));
    for j in p.shells() {
        assert_eq!(p.project_shell(&c, Shell::Index(j)).unwrap().max_abs(), 0.0);
    }
}

#[test]
fn shell_out_of_range() {
    let g = box2pi(8);
    let p = build_partition(&g).unwrap();
    let f = random_scalar(&g, 1);
    assert!(matches!(
        p.project_shell(&f, Shell::Index(p.j_max() + 1)),
        Err(crate::Error::ShellOutOfRange { .. })
    ));
}

#[test]
fn block_is_difference_of_low_passes() {
    let g = box2pi(16);
    let p = build_partition(&g).unwrap();
    let f = random_scalar(&g, 2);
    for j in p.shells() {
        let d = p.project_shell(&f, Shell::Index(j)).unwrap();
        let s = p.low_pass(&f, j + 1).unwrap().sub(&p.low_pass(&f, j).unwrap()).unwrap();
        // Δ_j = φ(2^{-j}D) = χ(2^{-j-1}D) - χ(2^{-j}D) = S_{j+1} - S_j with S_j = χ(2^{-j}D)
        assert!(d.sub(&s).unwrap().max_abs() <= 1e-12 * f.max_abs());
    }
}

#[test]
fn almost_orthogonality() {
    let g = box2pi(32);
    let p = build_partition(&g).unwrap();
    let f = random_scalar(&g, 4);
    for j in p.shells() {
        for k in p.shells() {
            if (j - k).abs() >= 2 {
                let dd = p.project_shell(&p.project_shell(&f, Shell::Index(j)).unwrap(), Shell::Index(k)).unwrap();
                assert_eq!(dd.max_abs(), 0.0);
            }
        }
    }
}

#[test]
fn besov_single_shell() {
    let g = box2pi(16);
    let p = build_partition(&g).unwrap();
    let f = real_mode(&g, [3, 0, 0]);
    let shell_norm = lp_norm(&inverse(&f), 4.0).unwrap();
    for q in [1.0, 2.0, 7.0, f64::INFINITY] {
        let r = NormRequest::new(0.5, 4.0, q, true).unwrap();
        let b = besov_norm(&f, &r, &p).unwrap();
        assert!((b - 0.5f64.exp2() * shell_norm).abs() <= 1e-12 * b);
    }
}

#[test]
fn besov_of_zero() {
    let g = box2pi(8);
    let p = build_partition(&g).unwrap();
    let z = ScalarFieldK::zeros(&g);
    for (s, pp, q, h) in [(0.0, 1.0, 1.0, true), (1.5, f64::INFINITY, 2.0, false), (-1.0, 3.0, f64::INFINITY, true)] {
        assert_eq!(besov_norm(&z, &NormRequest::new(s, pp, q, h).unwrap(), &p).unwrap(), 0.0);
    }
    assert!(NormRequest::new(0.0, 0.5, 1.0, true).is_err());
}

/// Independent profile used by the oracle below.
fn oracle_chi(r: f64) -> f64 {
    let t = 3.0 * (r - 1.0);
    if t <= 0.0 {
        1.0
    } else if t >= 1.0 {
        0.0
    } else {
        let a = (-1.0 / (1.0 - t)).exp();
        let b = (-1.0 / t).exp();
        a / (a + b)
    }
}

/// Δ_j f at every grid point by direct summation over modes.
fn direct_shell(g: &Grid, f: &ScalarFieldK, j: i32) -> Vec<f64> {
    let n = g.n();
    let modes: Vec<(usize, [i64; 3], f64)> = (0..g.len())
        .filter_map(|i| {
            let m = g.mode(i);
            let r = ((m[0] * m[0] + m[1] * m[1] + m[2] * m[2]) as f64).sqrt() * g.scale() / (j as f64).exp2();
            let w = oracle_chi(r / 2.0) - oracle_chi(r);
            (w != 0.0 && f.coeffs()[i] != Complex64::default()).then_some((i, m, w))
        })
        .collect();
    (0..g.len())
        .map(|x| {
            let p = g.coords(x);
            let mut acc = Complex64::default();
            for &(i, m, w) in &modes {
                let phase = 2.0 * PI * ((m[0] * p[0] as i64 + m[1] * p[1] as i64 + m[2] * p[2] as i64) as f64) / n as f64;
                acc += w * f.coeffs()[i] * Complex64::from_polar(1.0, phase);
            }
            acc.re / g.len() as f64
        })
        .collect()
}

#[test]
fn besov_zero_inf_matches_direct_filtering() {
    let g = box2pi(8);
    let p = build_partition(&g).unwrap();
    let f = random_scalar(&g, 17);
    let fast = besov_norm(&f, &NormRequest::besov_zero_inf(), &p).unwrap();
    let oracle = p
        .shells()
        .map(|j| direct_shell(&g, &f, j).iter().map(|v| v.abs()).fold(0.0, f64::max))
        .fold(0.0, f64::max);
    assert!((fast - oracle).abs() <= 1e-12, "{fast} vs {oracle}");
}

#[test]
fn inhomogeneous_adds_low_block() {
    let g = box2pi(16);
    let p = build_partition(&g).unwrap();
    let mut f = real_mode(&g, [3, 0, 0]);
    f.coeffs_mut()[0] = Complex64::new(2.0 * g.len() as f64, 0.0);
    let r = NormRequest::new(1.0, 2.0, 2.0, false).unwrap();
    let b = besov_norm(&f, &r, &p).unwrap();
    let low = lp_norm(&ScalarFieldR::from_fn(&g, |_, _, _| 2.0), 2.0).unwrap();
    let high = 2.0 * lp_norm(&inverse(&real_mode(&g, [3, 0, 0])), 2.0).unwrap();
    assert!((b - low - high).abs() <= 1e-12 * b);
}

#[test]
fn sobolev_examples() {
    let g = box2pi(16);
    let f = random_scalar(&g, 3);
    let l2 = lp_norm(&inverse(&f), 2.0).unwrap();
    assert!((sobolev_norm(&f, 0.0) - l2).abs() <= 1e-12 * l2);

    let c = real_mode(&g, [0, 1, 0]);
    let base = lp_norm(&inverse(&c), 2.0).unwrap();
    assert!((sobolev_norm(&c, 1.0) - 2f64.sqrt() * base).abs() <= 1e-12 * base);

    let mut last = 0.0;
    for k in 0..10 {
        let v = sobolev_norm(&f, -2.0 + 0.5 * k as f64);
        assert!(v >= last);
        last = v;
    }
}

#[test]
fn bernstein_single_mode() {
    let g = box2pi(16);
    let p = build_partition(&g).unwrap();
    let f = real_mode(&g, [3, 0, 0]);
    let r = bernstein_ratio(&f, 1, 1, f64::INFINITY, f64::INFINITY, &p).unwrap();
    assert!((r - 1.5).abs() < 1e-12, "{r}");
}

#[test]
fn bernstein_errors() {
    let g = box2pi(16);
    let p = build_partition(&g).unwrap();
    let f = real_mode(&g, [3, 0, 0]);
    assert!(matches!(bernstein_ratio(&f, 0, 1, 2.0, 2.0, &p), Err(crate::Error::EmptyShell(0))));
    assert!(matches!(bernstein_ratio(&f, 1, 1, 4.0, 2.0, &p), Err(crate::Error::BernsteinExponents { .. })));
}

#[test]
fn bernstein_homogeneous_in_amplitude() {
    let g = box2pi(16);
    let p = build_partition(&g).unwrap();
    let f = random_scalar(&g, 8);
    for pp in [1.0, 2.0, f64::INFINITY] {
        let a = bernstein_ratio(&f, 1, 2, pp, pp, &p).unwrap();
        let b = bernstein_ratio(&f.scale(-37.5), 1, 2, pp, pp, &p).unwrap();
        assert!((a - b).abs() <= 1e-12 * a);
    }
}

#[test]
fn bernstein_sup_bound() {
    let g = box2pi(32);
    let p = build_partition(&g).unwrap();
    for seed in 0..5 {
        let f = random_scalar(&g, seed);
        for j in p.shells().filter(|&j| p.is_occupied(j)) {
            let r = bernstein_ratio(&f, j, 1, f64::INFINITY, f64::INFINITY, &p).unwrap();
            assert!(r <= 8.0 / 3.0 + 1e-9, "j = {j}: {r}");
        }
    }
}

#[test]
fn riesz_contracts_shells_in_l2() {
    let g = box2pi(16);
    let p = build_partition(&g).unwrap();
    let f = random_scalar(&g, 21);
    for j in p.shells() {
        let d = p.project_shell(&f, Shell::Index(j)).unwrap();
        let base = l2_norm_scalar_k(&d);
        for a in 0..3 {
            assert!(l2_norm_scalar_k(&riesz(a, &d)) <= base * (1.0 + 1e-14));
        }
    }
}

#[test]
fn commutator_two_modes() {
    let g = box2pi(16);
    let (k, l) = ([1, -2, 0], [2, 1, -3]);
    let s = 1.3;
    let rep = commutator_residual(&single_mode(&g, k), &single_mode(&g, l), s, CommutatorExponents::L2).unwrap();
    let kl = [k[0] + l[0], k[1] + l[1], k[2] + l[2]];
    let sq = |m: [i64; 3]| (m[0] * m[0] + m[1] * m[1] + m[2] * m[2]) as f64;
    let amp = (1.0 + sq(kl)).powf(s / 2.0) - (1.0 + sq(l)).powf(s / 2.0);
    let x = rep.residual.to_complex_physical();
    for (i, v) in x.iter().enumerate() {
        let [a, b, c] = g.coords(i);
        let phase = (kl[0] * a as i64 + kl[1] * b as i64 + kl[2] * c as i64) as f64 * 2.0 * PI / 16.0;
        assert!((v - amp * Complex64::from_polar(1.0, phase)).norm() <= 1e-12);
    }
    assert!(rep.bracket > 0.0);
}

#[test]
fn commutator_vanishes_for_constants_and_small_s() {
    let g = box2pi(16);
    let f = transform(&ScalarFieldR::from_fn(&g, |_, _, _| 2.0));
    let h = random_scalar(&g, 6);
    for s in [0.5, 1.0, 2.5] {
        let rep = commutator_residual(&f, &h, s, CommutatorExponents::L2).unwrap();
        assert!(rep.lhs <= 1e-12 * l2_norm_scalar_k(&h));
    }
    let f = random_scalar(&g, 7);
    let mut last = f64::INFINITY;
    for s in [1e-1, 1e-2, 1e-3, 1e-4] {
        let rep = commutator_residual(&f, &h, s, CommutatorExponents::L2).unwrap();
        assert!(rep.lhs < last);
        last = rep.lhs;
    }
    assert!(last < 1e-2);
    assert!(commutator_residual(&f, &h, 0.0, CommutatorExponents::L2).is_err());
}

#[test]
fn kernel_constant_bounds_shell_sups() {
    let g = box2pi(16);
    let p = build_partition(&g).unwrap();
    let ch = p.kernel_constant();
    assert!(ch >= 1.0);
    for seed in 0..10 {
        let w = curl(&random_solenoidal(&g, seed, true));
        let sups = p.shell_sup_norms(&w).unwrap();
        let sup_w = lp_norm(&inverse_vector(&w), f64::INFINITY).unwrap();
        assert!(sups.iter().all(|&s| s <= ch * sup_w));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn reconstruction(seed in 0u64..10_000, n in prop::sample::select(vec![8usize, 16])) {
        let g = box2pi(n);
        let p = build_partition(&g).unwrap();
        let f = random_scalar(&g, seed);
        let mut acc = p.project_shell(&f, Shell::Low).unwrap();
        for j in p.shells() {
            acc = acc.add(&p.project_shell(&f, Shell::Index(j)).unwrap()).unwrap();
        }
        prop_assert!(l2_norm_scalar_k(&acc.sub(&f).unwrap()) <= 1e-13 * l2_norm_scalar_k(&f));
    }
}
