mod common;

use common::naive_von_mangoldt;
use gpsprimes::arith::build_tables;
use gpsprimes::expsums::*;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

fn naive_e(t: f64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * t)
}

#[test]
fn heath_brown_full_coverage() {
    let t = build_tables(1, 10_000, true).unwrap();
    let z = (5000f64).cbrt().ceil() as u64;
    assert_eq!(z, 18);
    for n in 1..=10_000u64 {
        let v = hb_lambda(n, 3, z, &t).unwrap();
        assert!((v - naive_von_mangoldt(n)).abs() <= 1e-9, "n = {n}");
    }
}

#[test]
fn lambda_sum_matches_double_loop() {
    let t = build_tables(1, 1000, false).unwrap();
    let gamma = 1.0 / 1.05;
    let theta = 1.0;
    let fast = weighted_lambda_sum(1e3, 4, theta, gamma, 0.0, &t).unwrap();
    let mut slow = 0.0;
    for h in 1..=4 {
        let mut z = Complex64::new(0.0, 0.0);
        for n in 501..=1000u64 {
            z += naive_von_mangoldt(n) * naive_e(theta * h as f64 * (n as f64).powf(gamma));
        }
        slow += z.norm();
    }
    assert!((fast - slow).abs() < 1e-9 * slow);
}

#[test]
fn derivative_tests_hold_with_small_constant() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = [0.0f64; 2];
    for _ in 0..1000 {
        let a = rng.gen_range(50..5000u64);
        let b = a + rng.gen_range(1..=a);
        let spec = PhaseSpec::new(rng.gen_range(0.05..1.0), rng.gen_range(0.5..0.99), rng.gen_range(0.0..1.0), a, b).unwrap();
        let s = phase_sum(&spec, Weight::Unit).unwrap().norm();
        for (i, order) in [DerivativeOrder::Second, DerivativeOrder::Third].into_iter().enumerate() {
            worst[i] = worst[i].max(s / derivative_test_bound(&spec, order).unwrap());
        }
    }
    assert!(worst.iter().all(|&c| c <= 10.0), "fitted constants {worst:?}");
}

#[test]
fn srinivasan_against_grid() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..1000 {
        let terms = |rng: &mut ChaCha8Rng| -> Vec<(f64, f64)> {
            (0..rng.gen_range(1..=3)).map(|_| (rng.gen_range(0.1..100.0), rng.gen_range(0.1..3.0))).collect()
        };
        let (g, d) = (terms(&mut rng), terms(&mut rng));
        let h1 = rng.gen_range(1.0..10.0);
        let h2 = h1 * rng.gen_range(1.0..1000.0f64);
        let mb = MonomialBound::new(g.clone(), d.clone(), h1, h2).unwrap();
        let o = srinivasan_optimize(&mb).unwrap();
        let grid = (0..=4000)
            .map(|i| mb.eval((h1.ln() + (h2 / h1).ln() * i as f64 / 4000.0).exp()))
            .fold(f64::INFINITY, f64::min);
        assert!(grid <= mb.term_count() as f64 * o.closed_bound);
        assert!(o.value <= grid * (1.0 + 1e-3));
        assert!(o.value <= mb.term_count() as f64 * o.closed_bound);
    }
}

#[test]
fn weyl_inequality_random_signs() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let signs = |rng: &mut ChaCha8Rng, n: u64| Coefficients::bounded((0..n).map(|_| if rng.gen::<bool>() { 1.0 } else { -1.0 }).collect());
    let (a, b) = (signs(&mut rng, 100), signs(&mut rng, 100));
    let spec = BilinearSumSpec::new(100, 100, 1, 10, a, b).unwrap();
    let phase = BilinearPhase::new(0.9, 1.0 / 1.05, 0.25).unwrap();
    for h in [1, 2, -3] {
        let (lhs, rhs) = weyl_van_der_corput_check(&spec, &phase, h).unwrap();
        assert!(lhs <= 4.0 * rhs);
    }
    let spec = BilinearSumSpec::unit(100, 100, 1, 1).unwrap();
    let (lhs, rhs) = weyl_van_der_corput_check(&spec, &phase, 1).unwrap();
    assert!(lhs <= rhs);
}

#[test]
fn bilinear_ratios_with_mobius() {
    let phase = BilinearPhase::new(1.0, 1.0 / 1.05, 0.0).unwrap();
    let spec = BilinearSumSpec::new(30, 333, 4, 5, Coefficients::mobius(30, 30).unwrap(), Coefficients::unit(333)).unwrap();
    let est = type_i_sum(&spec, 1e4, &phase).unwrap();
    assert!(est.ratio() < 1.0);
    let a = Coefficients::mobius(200, 200).unwrap();
    let b = Coefficients::mobius(50, 50).unwrap();
    let spec = BilinearSumSpec::new(200, 50, 2, 5, a, b).unwrap();
    let est = type_ii_sum(&spec, 1e4, &phase).unwrap();
    assert!(est.ratio() < 1.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conjugation_and_triangle(theta in -2.0f64..2.0, gamma in 0.05f64..0.95, xi in -1.0f64..1.0, a in 0u64..10_000, len in 1u64..3000) {
        let s = PhaseSpec::new(theta, gamma, xi, a, a + len).unwrap();
        let c = PhaseSpec { theta: -theta, xi: -xi, ..s };
        let z = phase_sum(&s, Weight::Log).unwrap();
        let w = phase_sum(&c, Weight::Log).unwrap();
        prop_assert!((z.conj() - w).norm() <= 1e-12 * (1.0 + z.norm()));
        prop_assert!(z.norm() <= len as f64 * ((a + len) as f64).ln() + 1e-9);
    }

    #[test]
    fn classifier_respects_windows(e in proptest::array::uniform6(0.0f64..0.34), x_exp in 6.0f64..14.0) {
        let x = 10f64.powf(x_exp);
        let total: f64 = e.iter().sum();
        prop_assume!(total > 0.0);
        let mut n = e.map(|v| x.powf(v / total));
        n.sort_by(|a, b| b.total_cmp(a));
        prop_assume!(n[3..].iter().all(|&v| v <= (2.0 * x).cbrt()));
        match classify_factorization(n, x) {
            Ok(FactorizationCase::TypeI { k, .. }) => prop_assert!(k <= x.sqrt() * 1.0001),
            Ok(FactorizationCase::TypeIIDirect { k, .. }) | Ok(FactorizationCase::TypeIIGrouped { k, .. }) => {
                prop_assert!(k >= x.sqrt() * 0.9999 && k <= x.powf(19.0 / 25.0) * 1.0001);
            }
            Err(e) => prop_assert!(false, "{e}"),
        }
    }
}
