mod common;

use proptest::prelude::*;
use stripbound::cross_section::{
    first_two_eigenpairs, fundamental_pair, secular_value, StripGeometry, DEFAULT_TOL,
};

fn close(x: f64, y: f64) -> bool {
    (x - y).abs() <= 1e-5 * y.abs().max(1.0)
}

#[test]
fn robin_grid_matches_finite_differences() {
    let grid = [-3.0, -1.5, 0.0, 1.5, 3.0];
    for &alpha in &grid {
        for &beta in &grid {
            let cs = first_two_eigenpairs(
                &StripGeometry::robin(1.0, alpha, beta).unwrap(),
                DEFAULT_TOL,
            )
            .unwrap();
            let (l1, l2) = common::fd_robin_pair(1.0, alpha, beta, 2048);
            assert!(
                close(cs.lambda1, l1),
                "α={alpha} β={beta}: λ₁ {} vs {l1}",
                cs.lambda1
            );
            assert!(
                close(cs.lambda2, l2),
                "α={alpha} β={beta}: λ₂ {} vs {l2}",
                cs.lambda2
            );
        }
    }
}

#[test]
fn thin_and_wide_strips_match_finite_differences() {
    for (a, alpha, beta) in [
        (0.1, 3.0, -3.0),
        (0.25, 2.0, 0.5),
        (3.0, -1.0, 2.0),
        (5.0, 1.0, 1.0),
    ] {
        let cs = first_two_eigenpairs(&StripGeometry::robin(a, alpha, beta).unwrap(), DEFAULT_TOL)
            .unwrap();
        let (l1, l2) = common::fd_robin_pair(a, alpha, beta, 4096);
        assert!(close(cs.lambda1, l1), "a={a}: λ₁ {} vs {l1}", cs.lambda1);
        assert!(close(cs.lambda2, l2), "a={a}: λ₂ {} vs {l2}", cs.lambda2);
    }
}

#[test]
fn wronskian_of_fundamental_pair() {
    // c s' - c' s = 1 with s' = c and c' = -λ s
    for lambda in [-50.0, -1e-6, 0.0, 1e-6, 3.0, 80.0] {
        for x in [0.0, 0.3, 1.0, 2.5] {
            let (c, s) = fundamental_pair(lambda, x);
            let w = c * c + lambda * s * s;
            assert!(
                (w - 1.0).abs() < 1e-9 * (1.0f64).max(c * c),
                "λ={lambda} x={x}: {w}"
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eigenpair_invariants(a in 0.2f64..4.0, alpha in -3.0f64..3.0, beta in -3.0f64..3.0) {
        let g = StripGeometry::robin(a, alpha, beta).unwrap();
        let cs = first_two_eigenpairs(&g, DEFAULT_TOL).unwrap();
        prop_assert!(cs.lambda1 < cs.lambda2);
        let scale = cs.lambda2.abs().max(1.0);
        prop_assert!(secular_value(&g, cs.lambda1).unwrap().abs() < 1e-7 * scale);
        prop_assert!((cs.u1_norm_sq() - 1.0).abs() < 1e-10);
        prop_assert!(cs.energy_residual().abs() < 1e-8 * scale);
        for k in 0..=20 {
            prop_assert!(cs.u1(a * k as f64 / 20.0) > 0.0);
        }
        prop_assert!(cs.cell_lambda2() <= cs.lambda2);
    }
}
