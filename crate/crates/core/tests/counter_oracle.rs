mod common;

use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::{seq::SliceRandom, Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stripbound::bound::{build_nu, NuMeasure};
use stripbound::counter::{
    assemble_form, bunch_kaufman_inertia, count_negative_1d, eigen_inertia, inertia, Inertia,
    SymBand,
};
use stripbound::cross_section::{first_two_eigenpairs, StripGeometry, DEFAULT_TOL};
use stripbound::{Measure, Potential};

fn random_symmetric(rng: &mut ChaCha8Rng, n: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let v = rng.gen_range(-1.0..1.0);
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    m
}

#[test]
fn diagonal_example() {
    let m = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![-1.0, 2.0, 0.0]));
    assert_eq!(
        bunch_kaufman_inertia(&m, 1e-12),
        Inertia {
            neg: 1,
            zero: 1,
            pos: 1
        }
    );
}

#[test]
fn dense_500_matches_eigenvalues() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let m = random_symmetric(&mut rng, 500);
    let tol = 1e-10 * m.amax();
    assert_eq!(bunch_kaufman_inertia(&m, tol), eigen_inertia(&m, tol));
}

#[test]
fn congruence_by_permutation() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for n in [5, 40, 150] {
        let m = random_symmetric(&mut rng, n);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let p = DMatrix::from_fn(n, n, |i, j| m[(perm[i], perm[j])]);
        let tol = 1e-10 * m.amax();
        assert_eq!(
            bunch_kaufman_inertia(&m, tol),
            bunch_kaufman_inertia(&p, tol)
        );
    }
}

#[test]
fn strip_forms_match_dense_eigenvalues() {
    let geoms = [
        StripGeometry::dirichlet(1.0).unwrap(),
        StripGeometry::robin(1.0, 1.0, 1.0).unwrap(),
        StripGeometry::robin(1.0, -2.0, 0.5).unwrap(),
    ];
    let mu = Measure::lebesgue(1.0, -3.0, 3.0).unwrap();
    for g in geoms {
        let cs = first_two_eigenpairs(&g, DEFAULT_TOL).unwrap();
        for depth in [0.0, 5.0, 60.0] {
            let v = Potential::parse(&format!("{depth} * exp(-x1^2)")).unwrap();
            let f = assemble_form(&cs, &mu, &v, 4.0, 0.125, 1.0, 0.0625).unwrap();
            let got = inertia(&f).unwrap();
            let want = eigen_inertia(&f.matrix.to_dense(), got.zero_tolerance);
            assert_eq!(
                (got.n_neg, got.n_zero, got.n_pos),
                (want.neg, want.zero, want.pos),
                "{g:?} depth {depth}"
            );
            if depth == 0.0 {
                assert_eq!(got.n_neg, 0);
            }
        }
    }
}

fn lebesgue_nu(lo: f64, hi: f64, density: f64, spacing: f64) -> NuMeasure {
    let n = ((hi - lo) / spacing).round() as usize;
    let nodes = (0..n)
        .map(|i| (lo + (i as f64 + 0.5) * spacing, density * spacing))
        .collect();
    NuMeasure {
        nodes,
        mass_deficit: 0.0,
        half_length: 16.0,
    }
}

#[test]
fn one_dimensional_counter_matches_shooting() {
    // 2ν = strength·1_[0,1]
    for strength in [2.0, 50.0, 200.0] {
        let nu = lebesgue_nu(0.0, 1.0, strength / 2.0, 1.0 / 2048.0);
        let fem = count_negative_1d(&nu, 16.0, 1.0 / 256.0).unwrap();
        let shoot = common::shooting_count(
            |x| {
                if (0.0..=1.0).contains(&x) {
                    strength
                } else {
                    0.0
                }
            },
            16.0,
            1e-4,
        );
        assert_eq!(fem, shoot, "strength {strength}");
    }
}

#[test]
fn nu_from_strip_matches_shooting() {
    // Dirichlet strip, V = 30 on [-1, 1]: ν has density 30·∫u₁² = 30 there
    let cs = first_two_eigenpairs(&StripGeometry::dirichlet(1.0).unwrap(), DEFAULT_TOL).unwrap();
    let mu = Measure::lebesgue(1.0, -1.0, 1.0).unwrap();
    let nu = build_nu(&Potential::constant(30.0), &cs, &mu, 16.0, 1.0 / 256.0).unwrap();
    let fem = count_negative_1d(&nu, 16.0, 1.0 / 256.0).unwrap();
    let shoot = common::shooting_count(|x| if x.abs() <= 1.0 { 60.0 } else { 0.0 }, 16.0, 1e-4);
    assert_eq!(fem, shoot);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn band_inertia_matches_dense(n in 2usize..200, bw in 1usize..8, seed in 0u64..10_000, sparse in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut m = SymBand::zeros(n, bw);
        for i in 0..n {
            for j in i.saturating_sub(bw)..=i {
                if !(sparse && rng.gen_bool(0.6)) {
                    m.add(i, j, rng.gen_range(-1.0..1.0));
                }
            }
        }
        let tol = m.default_zero_tolerance();
        let dense = eigen_inertia(&m.to_dense(), tol);
        match m.inertia(tol) {
            Ok(i) => prop_assert_eq!(i, dense),
            Err(_) => prop_assert_eq!(stripbound::counter::band_matrix_inertia(&m, tol).unwrap().0, dense),
        }
    }

    #[test]
    fn longer_boxes_never_lose_bound_states(c in 0.05f64..40.0, x0 in -3.0f64..3.0) {
        let nu = NuMeasure { nodes: vec![(x0, c), (x0 + 0.7, 0.5 * c)], mass_deficit: 0.0, half_length: 64.0 };
        let mut last = 0;
        for l in [4.0, 8.0, 16.0, 32.0] {
            let n = count_negative_1d(&nu, l, 1.0 / 32.0).unwrap();
            prop_assert!(n >= last);
            last = n;
        }
    }
}
