use proptest::prelude::*;
use stripbound::bound::{
    assemble_bound, build_nu, cell_m, compute_bound, dyadic_f, dyadic_f_direct, weak_l1,
    BoundConstants, BoundControls, DyadicWindow, FTerm,
};
use stripbound::counter::count_negative_1d;
use stripbound::cross_section::{first_two_eigenpairs, CrossSection, StripGeometry, DEFAULT_TOL};
use stripbound::orlicz::{b_eval, NormKind, NormRequest};
use stripbound::{Measure, MeasureComponent, Point, Potential, Rect};

fn cs_of(g: StripGeometry) -> CrossSection {
    first_two_eigenpairs(&g, DEFAULT_TOL).unwrap()
}

fn mixed_measure(a: f64) -> Measure {
    Measure::new(
        a,
        vec![
            (
                1.0,
                MeasureComponent::lebesgue(Rect::new((-3.0, 2.5), (0.0, a))),
            ),
            (
                0.5,
                MeasureComponent::segment(Point::new(-6.0, 0.5 * a), Point::new(7.0, 0.5 * a)),
            ),
            (
                2.0,
                MeasureComponent::cantor(Point::new(1.0, 0.0), Point::new(10.0, a), 7, 1.0),
            ),
        ],
    )
    .unwrap()
}

#[test]
fn f_via_nu_matches_direct_quadrature() {
    for g in [
        StripGeometry::dirichlet(1.0).unwrap(),
        StripGeometry::robin(1.0, 1.0, -0.5).unwrap(),
    ] {
        let cs = cs_of(g);
        let mu = mixed_measure(1.0);
        let v = Potential::parse("3 * exp(-x1^2 / 8) * (1 + x2)").unwrap();
        let nu = build_nu(&v, &cs, &mu, 16.0, 1.0 / 32.0).unwrap();
        for n in -4..=4 {
            let w = DyadicWindow::new(n);
            let (a, b) = (
                dyadic_f(&nu, &w),
                dyadic_f_direct(&v, &cs, &mu, &w, 1.0 / 32.0).unwrap(),
            );
            assert!(
                (a - b).abs() <= 1e-8 * a.abs().max(b.abs()).max(1e-300),
                "n={n}: {a} vs {b}"
            );
        }
    }
}

#[test]
fn constant_on_unit_mass_cell() {
    // V ≡ c against μ of mass 1 on the cell: c · inf_k (1 + ℬ(k))/k
    let mu = Measure::lebesgue(1.0, 0.0, 1.0).unwrap();
    let c = 2.5;
    let m = cell_m(&Potential::constant(c), &mu, 0, 0.05).unwrap();
    let mut best = f64::MAX;
    for i in 1..200_000 {
        let k = i as f64 * 1e-4;
        best = best.min((1.0 + b_eval(k)) / k);
    }
    assert!(
        (m - c * best).abs() < 1e-6 * c * best,
        "{m} vs {}",
        c * best
    );
}

#[test]
fn zero_potential_gives_trivial_bound() {
    let cs = cs_of(StripGeometry::dirichlet(1.0).unwrap());
    let r = compute_bound(
        &Potential::zero(),
        &cs,
        &mixed_measure(1.0),
        &BoundControls::default(),
    )
    .unwrap();
    assert_eq!(r.rhs_total, 1.0);
    assert_eq!(r.rhs_1d, 1.0);
    assert_eq!(r.weak_l1, 0.0);
    assert_eq!(r.schema_version, 1);
}

#[test]
fn window_extension_keeps_weak_l1() {
    let cs = cs_of(StripGeometry::dirichlet(1.0).unwrap());
    let mu = Measure::lebesgue(1.0, -4.0, 4.0).unwrap();
    let v = Potential::parse("5 * max(0, 1 - x1^2 / 16)").unwrap();
    let base = compute_bound(&v, &cs, &mu, &BoundControls::default()).unwrap();
    let wide = compute_bound(
        &v,
        &cs,
        &mu,
        &BoundControls {
            n_max: Some(base.n_max + 4),
            ..Default::default()
        },
    )
    .unwrap();
    assert_eq!(base.weak_l1, wide.weak_l1);
    assert_eq!(base.rhs_1d, wide.rhs_1d);
}

fn f_term(n: i64, value: f64) -> FTerm {
    FTerm {
        n,
        lo: 0.0,
        hi: 0.0,
        value,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn weak_l1_quasi_triangle(pairs in prop::collection::vec((-10.0f64..10.0, -10.0f64..10.0), 0..40)) {
        let a: Vec<f64> = pairs.iter().map(|p| p.0).collect();
        let b: Vec<f64> = pairs.iter().map(|p| p.1).collect();
        let s: Vec<f64> = pairs.iter().map(|p| p.0 + p.1).collect();
        prop_assert!(weak_l1(&s) <= 2.0 * (weak_l1(&a) + weak_l1(&b)) + 1e-12);
    }

    #[test]
    fn weak_l1_matches_definition(seq in prop::collection::vec(-5.0f64..5.0, 1..20)) {
        // sup over s just below each breakpoint
        let mut best: f64 = 0.0;
        for s0 in seq.iter().map(|x| x.abs()) {
            let s = s0 * (1.0 - 1e-12);
            best = best.max(s * seq.iter().filter(|x| x.abs() > s).count() as f64);
        }
        prop_assert!((weak_l1(&seq) - best).abs() <= 1e-9 * best.max(1.0));
    }

    #[test]
    fn scaling_multiplies_terms(t in 0.1f64..20.0) {
        let cs = cs_of(StripGeometry::robin(1.0, 0.5, 0.5).unwrap());
        let mu = mixed_measure(1.0);
        let v = Potential::parse("1 + sin(x1)^2").unwrap();
        let ctl = BoundControls { n_max: Some(4), resolution: 1.0 / 16.0, ..Default::default() };
        let base = compute_bound(&v, &cs, &mu, &ctl).unwrap();
        let scaled = compute_bound(&v.scaled(t), &cs, &mu, &ctl).unwrap();
        for (x, y) in base.f_terms.iter().zip(&scaled.f_terms) {
            prop_assert!((y.value - t * x.value).abs() <= 1e-12 * (t * x.value).max(1e-300));
        }
        for (x, y) in base.m_terms.iter().zip(&scaled.m_terms) {
            prop_assert!((y.value - t * x.value).abs() <= 1e-8 * (t * x.value).max(1e-300));
        }
    }

    #[test]
    fn doubling_scales_rhs_at_most_sqrt2(values in prop::collection::vec(0.0f64..10.0, 1..12)) {
        let terms: Vec<FTerm> = values.iter().enumerate().map(|(i, v)| f_term(i as i64, *v)).collect();
        let doubled: Vec<FTerm> = values.iter().enumerate().map(|(i, v)| f_term(i as i64, 2.0 * v)).collect();
        let a = assemble_bound(terms, vec![], BoundConstants::default());
        let b = assemble_bound(doubled, vec![], BoundConstants::default());
        prop_assert!(b.rhs_1d - 1.0 <= 2f64.sqrt() * (a.rhs_1d - 1.0) + 7.61 * (2.0 * 0.046f64).sqrt() * values.len() as f64 + 1e-12);
        prop_assert!(b.rhs_1d >= a.rhs_1d);
    }

    #[test]
    fn one_dimensional_sandwich(depth in 0.1f64..150.0, width in 0.2f64..3.0, center in -10.0f64..10.0, robin in any::<bool>()) {
        let g = if robin { StripGeometry::robin(1.0, 1.0, 1.0).unwrap() } else { StripGeometry::dirichlet(1.0).unwrap() };
        let cs = cs_of(g);
        let mu = Measure::lebesgue(1.0, center - width, center + width).unwrap();
        let v = Potential::constant(depth);
        let nu = build_nu(&v, &cs, &mu, 32.0, 1.0 / 64.0).unwrap();
        let n = count_negative_1d(&nu, 32.0, 1.0 / 32.0).unwrap();
        let r = compute_bound(&v, &cs, &mu, &BoundControls { resolution: 1.0 / 64.0, ..Default::default() }).unwrap();
        prop_assert!((n as f64) <= r.rhs_1d, "{} > {}", n, r.rhs_1d);
    }
}

#[test]
fn average_norm_on_unit_mass_is_orlicz() {
    let req = NormRequest::new(&[1.0, 3.0], &[0.5, 0.5], NormKind::Average).unwrap();
    let req_o = NormRequest::new(&[1.0, 3.0], &[0.5, 0.5], NormKind::Orlicz).unwrap();
    assert!((req.evaluate().unwrap() - req_o.evaluate().unwrap()).abs() < 1e-12);
}
