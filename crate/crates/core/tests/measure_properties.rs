use proptest::prelude::*;
use stripbound::measure::{ahlfors_fit, cantor_fraction, measure_of_ball, quadrature};
use stripbound::{Measure, MeasureComponent, Point, Rect};

fn cantor() -> Measure {
    Measure::single(
        1.0,
        MeasureComponent::cantor(Point::new(0.0, 0.5), Point::new(1.0, 0.5), 12, 1.0),
    )
    .unwrap()
}

#[test]
fn ahlfors_dimensions() {
    let leb = Measure::lebesgue(1.0, -2.0, 2.0).unwrap();
    let d = ahlfors_fit(&leb, 400, 0.01, 0.1, 1).unwrap().d_hat;
    assert!((d - 2.0).abs() < 0.05, "{d}");
    let seg = Measure::single(
        1.0,
        MeasureComponent::segment(Point::new(-2.0, 0.5), Point::new(2.0, 0.5)),
    )
    .unwrap();
    let d = ahlfors_fit(&seg, 400, 0.01, 0.1, 1).unwrap().d_hat;
    assert!((d - 1.0).abs() < 0.05, "{d}");
    let d = ahlfors_fit(&cantor(), 400, 0.001, 0.1, 1).unwrap().d_hat;
    assert!((d - 2f64.ln() / 3f64.ln()).abs() < 0.05, "{d}");
}

#[test]
fn quadrature_dump_total_mass() {
    let mu = cantor();
    let rule = quadrature(&mu, &mu.bounding_rect(), 0.01).unwrap();
    assert_eq!(rule.len(), 1 << 12);
    assert!((rule.total_weight() - 1.0).abs() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rule_mass_matches_rect_mass(lo in -3.0f64..0.0, len in 0.1f64..4.0) {
        // rects aligned with the quadrature lattice of a Lebesgue component
        let mu = Measure::lebesgue(1.0, -4.0, 4.0).unwrap();
        let h = 1.0 / 16.0;
        let lo = (lo / h).round() * h;
        let hi = lo + (len / h).round().max(1.0) * h;
        let rect = Rect::new((lo, hi), (0.0, 1.0));
        let rule = quadrature(&mu, &rect, h).unwrap();
        prop_assert!((rule.total_weight() - mu.mass_of_rect(&rect)).abs() < 1e-9);
    }

    #[test]
    fn cantor_fraction_bounds(t0 in 0.0f64..1.0, dt in 0.0f64..1.0) {
        let t1 = (t0 + dt).min(1.0);
        let f = cantor_fraction(t0, t1, 10);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&f));
        let whole = cantor_fraction(0.0, t0, 10) + f + cantor_fraction(t1, 1.0, 10);
        // overlapping endpoints carry no mass at finite depth
        prop_assert!((whole - 1.0).abs() < 1e-9);
    }

    #[test]
    fn ball_mass_monotone(cx in -1.0f64..1.0, r in 0.01f64..0.5) {
        let mu = Measure::lebesgue(1.0, -2.0, 2.0).unwrap();
        let c = Point::new(cx, 0.5);
        let small = measure_of_ball(&mu, c, r).unwrap();
        let big = measure_of_ball(&mu, c, 1.5 * r).unwrap();
        prop_assert!(small <= big);
        let exact = std::f64::consts::PI * r * r;
        prop_assert!((small - exact).abs() < 1e-3 * exact);
    }
}
