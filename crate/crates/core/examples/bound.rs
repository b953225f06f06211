// Dyadic F_n, cell M_n and the assembled counting bound for a mixed measure.

use stripbound::bound::{compute_bound, BoundControls, BoundReport};
use stripbound::cross_section::{first_two_eigenpairs, StripGeometry, DEFAULT_TOL};
use stripbound::{Measure, MeasureComponent, Point, Potential, Rect};

pub fn run_example() -> stripbound::Result<BoundReport> {
    let cs = first_two_eigenpairs(&StripGeometry::robin(1.0, 1.0, 1.0)?, DEFAULT_TOL)?;
    let mu = Measure::new(
        1.0,
        vec![
            (
                1.0,
                MeasureComponent::lebesgue(Rect::new((-3.0, 3.0), (0.0, 1.0))),
            ),
            (
                0.5,
                MeasureComponent::segment(Point::new(2.0, 1.0), Point::new(9.0, 1.0)),
            ),
        ],
    )?;
    let v = Potential::parse("4 * exp(-x1^2 / 8)")?;
    let report = compute_bound(&v, &cs, &mu, &BoundControls::default())?;
    for t in report.f_terms.iter().filter(|t| t.value > 0.0) {
        println!(
            "F[{:>3}] on [{:>6}, {:>6}] = {:.6}",
            t.n, t.lo, t.hi, t.value
        );
    }
    for t in &report.m_terms {
        println!("M[{:>3}] = {:.6}", t.n, t.value);
    }
    println!(
        "rhs_1d {:.4}  rhs_total {:.4}  weak_l1 {:.4}",
        report.rhs_1d, report.rhs_total, report.weak_l1
    );
    Ok(report)
}

#[allow(dead_code)]
fn main() -> stripbound::Result<()> {
    run_example().map(|_| ())
}
