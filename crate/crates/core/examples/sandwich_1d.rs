// The reduced one-dimensional count against the explicit bound.

use stripbound::bound::{build_nu, compute_bound, BoundControls};
use stripbound::counter::count_negative_1d;
use stripbound::cross_section::{first_two_eigenpairs, StripGeometry, DEFAULT_TOL};
use stripbound::{Measure, MeasureComponent, Point, Potential};

pub fn run_example() -> stripbound::Result<Vec<(f64, usize, f64)>> {
    let cs = first_two_eigenpairs(&StripGeometry::robin(1.0, -1.0, 2.0)?, DEFAULT_TOL)?;
    let mu = Measure::single(
        1.0,
        MeasureComponent::segment(Point::new(-3.0, 0.5), Point::new(3.0, 0.5)),
    )?;
    let mut rows = Vec::new();
    for depth in [1.0, 10.0, 100.0] {
        let v = Potential::parse(&format!("{depth} * max(0, 1 - x1^2 / 9)"))?;
        let nu = build_nu(&v, &cs, &mu, 64.0, 1.0 / 64.0)?;
        let n = count_negative_1d(&nu, 64.0, 1.0 / 64.0)?;
        let rhs = compute_bound(&v, &cs, &mu, &BoundControls::default())?.rhs_1d;
        println!("depth {depth:>5}: count {n:>3} <= {rhs:.3}");
        rows.push((depth, n, rhs));
    }
    Ok(rows)
}

#[allow(dead_code)]
fn main() -> stripbound::Result<()> {
    run_example().map(|_| ())
}
