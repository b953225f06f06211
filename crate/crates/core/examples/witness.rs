// Tent test functions on separated windows as negative directions.

use stripbound::bound::build_nu;
use stripbound::counter::{inertia_1d, testfunction_witness, WitnessReport};
use stripbound::cross_section::{first_two_eigenpairs, StripGeometry, DEFAULT_TOL};
use stripbound::{Measure, MeasureComponent, Potential, Rect};

pub fn run_example() -> stripbound::Result<(Vec<WitnessReport>, usize)> {
    let cs = first_two_eigenpairs(&StripGeometry::dirichlet(1.0)?, DEFAULT_TOL)?;
    let boxes = [(5.5, 6.5), (47.5, 48.5), (383.5, 384.5)];
    let mu = Measure::new(
        1.0,
        boxes
            .iter()
            .map(|b| (1.0, MeasureComponent::lebesgue(Rect::new(*b, (0.0, 1.0)))))
            .collect(),
    )?;
    let v = Potential::constant(2.0);
    let mut reports = Vec::new();
    for n in [3, 6, 9] {
        let w = testfunction_witness(&cs, &v, &mu, n, 1.0 / 32.0)?;
        println!(
            "n {n}: energy {:>8.1} potential {:>10.1} form {:>10.1} F_n {:.1}",
            w.energy, w.potential_term, w.form_value, w.f_n
        );
        reports.push(w);
    }
    let nu = build_nu(&v, &cs, &mu, 1024.0, 1.0 / 32.0)?;
    let count = inertia_1d(&nu, 1.0, 1024.0, 1.0 / 32.0)?.neg;
    println!("reduced count on [-1024, 1024]: {count}");
    Ok((reports, count))
}

#[allow(dead_code)]
fn main() -> stripbound::Result<()> {
    run_example().map(|_| ())
}
