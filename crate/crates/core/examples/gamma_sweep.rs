// Linear growth of the count in the coupling for a smooth compact well.

use stripbound::bound::{gamma_sweep, BoundControls, SweepReport};
use stripbound::counter::CountControls;
use stripbound::cross_section::{first_two_eigenpairs, StripGeometry, DEFAULT_TOL};
use stripbound::{Measure, Potential};

pub fn run_example() -> stripbound::Result<SweepReport> {
    let cs = first_two_eigenpairs(&StripGeometry::dirichlet(1.0)?, DEFAULT_TOL)?;
    let mu = Measure::lebesgue(1.0, -2.0, 2.0)?;
    let v = Potential::parse("20 * max(0, 1 - x1^2 / 4)^2")?;
    let count = CountControls {
        h: 1.0 / 16.0,
        max_refinements: 2,
        ..Default::default()
    };
    let sweep = gamma_sweep(
        &v,
        &cs,
        &mu,
        &[1.0, 2.0, 4.0, 8.0],
        &count,
        &BoundControls::default(),
    )?;
    for p in &sweep.points {
        println!(
            "gamma {:>4}: n_neg {:>3}  n/gamma {:.3}  rhs_1d {:.2}",
            p.gamma, p.n_neg, p.n_over_gamma, p.rhs_1d
        );
    }
    println!("slope {:.3}, weak_l1 {:.3}", sweep.slope, sweep.weak_l1);
    Ok(sweep)
}

#[allow(dead_code)]
fn main() -> stripbound::Result<()> {
    run_example().map(|_| ())
}
