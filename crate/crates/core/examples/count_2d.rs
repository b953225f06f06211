// Negative eigenvalues of the discretized strip form, with mesh refinement.

use stripbound::counter::{count_negative, CountControls, InertiaResult};
use stripbound::cross_section::{first_two_eigenpairs, StripGeometry, DEFAULT_TOL};
use stripbound::{Measure, Potential};

pub fn run_example() -> stripbound::Result<InertiaResult> {
    let cs = first_two_eigenpairs(&StripGeometry::dirichlet(1.0)?, DEFAULT_TOL)?;
    let mu = Measure::lebesgue(1.0, -2.0, 2.0)?;
    let v = Potential::parse("40 * max(0, 1 - x1^2 / 4)^2")?;
    let r = count_negative(
        &cs,
        &mu,
        &v,
        &CountControls {
            h: 1.0 / 16.0,
            ..Default::default()
        },
    )?;
    for t in &r.refinement_trace {
        println!(
            "h {:<8} L {:<4} dim {:>6} n_neg {}",
            t.h, t.half_length, t.dim, t.n_neg
        );
    }
    println!("n_neg {} (stable: {}, via {})", r.n_neg, r.stable, r.method);
    Ok(r)
}

#[allow(dead_code)]
fn main() -> stripbound::Result<()> {
    run_example().map(|_| ())
}
