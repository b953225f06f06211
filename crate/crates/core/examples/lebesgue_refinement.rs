// Column-wise norms against cell norms for an area measure.

use stripbound::bound::{lebesgue_refinement, LebesgueRefinement};
use stripbound::cross_section::{first_two_eigenpairs, StripGeometry, DEFAULT_TOL};
use stripbound::{Measure, Potential};

pub fn run_example() -> stripbound::Result<LebesgueRefinement> {
    let cs = first_two_eigenpairs(&StripGeometry::neumann(1.0)?, DEFAULT_TOL)?;
    let mu = Measure::lebesgue(1.0, -4.0, 4.0)?;
    let v = Potential::parse("3 * (1 + cos(3 * x2)) * exp(-x1^2 / 4)")?;
    let r = lebesgue_refinement(&v, &cs, &mu, -3, 3, 1.0 / 32.0)?;
    for c in &r.cells {
        println!(
            "cell {:>3}: D {:.5} <= 4 M = {:.5} {}",
            c.n,
            c.d_n,
            4.0 * c.m_n,
            c.chain_holds
        );
    }
    println!("norm of V - G: {:.5}", r.v_star_norm);
    Ok(r)
}

#[allow(dead_code)]
fn main() -> stripbound::Result<()> {
    run_example().map(|_| ())
}
