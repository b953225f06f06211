// Residuals of the ground-state projection identities at two mesh levels.

use stripbound::counter::{verify_projection_split, SplitMesh, SplitReport};
use stripbound::cross_section::{first_two_eigenpairs, StripGeometry, DEFAULT_TOL};

pub fn run_example() -> stripbound::Result<Vec<SplitReport>> {
    let cs = first_two_eigenpairs(&StripGeometry::robin(1.0, 1.0, 1.0)?, DEFAULT_TOL)?;
    let mut reports = Vec::new();
    for h in [1.0 / 16.0, 1.0 / 32.0] {
        let r = verify_projection_split(
            &cs,
            &SplitMesh {
                half_length: 4.0,
                h,
            },
            20,
            1,
        )?;
        println!(
            "h {h:<8} orthogonality {:.2e} energy {:.2e} gap slack {:.3} passed {}",
            r.max_orthogonality, r.max_energy, r.min_gap_slack, r.passed
        );
        reports.push(r);
    }
    Ok(reports)
}

#[allow(dead_code)]
fn main() -> stripbound::Result<()> {
    run_example().map(|_| ())
}
