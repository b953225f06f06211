// Transverse eigenpairs for the three boundary-condition families.

use stripbound::cross_section::{first_two_eigenpairs, StripGeometry, DEFAULT_TOL};

pub fn run_example() -> stripbound::Result<Vec<(String, f64, f64)>> {
    let cases = [
        ("neumann a=1", StripGeometry::neumann(1.0)?),
        ("dirichlet a=1", StripGeometry::dirichlet(1.0)?),
        ("robin 1,1", StripGeometry::robin(1.0, 1.0, 1.0)?),
        ("robin -1,2", StripGeometry::robin(1.0, -1.0, 2.0)?),
    ];
    let mut rows = Vec::new();
    for (name, g) in cases {
        let cs = first_two_eigenpairs(&g, DEFAULT_TOL)?;
        println!(
            "{name:<14} lambda1 {:>12.9} lambda2 {:>12.9} u1(a/2) {:.6}",
            cs.lambda1,
            cs.lambda2,
            cs.u1(0.5)
        );
        rows.push((name.to_string(), cs.lambda1, cs.lambda2));
    }
    Ok(rows)
}

#[allow(dead_code)]
fn main() -> stripbound::Result<()> {
    run_example().map(|_| ())
}
