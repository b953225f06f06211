// Ball-mass dimension fits for area, line and Cantor measures.

use stripbound::measure::ahlfors_fit;
use stripbound::{Measure, MeasureComponent, Point};

pub fn run_example() -> stripbound::Result<Vec<f64>> {
    let cases = [
        (Measure::lebesgue(1.0, -2.0, 2.0)?, 0.01),
        (
            Measure::single(
                1.0,
                MeasureComponent::segment(Point::new(-2.0, 0.5), Point::new(2.0, 0.5)),
            )?,
            0.01,
        ),
        (
            Measure::single(
                1.0,
                MeasureComponent::cantor(Point::new(0.0, 0.5), Point::new(1.0, 0.5), 12, 1.0),
            )?,
            0.001,
        ),
    ];
    let mut dims = Vec::new();
    for (mu, r_min) in cases {
        let fit = ahlfors_fit(&mu, 400, r_min, 0.1, 7)?;
        println!(
            "d_hat {:.4}  c0 {:.3}  c1 {:.3}",
            fit.d_hat, fit.c0_hat, fit.c1_hat
        );
        dims.push(fit.d_hat);
    }
    Ok(dims)
}

#[allow(dead_code)]
fn main() -> stripbound::Result<()> {
    run_example().map(|_| ())
}
