// Luxemburg, Orlicz and average norms of a step function.

use stripbound::orlicz::{norm_triple, NormTriple};

pub fn run_example() -> stripbound::Result<NormTriple> {
    // values (1, 2, 4) on masses (1/2, 1/4, 1/4)
    let t = norm_triple(&[1.0, 2.0, 4.0], &[0.5, 0.25, 0.25])?;
    println!("luxemburg {:.8}", t.luxemburg);
    println!(
        "orlicz    {:.8}  (ratio {:.4})",
        t.orlicz,
        t.orlicz / t.luxemburg
    );
    println!("average   {:.8}", t.average);
    Ok(t)
}

#[allow(dead_code)]
fn main() -> stripbound::Result<()> {
    run_example().map(|_| ())
}
