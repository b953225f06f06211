// Drives the command-line pipeline on the bundled configuration.

use std::path::PathBuf;

use clap::Parser;
use stripbound::cli::{execute, Cli};

pub fn run_example() -> stripbound::Result<bool> {
    let config = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/configs/well.toml");
    let out = std::env::temp_dir().join(format!("stripbound-example-{}", std::process::id()));
    let mut passed = true;
    for command in ["bound", "count", "verify"] {
        let cli = Cli::parse_from([
            "stripbound",
            command,
            "--config",
            config.to_str().expect("utf-8 path"),
            "--out",
            out.join(command).to_str().expect("utf-8 path"),
        ]);
        let outcome = execute(&cli)?;
        println!("[{command}] {}", outcome.summary);
        passed &= outcome.passed;
    }
    let _ = std::fs::remove_dir_all(&out);
    Ok(passed)
}

#[allow(dead_code)]
fn main() -> stripbound::Result<()> {
    run_example().map(|_| ())
}
