use std::fs;
use std::path::Path;

use clap::Parser;
use stripbound::cli::{execute, Cli};

fn run(dir: &Path, config: &str, args: &[&str]) -> (i32, String) {
    let cfg = dir.join("run.toml");
    fs::write(&cfg, config).unwrap();
    let out = dir.join("out");
    let mut argv = vec!["stripbound".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    argv.extend([
        "--config".into(),
        cfg.display().to_string(),
        "--out".into(),
        out.display().to_string(),
        "--quiet".into(),
    ]);
    let cli = Cli::try_parse_from(argv).unwrap();
    let code = stripbound::cli::run(&cli);
    let report = fs::read_to_string(out.join("report.json")).unwrap_or_default();
    let _ = execute;
    (code, report)
}

const NEUMANN: &str = r#"
[geometry]
a = 1.0
bc = "robin"
alpha = 0.0
beta = 0.0
"#;

const WELL: &str = r#"
[geometry]
a = 1.0
bc = "dirichlet"

[potential]
expr = "20 * ind(x1, -1, 1)"

[[measure]]
type = "lebesgue"
x1 = [-2.0, 2.0]

[[measure]]
type = "segment"
p0 = [-3.0, 0.5]
p1 = [3.0, 0.5]
weight = 0.5

[controls]
L = 8.0
h = 0.125
max_refinements = 2
seed = 3
split_trials = 5
"#;

#[test]
fn cross_section_neumann() {
    let dir = tempfile::tempdir().unwrap();
    let (code, report) = run(dir.path(), NEUMANN, &["cross-section"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&report).unwrap();
    assert!(v["lambda1"].as_f64().unwrap().abs() < 1e-9);
    assert!((v["lambda2"].as_f64().unwrap() - std::f64::consts::PI.powi(2)).abs() < 1e-9);
    assert_eq!(v["schema_version"], 1);
}

#[test]
fn bound_with_zero_potential() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = WELL.replace("20 * ind(x1, -1, 1)", "0");
    let (code, report) = run(dir.path(), &cfg, &["bound"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&report).unwrap();
    assert_eq!(v["rhs_total"].as_f64().unwrap(), 1.0);
    for key in [
        "f_terms",
        "m_terms",
        "rhs_1d",
        "rhs_total",
        "weak_l1",
        "schema_version",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    let csv = fs::read_to_string(dir.path().join("out/windows.csv")).unwrap();
    assert!(csv.starts_with("n,f_n,m_n"));
}

#[test]
fn reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for cmd in ["bound", "count", "ahlfors", "count1d"] {
        let (c1, r1) = run(dir.path(), WELL, &[cmd]);
        let (c2, r2) = run(dir.path(), WELL, &[cmd]);
        assert_eq!((c1, c2), (0, 0), "{cmd}");
        assert!(!r1.is_empty());
        assert_eq!(r1, r2, "{cmd}");
    }
}

#[test]
fn count_writes_trace_and_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let (code, report) = run(dir.path(), WELL, &["count", "--dump-matrix"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&report).unwrap();
    assert!(v["n_neg"].as_u64().unwrap() >= 1);
    assert!(!v["trace"].as_array().unwrap().is_empty());
    let trace = fs::read_to_string(dir.path().join("out/trace.csv")).unwrap();
    assert!(trace.starts_with("h,half_length,dim,n_neg,n_zero"));
    let matrix = fs::read_to_string(dir.path().join("out/matrix.txt")).unwrap();
    let first: Vec<&str> = matrix.lines().next().unwrap().split_whitespace().collect();
    assert_eq!(first.len(), 3);
}

#[test]
fn verify_passes() {
    let dir = tempfile::tempdir().unwrap();
    let (code, report) = run(dir.path(), WELL, &["verify"]);
    assert_eq!(code, 0, "{report}");
    let v: serde_json::Value = serde_json::from_str(&report).unwrap();
    assert_eq!(v["passed"], true);
}

#[test]
fn config_errors_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _) = run(
        dir.path(),
        &WELL.replace("seed = 3", "seed = 3\nbogus = 1"),
        &["bound"],
    );
    assert_eq!(code, 1);
    let (code, _) = run(
        dir.path(),
        &WELL.replace("20 * ind(x1, -1, 1)", "x1 - 5"),
        &["bound"],
    );
    assert_eq!(code, 1);
    let (code, _) = run(dir.path(), NEUMANN, &["bound"]);
    assert_eq!(code, 1, "bound without a measure is a configuration error");
}

#[test]
fn quadrature_and_norms_and_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _) = run(dir.path(), WELL, &["quadrature"]);
    assert_eq!(code, 0);
    let q = fs::read_to_string(dir.path().join("out/quadrature.csv")).unwrap();
    assert!(q.starts_with("x1,x2,weight"));
    let (code, report) = run(dir.path(), WELL, &["norms"]);
    assert_eq!(code, 0);
    assert!(report.contains("luxemburg"));
    let cfg = WELL.replace(
        "split_trials = 5",
        "split_trials = 5\ngammas = [0.5, 1.0, 2.0]",
    );
    let (code, report) = run(dir.path(), &cfg, &["sweep"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&report).unwrap();
    assert_eq!(v["monotone"], true);
}
