//! Command line front end: one subcommand per computation, each writing a
//! `report.json` (plus CSV tables where useful) into the output directory.
//!
//! Exit codes: 0 on success, 1 on configuration or runtime errors, 2 when a
//! checked inequality fails.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bound::{
    self, build_nu, compute_bound, dyadic_f, dyadic_f_direct, gamma_sweep, weak_l1, DyadicWindow,
    SCHEMA_VERSION,
};
use crate::config::RunConfig;
use crate::counter::{
    self, assemble_form, bunch_kaufman_inertia, count_negative, count_negative_1d, eigen_inertia,
    testfunction_energy, verify_projection_split, SplitMesh, SymBand,
};
use crate::cross_section::{first_two_eigenpairs, secular_value, CrossSection, StripGeometry};
use crate::error::{Error, Result};
use crate::measure::{ahlfors_fit, quadrature};
use crate::orlicz::{b_eval, norm_triple};

#[derive(Debug, Parser)]
#[command(
    name = "stripbound",
    version,
    about = "Bound-state counting on a strip with Robin or Dirichlet walls"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Run configuration (TOML).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    pub out: PathBuf,
    /// Overrides `controls.seed`.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Suppresses the summary on stdout.
    #[arg(long, global = true)]
    pub quiet: bool,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// λ₁, λ₂ and u₁ of the cross-section.
    CrossSection,
    /// Ahlfors dimension fit of the measure.
    Ahlfors,
    /// F_n, M_n and both right-hand sides.
    Bound,
    /// Negative eigenvalue count of the 2D form.
    Count {
        /// Also write the initial form matrix as `matrix.txt`.
        #[arg(long)]
        dump_matrix: bool,
    },
    /// Count for -d²/dx₁² - 2ν, checked against the explicit bound.
    Count1d,
    /// Counts for the couplings in `controls.gammas`.
    Sweep,
    /// Runs the invariant checks and prints a pass/fail table.
    Verify,
    /// Dumps the measure's quadrature rule as CSV.
    Quadrature,
    /// Norm triples of V over each cell.
    Norms,
}

/// What a subcommand produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    /// Every checked inequality held.
    pub passed: bool,
    pub summary: String,
}

impl Outcome {
    fn ok(summary: String) -> Self {
        Self {
            passed: true,
            summary,
        }
    }
}

/// Parses nothing; runs an already parsed command line and returns the exit code.
pub fn run(cli: &Cli) -> i32 {
    match execute(cli) {
        Ok(o) => {
            if !cli.quiet {
                println!("{}", o.summary);
            }
            if o.passed {
                0
            } else {
                2
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

/// Runs a command, writing artifacts to `cli.out`.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| Error::Config("--config PATH is required".into()))?;
    let mut cfg = RunConfig::load(path)?;
    if let Some(seed) = cli.seed {
        cfg.controls.seed = seed;
    }
    fs::create_dir_all(&cli.out)?;
    run_command(&cli.command, &cfg, &cli.out)
}

fn write_json<T: Serialize>(dir: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Contract(e.to_string()))?;
    fs::write(dir.join("report.json"), text + "\n")?;
    Ok(())
}

fn write_csv<R: Serialize>(path: &Path, rows: &[R]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| Error::Io(std::io::Error::other(e)))?;
    for r in rows {
        w.serialize(r)
            .map_err(|e| Error::Io(std::io::Error::other(e)))?;
    }
    w.flush()?;
    Ok(())
}

fn solve(cfg: &RunConfig) -> Result<CrossSection> {
    first_two_eigenpairs(&cfg.geometry, cfg.controls.tol)
}

#[derive(Serialize)]
struct Versioned<'a, T: Serialize> {
    schema_version: u32,
    command: &'a str,
    #[serde(flatten)]
    body: T,
}

fn versioned<'a, T: Serialize>(command: &'a str, body: T) -> Versioned<'a, T> {
    Versioned {
        schema_version: SCHEMA_VERSION,
        command,
        body,
    }
}

/// Runs one subcommand against a validated configuration.
pub fn run_command(command: &Command, cfg: &RunConfig, out: &Path) -> Result<Outcome> {
    match command {
        Command::CrossSection => {
            let cs = solve(cfg)?;
            #[derive(Serialize)]
            struct Body<'a> {
                geometry: &'a StripGeometry,
                lambda1: f64,
                lambda2: f64,
                cell_lambda2: f64,
                energy_residual: f64,
                u1_samples: &'a [(f64, f64)],
            }
            let body = Body {
                geometry: &cs.geometry,
                lambda1: cs.lambda1,
                lambda2: cs.lambda2,
                cell_lambda2: cs.cell_lambda2(),
                energy_residual: cs.energy_residual(),
                u1_samples: &cs.u1_samples,
            };
            write_json(out, &versioned("cross-section", body))?;
            Ok(Outcome::ok(format!(
                "lambda1 = {:.12}, lambda2 = {:.12}",
                cs.lambda1, cs.lambda2
            )))
        }
        Command::Ahlfors => {
            let c = &cfg.controls;
            let fit = ahlfors_fit(cfg.measure()?, c.ahlfors_samples, c.r_min, c.r_max, c.seed)?;
            write_json(out, &versioned("ahlfors", &fit))?;
            Ok(Outcome::ok(format!("d_hat = {:.4}", fit.d_hat)))
        }
        Command::Bound => {
            let cs = solve(cfg)?;
            let report = compute_bound(&cfg.potential, &cs, cfg.measure()?, &cfg.bound_controls())?;
            write_json(out, &versioned("bound", &report))?;
            write_windows_csv(&out.join("windows.csv"), &report)?;
            Ok(Outcome::ok(format!(
                "rhs_1d = {:.6}, rhs_total = {:.6}",
                report.rhs_1d, report.rhs_total
            )))
        }
        Command::Count { dump_matrix } => {
            let cs = solve(cfg)?;
            let mu = cfg.measure()?;
            let ctl = cfg.count_controls();
            let result = count_negative(&cs, mu, &cfg.potential, &ctl)?;
            if *dump_matrix {
                let form = assemble_form(
                    &cs,
                    mu,
                    &cfg.potential,
                    ctl.half_length,
                    ctl.h,
                    ctl.coupling,
                    ctl.resolution_factor * ctl.h,
                )?;
                fs::write(out.join("matrix.txt"), form.matrix_dump())?;
            }
            #[derive(Serialize)]
            struct Body<'a> {
                n_neg: usize,
                n_zero: usize,
                n_pos: usize,
                zero_tolerance: f64,
                stable: bool,
                method: &'a str,
                trace: &'a [counter::TraceEntry],
            }
            let body = Body {
                n_neg: result.n_neg,
                n_zero: result.n_zero,
                n_pos: result.n_pos,
                zero_tolerance: result.zero_tolerance,
                stable: result.stable,
                method: &result.method,
                trace: &result.refinement_trace,
            };
            write_json(out, &versioned("count", body))?;
            write_csv(&out.join("trace.csv"), &result.refinement_trace)?;
            Ok(Outcome::ok(format!(
                "n_neg = {} (stable: {})",
                result.n_neg, result.stable
            )))
        }
        Command::Count1d => {
            let cs = solve(cfg)?;
            let mu = cfg.measure()?;
            let c = &cfg.controls;
            let nu = build_nu(&cfg.potential, &cs, mu, c.half_length, c.resolution)?;
            let n1 = count_negative_1d(&nu, c.half_length, c.h)?;
            let report = compute_bound(&cfg.potential, &cs, mu, &cfg.bound_controls())?;
            let holds = (n1 as f64) <= report.rhs_1d;
            #[derive(Serialize)]
            struct Body {
                n_neg_1d: usize,
                rhs_1d: f64,
                sandwich_holds: bool,
                nu_mass: f64,
                nu_mass_deficit: f64,
            }
            let body = Body {
                n_neg_1d: n1,
                rhs_1d: report.rhs_1d,
                sandwich_holds: holds,
                nu_mass: nu.total_mass(),
                nu_mass_deficit: nu.mass_deficit,
            };
            write_json(out, &versioned("count1d", body))?;
            write_windows_csv(&out.join("windows.csv"), &report)?;
            Ok(Outcome {
                passed: holds,
                summary: format!(
                    "{} {n1} <= {:.6}",
                    if holds { "PASS" } else { "FAIL" },
                    report.rhs_1d
                ),
            })
        }
        Command::Sweep => {
            let cs = solve(cfg)?;
            let report = gamma_sweep(
                &cfg.potential,
                &cs,
                cfg.measure()?,
                &cfg.controls.gammas,
                &cfg.count_controls(),
                &cfg.bound_controls(),
            )?;
            write_json(out, &versioned("sweep", &report))?;
            #[derive(Serialize)]
            struct Row {
                gamma: f64,
                n_neg: usize,
                stable: bool,
                n_over_gamma: f64,
                rhs_1d: f64,
                witness_windows: usize,
            }
            let rows: Vec<Row> = report
                .points
                .iter()
                .map(|p| Row {
                    gamma: p.gamma,
                    n_neg: p.n_neg,
                    stable: p.stable,
                    n_over_gamma: p.n_over_gamma,
                    rhs_1d: p.rhs_1d,
                    witness_windows: p.witness_windows,
                })
                .collect();
            write_csv(&out.join("trace.csv"), &rows)?;
            Ok(Outcome::ok(format!(
                "slope = {:.4}, monotone = {}",
                report.slope, report.monotone
            )))
        }
        Command::Verify => {
            let checks = verify_battery(cfg)?;
            let passed = checks.iter().all(|c| c.passed);
            let mut table = String::new();
            for c in &checks {
                let _ = writeln!(
                    table,
                    "{} {:<28} {}",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.detail
                );
            }
            #[derive(Serialize)]
            struct Body<'a> {
                passed: bool,
                checks: &'a [Check],
            }
            write_json(
                out,
                &versioned(
                    "verify",
                    Body {
                        passed,
                        checks: &checks,
                    },
                ),
            )?;
            Ok(Outcome {
                passed,
                summary: table.trim_end().to_string(),
            })
        }
        Command::Quadrature => {
            let mu = cfg.measure()?;
            let rule = quadrature(mu, &mu.bounding_rect(), cfg.controls.resolution)?;
            #[derive(Serialize)]
            struct Row {
                x1: f64,
                x2: f64,
                weight: f64,
            }
            let rows: Vec<Row> = rule
                .iter()
                .map(|(p, w)| Row {
                    x1: p.x1,
                    x2: p.x2,
                    weight: w,
                })
                .collect();
            write_csv(&out.join("quadrature.csv"), &rows)?;
            #[derive(Serialize)]
            struct Body {
                nodes: usize,
                total_weight: f64,
            }
            write_json(
                out,
                &versioned(
                    "quadrature",
                    Body {
                        nodes: rule.len(),
                        total_weight: rule.total_weight(),
                    },
                ),
            )?;
            Ok(Outcome::ok(format!(
                "{} nodes, total weight {:.12}",
                rule.len(),
                rule.total_weight()
            )))
        }
        Command::Norms => {
            let mu = cfg.measure()?;
            let terms = bound::cell_terms(&cfg.potential, mu, cfg.controls.resolution)?;
            let mut cells = Vec::new();
            let mut text = String::new();
            for t in &terms {
                let rule = quadrature(
                    mu,
                    &crate::measure::Rect::cell(t.n, mu.width()),
                    cfg.controls.resolution,
                )?;
                let values: Vec<f64> = rule
                    .nodes
                    .iter()
                    .map(|p| cfg.potential.eval(p.x1, p.x2))
                    .collect();
                let triple = norm_triple(&values, &rule.weights)?;
                let _ = writeln!(
                    text,
                    "cell {:>4}: luxemburg {:.6} orlicz {:.6} average {:.6} mass {:.6}",
                    t.n, triple.luxemburg, triple.orlicz, triple.average, triple.mass
                );
                cells.push(NormCell {
                    n: t.n,
                    norms: triple,
                });
            }
            #[derive(Serialize)]
            struct NormCell {
                n: i64,
                #[serde(flatten)]
                norms: crate::orlicz::NormTriple,
            }
            #[derive(Serialize)]
            struct Body {
                cells: Vec<NormCell>,
            }
            write_json(out, &versioned("norms", Body { cells }))?;
            Ok(Outcome::ok(text.trim_end().to_string()))
        }
    }
}

fn write_windows_csv(path: &Path, report: &bound::BoundReport) -> Result<()> {
    #[derive(Serialize)]
    struct Row {
        n: i64,
        f_n: Option<f64>,
        m_n: Option<f64>,
    }
    let mut ns: Vec<i64> = report
        .f_terms
        .iter()
        .map(|t| t.n)
        .chain(report.m_terms.iter().map(|t| t.n))
        .collect();
    ns.sort_unstable();
    ns.dedup();
    let rows: Vec<Row> = ns
        .into_iter()
        .map(|n| Row {
            n,
            f_n: report.f_terms.iter().find(|t| t.n == n).map(|t| t.value),
            m_n: report.m_terms.iter().find(|t| t.n == n).map(|t| t.value),
        })
        .collect();
    write_csv(path, &rows)
}

/// One line of the `verify` table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &str, passed: bool, detail: String) -> Check {
    Check {
        name: name.to_string(),
        passed,
        detail,
    }
}

/// Invariant checks across all modules, seeded by `controls.seed`.
pub fn verify_battery(cfg: &RunConfig) -> Result<Vec<Check>> {
    use std::f64::consts::PI;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.controls.seed);
    let mut out = Vec::new();

    let closed = [
        (StripGeometry::neumann(1.0)?, 0.0, PI * PI),
        (StripGeometry::dirichlet(1.0)?, PI * PI, 4.0 * PI * PI),
        (StripGeometry::robin(1.0, 1.0, 1.0)?, -1.0, f64::NAN),
    ];
    let mut worst = 0.0f64;
    for (g, l1, l2) in closed {
        let cs = first_two_eigenpairs(&g, 1e-13)?;
        worst = worst.max((cs.lambda1 - l1).abs());
        if l2.is_finite() {
            worst = worst.max((cs.lambda2 - l2).abs());
        }
    }
    out.push(check(
        "cross-section closed forms",
        worst < 1e-9,
        format!("max error {worst:.2e}"),
    ));

    let cs = solve(cfg)?;
    let residual = cs.energy_residual().abs();
    let secular = if cs.geometry.is_dirichlet() {
        0.0
    } else {
        let g1 = secular_value(&cs.geometry, cs.lambda1)?;
        let g2 = secular_value(&cs.geometry, cs.lambda2)?;
        g1.abs().max(g2.abs())
    };
    out.push(check(
        "configured cross-section",
        residual < 1e-9 && secular < 1e-8,
        format!(
            "lambda1 {:.10}, lambda2 {:.10}, residual {residual:.1e}, secular {secular:.1e}",
            cs.lambda1, cs.lambda2
        ),
    ));

    let mut chain_slack = f64::MAX;
    for _ in 0..100 {
        let k = rng.gen_range(1..8);
        let values: Vec<f64> = (0..k)
            .map(|_| 10f64.powf(rng.gen_range(-2.0..2.0)))
            .collect();
        let weights: Vec<f64> = (0..k).map(|_| rng.gen_range(0.05..1.0)).collect();
        let t = norm_triple(&values, &weights)?;
        let bint: f64 = values
            .iter()
            .zip(&weights)
            .map(|(f, w)| w * b_eval(*f))
            .sum();
        let scale = t.orlicz.max(1.0);
        chain_slack = chain_slack
            .min((t.orlicz - t.luxemburg) / scale)
            .min((2.0 * t.luxemburg - t.orlicz) / scale)
            .min((bint.max(1.0) - t.luxemburg) / scale);
    }
    out.push(check(
        "orlicz norm chain",
        chain_slack >= -1e-9,
        format!("min slack {chain_slack:.2e}"),
    ));

    let mut mismatches = 0;
    for trial in 0..20 {
        let n = rng.gen_range(2..120);
        let mut m = DMatrix::<f64>::zeros(n, n);
        for i in 0..n {
            for j in 0..=i {
                let v = if trial % 4 == 0 && rng.gen_bool(0.5) {
                    0.0
                } else {
                    rng.gen_range(-1.0..1.0)
                };
                m[(i, j)] = v;
                m[(j, i)] = v;
            }
        }
        let tol = 1e-10 * m.amax();
        if bunch_kaufman_inertia(&m, tol) != eigen_inertia(&m, tol) {
            mismatches += 1;
        }
        let bw = rng.gen_range(1..6);
        let mut band = SymBand::zeros(n, bw);
        for i in 0..n {
            for j in i.saturating_sub(bw)..=i {
                band.add(i, j, rng.gen_range(-1.0..1.0));
            }
        }
        let tol = band.default_zero_tolerance();
        let (bi, _) = counter::band_matrix_inertia(&band, tol)?;
        if bi != eigen_inertia(&band.to_dense(), tol) {
            mismatches += 1;
        }
    }
    out.push(check(
        "inertia vs eigenvalues",
        mismatches == 0,
        format!("{mismatches} mismatches in 40 matrices"),
    ));

    let split = verify_projection_split(
        &cs,
        &SplitMesh {
            half_length: 4.0,
            h: 1.0 / 32.0,
        },
        cfg.controls.split_trials,
        cfg.controls.seed,
    )?;
    out.push(check(
        "projection split",
        split.passed,
        format!(
            "orth {:.1e}, energy {:.1e}, gap slack {:.3}",
            split.max_orthogonality, split.max_energy, split.min_gap_slack
        ),
    ));

    let mut tf_err = 0.0f64;
    for n in 1..=6 {
        let e = testfunction_energy(&cs, n)?;
        tf_err = tf_err.max((e / (5.0 * 2f64.powi(n as i32)) - 1.0).abs());
    }
    out.push(check(
        "test function energies",
        tf_err < 1e-10,
        format!("max relative error {tf_err:.1e}"),
    ));

    let mut wl_ratio = 0.0f64;
    for _ in 0..200 {
        let k = rng.gen_range(1..30);
        let a: Vec<f64> = (0..k)
            .map(|_| rng.gen_range(-1.0..1.0) * 10f64.powf(rng.gen_range(-1.0..1.0)))
            .collect();
        let b: Vec<f64> = (0..k)
            .map(|_| rng.gen_range(-1.0..1.0) * 10f64.powf(rng.gen_range(-1.0..1.0)))
            .collect();
        let sum: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        let rhs = 2.0 * (weak_l1(&a) + weak_l1(&b));
        if rhs > 0.0 {
            wl_ratio = wl_ratio.max(weak_l1(&sum) / rhs);
        }
    }
    out.push(check(
        "weak-l1 quasi-triangle",
        wl_ratio <= 1.0 + 1e-12,
        format!("max ratio {wl_ratio:.4}"),
    ));

    if let Some(mu) = &cfg.measure {
        let c = &cfg.controls;
        let report = compute_bound(&cfg.potential, &cs, mu, &cfg.bound_controls())?;
        let nu = build_nu(
            &cfg.potential,
            &cs,
            mu,
            2f64.powi(report.n_max as i32),
            c.resolution,
        )?;
        let mut rel = 0.0f64;
        for n in -report.n_max..=report.n_max {
            let w = DyadicWindow::new(n);
            let (a, b) = (
                dyadic_f(&nu, &w),
                dyadic_f_direct(&cfg.potential, &cs, mu, &w, c.resolution)?,
            );
            if a.abs().max(b.abs()) > 0.0 {
                rel = rel.max((a - b).abs() / a.abs().max(b.abs()));
            }
        }
        out.push(check(
            "F_n via nu vs direct",
            rel < 1e-8,
            format!("max relative difference {rel:.1e}"),
        ));
        let nu_l = build_nu(&cfg.potential, &cs, mu, c.half_length, c.resolution)?;
        let n1 = count_negative_1d(&nu_l, c.half_length, c.h)?;
        out.push(check(
            "1D sandwich",
            (n1 as f64) <= report.rhs_1d,
            format!("{n1} <= {:.4}", report.rhs_1d),
        ));
    }
    Ok(out)
}
