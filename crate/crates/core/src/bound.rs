//! The quantities entering the counting bound.
//!
//! `ν` is the pushforward of `V|u₁|² dμ` to the `x₁` axis. The dyadic windows
//! `I_n` give `F_n = ∫_{I_n} |x₁| dν` (no weight for `n = 0`), the closed unit
//! cells `S̄_n` give `M_n = ‖V‖_{ℬ, S̄_n, μ}`, and the explicit one-dimensional
//! part of the bound is `1 + 7.61 Σ_{F_n > 0.046} √F_n`.
//!
//! Windows are closed, so a node sitting on `x₁ = ±2^k` counts in both
//! adjacent windows, exactly like nodes on cell interfaces.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::counter::{count_negative, CountControls, InertiaResult};
use crate::cross_section::CrossSection;
use crate::error::{Error, Result};
use crate::measure::{quadrature, Measure, QuadratureRule, Rect};
use crate::orlicz::{average_norm, luxemburg_norm, orlicz_norm, NormKind, NormRequest};
use crate::potential::Potential;

/// Version tag carried by every serialized report.
pub const SCHEMA_VERSION: u32 = 1;

/// Threshold on `F_n` in the explicit one-dimensional bound.
pub const C_F_THRESHOLD: f64 = 0.046;
/// Constant in front of `Σ√F_n` in the explicit one-dimensional bound.
pub const C_F: f64 = 7.61;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DyadicWindow {
    pub n: i64,
    pub lo: f64,
    pub hi: f64,
}

impl DyadicWindow {
    /// `[2^{n−1}, 2ⁿ]` for `n > 0`, `[−1, 1]` for `n = 0` and the mirror image
    /// for `n < 0`.
    pub fn new(n: i64) -> Self {
        let k = n.unsigned_abs() as i32;
        let (lo, hi) = if n == 0 {
            (-1.0, 1.0)
        } else {
            (2f64.powi(k - 1), 2f64.powi(k))
        };
        if n < 0 {
            Self {
                n,
                lo: -hi,
                hi: -lo,
            }
        } else {
            Self { n, lo, hi }
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.lo && x <= self.hi
    }

    /// Weight of a point of `ν` in `F_n`.
    fn weight(&self, x: f64) -> f64 {
        if self.n == 0 {
            1.0
        } else {
            x.abs()
        }
    }
}

/// A measure on the `x₁` axis as weighted nodes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NuMeasure {
    /// `(x₁, weight)` pairs with nonnegative weights.
    pub nodes: Vec<(f64, f64)>,
    /// Mass of nodes dropped for lying outside `[-L, L]`.
    pub mass_deficit: f64,
    pub half_length: f64,
}

impl NuMeasure {
    pub fn total_mass(&self) -> f64 {
        self.nodes.iter().map(|n| n.1).sum()
    }

    /// `ν([lo, hi])`.
    pub fn mass_of(&self, lo: f64, hi: f64) -> f64 {
        self.nodes
            .iter()
            .filter(|n| n.0 >= lo && n.0 <= hi)
            .map(|n| n.1)
            .sum()
    }
}

/// Rule for all of `μ` (its bounding rectangle).
fn full_rule(mu: &Measure, resolution: f64) -> Result<QuadratureRule> {
    quadrature(mu, &mu.bounding_rect(), resolution)
}

/// Pushes `V|u₁|² dμ` forward to `x₁`, keeping nodes with `|x₁| ≤ L`.
pub fn build_nu(
    v: &Potential,
    cs: &CrossSection,
    mu: &Measure,
    half_length: f64,
    resolution: f64,
) -> Result<NuMeasure> {
    if !(half_length > 0.0) {
        return Err(Error::Contract(format!(
            "half-length must be positive, got {half_length}"
        )));
    }
    let rule = full_rule(mu, resolution)?;
    let mut nodes = Vec::with_capacity(rule.len());
    let mut mass_deficit = 0.0;
    for (p, w) in rule.iter() {
        let weight = v.eval(p.x1, p.x2) * cs.u1(p.x2).powi(2) * w;
        if weight == 0.0 {
            continue;
        }
        if p.x1.abs() <= half_length {
            nodes.push((p.x1, weight));
        } else {
            mass_deficit += weight;
        }
    }
    Ok(NuMeasure {
        nodes,
        mass_deficit,
        half_length,
    })
}

/// `F_n` from `ν`.
pub fn dyadic_f(nu: &NuMeasure, window: &DyadicWindow) -> f64 {
    nu.nodes
        .iter()
        .filter(|(x, _)| window.contains(*x))
        .map(|(x, w)| window.weight(*x) * w)
        .sum()
}

/// `F_n` by direct quadrature of `∫_{I_n}∫₀ᵃ |x₁| V |u₁|² dμ`.
pub fn dyadic_f_direct(
    v: &Potential,
    cs: &CrossSection,
    mu: &Measure,
    window: &DyadicWindow,
    resolution: f64,
) -> Result<f64> {
    let rule = quadrature(
        mu,
        &Rect::new((window.lo, window.hi), (0.0, cs.width())),
        resolution,
    )?;
    Ok(rule.integrate(|p| window.weight(p.x1) * v.eval(p.x1, p.x2) * cs.u1(p.x2).powi(2)))
}

/// Norms of `V` over one closed cell against `μ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CellNorms {
    pub n: i64,
    /// `M_n`, the Orlicz norm.
    pub orlicz: f64,
    /// Average norm with dual constraint `∫𝒜 ≤ μ(S̄_n)`; zero on null cells.
    pub average: f64,
    pub luxemburg: f64,
    /// `μ(S̄_n)` as seen by the quadrature rule.
    pub mass: f64,
}

fn cell_norms_from(n: i64, values: &[f64], weights: &[f64]) -> Result<CellNorms> {
    let req = NormRequest::new(values, weights, NormKind::Orlicz)?;
    let mass = req.mass();
    let average = if mass > 0.0 {
        average_norm(&req, mass)?
    } else {
        0.0
    };
    Ok(CellNorms {
        n,
        orlicz: orlicz_norm(&req),
        average,
        luxemburg: luxemburg_norm(&req),
        mass,
    })
}

/// All norms of `V` over `S̄_n`.
pub fn cell_norms(v: &Potential, mu: &Measure, n: i64, resolution: f64) -> Result<CellNorms> {
    let rule = quadrature(mu, &Rect::cell(n, mu.width()), resolution)?;
    let values: Vec<f64> = rule.nodes.iter().map(|p| v.eval(p.x1, p.x2)).collect();
    cell_norms_from(n, &values, &rule.weights)
}

/// `M_n = ‖V‖_{ℬ, S̄_n, μ}`.
pub fn cell_m(v: &Potential, mu: &Measure, n: i64, resolution: f64) -> Result<f64> {
    Ok(cell_norms(v, mu, n, resolution)?.orlicz)
}

/// `sup_s s·#{n : |a_n| > s}`, which is `max_k k·|a|_(k)` over the sorted
/// absolute values.
pub fn weak_l1(seq: &[f64]) -> f64 {
    let mut abs: Vec<f64> = seq.iter().map(|a| a.abs()).collect();
    abs.sort_by(|a, b| b.total_cmp(a));
    abs.iter()
        .enumerate()
        .fold(0.0, |m, (k, a)| m.max((k + 1) as f64 * a))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundConstants {
    pub c_f: f64,
    pub big_c_f: f64,
    pub c_m: f64,
    pub big_c_m: f64,
}

impl Default for BoundConstants {
    fn default() -> Self {
        Self {
            c_f: C_F_THRESHOLD,
            big_c_f: C_F,
            c_m: 0.046,
            big_c_m: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FTerm {
    pub n: i64,
    pub lo: f64,
    pub hi: f64,
    pub value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MTerm {
    pub n: i64,
    /// `M_n` (Orlicz norm).
    pub value: f64,
    pub average: f64,
    pub mass: f64,
}

impl From<CellNorms> for MTerm {
    fn from(c: CellNorms) -> Self {
        Self {
            n: c.n,
            value: c.orlicz,
            average: c.average,
            mass: c.mass,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub schema_version: u32,
    /// Windows cover `n ∈ [-n_max, n_max]`.
    pub n_max: i64,
    pub constants: BoundConstants,
    pub f_terms: Vec<FTerm>,
    pub m_terms: Vec<MTerm>,
    /// `1 + C_F Σ_{F_n > c_F} √F_n`.
    pub rhs_1d: f64,
    /// `rhs_1d + C_M Σ_{M_n > c_M} M_n`.
    pub rhs_total: f64,
    /// Weak-ℓ₁ quasinorm of `(F_n)`.
    pub weak_l1: f64,
    /// Mass of `ν` outside `[-2^{n_max}, 2^{n_max}]`.
    pub nu_mass_deficit: f64,
}

/// Combines the terms into both right-hand sides.
pub fn assemble_bound(
    f_terms: Vec<FTerm>,
    m_terms: Vec<MTerm>,
    constants: BoundConstants,
) -> BoundReport {
    let f_sum: f64 = f_terms
        .iter()
        .filter(|t| t.value > constants.c_f)
        .map(|t| t.value.sqrt())
        .sum();
    let m_sum: f64 = m_terms
        .iter()
        .filter(|t| t.value > constants.c_m)
        .map(|t| t.value)
        .sum();
    let rhs_1d = 1.0 + constants.big_c_f * f_sum;
    let f_values: Vec<f64> = f_terms.iter().map(|t| t.value).collect();
    BoundReport {
        schema_version: SCHEMA_VERSION,
        n_max: f_terms.iter().map(|t| t.n.abs()).max().unwrap_or(0),
        constants,
        weak_l1: weak_l1(&f_values),
        f_terms,
        m_terms,
        rhs_1d,
        rhs_total: rhs_1d + constants.big_c_m * m_sum,
        nu_mass_deficit: 0.0,
    }
}

/// Smallest `N ≥ 1` with `[-2^N, 2^N]` covering the `x₁` extent of `μ`.
pub fn auto_n_max(mu: &Measure) -> i64 {
    let r = mu.bounding_rect();
    let reach = r.x1.0.abs().max(r.x1.1.abs()).max(1.0);
    (reach.log2().ceil() as i64).max(1)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundControls {
    /// Window range; `None` picks [`auto_n_max`].
    pub n_max: Option<i64>,
    /// `μ` quadrature spacing.
    pub resolution: f64,
    pub constants: BoundConstants,
}

impl Default for BoundControls {
    fn default() -> Self {
        Self {
            n_max: None,
            resolution: 1.0 / 64.0,
            constants: BoundConstants::default(),
        }
    }
}

/// `F_n` for `|n| ≤ n_max` and `M_n` for every cell meeting `supp μ`.
pub fn compute_bound(
    v: &Potential,
    cs: &CrossSection,
    mu: &Measure,
    controls: &BoundControls,
) -> Result<BoundReport> {
    let n_max = controls.n_max.unwrap_or_else(|| auto_n_max(mu));
    if !(0..=60).contains(&n_max) {
        return Err(Error::Contract(format!(
            "n_max must lie in [0, 60], got {n_max}"
        )));
    }
    let reach = 2f64.powi(n_max as i32);
    let nu = build_nu(v, cs, mu, reach, controls.resolution)?;
    let f_terms: Vec<FTerm> = (-n_max..=n_max)
        .map(|n| {
            let w = DyadicWindow::new(n);
            FTerm {
                n,
                lo: w.lo,
                hi: w.hi,
                value: dyadic_f(&nu, &w),
            }
        })
        .collect();
    let m_terms = cell_terms(v, mu, controls.resolution)?;
    let mut report = assemble_bound(f_terms, m_terms, controls.constants);
    report.nu_mass_deficit = nu.mass_deficit;
    Ok(report)
}

/// `M_n` for every cell holding quadrature nodes, from one rule for `μ`
/// binned into closed cells.
pub fn cell_terms(v: &Potential, mu: &Measure, resolution: f64) -> Result<Vec<MTerm>> {
    let rule = full_rule(mu, resolution)?;
    let mut bins: std::collections::BTreeMap<i64, (Vec<f64>, Vec<f64>)> = Default::default();
    for (p, w) in rule.iter() {
        let f = p.x1.floor();
        let value = v.eval(p.x1, p.x2);
        let mut put = |n: i64| {
            let e = bins.entry(n).or_default();
            e.0.push(value);
            e.1.push(w);
        };
        put(f as i64);
        if f == p.x1 {
            put(f as i64 - 1);
        }
    }
    let bins: Vec<_> = bins.into_iter().collect();
    bins.par_iter()
        .map(|(n, (values, weights))| cell_norms_from(*n, values, weights).map(MTerm::from))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RefinementCell {
    pub n: i64,
    /// `∫_{J_n} ‖V(x₁, ·)‖_{ℬ, (0, a)} dx₁`.
    pub d_n: f64,
    /// `‖V‖_{ℬ, S_n}` against Lebesgue measure.
    pub m_n: f64,
    /// `D_n ≤ 4 M_n`.
    pub chain_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LebesgueRefinement {
    pub cells: Vec<RefinementCell>,
    /// `∫ ‖V − G(x₁)‖_{ℬ, (0, a)} dx₁` over the requested cells, with
    /// `G(x₁) = ∫₀ᵃ V |u₁|² dx₂`.
    pub v_star_norm: f64,
    /// `(x₁, G(x₁))` at the slice midpoints.
    pub g_samples: Vec<(f64, f64)>,
}

/// Slice norms for the Lebesgue case on cells `first..=last`.
///
/// Every cell uses the same `x₁ × x₂` midpoint lattice of spacing
/// `resolution`, so per-slice and per-cell norms see one discrete measure.
pub fn lebesgue_refinement(
    v: &Potential,
    cs: &CrossSection,
    mu: &Measure,
    first: i64,
    last: i64,
    resolution: f64,
) -> Result<LebesgueRefinement> {
    if !mu.is_pure_lebesgue() {
        return Err(Error::Unsupported(
            "the Lebesgue refinement needs a pure Lebesgue measure".into(),
        ));
    }
    if first > last || !(resolution > 0.0) {
        return Err(Error::Contract(format!(
            "bad cell range {first}..={last} or resolution {resolution}"
        )));
    }
    let a = cs.width();
    let k1 = (1.0 / resolution).ceil() as usize;
    let k2 = (a / resolution).ceil() as usize;
    let (h1, h2) = (1.0 / k1 as f64, a / k2 as f64);
    let x2: Vec<f64> = (0..k2).map(|j| (j as f64 + 0.5) * h2).collect();
    let u2: Vec<f64> = x2.iter().map(|&x| cs.u1(x).powi(2)).collect();
    let slice_w = vec![h2; k2];
    let mut cells = Vec::new();
    let mut v_star_norm = 0.0;
    let mut g_samples = Vec::new();
    for n in first..=last {
        let mut d_n = 0.0;
        let mut cell_values = Vec::with_capacity(k1 * k2);
        for i in 0..k1 {
            let x1 = n as f64 + (i as f64 + 0.5) * h1;
            let vals: Vec<f64> = x2.iter().map(|&y| v.eval(x1, y)).collect();
            let g: f64 = vals.iter().zip(&u2).map(|(f, u)| f * u * h2).sum();
            let star: Vec<f64> = vals.iter().map(|f| f - g).collect();
            d_n += h1 * orlicz_norm(&NormRequest::new(&vals, &slice_w, NormKind::Orlicz)?);
            v_star_norm += h1 * orlicz_norm(&NormRequest::new(&star, &slice_w, NormKind::Orlicz)?);
            g_samples.push((x1, g));
            cell_values.extend(vals);
        }
        let m_n = orlicz_norm(&NormRequest::new(
            &cell_values,
            &vec![h1 * h2; k1 * k2],
            NormKind::Orlicz,
        )?);
        cells.push(RefinementCell {
            n,
            d_n,
            m_n,
            chain_holds: d_n <= 4.0 * m_n * (1.0 + 1e-9) + 1e-300,
        });
    }
    Ok(LebesgueRefinement {
        cells,
        v_star_norm,
        g_samples,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub gamma: f64,
    pub n_neg: usize,
    pub stable: bool,
    pub n_over_gamma: f64,
    /// `rhs_1d` for the potential `γV`.
    pub rhs_1d: f64,
    /// `#{n : γF_n > 5}`; a third of it bounds `n_neg` from below.
    pub witness_windows: usize,
    pub trace: InertiaResult,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub schema_version: u32,
    pub points: Vec<SweepPoint>,
    /// Least-squares slope of `n_neg` against `γ`.
    pub slope: f64,
    /// Weak-ℓ₁ quasinorm of the unscaled `(F_n)`.
    pub weak_l1: f64,
    /// `n_neg` never decreases along the sweep.
    pub monotone: bool,
}

/// Runs the 2D counter for each coupling `γ` (concurrently).
pub fn gamma_sweep(
    v: &Potential,
    cs: &CrossSection,
    mu: &Measure,
    gammas: &[f64],
    count: &CountControls,
    bound: &BoundControls,
) -> Result<SweepReport> {
    if gammas.is_empty()
        || gammas.iter().any(|g| !(*g > 0.0))
        || gammas.windows(2).any(|w| w[1] <= w[0])
    {
        return Err(Error::Contract(
            "gammas must be positive and strictly increasing".into(),
        ));
    }
    let base = compute_bound(v, cs, mu, bound)?;
    let counts: Vec<InertiaResult> = gammas
        .par_iter()
        .map(|&g| {
            count_negative(
                cs,
                mu,
                v,
                &CountControls {
                    coupling: g * count.coupling,
                    ..*count
                },
            )
        })
        .collect::<Result<_>>()?;
    let points: Vec<SweepPoint> = gammas
        .iter()
        .zip(counts)
        .map(|(&gamma, trace)| {
            let scaled: Vec<FTerm> = base
                .f_terms
                .iter()
                .map(|t| FTerm {
                    value: gamma * t.value,
                    ..*t
                })
                .collect();
            let witness_windows = scaled.iter().filter(|t| t.value > 5.0).count();
            let rhs_1d = assemble_bound(scaled, Vec::new(), bound.constants).rhs_1d;
            SweepPoint {
                gamma,
                n_neg: trace.n_neg,
                stable: trace.stable,
                n_over_gamma: trace.n_neg as f64 / gamma,
                rhs_1d,
                witness_windows,
                trace,
            }
        })
        .collect();
    let k = points.len() as f64;
    let (mg, mn) = points.iter().fold((0.0, 0.0), |acc, p| {
        (acc.0 + p.gamma / k, acc.1 + p.n_neg as f64 / k)
    });
    let (sxy, sxx) = points.iter().fold((0.0, 0.0), |acc, p| {
        (
            acc.0 + (p.gamma - mg) * (p.n_neg as f64 - mn),
            acc.1 + (p.gamma - mg).powi(2),
        )
    });
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let monotone = points.windows(2).all(|w| w[1].n_neg >= w[0].n_neg);
    Ok(SweepReport {
        schema_version: SCHEMA_VERSION,
        points,
        slope,
        weak_l1: base.weak_l1,
        monotone,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cross_section::{first_two_eigenpairs, StripGeometry, DEFAULT_TOL};
    use crate::measure::{MeasureComponent, Point};

    fn dirichlet() -> CrossSection {
        first_two_eigenpairs(&StripGeometry::dirichlet(1.0).unwrap(), DEFAULT_TOL).unwrap()
    }

    #[test]
    fn windows() {
        assert_eq!(
            (DyadicWindow::new(1).lo, DyadicWindow::new(1).hi),
            (1.0, 2.0)
        );
        assert_eq!(
            (DyadicWindow::new(0).lo, DyadicWindow::new(0).hi),
            (-1.0, 1.0)
        );
        assert_eq!(
            (DyadicWindow::new(-3).lo, DyadicWindow::new(-3).hi),
            (-8.0, -4.0)
        );
    }

    #[test]
    fn nu_for_lebesgue_is_lebesgue() {
        let cs = dirichlet();
        let mu = Measure::lebesgue(1.0, -8.0, 8.0).unwrap();
        let nu = build_nu(&Potential::constant(1.0), &cs, &mu, 8.0, 1.0 / 64.0).unwrap();
        assert!((nu.mass_of(-2.0, 3.0) - 5.0).abs() < 1e-6);
        assert!((dyadic_f(&nu, &DyadicWindow::new(1)) - 1.5).abs() < 1e-6);
        assert!((dyadic_f(&nu, &DyadicWindow::new(0)) - 2.0).abs() < 1e-6);
        assert!((dyadic_f(&nu, &DyadicWindow::new(-2)) - 6.0).abs() < 1e-6);
    }

    #[test]
    fn nu_for_lines() {
        let cs = dirichlet();
        let edge = Measure::single(
            1.0,
            MeasureComponent::segment(Point::new(-4.0, 0.0), Point::new(4.0, 0.0)),
        )
        .unwrap();
        let nu = build_nu(&Potential::constant(1.0), &cs, &edge, 8.0, 0.01).unwrap();
        assert!(nu.total_mass() < 1e-20);
        let mid = Measure::single(
            1.0,
            MeasureComponent::segment(Point::new(-4.0, 0.5), Point::new(4.0, 0.5)),
        )
        .unwrap();
        let nu = build_nu(&Potential::constant(1.0), &cs, &mid, 8.0, 0.01).unwrap();
        assert!((nu.mass_of(-1.0, 1.0) - 4.0).abs() < 1e-9);
    }

    #[test]
    fn deficit_is_reported() {
        let cs = dirichlet();
        let mu = Measure::lebesgue(1.0, -8.0, 8.0).unwrap();
        let nu = build_nu(&Potential::constant(1.0), &cs, &mu, 4.0, 1.0 / 16.0).unwrap();
        assert!((nu.mass_deficit - 8.0).abs() < 1e-6);
    }

    #[test]
    fn weak_l1_examples() {
        assert_eq!(weak_l1(&[3.0, 1.0, 2.0]), 4.0);
        assert_eq!(weak_l1(&[2.5]), 2.5);
        assert_eq!(weak_l1(&[]), 0.0);
        let harmonic: Vec<f64> = (1..=50).map(|k| 1.0 / k as f64).collect();
        assert!((weak_l1(&harmonic) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn assembled_sums() {
        let f = |n: i64, value: f64| FTerm {
            n,
            lo: 0.0,
            hi: 0.0,
            value,
        };
        let r = assemble_bound(
            vec![f(1, 1.5), f(2, 0.01)],
            vec![],
            BoundConstants::default(),
        );
        assert!((r.rhs_1d - (1.0 + 7.61 * 1.5f64.sqrt())).abs() < 1e-12);
        assert!((r.rhs_1d - 10.32).abs() < 5e-3);
        let empty = assemble_bound(
            vec![f(0, 0.0)],
            vec![MTerm {
                n: 0,
                value: 0.01,
                average: 0.0,
                mass: 1.0,
            }],
            BoundConstants::default(),
        );
        assert_eq!(empty.rhs_total, 1.0);
    }

    #[test]
    fn null_cell_has_zero_norm() {
        let mu = Measure::lebesgue(1.0, 0.0, 2.0).unwrap();
        assert_eq!(cell_m(&Potential::constant(3.0), &mu, 5, 0.1).unwrap(), 0.0);
    }

    #[test]
    fn refinement_requires_lebesgue() {
        let cs = dirichlet();
        let seg = Measure::single(
            1.0,
            MeasureComponent::segment(Point::new(0.0, 0.5), Point::new(1.0, 0.5)),
        )
        .unwrap();
        assert!(matches!(
            lebesgue_refinement(&Potential::constant(1.0), &cs, &seg, 0, 0, 0.1),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn refinement_for_transverse_potential() {
        let cs = dirichlet();
        let mu = Measure::lebesgue(1.0, -2.0, 2.0).unwrap();
        let v = Potential::parse("3 + sin(pi * x2)").unwrap();
        let r = lebesgue_refinement(&v, &cs, &mu, -2, 1, 0.05).unwrap();
        let g0 = r.g_samples[0].1;
        assert!(r.g_samples.iter().all(|s| (s.1 - g0).abs() < 1e-12));
        assert!(r.cells.iter().all(|c| c.chain_holds));
        let zero = lebesgue_refinement(&Potential::zero(), &cs, &mu, 0, 0, 0.1).unwrap();
        assert_eq!((zero.cells[0].d_n, zero.v_star_norm), (0.0, 0.0));
    }
}
