//! Numerical checks of the projection `Pu = (∫u u₁ dx₂) u₁` onto the ground
//! mode: `⟨Pu, u − Pu⟩ = 0`, the energy splitting `ℰ[u] = ℰ[v] + ℰ[ṽ]` and the
//! spectral gap inequality for `ṽ` on a unit cell.
//!
//! Integrals use composite Boole quadrature on a nodal grid. `P` is
//! normalized by the discrete `‖u₁‖²`, which makes orthogonality exact up to
//! rounding; the energy residual then decays like the quadrature error, `O(h⁶)`.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cross_section::{BoundaryCondition, CrossSection, GroundState};
use crate::error::{Error, Result};
use crate::quadrature::boole_weights;

/// A smooth function on the strip with its gradient.
pub trait TrialFunction {
    fn value(&self, x1: f64, x2: f64) -> f64;
    fn grad(&self, x1: f64, x2: f64) -> (f64, f64);
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitMesh {
    pub half_length: f64,
    pub h: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitSample {
    /// `|⟨v, ṽ⟩| / ‖u‖²`.
    pub orthogonality: f64,
    /// `|ℰ[u] − ℰ[v] − ℰ[ṽ]| / (|ℰ[u]| + ‖u‖²)`.
    pub energy: f64,
    /// `(ℰ_{S₀}[ṽ] − λ₂ᶜ‖ṽ‖²_{S₀}) / ‖ṽ‖²_{S₀}` on the cell `[0, 1] × [0, a]`;
    /// `None` when `ṽ` vanishes there.
    pub gap_slack: Option<f64>,
    pub u_norm_sq: f64,
    pub v_norm_sq: f64,
    pub tilde_norm_sq: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitReport {
    pub h: f64,
    pub half_length: f64,
    pub trials: usize,
    pub tolerance: f64,
    pub max_orthogonality: f64,
    pub max_energy: f64,
    pub min_gap_slack: f64,
    pub passed: bool,
}

fn intervals(len: f64, h: f64, what: &str) -> Result<usize> {
    let q = len / h;
    let r = q.round();
    if (q - r).abs() > 1e-8 * q.max(1.0) || r < 2.0 {
        return Err(Error::InvalidMesh(format!(
            "h={h} does not divide {what}={len}"
        )));
    }
    Ok(r as usize)
}

/// Residuals of the projection identities for a single trial function.
pub fn split_residuals(
    cs: &CrossSection,
    mesh: &SplitMesh,
    u: &dyn TrialFunction,
) -> Result<SplitSample> {
    let (l, h, a) = (mesh.half_length, mesh.h, cs.width());
    if l < 1.0 {
        return Err(Error::InvalidMesh(
            "half-length must be at least 1 to hold the cell [0, 1]".into(),
        ));
    }
    let n1 = intervals(2.0 * l, h, "2L")?;
    let n2 = intervals(a, h, "a")?;
    let w1 = boole_weights(n1, h);
    let w2 = boole_weights(n2, h);
    let x2: Vec<f64> = (0..=n2).map(|j| j as f64 * h).collect();
    let p: Vec<f64> = x2.iter().map(|&x| cs.u1(x)).collect();
    let dp: Vec<f64> = x2.iter().map(|&x| cs.u1_prime(x)).collect();
    let p_norm: f64 = (0..=n2).map(|j| w2[j] * p[j] * p[j]).sum();
    let (alpha, beta) = match cs.geometry.bc {
        BoundaryCondition::Robin { alpha, beta } => (alpha, beta),
        BoundaryCondition::Dirichlet => (0.0, 0.0),
    };

    // per-column energies of u, v, ṽ and their masses
    let mut col_u = vec![(0.0, 0.0); n1 + 1];
    let mut col_v = vec![(0.0, 0.0); n1 + 1];
    let mut col_t = vec![(0.0, 0.0); n1 + 1];
    let mut inner_vt = vec![0.0; n1 + 1];
    let mut vals = vec![0.0; n2 + 1];
    let mut d1 = vec![0.0; n2 + 1];
    let mut d2 = vec![0.0; n2 + 1];
    for i in 0..=n1 {
        let x1 = -l + i as f64 * h;
        for j in 0..=n2 {
            vals[j] = u.value(x1, x2[j]);
            let g = u.grad(x1, x2[j]);
            d1[j] = g.0;
            d2[j] = g.1;
        }
        let w: f64 = (0..=n2).map(|j| w2[j] * vals[j] * p[j]).sum::<f64>() / p_norm;
        let dw: f64 = (0..=n2).map(|j| w2[j] * d1[j] * p[j]).sum::<f64>() / p_norm;
        let bdry = |f0: f64, fa: f64| beta * fa * fa - alpha * f0 * f0;
        let (mut eu, mut ev, mut et, mut mu_, mut mv, mut mt, mut ivt) =
            (0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0);
        for j in 0..=n2 {
            let (v, v1, v2) = (w * p[j], dw * p[j], w * dp[j]);
            let (t, t1, t2) = (vals[j] - v, d1[j] - v1, d2[j] - v2);
            eu += w2[j] * (d1[j] * d1[j] + d2[j] * d2[j]);
            ev += w2[j] * (v1 * v1 + v2 * v2);
            et += w2[j] * (t1 * t1 + t2 * t2);
            mu_ += w2[j] * vals[j] * vals[j];
            mv += w2[j] * v * v;
            mt += w2[j] * t * t;
            ivt += w2[j] * v * t;
        }
        eu += bdry(vals[0], vals[n2]);
        ev += bdry(w * p[0], w * p[n2]);
        et += bdry(vals[0] - w * p[0], vals[n2] - w * p[n2]);
        col_u[i] = (eu, mu_);
        col_v[i] = (ev, mv);
        col_t[i] = (et, mt);
        inner_vt[i] = ivt;
    }
    let total = |c: &[(f64, f64)]| -> (f64, f64) {
        c.iter()
            .zip(&w1)
            .fold((0.0, 0.0), |acc, (x, w)| (acc.0 + w * x.0, acc.1 + w * x.1))
    };
    let (eu, nu) = total(&col_u);
    let (ev, nv) = total(&col_v);
    let (et, nt) = total(&col_t);
    let ivt: f64 = inner_vt.iter().zip(&w1).map(|(x, w)| w * x).sum();

    let i0 = (l / h).round() as usize;
    let cell = intervals(1.0, h, "1")?;
    let wc = boole_weights(cell, h);
    let (ec, nc) = (0..=cell).fold((0.0, 0.0), |acc, k| {
        let (e, m) = col_t[i0 + k];
        (acc.0 + wc[k] * e, acc.1 + wc[k] * m)
    });
    let gap_slack = (nc > 1e-300 && nc > 1e-24 * nu).then(|| (ec - cs.cell_lambda2() * nc) / nc);

    Ok(SplitSample {
        orthogonality: ivt.abs() / nu,
        energy: (eu - ev - et).abs() / (eu.abs() + nu),
        gap_slack,
        u_norm_sq: nu,
        v_norm_sq: nv,
        tilde_norm_sq: nt,
    })
}

#[derive(Debug, Clone, Copy)]
enum Profile {
    Trig { k: f64, phase: f64 },
    Ground,
}

/// Sum of Gaussian bumps in `x₁` times transverse profiles.
#[derive(Debug, Clone)]
struct RandomTrial {
    terms: Vec<(f64, f64, f64, Profile)>,
    ground: GroundState,
}

impl RandomTrial {
    fn sample(rng: &mut ChaCha8Rng, cs: &CrossSection, half_length: f64) -> Self {
        let a = cs.width();
        let dirichlet = cs.geometry.is_dirichlet();
        let mut terms = Vec::new();
        for t in 0..5 {
            let amp = rng.gen_range(-1.0..1.0);
            // the first bump sits over the checked cell
            let center = if t == 0 {
                rng.gen_range(0.0..1.0)
            } else {
                rng.gen_range(-0.5..0.5) * half_length
            };
            let sigma = rng.gen_range(0.5..1.5);
            let profile = if t == 4 {
                Profile::Ground
            } else if dirichlet {
                Profile::Trig {
                    k: rng.gen_range(1..=4) as f64 * PI / a,
                    phase: 0.0,
                }
            } else {
                Profile::Trig {
                    k: rng.gen_range(0.0..3.0 * PI / a),
                    phase: rng.gen_range(0.0..2.0 * PI),
                }
            };
            terms.push((amp, center, sigma, profile));
        }
        Self {
            terms,
            ground: cs.u1,
        }
    }

    fn profile(&self, p: Profile, x2: f64) -> (f64, f64) {
        match p {
            // sin(kx + φ) covers the Dirichlet case with φ = 0
            Profile::Trig { k, phase } => ((k * x2 + phase).sin(), k * (k * x2 + phase).cos()),
            Profile::Ground => (self.ground.eval(x2), self.ground.derivative(x2)),
        }
    }
}

impl TrialFunction for RandomTrial {
    fn value(&self, x1: f64, x2: f64) -> f64 {
        self.terms
            .iter()
            .map(|&(amp, c, s, p)| {
                amp * (-(x1 - c).powi(2) / (2.0 * s * s)).exp() * self.profile(p, x2).0
            })
            .sum()
    }

    fn grad(&self, x1: f64, x2: f64) -> (f64, f64) {
        self.terms.iter().fold((0.0, 0.0), |acc, &(amp, c, s, p)| {
            let g = amp * (-(x1 - c).powi(2) / (2.0 * s * s)).exp();
            let dg = -g * (x1 - c) / (s * s);
            let (f, df) = self.profile(p, x2);
            (acc.0 + dg * f, acc.1 + g * df)
        })
    }
}

/// Runs [`split_residuals`] on `trials` random smooth functions.
///
/// The report passes when orthogonality and the energy split hold to `1e-6`
/// and the gap slack is at least `-1e-6`.
pub fn verify_projection_split(
    cs: &CrossSection,
    mesh: &SplitMesh,
    trials: usize,
    seed: u64,
) -> Result<SplitReport> {
    const TOL: f64 = 1e-6;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SplitReport {
        h: mesh.h,
        half_length: mesh.half_length,
        trials,
        tolerance: TOL,
        max_orthogonality: 0.0,
        max_energy: 0.0,
        min_gap_slack: f64::MAX,
        passed: true,
    };
    for _ in 0..trials {
        let trial = RandomTrial::sample(&mut rng, cs, mesh.half_length);
        let s = split_residuals(cs, mesh, &trial)?;
        report.max_orthogonality = report.max_orthogonality.max(s.orthogonality);
        report.max_energy = report.max_energy.max(s.energy);
        if let Some(g) = s.gap_slack {
            report.min_gap_slack = report.min_gap_slack.min(g);
        }
    }
    report.passed =
        report.max_orthogonality <= TOL && report.max_energy <= TOL && report.min_gap_slack >= -TOL;
    Ok(report)
}
