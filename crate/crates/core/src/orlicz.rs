//! The complementary N-functions
//!
//! ```text
//! 𝒜(s) = e^|s| - 1 - |s|,    ℬ(s) = (1 + |s|) ln(1 + |s|) - |s|
//! ```
//!
//! and the three norms built from `ℬ` against a discrete measure:
//!
//! - Luxemburg: `inf{κ > 0 : ∫ℬ(|f|/κ) dμ ≤ 1}`,
//! - Orlicz (dual): `sup{|∫fg dμ| : ∫𝒜(|g|) dμ ≤ 1}`,
//! - average: the same supremum with constraint `∫𝒜(|g|) dμ ≤ μ(Ω)`.
//!
//! The two dual norms are evaluated through the Amemiya infimum
//! `inf_{k>0} (m + ∫ℬ(k|f|) dμ) / k` with `m = 1` or `m = μ(Ω)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measure::QuadratureRule;

const REL_TOL: f64 = 1e-13;
const EXPAND_FACTOR: f64 = 4.0;
const MAX_EXPANSIONS: usize = 200;

/// `ℬ(s)`. Uses a Taylor series below `|s| = 1e-2`.
pub fn b_eval(s: f64) -> f64 {
    let s = s.abs();
    if s < 1e-2 {
        // Σ_{k≥2} (-1)^k s^k / (k(k-1))
        let mut term = s * s;
        let mut sum = 0.0;
        for k in 2..12 {
            let kf = k as f64;
            sum += term / (kf * (kf - 1.0));
            term *= -s;
        }
        sum
    } else {
        (1.0 + s) * s.ln_1p() - s
    }
}

/// `𝒜(s)`. Overflows to `+∞` once `e^|s|` does (`|s| ≳ 709.78`).
pub fn a_eval(s: f64) -> f64 {
    let s = s.abs();
    if s < 1e-2 {
        let mut term = s * s / 2.0;
        let mut sum = 0.0;
        for k in 2..12 {
            sum += term;
            term *= s / (k as f64 + 1.0);
        }
        sum
    } else {
        s.exp_m1() - s
    }
}

/// `ℬ'(s) = ln(1 + s)` for `s ≥ 0`.
fn b_prime(s: f64) -> f64 {
    s.abs().ln_1p()
}

/// `C` in `ℬ(2s) ≤ C ℬ(s) + C`, maximized over a grid on `[0, s_max]`.
pub fn delta2_constant(s_max: f64, samples: usize) -> f64 {
    (0..=samples)
        .map(|i| s_max * i as f64 / samples as f64)
        .map(|s| b_eval(2.0 * s) / (b_eval(s) + 1.0))
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormKind {
    Luxemburg,
    Orlicz,
    Average,
}

/// Values of `f` at quadrature nodes with their weights; zero-weight nodes dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct NormRequest {
    values: Vec<f64>,
    weights: Vec<f64>,
    pub kind: NormKind,
}

impl NormRequest {
    pub fn new(f_values: &[f64], weights: &[f64], kind: NormKind) -> Result<Self> {
        if f_values.len() != weights.len() {
            return Err(Error::Contract(format!(
                "{} values for {} quadrature weights",
                f_values.len(),
                weights.len()
            )));
        }
        let mut values = Vec::with_capacity(f_values.len());
        let mut ws = Vec::with_capacity(weights.len());
        for (&f, &w) in f_values.iter().zip(weights) {
            if !f.is_finite() {
                return Err(Error::Contract(format!("non-finite function value {f}")));
            }
            if !(w >= 0.0) || !w.is_finite() {
                return Err(Error::Contract(format!(
                    "quadrature weights must be nonnegative, got {w}"
                )));
            }
            if w > 0.0 {
                values.push(f.abs());
                ws.push(w);
            }
        }
        Ok(Self {
            values,
            weights: ws,
            kind,
        })
    }

    pub fn from_rule(
        rule: &QuadratureRule,
        f: impl Fn(f64, f64) -> f64,
        kind: NormKind,
    ) -> Result<Self> {
        let values: Vec<f64> = rule.nodes.iter().map(|p| f(p.x1, p.x2)).collect();
        Self::new(&values, &rule.weights, kind)
    }

    pub fn mass(&self) -> f64 {
        self.weights.iter().sum()
    }

    fn is_null(&self) -> bool {
        self.values.iter().all(|v| *v == 0.0)
    }

    fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(*v))
    }

    /// `∫ℬ(k|f|) dμ`.
    pub fn b_integral(&self, k: f64) -> f64 {
        self.values
            .iter()
            .zip(&self.weights)
            .map(|(f, w)| w * b_eval(k * f))
            .sum()
    }

    fn b_integral_derivative(&self, k: f64) -> f64 {
        self.values
            .iter()
            .zip(&self.weights)
            .map(|(f, w)| w * f * b_prime(k * f))
            .sum()
    }

    /// Evaluate the norm named by `kind`.
    pub fn evaluate(&self) -> Result<f64> {
        match self.kind {
            NormKind::Luxemburg => Ok(luxemburg_norm(self)),
            NormKind::Orlicz => Ok(orlicz_norm(self)),
            NormKind::Average => average_norm(self, self.mass()),
        }
    }
}

/// Luxemburg norm, by bisection on `log κ` of the decreasing map
/// `κ ↦ ∫ℬ(|f|/κ) dμ`.
pub fn luxemburg_norm(req: &NormRequest) -> f64 {
    if req.is_null() {
        return 0.0;
    }
    let phi = |kappa: f64| req.b_integral(1.0 / kappa) - 1.0;
    let mut lo = req.max_abs();
    let mut hi = lo;
    for _ in 0..MAX_EXPANSIONS {
        if phi(lo) > 0.0 {
            break;
        }
        lo /= EXPAND_FACTOR;
    }
    for _ in 0..MAX_EXPANSIONS {
        if phi(hi) <= 0.0 {
            break;
        }
        hi *= EXPAND_FACTOR;
    }
    while hi / lo - 1.0 > REL_TOL {
        let mid = (lo * hi).sqrt();
        if phi(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

/// `inf_{k>0} (m + ∫ℬ(k|f|) dμ)/k`.
///
/// The derivative numerator `kΦ'(k) - Φ(k) - m` is increasing in `k`, so the
/// objective is unimodal; its sign change brackets the minimizer, which is
/// then refined by golden-section search on `log k`.
fn amemiya(req: &NormRequest, m: f64) -> f64 {
    if req.is_null() {
        return 0.0;
    }
    let objective = |ln_k: f64| {
        let k = ln_k.exp();
        (m + req.b_integral(k)) / k
    };
    let slope = |k: f64| k * req.b_integral_derivative(k) - req.b_integral(k) - m;
    let k0 = 1.0 / req.max_abs();
    let (mut lo, mut hi) = (k0, k0);
    for _ in 0..MAX_EXPANSIONS {
        if slope(lo) < 0.0 {
            break;
        }
        lo /= EXPAND_FACTOR;
    }
    for _ in 0..MAX_EXPANSIONS {
        if slope(hi) > 0.0 {
            break;
        }
        hi *= EXPAND_FACTOR;
    }
    let (mut a, mut b) = (lo.ln(), hi.ln());
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (objective(c), objective(d));
    while b - a > 1e-9 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = objective(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = objective(d);
        }
    }
    objective(0.5 * (a + b)).min(fc).min(fd)
}

/// Orlicz norm through its Amemiya representation.
pub fn orlicz_norm(req: &NormRequest) -> f64 {
    amemiya(req, 1.0)
}

/// Average norm: dual constraint `∫𝒜(|g|) dμ ≤ omega_mass`.
pub fn average_norm(req: &NormRequest, omega_mass: f64) -> Result<f64> {
    if !(omega_mass > 0.0) {
        return Err(Error::Contract(format!(
            "average norm needs positive mass, got {omega_mass}"
        )));
    }
    Ok(amemiya(req, omega_mass))
}

/// All three norms of `f` at once.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormTriple {
    pub luxemburg: f64,
    pub orlicz: f64,
    pub average: f64,
    pub mass: f64,
}

pub fn norm_triple(values: &[f64], weights: &[f64]) -> Result<NormTriple> {
    let req = NormRequest::new(values, weights, NormKind::Luxemburg)?;
    let mass = req.mass();
    let average = if mass > 0.0 {
        average_norm(&req, mass)?
    } else {
        0.0
    };
    Ok(NormTriple {
        luxemburg: luxemburg_norm(&req),
        orlicz: orlicz_norm(&req),
        average,
        mass,
    })
}
