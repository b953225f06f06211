//! The transverse eigenproblem `-u'' = λu` on `(0, a)`.
//!
//! Robin conditions are `u'(0) + αu(0) = 0` and `u'(a) + βu(a) = 0`. With the
//! fundamental pair `c(x; λ)`, `s(x; λ)` (`c(0) = 1, c'(0) = 0`,
//! `s(0) = 0, s'(0) = 1`) the solution satisfying the left condition is
//! `y = c - αs`, and the eigenvalues are the zeros of
//!
//! ```text
//! g(λ) = y'(a) + βy(a) = (β - α) c(a; λ) - (λ + αβ) s(a; λ).
//! ```
//!
//! `g` is entire in `λ`; it is evaluated through the trigonometric form for
//! `λ > 0`, a Taylor series near `λ = 0` and a factorized exponential form
//! for `λ < 0`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::GaussLegendre;

/// Below this value of `|λ| x²` the fundamental pair is evaluated by series.
const SERIES_CUTOFF: f64 = 1e-3;

pub const DEFAULT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum BoundaryCondition {
    Robin { alpha: f64, beta: f64 },
    Dirichlet,
}

/// Strip `ℝ × (0, a)` together with its boundary conditions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StripGeometry {
    pub width: f64,
    pub bc: BoundaryCondition,
}

impl StripGeometry {
    pub fn new(width: f64, bc: BoundaryCondition) -> Result<Self> {
        if !(width.is_finite() && width > 0.0) {
            return Err(Error::InvalidGeometry(format!(
                "strip width must be positive, got {width}"
            )));
        }
        if let BoundaryCondition::Robin { alpha, beta } = bc {
            if !alpha.is_finite() || !beta.is_finite() {
                return Err(Error::InvalidGeometry(format!(
                    "Robin parameters must be finite, got alpha={alpha}, beta={beta}"
                )));
            }
        }
        Ok(Self { width, bc })
    }

    pub fn robin(width: f64, alpha: f64, beta: f64) -> Result<Self> {
        Self::new(width, BoundaryCondition::Robin { alpha, beta })
    }

    pub fn neumann(width: f64) -> Result<Self> {
        Self::robin(width, 0.0, 0.0)
    }

    pub fn dirichlet(width: f64) -> Result<Self> {
        Self::new(width, BoundaryCondition::Dirichlet)
    }

    pub fn is_dirichlet(&self) -> bool {
        matches!(self.bc, BoundaryCondition::Dirichlet)
    }
}

/// Which closed form the ground state is expressed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Trigonometric,
    Affine,
    Hyperbolic,
}

/// `u₁(x) = scale · (cos_coef · c(x; λ) + sin_coef · s(x; λ))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroundState {
    pub branch: Branch,
    pub lambda: f64,
    pub cos_coef: f64,
    pub sin_coef: f64,
    pub scale: f64,
}

impl GroundState {
    fn unscaled(&self, x: f64) -> f64 {
        if self.lambda < 0.0 && -self.lambda * x * x >= SERIES_CUTOFF {
            // exponential form avoids cosh/sinh cancellation for decaying modes
            let kappa = (-self.lambda).sqrt();
            let grow = (kappa * self.cos_coef + self.sin_coef) / (2.0 * kappa);
            let decay = (kappa * self.cos_coef - self.sin_coef) / (2.0 * kappa);
            grow * (kappa * x).exp() + decay * (-kappa * x).exp()
        } else {
            let (c, s) = fundamental_pair(self.lambda, x);
            self.cos_coef * c + self.sin_coef * s
        }
    }

    fn unscaled_derivative(&self, x: f64) -> f64 {
        if self.lambda < 0.0 && -self.lambda * x * x >= SERIES_CUTOFF {
            let kappa = (-self.lambda).sqrt();
            let grow = (kappa * self.cos_coef + self.sin_coef) / 2.0;
            let decay = (kappa * self.cos_coef - self.sin_coef) / 2.0;
            grow * (kappa * x).exp() - decay * (-kappa * x).exp()
        } else {
            let (c, s) = fundamental_pair(self.lambda, x);
            -self.lambda * self.cos_coef * s + self.sin_coef * c
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.scale * self.unscaled(x)
    }

    pub fn derivative(&self, x: f64) -> f64 {
        self.scale * self.unscaled_derivative(x)
    }
}

/// Solved cross-section: `λ₁ < λ₂` and the `L²(0, a)`-normalized `u₁ > 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossSection {
    pub geometry: StripGeometry,
    pub lambda1: f64,
    pub lambda2: f64,
    pub u1: GroundState,
    pub u1_samples: Vec<(f64, f64)>,
}

impl CrossSection {
    pub fn width(&self) -> f64 {
        self.geometry.width
    }

    pub fn u1(&self, x2: f64) -> f64 {
        self.u1.eval(x2)
    }

    pub fn u1_prime(&self, x2: f64) -> f64 {
        self.u1.derivative(x2)
    }

    /// Second eigenvalue of the unit cell `(n, n+1) × (0, a)` with Neumann
    /// conditions in `x₁`: `min{λ₂, λ₁ + π²}`.
    pub fn cell_lambda2(&self) -> f64 {
        self.lambda2.min(self.lambda1 + PI * PI)
    }

    /// `∫₀ᵃ u₁²`, evaluated by Gauss-Legendre quadrature.
    pub fn u1_norm_sq(&self) -> f64 {
        integrate_on_width(self.width(), |x| self.u1(x).powi(2))
    }

    /// `∫₀ᵃ |u₁'|² + βu₁(a)² - αu₁(0)² - λ₁∫₀ᵃ u₁²`, which vanishes for an
    /// exact eigenfunction.
    ///
    /// Since `u₁'' = -λ₁u₁` holds exactly for the fundamental-pair
    /// representation, integrating by parts leaves only the boundary-condition
    /// defects `u₁(a)(u₁'(a) + βu₁(a)) - u₁(0)(u₁'(0) + αu₁(0))`.
    pub fn energy_residual(&self) -> f64 {
        let a = self.width();
        let (alpha, beta) = match self.geometry.bc {
            BoundaryCondition::Robin { alpha, beta } => (alpha, beta),
            BoundaryCondition::Dirichlet => (0.0, 0.0),
        };
        let (u0, ua) = (self.u1(0.0), self.u1(a));
        ua * (self.u1_prime(a) + beta * ua) - u0 * (self.u1_prime(0.0) + alpha * u0)
    }
}

fn integrate_on_width<F: FnMut(f64) -> f64>(a: f64, f: F) -> f64 {
    GaussLegendre::new(12).integrate(0.0, a, 64, f)
}

/// `(c(x; λ), s(x; λ))`.
pub fn fundamental_pair(lambda: f64, x: f64) -> (f64, f64) {
    let z = -lambda * x * x;
    if z.abs() < SERIES_CUTOFF {
        // fourth order Taylor in z = -λx²
        let c = 1.0 + z / 2.0 + z * z / 24.0 + z.powi(3) / 720.0 + z.powi(4) / 40320.0;
        let s = x * (1.0 + z / 6.0 + z * z / 120.0 + z.powi(3) / 5040.0 + z.powi(4) / 362880.0);
        (c, s)
    } else if lambda > 0.0 {
        let k = lambda.sqrt();
        ((k * x).cos(), (k * x).sin() / k)
    } else {
        let kappa = (-lambda).sqrt();
        ((kappa * x).cosh(), (kappa * x).sinh() / kappa)
    }
}

fn robin_secular(alpha: f64, beta: f64, a: f64, lambda: f64) -> f64 {
    if lambda < 0.0 && -lambda * a * a >= SERIES_CUTOFF {
        let kappa = (-lambda).sqrt();
        let up = (kappa * a).exp() * (kappa - alpha) * (kappa + beta);
        let down = (-kappa * a).exp() * (kappa + alpha) * (kappa - beta);
        (up - down) / (2.0 * kappa)
    } else {
        let (c, s) = fundamental_pair(lambda, a);
        (beta - alpha) * c - (lambda + alpha * beta) * s
    }
}

/// Characteristic function whose zeros are the Robin eigenvalues.
pub fn secular_value(geometry: &StripGeometry, lambda: f64) -> Result<f64> {
    match geometry.bc {
        BoundaryCondition::Robin { alpha, beta } => {
            Ok(robin_secular(alpha, beta, geometry.width, lambda))
        }
        BoundaryCondition::Dirichlet => Err(Error::UnsupportedBranch),
    }
}

/// Lower end of the eigenvalue search window.
///
/// Combines `-(max(|α|, |β|) + 1)²` with the trace estimate
/// `λ₁ ≥ -max(4c/a, 4c²)`, `c = max(α⁺, β⁻)`, which stays valid for thin strips.
fn search_floor(alpha: f64, beta: f64, a: f64) -> f64 {
    let m = alpha.abs().max(beta.abs());
    let c = alpha.max(0.0).max(-beta).max(0.0);
    let trace = (4.0 * c / a).max(4.0 * c * c);
    -((m + 1.0).powi(2)).max(trace) - 1.0
}

/// Sign changes of `y(·; λ) = c - αs` inside `(0, a)`.
fn interior_zeros(alpha: f64, a: f64, lambda: f64, samples: usize) -> usize {
    let gs = GroundState {
        branch: Branch::Trigonometric,
        lambda,
        cos_coef: 1.0,
        sin_coef: -alpha,
        scale: 1.0,
    };
    let mut count = 0;
    let mut prev = gs.unscaled(a / samples as f64 * 0.5);
    for i in 1..samples {
        let x = a * (i as f64 + 0.5) / samples as f64;
        let v = gs.unscaled(x);
        if (prev > 0.0 && v < 0.0) || (prev < 0.0 && v > 0.0) {
            count += 1;
        }
        if v != 0.0 {
            prev = v;
        }
    }
    count
}

fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let mut flo = f(lo);
    if flo == 0.0 {
        return lo;
    }
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol || mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm > 0.0) == (flo > 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Scan grid: uniform in `κ` over the negative part, uniform in `k` up to `3π/a`.
fn scan_grid(floor: f64, a: f64, per_part: usize) -> Vec<f64> {
    let kappa_max = (-floor).sqrt();
    let k_max = 3.0 * PI / a;
    let mut grid = Vec::with_capacity(2 * per_part + 1);
    for i in 0..per_part {
        let kappa = kappa_max * (1.0 - i as f64 / per_part as f64);
        grid.push(-kappa * kappa);
    }
    for i in 0..=per_part {
        let k = k_max * i as f64 / per_part as f64;
        grid.push(k * k);
    }
    grid
}

fn robin_pair(alpha: f64, beta: f64, a: f64, tol: f64) -> Result<(f64, f64)> {
    let floor = search_floor(alpha, beta, a);
    let g = |l: f64| robin_secular(alpha, beta, a, l);
    let mut trace = Vec::new();
    let mut per_part = 2000;
    for _attempt in 0..4 {
        let grid = scan_grid(floor, a, per_part);
        trace.clear();
        let mut roots = Vec::new();
        let mut prev = (grid[0], g(grid[0]));
        trace.push(prev);
        for &l in &grid[1..] {
            let v = g(l);
            trace.push((l, v));
            if v == 0.0 {
                roots.push(l);
            } else if prev.1 != 0.0 && (v > 0.0) != (prev.1 > 0.0) {
                roots.push(bisect(g, prev.0, l, tol));
            }
            prev = (l, v);
            if roots.len() == 2 {
                break;
            }
        }
        if roots.len() == 2 {
            // Sturm oscillation: the k-th eigenfunction has exactly k interior zeros
            let z0 = interior_zeros(alpha, a, roots[0], 4000);
            let z1 = interior_zeros(alpha, a, roots[1], 4000);
            if z0 == 0 && z1 == 1 && roots[0] < roots[1] {
                return Ok((roots[0], roots[1]));
            }
        }
        per_part *= 4;
    }
    let stride = (trace.len() / 64).max(1);
    Err(Error::BracketExhausted {
        reason: format!(
            "could not isolate the two lowest roots for alpha={alpha}, beta={beta}, a={a}"
        ),
        trace: trace.into_iter().step_by(stride).collect(),
    })
}

/// `λ₁`, `λ₂` and the normalized positive ground state.
pub fn first_two_eigenpairs(geometry: &StripGeometry, tol: f64) -> Result<CrossSection> {
    if !(tol > 0.0) {
        return Err(Error::Contract(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let a = geometry.width;
    let (lambda1, lambda2, cos_coef, sin_coef) = match geometry.bc {
        BoundaryCondition::Dirichlet => (PI * PI / (a * a), 4.0 * PI * PI / (a * a), 0.0, 1.0),
        BoundaryCondition::Robin { alpha, beta } => {
            let (l1, l2) = robin_pair(alpha, beta, a, tol)?;
            (l1, l2, 1.0, -alpha)
        }
    };
    let branch = if lambda1 * a * a > 1e-9 {
        Branch::Trigonometric
    } else if lambda1 * a * a < -1e-9 {
        Branch::Hyperbolic
    } else {
        Branch::Affine
    };
    let mut u1 = GroundState {
        branch,
        lambda: lambda1,
        cos_coef,
        sin_coef,
        scale: 1.0,
    };
    let norm_sq = integrate_on_width(a, |x| u1.unscaled(x).powi(2));
    u1.scale = 1.0 / norm_sq.sqrt();
    let u1_samples = (0..=64).map(|i| {
        let x = a * i as f64 / 64.0;
        (x, u1.eval(x))
    });
    Ok(CrossSection {
        geometry: *geometry,
        lambda1,
        lambda2,
        u1,
        u1_samples: u1_samples.collect(),
    })
}

/// `min{λ₂, λ₁ + π²}` for the given geometry.
pub fn cell_lambda2(geometry: &StripGeometry) -> Result<f64> {
    Ok(first_two_eigenpairs(geometry, DEFAULT_TOL)?.cell_lambda2())
}
