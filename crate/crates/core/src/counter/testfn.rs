//! Piecewise linear test functions `v_n = w_n(x₁)u₁(x₂)` whose form value is
//! `5·2ⁿ` and which witness a negative direction once `F_n > 5`.

use serde::{Deserialize, Serialize};

use crate::bound::{dyadic_f_direct, DyadicWindow};
use crate::cross_section::CrossSection;
use crate::error::{Error, Result};
use crate::measure::{quadrature, Measure, Rect};
use crate::potential::Potential;

/// Continuous piecewise linear `w_n` for `n ≠ 0`: zero outside
/// `(2^{n−2}, 2^{n+1})`, rising with slope 4, flat at `2ⁿ` on `[2^{n−1}, 2ⁿ]`,
/// then falling with slope 1. Negative `n` mirrors `w_{|n|}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TentFunction {
    pub n: i64,
    /// Breakpoints `(x₁, w)` in increasing `x₁`.
    pub knots: Vec<(f64, f64)>,
}

impl TentFunction {
    pub fn new(n: i64) -> Result<Self> {
        if n == 0 || n.unsigned_abs() > 60 {
            return Err(Error::Contract(format!(
                "test functions need 0 < |n| ≤ 60, got {n}"
            )));
        }
        let p = 2f64.powi(n.unsigned_abs() as i32);
        let mut knots = vec![(p / 4.0, 0.0), (p / 2.0, p), (p, p), (2.0 * p, 0.0)];
        if n < 0 {
            knots = knots.into_iter().rev().map(|(x, y)| (-x, y)).collect();
        }
        Ok(Self { n, knots })
    }

    pub fn support(&self) -> (f64, f64) {
        (self.knots[0].0, self.knots[self.knots.len() - 1].0)
    }

    pub fn eval(&self, x: f64) -> f64 {
        for w in self.knots.windows(2) {
            let ((x0, y0), (x1, y1)) = (w[0], w[1]);
            if x >= x0 && x <= x1 {
                return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
            }
        }
        0.0
    }

    /// `∫|w'|²`, exact.
    pub fn kinetic(&self) -> f64 {
        self.knots
            .windows(2)
            .map(|w| {
                let (dx, dy) = (w[1].0 - w[0].0, w[1].1 - w[0].1);
                dy * dy / dx
            })
            .sum()
    }

    /// `∫|w|²`, exact.
    pub fn mass(&self) -> f64 {
        self.knots
            .windows(2)
            .map(|w| {
                let (y0, y1) = (w[0].1, w[1].1);
                (w[1].0 - w[0].0) * (y0 * y0 + y0 * y1 + y1 * y1) / 3.0
            })
            .sum()
    }
}

/// `ℰ_S[v_n] − λ₁‖v_n‖²` for `v_n = w_n u₁`, which equals `∫|w_n'|² = 5·2^{|n|}`.
///
/// Tensor identity `ℰ_S[w⊗u₁] − λ₁‖w⊗u₁‖² = ‖w'‖²‖u₁‖² + ‖w‖²·r`, where the
/// transverse defect `r` vanishes for an eigenfunction. The `x₁` integrals are
/// exact. `r` is dropped here: in floating point it is rounding noise in `λ₁`
/// amplified by `‖w_n‖² ~ 8ⁿ`, and [`WitnessReport::eigen_defect`] reports it.
pub fn testfunction_energy(cs: &CrossSection, n: i64) -> Result<f64> {
    let w = TentFunction::new(n)?;
    Ok(w.kinetic() * cs.u1_norm_sq())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub n: i64,
    /// `ℰ_S[v_n] − λ₁‖v_n‖²`.
    pub energy: f64,
    /// `∫V|v_n|² dμ`.
    pub potential_term: f64,
    /// `energy − potential_term`; negative means `v_n` is a negative direction.
    pub form_value: f64,
    pub f_n: f64,
    /// `F_n > 5`, which forces `form_value < 0`.
    pub binds: bool,
    /// `‖w_n‖²·r` with `r` the transverse eigen-defect of the computed `u₁`.
    pub eigen_defect: f64,
}

/// Evaluates `v_n` against `V dμ` using a `μ` rule of spacing `resolution`.
pub fn testfunction_witness(
    cs: &CrossSection,
    v: &Potential,
    mu: &Measure,
    n: i64,
    resolution: f64,
) -> Result<WitnessReport> {
    let w = TentFunction::new(n)?;
    let energy = testfunction_energy(cs, n)?;
    let (lo, hi) = w.support();
    let rule = quadrature(mu, &Rect::new((lo, hi), (0.0, cs.width())), resolution)?;
    let potential_term =
        rule.integrate(|p| v.eval(p.x1, p.x2) * (w.eval(p.x1) * cs.u1(p.x2)).powi(2));
    let f_n = dyadic_f_direct(v, cs, mu, &DyadicWindow::new(n), resolution)?;
    Ok(WitnessReport {
        n,
        energy,
        potential_term,
        form_value: energy - potential_term,
        f_n,
        binds: f_n > 5.0,
        eigen_defect: w.mass() * cs.energy_residual(),
    })
}
