//! Discrete counters for the number of negative eigenvalues.
//!
//! The 2D counter discretizes the shifted strip form on bilinear elements
//! over `[-L, L] × [0, a]` with Dirichlet clamping at `x₁ = ±L`, so every
//! count is a lower bound for the count on the whole strip. Counts come from
//! the inertia of the form matrix (Sylvester's law; the Gram matrix is
//! positive definite). The 1D counter does the same for `-d²/dx₁² - cν`.

mod band;
mod dense;
mod form;
mod split;
mod testfn;

use serde::{Deserialize, Serialize};

pub use band::{Inertia, SymBand};
pub use dense::{bunch_kaufman_inertia, eigen_inertia};
pub use form::{assemble_form, assemble_form_with_rule, DiscreteForm, Mesh};
pub use split::{
    split_residuals, verify_projection_split, SplitMesh, SplitReport, SplitSample, TrialFunction,
};
pub use testfn::{testfunction_energy, testfunction_witness, TentFunction, WitnessReport};

use crate::bound::NuMeasure;
use crate::cross_section::CrossSection;
use crate::error::{Error, Result};
use crate::measure::Measure;
use crate::potential::Potential;

/// Dimension below which a breakdown of the band factorization falls back
/// to a dense eigendecomposition.
pub const DENSE_FALLBACK_LIMIT: usize = 4000;

/// Largest band storage (in `f64`s) a refinement step may allocate.
pub const MAX_BAND_STORAGE: usize = 60_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub h: f64,
    pub half_length: f64,
    pub dim: usize,
    pub n_neg: usize,
    pub n_zero: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InertiaResult {
    pub n_neg: usize,
    pub n_zero: usize,
    pub n_pos: usize,
    pub zero_tolerance: f64,
    pub refinement_trace: Vec<TraceEntry>,
    /// `"band-ldlt"` or `"dense-eigen"` for the last factorization.
    pub method: String,
    /// The count was unchanged across two successive refinements.
    pub stable: bool,
}

impl InertiaResult {
    pub fn dim(&self) -> usize {
        self.n_neg + self.n_zero + self.n_pos
    }
}

/// Inertia of a band matrix with the dense fallback on breakdown.
pub fn band_matrix_inertia(matrix: &SymBand, zero_tol: f64) -> Result<(Inertia, &'static str)> {
    match matrix.inertia(zero_tol) {
        Ok(i) => Ok((i, "band-ldlt")),
        Err(Error::FactorizationBreakdown { .. }) if matrix.dim() < DENSE_FALLBACK_LIMIT => {
            Ok((eigen_inertia(&matrix.to_dense(), zero_tol), "dense-eigen"))
        }
        Err(e) => Err(e),
    }
}

/// Inertia of the form matrix with `zero_tolerance = 1e-10·‖A‖_max`.
pub fn inertia(form: &DiscreteForm) -> Result<InertiaResult> {
    let zero_tol = form.matrix.default_zero_tolerance();
    let (i, method) = band_matrix_inertia(&form.matrix, zero_tol)?;
    Ok(InertiaResult {
        n_neg: i.neg,
        n_zero: i.zero,
        n_pos: i.pos,
        zero_tolerance: zero_tol,
        refinement_trace: vec![TraceEntry {
            h: form.mesh.h,
            half_length: form.mesh.half_length,
            dim: form.dim(),
            n_neg: i.neg,
            n_zero: i.zero,
        }],
        method: method.to_string(),
        stable: true,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CountControls {
    pub half_length: f64,
    pub h: f64,
    /// Refinement steps after the initial mesh.
    pub max_refinements: usize,
    pub coupling: f64,
    /// `μ` quadrature spacing as a multiple of `h`.
    pub resolution_factor: f64,
}

impl Default for CountControls {
    fn default() -> Self {
        Self {
            half_length: 8.0,
            h: 0.125,
            max_refinements: 4,
            coupling: 1.0,
            resolution_factor: 0.5,
        }
    }
}

/// Repeats assembly and inertia, alternately halving `h` and doubling `L`,
/// until `n_neg` is unchanged across two successive refinements.
///
/// Runs out of budget (steps or memory) are reported with `stable = false`.
pub fn count_negative(
    cs: &CrossSection,
    mu: &Measure,
    v: &Potential,
    controls: &CountControls,
) -> Result<InertiaResult> {
    let (mut l, mut h) = (controls.half_length, controls.h);
    let mut trace = Vec::new();
    let mut last: Option<InertiaResult> = None;
    for step in 0..=controls.max_refinements {
        if step > 0 {
            if step % 2 == 1 {
                h /= 2.0;
            } else {
                l *= 2.0;
            }
        }
        let mesh = Mesh::new(l, h, cs.width(), cs.geometry.is_dirichlet())?;
        if step > 0 && mesh.dim() * (mesh.bandwidth() + 1) > MAX_BAND_STORAGE {
            break;
        }
        let form = assemble_form(
            cs,
            mu,
            v,
            l,
            h,
            controls.coupling,
            controls.resolution_factor * h,
        )?;
        let mut result = inertia(&form)?;
        trace.push(result.refinement_trace[0]);
        let n = trace.len();
        result.stable = n >= 3
            && trace[n - 1].n_neg == trace[n - 2].n_neg
            && trace[n - 2].n_neg == trace[n - 3].n_neg;
        result.refinement_trace = trace.clone();
        let done = result.stable;
        last = Some(result);
        if done {
            break;
        }
    }
    let mut result = last.expect("at least one step runs");
    result.refinement_trace = trace;
    Ok(result)
}

/// Inertia of `-d²/dx₁² - c·ν` on P1 elements over `[-L, L]` with Dirichlet
/// ends. Atoms of `ν` outside `[-L, L]` are ignored.
pub fn inertia_1d(nu: &NuMeasure, coupling: f64, half_length: f64, h: f64) -> Result<Inertia> {
    let q = 2.0 * half_length / h;
    let n1 = q.round();
    if !(h > 0.0 && half_length > 0.0 && (q - n1).abs() <= 1e-8 * q && n1 >= 2.0) {
        return Err(Error::InvalidMesh(format!(
            "h={h} does not divide 2L={}",
            2.0 * half_length
        )));
    }
    let n1 = n1 as usize;
    let dim = n1 - 1;
    let mut m = SymBand::zeros(dim, 1);
    for i in 0..dim {
        m.add(i, i, 2.0 / h);
        if i > 0 {
            m.add(i, i - 1, -1.0 / h);
        }
    }
    for &(x, w) in &nu.nodes {
        if x.abs() > half_length || w == 0.0 {
            continue;
        }
        let s = (x + half_length) / h;
        let e = (s.floor() as usize).min(n1 - 1);
        let t = s - e as f64;
        // nodes e and e+1 are unknowns e-1 and e when interior
        let left = (e >= 1).then(|| e - 1);
        let right = (e + 1 < n1).then_some(e);
        let c = coupling * w;
        if let Some(l) = left {
            m.add(l, l, -c * (1.0 - t) * (1.0 - t));
        }
        if let Some(r) = right {
            m.add(r, r, -c * t * t);
        }
        if let (Some(l), Some(r)) = (left, right) {
            m.add(r, l, -c * t * (1.0 - t));
        }
    }
    let tol = m.default_zero_tolerance();
    Ok(band_matrix_inertia(&m, tol)?.0)
}

/// Number of negative eigenvalues of `-d²/dx₁² - 2ν` on `[-L, L]`.
pub fn count_negative_1d(nu: &NuMeasure, half_length: f64, h: f64) -> Result<usize> {
    Ok(inertia_1d(nu, 2.0, half_length, h)?.neg)
}
