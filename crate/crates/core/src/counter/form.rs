//! Bilinear finite element discretization of the shifted strip form.

use serde::{Deserialize, Serialize};

use super::band::SymBand;
use crate::cross_section::{BoundaryCondition, CrossSection};
use crate::error::{Error, Result};
use crate::measure::{quadrature, Measure, QuadratureRule, Rect};
use crate::potential::Potential;

/// Uniform mesh of `[-L, L] × [0, a]` with spacing `h` in both directions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mesh {
    pub half_length: f64,
    pub h: f64,
    pub width: f64,
    /// Intervals along `x₁`.
    pub n1: usize,
    /// Intervals along `x₂`.
    pub n2: usize,
    /// Nodes on `x₂ ∈ {0, a}` are removed.
    pub clamp_x2: bool,
}

fn divides(len: f64, h: f64) -> Option<usize> {
    let q = len / h;
    let r = q.round();
    ((q - r).abs() <= 1e-8 * q.max(1.0) && r >= 1.0).then_some(r as usize)
}

impl Mesh {
    pub fn new(half_length: f64, h: f64, width: f64, clamp_x2: bool) -> Result<Self> {
        if !(h.is_finite() && h > 0.0 && half_length.is_finite() && half_length > 0.0) {
            return Err(Error::InvalidMesh(format!(
                "need positive L and h, got L={half_length}, h={h}"
            )));
        }
        let n1 = divides(2.0 * half_length, h).ok_or_else(|| {
            Error::InvalidMesh(format!("h={h} does not divide 2L={}", 2.0 * half_length))
        })?;
        let n2 = divides(width, h)
            .ok_or_else(|| Error::InvalidMesh(format!("h={h} does not divide a={width}")))?;
        if n1 < 2 || (clamp_x2 && n2 < 2) {
            return Err(Error::InvalidMesh("mesh has no interior nodes".into()));
        }
        Ok(Self {
            half_length,
            h,
            width,
            n1,
            n2,
            clamp_x2,
        })
    }

    /// Range of `x₂` node indices carrying unknowns.
    pub fn x2_nodes(&self) -> (usize, usize) {
        if self.clamp_x2 {
            (1, self.n2 - 1)
        } else {
            (0, self.n2)
        }
    }

    pub fn column_len(&self) -> usize {
        let (lo, hi) = self.x2_nodes();
        hi - lo + 1
    }

    /// Unknowns: interior `x₁` nodes times active `x₂` nodes, `x₂` fastest.
    pub fn dim(&self) -> usize {
        (self.n1 - 1) * self.column_len()
    }

    pub fn bandwidth(&self) -> usize {
        self.column_len() + 1
    }

    /// Unknown index of grid node `(i, j)`, if that node is free.
    pub fn dof(&self, i: usize, j: usize) -> Option<usize> {
        let (lo, hi) = self.x2_nodes();
        (i >= 1 && i < self.n1 && j >= lo && j <= hi)
            .then(|| (i - 1) * self.column_len() + (j - lo))
    }

    pub fn node(&self, i: usize, j: usize) -> (f64, f64) {
        (-self.half_length + i as f64 * self.h, j as f64 * self.h)
    }
}

/// Matrix of the discretized form with its Gram matrix.
#[derive(Debug, Clone)]
pub struct DiscreteForm {
    pub matrix: SymBand,
    pub gram: SymBand,
    pub mesh: Mesh,
    pub lambda1: f64,
    pub coupling: f64,
    pub measure_nodes: usize,
}

impl DiscreteForm {
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Gram matrix is positive definite, checked through its inertia.
    pub fn gram_is_positive_definite(&self) -> bool {
        self.gram
            .inertia(0.0)
            .map(|i| i.pos == self.gram.dim())
            .unwrap_or(false)
    }

    /// Coordinate text dump, one `row col value` line per nonzero.
    pub fn matrix_dump(&self) -> String {
        let mut out = String::new();
        for (i, j, v) in self.matrix.triplets() {
            out.push_str(&format!("{i} {j} {v:e}\n"));
        }
        out
    }
}

/// 1D P1 stiffness and mass entries between nodes `p` and `q` (`|p−q| ≤ 1`)
/// on a grid with `n` intervals. Boundary nodes carry half of the diagonal.
fn p1_entries(p: usize, q: usize, n: usize, h: f64) -> (f64, f64) {
    if p != q {
        return (-1.0 / h, h / 6.0);
    }
    if p == 0 || p == n {
        (1.0 / h, h / 3.0)
    } else {
        (2.0 / h, 2.0 * h / 3.0)
    }
}

/// Assembles `∫|∇u|² - λ₁∫|u|² - α∫|u(x₁,0)|² + β∫|u(x₁,a)|² - γ∫V|u|²dμ`
/// on bilinear elements with `u = 0` at `x₁ = ±L`.
///
/// The `μ` term uses the supplied rule; every node must lie in the closed
/// mesh rectangle.
pub fn assemble_form_with_rule(
    cs: &CrossSection,
    rule: &QuadratureRule,
    v: &Potential,
    half_length: f64,
    h: f64,
    coupling: f64,
) -> Result<DiscreteForm> {
    let dirichlet = cs.geometry.is_dirichlet();
    let mesh = Mesh::new(half_length, h, cs.width(), dirichlet)?;
    let (alpha, beta) = match cs.geometry.bc {
        BoundaryCondition::Robin { alpha, beta } => (alpha, beta),
        BoundaryCondition::Dirichlet => (0.0, 0.0),
    };
    let slack = 1e-12 * (half_length + cs.width());
    let outside: Vec<[f64; 2]> = rule
        .nodes
        .iter()
        .filter(|p| p.x1.abs() > half_length + slack || p.x2 < -slack || p.x2 > cs.width() + slack)
        .map(|p| [p.x1, p.x2])
        .collect();
    if !outside.is_empty() {
        return Err(Error::NodesOutsideMesh(outside));
    }

    let n = mesh.dim();
    let bw = mesh.bandwidth();
    let mut matrix = SymBand::zeros(n, bw);
    let mut gram = SymBand::zeros(n, bw);
    let lambda1 = cs.lambda1;
    let (jlo, jhi) = mesh.x2_nodes();
    for i in 1..mesh.n1 {
        for j in jlo..=jhi {
            let row = mesh.dof(i, j).expect("free node");
            for i2 in i.saturating_sub(1)..=i {
                for j2 in j.saturating_sub(1)..=(j + 1).min(mesh.n2) {
                    let Some(col) = mesh.dof(i2, j2) else {
                        continue;
                    };
                    if col > row {
                        continue;
                    }
                    let (k1, m1) = p1_entries(i, i2, mesh.n1, h);
                    let (k2, m2) = p1_entries(j, j2, mesh.n2, h);
                    let mut b2 = 0.0;
                    if j == j2 && j == 0 {
                        b2 -= alpha;
                    }
                    if j == j2 && j == mesh.n2 {
                        b2 += beta;
                    }
                    matrix.add(row, col, k1 * m2 + m1 * (k2 + b2 - lambda1 * m2));
                    gram.add(row, col, m1 * m2);
                }
            }
        }
    }

    let mut measure_nodes = 0;
    for (p, w) in rule.iter() {
        let weight = coupling * v.eval(p.x1, p.x2) * w;
        if weight == 0.0 {
            continue;
        }
        measure_nodes += 1;
        let s1 = ((p.x1 + half_length) / h).clamp(0.0, mesh.n1 as f64);
        let s2 = (p.x2 / h).clamp(0.0, mesh.n2 as f64);
        let e1 = (s1.floor() as usize).min(mesh.n1 - 1);
        let e2 = (s2.floor() as usize).min(mesh.n2 - 1);
        let (t1, t2) = (s1 - e1 as f64, s2 - e2 as f64);
        let mut local = [(0usize, 0.0f64); 4];
        let mut count = 0;
        for (di, phi1) in [(0, 1.0 - t1), (1, t1)] {
            for (dj, phi2) in [(0, 1.0 - t2), (1, t2)] {
                let phi = phi1 * phi2;
                if phi == 0.0 {
                    continue;
                }
                if let Some(d) = mesh.dof(e1 + di, e2 + dj) {
                    local[count] = (d, phi);
                    count += 1;
                }
            }
        }
        for a in 0..count {
            for b in 0..=a {
                let (da, pa) = local[a];
                let (db, pb) = local[b];
                matrix.add(da, db, -weight * pa * pb);
            }
        }
    }

    Ok(DiscreteForm {
        matrix,
        gram,
        mesh,
        lambda1,
        coupling,
        measure_nodes,
    })
}

/// [`assemble_form_with_rule`] with a `μ` rule of node spacing `resolution`
/// on `[-L, L] × [0, a]`. Requires `L ≥ 4`.
pub fn assemble_form(
    cs: &CrossSection,
    mu: &Measure,
    v: &Potential,
    half_length: f64,
    h: f64,
    coupling: f64,
    resolution: f64,
) -> Result<DiscreteForm> {
    if half_length < 4.0 {
        return Err(Error::InvalidMesh(format!(
            "half-length must be at least 4, got {half_length}"
        )));
    }
    let region = Rect::new((-half_length, half_length), (0.0, cs.width()));
    let rule = quadrature(mu, &region, resolution)?;
    assemble_form_with_rule(cs, &rule, v, half_length, h, coupling)
}
