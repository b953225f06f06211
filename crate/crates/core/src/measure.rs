//! Measures on the closed strip as finite sums of components.
//!
//! Three component kinds are supported: a Lebesgue density on a rectangle,
//! a one-dimensional Hausdorff measure along a segment and the middle-thirds
//! Cantor measure on a segment. A Cantor component of depth `D` is the
//! generation-`D` measure, uniform on each of the `2^D` surviving intervals,
//! so ball and rectangle masses are exact; its quadrature rule places one node
//! at the midpoint of each surviving interval.
//!
//! Quadrature nodes sit on a lattice anchored at the component's support, and
//! a rule for a region keeps exactly the lattice nodes inside that closed
//! region. Rules for adjacent closed cells therefore share boundary nodes.

use std::f64::consts::FRAC_PI_2;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::potential::{Expr, Potential};
use crate::quadrature::GaussLegendre;

const MAX_CANTOR_DEPTH: u32 = 24;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x1: f64,
    pub x2: f64,
}

impl Point {
    pub const fn new(x1: f64, x2: f64) -> Self {
        Self { x1, x2 }
    }

    fn lerp(self, other: Point, t: f64) -> Point {
        Point::new(
            self.x1 + t * (other.x1 - self.x1),
            self.x2 + t * (other.x2 - self.x2),
        )
    }

    fn dist(self, other: Point) -> f64 {
        (self.x1 - other.x1).hypot(self.x2 - other.x2)
    }
}

/// Closed axis-aligned rectangle `[x1.0, x1.1] × [x2.0, x2.1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub x1: (f64, f64),
    pub x2: (f64, f64),
}

impl Rect {
    pub const fn new(x1: (f64, f64), x2: (f64, f64)) -> Self {
        Self { x1, x2 }
    }

    /// The closed cell `[n, n+1] × [0, a]`.
    pub fn cell(n: i64, width: f64) -> Self {
        Self::new((n as f64, n as f64 + 1.0), (0.0, width))
    }

    pub fn contains(&self, p: Point) -> bool {
        self.x1.0 <= p.x1 && p.x1 <= self.x1.1 && self.x2.0 <= p.x2 && p.x2 <= self.x2.1
    }

    pub fn intersect(&self, other: &Rect) -> Option<Rect> {
        let x1 = (self.x1.0.max(other.x1.0), self.x1.1.min(other.x1.1));
        let x2 = (self.x2.0.max(other.x2.0), self.x2.1.min(other.x2.1));
        (x1.0 <= x1.1 && x2.0 <= x2.1).then_some(Rect { x1, x2 })
    }

    fn union(&self, other: &Rect) -> Rect {
        Rect::new(
            (self.x1.0.min(other.x1.0), self.x1.1.max(other.x1.1)),
            (self.x2.0.min(other.x2.0), self.x2.1.max(other.x2.1)),
        )
    }

    fn translated(&self, dx1: f64) -> Rect {
        Rect::new((self.x1.0 + dx1, self.x1.1 + dx1), self.x2)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum MeasureComponent {
    /// `density(x) dx` restricted to `support`.
    LebesgueDensity { density: Potential, support: Rect },
    /// Arclength measure on `[p0, p1]` with density in the arclength `s`.
    LineSegment {
        p0: Point,
        p1: Point,
        linear_density: Expr,
    },
    /// Generation-`depth` middle-thirds Cantor measure of mass `total_mass`.
    CantorSegment {
        p0: Point,
        p1: Point,
        depth: u32,
        total_mass: f64,
    },
}

impl MeasureComponent {
    pub fn lebesgue(support: Rect) -> Self {
        MeasureComponent::LebesgueDensity {
            density: Potential::constant(1.0),
            support,
        }
    }

    pub fn segment(p0: Point, p1: Point) -> Self {
        Self::segment_with_density(p0, p1, "1").expect("constant density parses")
    }

    pub fn segment_with_density(p0: Point, p1: Point, density: &str) -> Result<Self> {
        Ok(MeasureComponent::LineSegment {
            p0,
            p1,
            linear_density: Expr::parse(density, &["s"])?,
        })
    }

    pub fn cantor(p0: Point, p1: Point, depth: u32, total_mass: f64) -> Self {
        MeasureComponent::CantorSegment {
            p0,
            p1,
            depth,
            total_mass,
        }
    }

    fn bounding_rect(&self) -> Rect {
        match self {
            MeasureComponent::LebesgueDensity { support, .. } => *support,
            MeasureComponent::LineSegment { p0, p1, .. }
            | MeasureComponent::CantorSegment { p0, p1, .. } => Rect::new(
                (p0.x1.min(p1.x1), p0.x1.max(p1.x1)),
                (p0.x2.min(p1.x2), p0.x2.max(p1.x2)),
            ),
        }
    }

    fn translated(&self, dx1: f64) -> Self {
        let shift = |p: &Point| Point::new(p.x1 + dx1, p.x2);
        match self {
            MeasureComponent::LebesgueDensity { density, support } => {
                let density = match density.as_constant() {
                    Some(c) => Potential::constant(c),
                    None => {
                        return MeasureComponent::LebesgueDensity {
                            density: shifted_potential(density, dx1),
                            support: support.translated(dx1),
                        }
                    }
                };
                MeasureComponent::LebesgueDensity {
                    density,
                    support: support.translated(dx1),
                }
            }
            MeasureComponent::LineSegment {
                p0,
                p1,
                linear_density,
            } => MeasureComponent::LineSegment {
                p0: shift(p0),
                p1: shift(p1),
                linear_density: linear_density.clone(),
            },
            MeasureComponent::CantorSegment {
                p0,
                p1,
                depth,
                total_mass,
            } => MeasureComponent::CantorSegment {
                p0: shift(p0),
                p1: shift(p1),
                depth: *depth,
                total_mass: *total_mass,
            },
        }
    }

    fn validate(&self, width: f64) -> Result<()> {
        let in_strip = |p: &Point| p.x1.is_finite() && p.x2 >= 0.0 && p.x2 <= width;
        match self {
            MeasureComponent::LebesgueDensity { density, support } => {
                let r = support;
                if !(r.x1.0.is_finite() && r.x1.1.is_finite() && r.x1.0 <= r.x1.1) {
                    return Err(Error::InvalidMeasure(format!("bad Lebesgue support {r:?}")));
                }
                if !(0.0 <= r.x2.0 && r.x2.0 <= r.x2.1 && r.x2.1 <= width) {
                    return Err(Error::InvalidMeasure(format!(
                        "Lebesgue support {r:?} leaves the strip of width {width}"
                    )));
                }
                density.check_nonnegative(r.x1, width, 33)?;
            }
            MeasureComponent::LineSegment {
                p0,
                p1,
                linear_density,
            } => {
                if !in_strip(p0) || !in_strip(p1) {
                    return Err(Error::InvalidMeasure(format!(
                        "segment {p0:?}-{p1:?} leaves the closed strip"
                    )));
                }
                if p0.dist(*p1) == 0.0 {
                    return Err(Error::InvalidMeasure("degenerate segment".into()));
                }
                let len = p0.dist(*p1);
                for i in 0..=32 {
                    let v = linear_density.eval(&[len * i as f64 / 32.0]);
                    if !(v.is_finite() && v >= 0.0) {
                        return Err(Error::InvalidMeasure(format!(
                            "negative linear density {v}"
                        )));
                    }
                }
            }
            MeasureComponent::CantorSegment {
                p0,
                p1,
                depth,
                total_mass,
            } => {
                if !in_strip(p0) || !in_strip(p1) {
                    return Err(Error::InvalidMeasure(format!(
                        "Cantor segment {p0:?}-{p1:?} leaves the closed strip"
                    )));
                }
                if p0.dist(*p1) == 0.0 {
                    return Err(Error::InvalidMeasure("degenerate Cantor segment".into()));
                }
                if *depth < 1 || *depth > MAX_CANTOR_DEPTH {
                    return Err(Error::InvalidMeasure(format!(
                        "Cantor depth must be in 1..={MAX_CANTOR_DEPTH}"
                    )));
                }
                if !(total_mass.is_finite() && *total_mass > 0.0) {
                    return Err(Error::InvalidMeasure(format!(
                        "Cantor total mass must be positive, got {total_mass}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Exact (segments) or Gauss-Legendre (densities) total mass.
    pub fn total_mass(&self) -> f64 {
        self.mass_of_rect(&self.bounding_rect())
    }

    fn quadrature_into(
        &self,
        scale: f64,
        region: &Rect,
        resolution: f64,
        rule: &mut QuadratureRule,
    ) {
        match self {
            MeasureComponent::LebesgueDensity { density, support } => {
                let n1 = cells_for(support.x1.1 - support.x1.0, resolution);
                let n2 = cells_for(support.x2.1 - support.x2.0, resolution);
                let h1 = (support.x1.1 - support.x1.0) / n1 as f64;
                let h2 = (support.x2.1 - support.x2.0) / n2 as f64;
                if h1 == 0.0 || h2 == 0.0 {
                    return;
                }
                // only lattice columns that can fall inside the region
                let i_lo = (((region.x1.0 - support.x1.0) / h1 - 0.5).floor().max(0.0)) as usize;
                let i_hi =
                    (((region.x1.1 - support.x1.0) / h1 + 0.5).ceil().max(0.0) as usize).min(n1);
                for i in i_lo..i_hi {
                    let x1 = support.x1.0 + (i as f64 + 0.5) * h1;
                    for j in 0..n2 {
                        let p = Point::new(x1, support.x2.0 + (j as f64 + 0.5) * h2);
                        if region.contains(p) {
                            rule.push(p, scale * density.eval(p.x1, p.x2) * h1 * h2);
                        }
                    }
                }
            }
            MeasureComponent::LineSegment {
                p0,
                p1,
                linear_density,
            } => {
                let len = p0.dist(*p1);
                let n = cells_for(len, resolution);
                for i in 0..n {
                    let t = (i as f64 + 0.5) / n as f64;
                    let p = p0.lerp(*p1, t);
                    if region.contains(p) {
                        rule.push(p, scale * linear_density.eval(&[t * len]) * len / n as f64);
                    }
                }
            }
            MeasureComponent::CantorSegment {
                p0,
                p1,
                depth,
                total_mass,
            } => {
                let count = 1usize << depth;
                let piece = 3f64.powi(-(*depth as i32));
                let w = scale * total_mass / count as f64;
                for idx in 0..count {
                    let mut start = 0.0;
                    let mut step = 1.0;
                    for level in (0..*depth).rev() {
                        step /= 3.0;
                        if (idx >> level) & 1 == 1 {
                            start += 2.0 * step;
                        }
                    }
                    let p = p0.lerp(*p1, start + 0.5 * piece);
                    if region.contains(p) {
                        rule.push(p, w);
                    }
                }
            }
        }
    }

    fn mass_of_ball(&self, center: Point, r: f64) -> f64 {
        match self {
            MeasureComponent::LebesgueDensity { density, support } => {
                lebesgue_ball(density, support, center, r)
            }
            MeasureComponent::LineSegment {
                p0,
                p1,
                linear_density,
            } => match segment_ball_params(*p0, *p1, center, r) {
                Some((t0, t1)) => arclength_integral(linear_density, p0.dist(*p1), t0, t1),
                None => 0.0,
            },
            MeasureComponent::CantorSegment {
                p0,
                p1,
                depth,
                total_mass,
            } => match segment_ball_params(*p0, *p1, center, r) {
                Some((t0, t1)) => total_mass * cantor_fraction(t0, t1, *depth),
                None => 0.0,
            },
        }
    }

    fn mass_of_rect(&self, rect: &Rect) -> f64 {
        match self {
            MeasureComponent::LebesgueDensity { density, support } => match support.intersect(rect)
            {
                Some(r) => {
                    let area = (r.x1.1 - r.x1.0) * (r.x2.1 - r.x2.0);
                    if let Some(c) = density.as_constant() {
                        return c * area;
                    }
                    if area == 0.0 {
                        return 0.0;
                    }
                    let gl = GaussLegendre::new(8);
                    gl.integrate(r.x1.0, r.x1.1, 32, |x1| {
                        gl.integrate(r.x2.0, r.x2.1, 8, |x2| density.eval(x1, x2))
                    })
                }
                None => 0.0,
            },
            MeasureComponent::LineSegment {
                p0,
                p1,
                linear_density,
            } => match segment_rect_params(*p0, *p1, rect) {
                Some((t0, t1)) => arclength_integral(linear_density, p0.dist(*p1), t0, t1),
                None => 0.0,
            },
            MeasureComponent::CantorSegment {
                p0,
                p1,
                depth,
                total_mass,
            } => match segment_rect_params(*p0, *p1, rect) {
                Some((t0, t1)) => total_mass * cantor_fraction(t0, t1, *depth),
                None => 0.0,
            },
        }
    }
}

fn shifted_potential(p: &Potential, dx1: f64) -> Potential {
    // re-sample on a grid would lose exactness; keep the expression and shift x1
    match p {
        Potential::Expr(e) => {
            let src = e.source().replace("x1", &format!("(x1 - ({dx1}))"));
            Potential::parse(&src).unwrap_or_else(|_| p.clone())
        }
        Potential::Grid(g) => {
            let mut g = (**g).clone();
            g.x1.iter_mut().for_each(|x| *x += dx1);
            Potential::grid(g)
        }
    }
}

fn cells_for(len: f64, resolution: f64) -> usize {
    ((len / resolution) * (1.0 - 1e-12)).ceil().max(1.0) as usize
}

/// Parameter interval of `p0 + t(p1 - p0)`, `t ∈ [0, 1]`, inside the ball.
fn segment_ball_params(p0: Point, p1: Point, c: Point, r: f64) -> Option<(f64, f64)> {
    let (dx, dy) = (p1.x1 - p0.x1, p1.x2 - p0.x2);
    let (ox, oy) = (p0.x1 - c.x1, p0.x2 - c.x2);
    let qa = dx * dx + dy * dy;
    let qb = dx * ox + dy * oy;
    let qc = ox * ox + oy * oy - r * r;
    let disc = qb * qb - qa * qc;
    if disc <= 0.0 {
        return None;
    }
    let sq = disc.sqrt();
    let t0 = ((-qb - sq) / qa).max(0.0);
    let t1 = ((-qb + sq) / qa).min(1.0);
    (t0 < t1).then_some((t0, t1))
}

/// Liang-Barsky clip of the segment against a closed rectangle.
fn segment_rect_params(p0: Point, p1: Point, rect: &Rect) -> Option<(f64, f64)> {
    let (dx, dy) = (p1.x1 - p0.x1, p1.x2 - p0.x2);
    let mut t0: f64 = 0.0;
    let mut t1: f64 = 1.0;
    for (p, q) in [
        (-dx, p0.x1 - rect.x1.0),
        (dx, rect.x1.1 - p0.x1),
        (-dy, p0.x2 - rect.x2.0),
        (dy, rect.x2.1 - p0.x2),
    ] {
        if p == 0.0 {
            if q < 0.0 {
                return None;
            }
        } else {
            let t = q / p;
            if p < 0.0 {
                t0 = t0.max(t);
            } else {
                t1 = t1.min(t);
            }
        }
    }
    (t0 < t1).then_some((t0, t1))
}

fn arclength_integral(density: &Expr, len: f64, t0: f64, t1: f64) -> f64 {
    if let Some(c) = density.constant() {
        return c * len * (t1 - t0);
    }
    GaussLegendre::new(10).integrate(t0 * len, t1 * len, 16, |s| density.eval(&[s]))
}

/// Mass fraction of `[t0, t1]` under the generation-`depth` Cantor measure on `[0, 1]`.
pub fn cantor_fraction(t0: f64, t1: f64, depth: u32) -> f64 {
    if t1 <= 0.0 || t0 >= 1.0 || t1 <= t0 {
        return 0.0;
    }
    if t0 <= 0.0 && t1 >= 1.0 {
        return 1.0;
    }
    if depth == 0 {
        return t1.min(1.0) - t0.max(0.0);
    }
    0.5 * cantor_fraction(3.0 * t0, 3.0 * t1, depth - 1)
        + 0.5 * cantor_fraction(3.0 * t0 - 2.0, 3.0 * t1 - 2.0, depth - 1)
}

fn lebesgue_ball(density: &Potential, support: &Rect, c: Point, r: f64) -> f64 {
    // x1 = c1 + r sin θ removes the square-root endpoint behaviour of the chord
    let lo = ((support.x1.0 - c.x1) / r).clamp(-1.0, 1.0).asin();
    let hi = ((support.x1.1 - c.x1) / r).clamp(-1.0, 1.0).asin();
    if hi <= lo {
        return 0.0;
    }
    let constant = density.as_constant();
    let outer = GaussLegendre::new(16);
    let inner = GaussLegendre::new(8);
    let panels = (((hi - lo) / FRAC_PI_2) * 16.0).ceil().max(1.0) as usize;
    outer.integrate(lo, hi, panels, |theta| {
        let x1 = c.x1 + r * theta.sin();
        let half = r * theta.cos();
        let y0 = (c.x2 - half).max(support.x2.0);
        let y1 = (c.x2 + half).min(support.x2.1);
        if y1 <= y0 {
            return 0.0;
        }
        let chord = match constant {
            Some(v) => v * (y1 - y0),
            None => inner.integrate(y0, y1, 4, |x2| density.eval(x1, x2)),
        };
        chord * half
    })
}

/// Nodes and nonnegative weights; `∫f dμ ≈ Σ wᵢ f(xᵢ)`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct QuadratureRule {
    pub nodes: Vec<Point>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn push(&mut self, p: Point, w: f64) {
        self.nodes.push(p);
        self.weights.push(w);
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn integrate<F: Fn(Point) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(p, w)| w * f(*p))
            .sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Point, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }
}

/// Positive combination of components on the strip of width `width`.
#[derive(Debug, Clone, PartialEq)]
pub struct Measure {
    width: f64,
    components: Vec<(f64, MeasureComponent)>,
}

impl Measure {
    pub fn new(width: f64, components: Vec<(f64, MeasureComponent)>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidMeasure(
                "a measure needs at least one component".into(),
            ));
        }
        for (w, c) in &components {
            if !(w.is_finite() && *w > 0.0) {
                return Err(Error::InvalidMeasure(format!(
                    "component weights must be positive, got {w}"
                )));
            }
            c.validate(width)?;
        }
        Ok(Self { width, components })
    }

    pub fn single(width: f64, component: MeasureComponent) -> Result<Self> {
        Self::new(width, vec![(1.0, component)])
    }

    /// Lebesgue measure on `[x1_lo, x1_hi] × [0, a]`.
    pub fn lebesgue(width: f64, x1_lo: f64, x1_hi: f64) -> Result<Self> {
        Self::single(
            width,
            MeasureComponent::lebesgue(Rect::new((x1_lo, x1_hi), (0.0, width))),
        )
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn components(&self) -> &[(f64, MeasureComponent)] {
        &self.components
    }

    pub fn is_pure_lebesgue(&self) -> bool {
        self.components
            .iter()
            .all(|(_, c)| matches!(c, MeasureComponent::LebesgueDensity { .. }))
    }

    pub fn bounding_rect(&self) -> Rect {
        let mut it = self.components.iter().map(|(_, c)| c.bounding_rect());
        let first = it.next().expect("measure is nonempty");
        it.fold(first, |acc, r| acc.union(&r))
    }

    pub fn translated(&self, dx1: f64) -> Self {
        let components = self
            .components
            .iter()
            .map(|(w, c)| (*w, c.translated(dx1)))
            .collect();
        Self {
            width: self.width,
            components,
        }
    }

    pub fn total_mass(&self) -> f64 {
        self.components
            .iter()
            .map(|(w, c)| w * c.total_mass())
            .sum()
    }

    /// `μ(R)` for a closed rectangle.
    pub fn mass_of_rect(&self, rect: &Rect) -> f64 {
        self.components
            .iter()
            .map(|(w, c)| w * c.mass_of_rect(rect))
            .sum()
    }

    /// `μ(S̄_n)` for the closed unit cell.
    pub fn cell_mass(&self, n: i64) -> f64 {
        self.mass_of_rect(&Rect::cell(n, self.width))
    }
}

/// Quadrature rule for `μ` restricted to `region ∩ S̄`.
pub fn quadrature(measure: &Measure, region: &Rect, resolution: f64) -> Result<QuadratureRule> {
    if !(resolution.is_finite() && resolution > 0.0) {
        return Err(Error::Contract(format!(
            "resolution must be positive, got {resolution}"
        )));
    }
    let mut rule = QuadratureRule::default();
    let strip = Rect::new((f64::NEG_INFINITY, f64::INFINITY), (0.0, measure.width));
    let Some(region) = region.intersect(&strip) else {
        return Ok(rule);
    };
    for (w, c) in &measure.components {
        c.quadrature_into(*w, &region, resolution, &mut rule);
    }
    Ok(rule)
}

/// `μ(B(center, r))`.
pub fn measure_of_ball(measure: &Measure, center: Point, r: f64) -> Result<f64> {
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::Contract(format!("radius must be positive, got {r}")));
    }
    Ok(measure
        .components
        .iter()
        .map(|(w, c)| w * c.mass_of_ball(center, r))
        .sum())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AhlforsEstimate {
    pub d_hat: f64,
    pub c0_hat: f64,
    pub c1_hat: f64,
    pub r_range: (f64, f64),
    /// Bounds of `μ(S̄_n)/μ(S̄_{n±1})` over neighbouring cells of positive mass.
    pub c2_hat: f64,
    pub c3_hat: f64,
    /// `(n, μ(S̄_n))` for every cell meeting the support.
    pub cell_masses: Vec<(i64, f64)>,
    pub samples: usize,
}

/// Least-squares fit of `log μ(B(x, r))` against `log r` over support samples.
///
/// Centers are drawn from quadrature nodes (a proxy for `supp μ`) and radii
/// log-uniformly from `[r_min, r_max]`.
pub fn ahlfors_fit(
    measure: &Measure,
    sample_count: usize,
    r_min: f64,
    r_max: f64,
    seed: u64,
) -> Result<AhlforsEstimate> {
    if !(0.0 < r_min && r_min < r_max && r_max.is_finite()) {
        return Err(Error::Contract(format!(
            "need 0 < r_min < r_max, got {r_min}, {r_max}"
        )));
    }
    if sample_count < 10 {
        return Err(Error::Contract(format!(
            "need at least 10 samples, got {sample_count}"
        )));
    }
    let bbox = measure.bounding_rect();
    let rule = quadrature(measure, &bbox, r_min)?;
    let support: Vec<Point> = rule
        .iter()
        .filter(|(_, w)| *w > 0.0)
        .map(|(p, _)| p)
        .collect();
    if support.is_empty() {
        return Err(Error::EmptySupport(
            "no quadrature node carries positive mass".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (ln_lo, ln_hi) = (r_min.ln(), r_max.ln());
    let mut pts = Vec::with_capacity(sample_count);
    for _ in 0..sample_count {
        let c = support[rng.gen_range(0..support.len())];
        let r = rng.gen_range(ln_lo..=ln_hi).exp();
        let m = measure_of_ball(measure, c, r)?;
        if m > 0.0 {
            pts.push((r, m));
        }
    }
    if pts.len() < 2 {
        return Err(Error::EmptySupport(
            "ball masses vanish on the sampled range".into(),
        ));
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0.ln()).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1.ln()).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0.ln() - mx) * (p.1.ln() - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0.ln() - mx).powi(2)).sum();
    let d_hat = sxy / sxx;
    let ratios = pts.iter().map(|(r, m)| m / r.powf(d_hat));
    let (c0_hat, c1_hat) = ratios.fold((f64::INFINITY, 0.0f64), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    });

    let first = bbox.x1.0.floor() as i64 - 1;
    let last = bbox.x1.1.ceil() as i64;
    let cell_masses: Vec<(i64, f64)> = (first..=last)
        .map(|k| (k, measure.cell_mass(k)))
        .filter(|(_, m)| *m > 0.0)
        .collect();
    let mut c2_hat = f64::INFINITY;
    let mut c3_hat = 0.0f64;
    for pair in cell_masses.windows(2) {
        if pair[1].0 == pair[0].0 + 1 {
            let q = pair[0].1 / pair[1].1;
            for v in [q, 1.0 / q] {
                c2_hat = c2_hat.min(v);
                c3_hat = c3_hat.max(v);
            }
        }
    }
    if !c2_hat.is_finite() {
        c2_hat = 1.0;
        c3_hat = 1.0;
    }
    Ok(AhlforsEstimate {
        d_hat,
        c0_hat,
        c1_hat,
        r_range: (r_min, r_max),
        c2_hat,
        c3_hat,
        cell_masses,
        samples: pts.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn unit_square() -> Measure {
        Measure::lebesgue(1.0, 0.0, 1.0).unwrap()
    }

    #[test]
    fn lebesgue_unit_square_rule() {
        let rule = quadrature(&unit_square(), &Rect::cell(0, 1.0), 0.25).unwrap();
        assert_eq!(rule.len(), 16);
        assert!((rule.total_weight() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn segment_rule() {
        let m = Measure::single(
            1.0,
            MeasureComponent::segment(Point::new(0.0, 0.0), Point::new(1.0, 0.0)),
        )
        .unwrap();
        let rule = quadrature(&m, &m.bounding_rect(), 0.5).unwrap();
        assert_eq!(rule.len(), 2);
        assert!((rule.total_weight() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn cantor_rule() {
        let m = Measure::single(
            1.0,
            MeasureComponent::cantor(Point::new(0.0, 0.5), Point::new(1.0, 0.5), 3, 1.0),
        )
        .unwrap();
        let rule = quadrature(&m, &m.bounding_rect(), 0.01).unwrap();
        assert_eq!(rule.len(), 8);
        assert!(rule.weights.iter().all(|w| (w - 0.125).abs() < 1e-15));
    }

    #[test]
    fn empty_region_gives_empty_rule() {
        let rule = quadrature(&unit_square(), &Rect::new((5.0, 6.0), (0.0, 1.0)), 0.1).unwrap();
        assert!(rule.is_empty());
        assert_eq!(rule.total_weight(), 0.0);
    }

    #[test]
    fn ball_examples() {
        let m = Measure::lebesgue(1.0, -5.0, 5.0).unwrap();
        let v = measure_of_ball(&m, Point::new(0.0, 0.5), 0.1).unwrap();
        assert!((v - PI * 0.01).abs() < 1e-5, "{v}");
        let line = Measure::single(
            1.0,
            MeasureComponent::segment(Point::new(-5.0, 0.5), Point::new(5.0, 0.5)),
        )
        .unwrap();
        let v = measure_of_ball(&line, Point::new(0.3, 0.5), 0.1).unwrap();
        assert!((v - 0.2).abs() < 1e-14);
        let cantor = Measure::single(
            1.0,
            MeasureComponent::cantor(Point::new(0.0, 0.5), Point::new(1.0, 0.5), 10, 1.0),
        )
        .unwrap();
        for k in 1..=6 {
            let v = measure_of_ball(&cantor, Point::new(0.0, 0.5), 3f64.powi(-k)).unwrap();
            assert!((v - 2f64.powi(-k)).abs() < 1e-14, "k={k}: {v}");
        }
    }

    #[test]
    fn ball_at_the_edge_of_the_support() {
        let m = Measure::lebesgue(1.0, 0.0, 4.0).unwrap();
        let v = measure_of_ball(&m, Point::new(0.0, 0.5), 0.2).unwrap();
        assert!((v - PI * 0.04 / 2.0).abs() < 1e-6, "{v}");
        let v = measure_of_ball(&m, Point::new(0.0, 0.0), 0.2).unwrap();
        assert!((v - PI * 0.04 / 4.0).abs() < 1e-6, "{v}");
    }

    #[test]
    fn cantor_fraction_is_additive() {
        for depth in [1, 4, 9] {
            let cuts = [0.0, 0.1, 0.25, 0.5, 0.7, 0.9, 1.0];
            let total: f64 = cuts
                .windows(2)
                .map(|w| cantor_fraction(w[0], w[1], depth))
                .sum();
            assert!((total - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn rejects_bad_components() {
        let outside = MeasureComponent::segment(Point::new(0.0, 0.0), Point::new(1.0, 2.0));
        assert!(Measure::single(1.0, outside).is_err());
        let c = MeasureComponent::cantor(Point::new(0.0, 0.0), Point::new(1.0, 0.0), 0, 1.0);
        assert!(Measure::single(1.0, c).is_err());
        let c = MeasureComponent::cantor(Point::new(0.0, 0.0), Point::new(1.0, 0.0), 2, -1.0);
        assert!(Measure::single(1.0, c).is_err());
        assert!(Measure::new(1.0, vec![]).is_err());
        let neg = MeasureComponent::LebesgueDensity {
            density: Potential::parse("x1").unwrap(),
            support: Rect::new((-1.0, 1.0), (0.0, 1.0)),
        };
        assert!(Measure::single(1.0, neg).is_err());
        assert!(Measure::new(
            1.0,
            vec![(0.0, MeasureComponent::lebesgue(Rect::cell(0, 1.0)))]
        )
        .is_err());
    }

    #[test]
    fn cell_masses_share_boundaries() {
        let line = Measure::single(
            1.0,
            MeasureComponent::segment(Point::new(1.0, 0.0), Point::new(1.0, 1.0)),
        )
        .unwrap();
        // a vertical segment on x1 = 1 belongs to both closed cells
        assert!((line.cell_mass(0) - 1.0).abs() < 1e-15);
        assert!((line.cell_mass(1) - 1.0).abs() < 1e-15);
    }
}
