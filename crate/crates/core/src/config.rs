//! TOML run configuration.
//!
//! ```toml
//! [geometry]
//! a = 1.0
//! bc = "robin"        # or "dirichlet"
//! alpha = 1.0
//! beta = 1.0
//!
//! [potential]
//! expr = "10 * ind(x1, -1, 1)"   # or: grid = "v.csv"
//!
//! [[measure]]
//! type = "lebesgue"
//! x1 = [-2.0, 2.0]
//!
//! [controls]
//! L = 8.0
//! h = 0.125
//! ```

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::bound::{BoundConstants, BoundControls};
use crate::counter::CountControls;
use crate::cross_section::{BoundaryCondition, StripGeometry};
use crate::error::{Error, Result};
use crate::measure::{Measure, MeasureComponent, Point, Rect};
use crate::potential::{GridPotential, Potential};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryBlock {
    pub a: f64,
    pub bc: String,
    #[serde(default)]
    pub alpha: f64,
    #[serde(default)]
    pub beta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PotentialBlock {
    pub expr: Option<String>,
    /// CSV of `x1,x2,value` rows, relative to the config file.
    pub grid: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum MeasureBlock {
    Lebesgue {
        #[serde(default = "one")]
        weight: f64,
        x1: [f64; 2],
        x2: Option<[f64; 2]>,
        density: Option<String>,
    },
    Segment {
        #[serde(default = "one")]
        weight: f64,
        p0: [f64; 2],
        p1: [f64; 2],
        /// Density in the arclength variable `s`.
        density: Option<String>,
    },
    Cantor {
        #[serde(default = "one")]
        weight: f64,
        p0: [f64; 2],
        p1: [f64; 2],
        depth: u32,
        #[serde(default = "one")]
        mass: f64,
    },
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Controls {
    #[serde(rename = "L", default = "default_l")]
    pub half_length: f64,
    #[serde(default = "default_h")]
    pub h: f64,
    pub n_max: Option<i64>,
    /// `μ` quadrature spacing for the bound; the counter uses `h/2`.
    #[serde(default = "default_resolution")]
    pub resolution: f64,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default = "default_c_m")]
    pub c_m: f64,
    #[serde(rename = "C_M", default = "one")]
    pub big_c_m: f64,
    #[serde(default = "default_gammas")]
    pub gammas: Vec<f64>,
    #[serde(default = "default_refinements")]
    pub max_refinements: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_samples")]
    pub ahlfors_samples: usize,
    #[serde(default = "default_r_min")]
    pub r_min: f64,
    #[serde(default = "default_r_max")]
    pub r_max: f64,
    #[serde(default = "default_trials")]
    pub split_trials: usize,
}

fn default_l() -> f64 {
    8.0
}
fn default_h() -> f64 {
    0.125
}
fn default_resolution() -> f64 {
    1.0 / 64.0
}
fn default_tol() -> f64 {
    crate::cross_section::DEFAULT_TOL
}
fn default_c_m() -> f64 {
    0.046
}
fn default_gammas() -> Vec<f64> {
    vec![1.0, 2.0, 4.0, 8.0, 16.0]
}
fn default_refinements() -> usize {
    4
}
fn default_samples() -> usize {
    400
}
fn default_r_min() -> f64 {
    0.01
}
fn default_r_max() -> f64 {
    0.1
}
fn default_trials() -> usize {
    20
}

impl Default for Controls {
    fn default() -> Self {
        toml::from_str("").expect("all control fields have defaults")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    pub geometry: GeometryBlock,
    pub potential: Option<PotentialBlock>,
    #[serde(default)]
    pub measure: Vec<MeasureBlock>,
    #[serde(default)]
    pub controls: Controls,
}

/// A validated run: geometry, potential, measure and controls.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub raw: RawConfig,
    pub geometry: StripGeometry,
    pub potential: Potential,
    pub measure: Option<Measure>,
    pub controls: Controls,
}

fn finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::Config(format!("{name} must be finite, got {v}")))
    }
}

fn point(p: [f64; 2]) -> Point {
    Point::new(p[0], p[1])
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text, path.parent())
    }

    /// Parses and validates; relative grid paths resolve against `base`.
    pub fn from_toml(text: &str, base: Option<&Path>) -> Result<Self> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        let g = &raw.geometry;
        finite("geometry.a", g.a)?;
        finite("geometry.alpha", g.alpha)?;
        finite("geometry.beta", g.beta)?;
        let bc = match g.bc.as_str() {
            "robin" => BoundaryCondition::Robin {
                alpha: g.alpha,
                beta: g.beta,
            },
            "dirichlet" => BoundaryCondition::Dirichlet,
            other => {
                return Err(Error::Config(format!(
                    "geometry.bc must be \"robin\" or \"dirichlet\", got {other:?}"
                )))
            }
        };
        let geometry = StripGeometry::new(g.a, bc).map_err(|e| Error::Config(e.to_string()))?;

        let potential = match &raw.potential {
            None => Potential::zero(),
            Some(PotentialBlock {
                expr: Some(e),
                grid: None,
            }) => Potential::parse(e).map_err(|e| Error::Config(e.to_string()))?,
            Some(PotentialBlock {
                expr: None,
                grid: Some(p),
            }) => {
                let p = base.map(|b| b.join(p)).unwrap_or_else(|| p.clone());
                Potential::grid(
                    GridPotential::from_csv(&p).map_err(|e| Error::Config(e.to_string()))?,
                )
            }
            Some(_) => {
                return Err(Error::Config(
                    "potential needs exactly one of expr or grid".into(),
                ))
            }
        };

        let mut components = Vec::new();
        for (k, m) in raw.measure.iter().enumerate() {
            let (w, c) = match m {
                MeasureBlock::Lebesgue {
                    weight,
                    x1,
                    x2,
                    density,
                } => {
                    let x2 = x2.unwrap_or([0.0, g.a]);
                    for (i, v) in x1.iter().chain(&x2).enumerate() {
                        finite(&format!("measure[{k}] coordinate {i}"), *v)?;
                    }
                    let support = Rect::new((x1[0], x1[1]), (x2[0], x2[1]));
                    let density = match density {
                        Some(d) => Potential::parse(d).map_err(|e| Error::Config(e.to_string()))?,
                        None => Potential::constant(1.0),
                    };
                    (
                        *weight,
                        MeasureComponent::LebesgueDensity { density, support },
                    )
                }
                MeasureBlock::Segment {
                    weight,
                    p0,
                    p1,
                    density,
                } => {
                    let c = MeasureComponent::segment_with_density(
                        point(*p0),
                        point(*p1),
                        density.as_deref().unwrap_or("1"),
                    )
                    .map_err(|e| Error::Config(e.to_string()))?;
                    (*weight, c)
                }
                MeasureBlock::Cantor {
                    weight,
                    p0,
                    p1,
                    depth,
                    mass,
                } => (
                    *weight,
                    MeasureComponent::cantor(point(*p0), point(*p1), *depth, *mass),
                ),
            };
            components.push((w, c));
        }
        let measure = if components.is_empty() {
            None
        } else {
            Some(Measure::new(g.a, components).map_err(|e| Error::Config(e.to_string()))?)
        };

        let c = &raw.controls;
        for (name, v) in [
            ("L", c.half_length),
            ("h", c.h),
            ("resolution", c.resolution),
            ("tol", c.tol),
            ("c_m", c.c_m),
            ("C_M", c.big_c_m),
            ("r_min", c.r_min),
            ("r_max", c.r_max),
        ] {
            finite(name, v)?;
            if v <= 0.0 {
                return Err(Error::Config(format!(
                    "controls.{name} must be positive, got {v}"
                )));
            }
        }
        for g in &c.gammas {
            finite("gammas", *g)?;
        }

        // V ≥ 0 on the region that matters
        let window = match &measure {
            Some(m) => m.bounding_rect().x1,
            None => (-c.half_length, c.half_length),
        };
        potential
            .check_nonnegative(window, g.a, 101)
            .map_err(|e| Error::Config(e.to_string()))?;

        Ok(Self {
            controls: raw.controls.clone(),
            raw,
            geometry,
            potential,
            measure,
        })
    }

    pub fn measure(&self) -> Result<&Measure> {
        self.measure.as_ref().ok_or_else(|| {
            Error::Config("this subcommand needs at least one [[measure]] block".into())
        })
    }

    pub fn bound_controls(&self) -> BoundControls {
        BoundControls {
            n_max: self.controls.n_max,
            resolution: self.controls.resolution,
            constants: BoundConstants {
                c_m: self.controls.c_m,
                big_c_m: self.controls.big_c_m,
                ..Default::default()
            },
        }
    }

    pub fn count_controls(&self) -> CountControls {
        CountControls {
            half_length: self.controls.half_length,
            h: self.controls.h,
            max_refinements: self.controls.max_refinements,
            ..Default::default()
        }
    }
}
