//! Counting bound states of `-Δ - Vμ` on the strip `ℝ × (0, a)` with Robin or
//! Dirichlet boundary conditions.
//!
//! The crate computes the dyadic quantities `F_n`, the cell Orlicz norms
//! `M_n` and the explicit one-dimensional counting bound
//! `1 + 7.61 Σ_{F_n > 0.046} √F_n`, and checks them against independent
//! discretized counters based on matrix inertia.
//!
//! Module map:
//! - [`cross_section`]: the transverse Robin/Dirichlet eigenproblem.
//! - [`potential`]: scalar fields on the strip (expressions and grids).
//! - [`measure`]: measures on the closed strip, quadrature, Ahlfors fits.
//! - [`orlicz`]: the N-function pair and Luxemburg/Orlicz/average norms.
//! - [`bound`]: `ν`, `F_n`, `M_n`, the assembled bound, weak-ℓ₁ data.
//! - [`counter`]: finite element counters and the projection checks.
//! - [`config`] and [`cli`]: run configuration and report emission.

pub mod bound;
pub mod cli;
pub mod config;
pub mod counter;
pub mod cross_section;
pub mod error;
pub mod measure;
pub mod orlicz;
pub mod potential;
pub mod quadrature;

pub use cross_section::{BoundaryCondition, CrossSection, StripGeometry};
pub use error::{Error, Result};
pub use measure::{Measure, MeasureComponent, Point, QuadratureRule, Rect};
pub use potential::Potential;
