//! Hyperbolas, boundary-generating-curve sampling, pseudo-convex joins and the
//! overall shape classification of `W^J(A)`.

mod boundary;
mod classify;
mod components;
mod fit;
mod hrt;
mod hyperbola;

pub use boundary::{
    boundary_points, pseudo_convex_join, sweep_boundary, BoundaryCurve, Corner, FlatSegment, Join, Side,
    TaggedPoint,
};
pub use classify::{classify_range, hyperbola_2x2, Evidence, RangeClassification, RangeKind};
pub use components::{knr_components, Component, ConicKind};
pub use fit::{fit_hyperbola, fit_quadratic, HyperbolaFit};
pub use hrt::HrtAxes;
pub use hyperbola::{
    hyperbola_from_fit, hyperbola_membership, nesting, normalize_axis, Hyperbola, HyperbolaFitParams, Nesting,
};

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::spectra::SpectraError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("degenerate hyperbola: {0}")]
    DegenerateHyperbola(String),
    #[error("degenerate fit: p² ≥ |s|² (p = {p}, |s| = {s_abs})")]
    DegenerateFit { p: f64, s_abs: f64 },
    #[error("need at least 3 valid support samples, found {found}")]
    TooFewSamples { found: usize },
    #[error("expected a {expected}×{expected} matrix, found {found}×{found}")]
    WrongDimension { expected: usize, found: usize },
    #[error("metric must be indefinite of order 2")]
    BadMetric,
    #[error("H_θ is not in class 𝒥 at θ = {theta}")]
    InvalidTheta { theta: f64 },
    #[error("coincident points with opposite signs have no pseudo-convex join")]
    DegenerateJoin,
    #[error("grid size {grid} is below the minimum {min}")]
    GridTooSmall { grid: usize, min: usize },
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
