//! Conformal inner radii and least capacity points of triangles.
//!
//! For a simply connected domain `D` and an interior point `w`, the inner
//! (conformal) radius `r_w` is `|g'(0)|` for the conformal map
//! `g: unit disk -> D` with `g(0) = w`. The point maximizing `r_w` is the
//! least capacity point: the interior point best insulated from the boundary.
//!
//! This crate computes `r_w` and the least capacity point for triangles via
//! three independent engines that cross-validate each other:
//!
//! * exact elliptic-function maps for the isosceles right triangle, built
//!   either on the Weierstrass sigma function ([`maps::sigma`]) or on Jacobi
//!   elliptic functions ([`maps::kober`]);
//! * an exact Jacobi-function map for the 30-60-90 triangle
//!   ([`maps::tri_30_60_90`]);
//! * a numerical Schwarz-Christoffel map for arbitrary triangles ([`sc`]).
//!
//! The [`capacity`] module picks the right engine per triangle and produces
//! uniform reports; [`figures`] renders the level geometry (images of
//! concentric circles and radii of the disk); [`verify`] re-derives the
//! reference constants that pin down every engine.

use std::fmt;

pub mod capacity;
pub mod figures;
pub mod geometry;
pub mod maps;
pub mod optim;
pub mod quad;
pub mod sc;
pub mod special;
pub mod verify;

pub use num_complex::Complex64;

/// Errors reported by the numeric kernels and map engines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Input outside the operation's domain (exterior point, invalid
    /// parameter range, degenerate triangle).
    Domain(String),
    /// Evaluation point within the guard distance of a pole or of a
    /// domain boundary where the formula loses meaning.
    NearSingularity(String),
    /// An iterative scheme (Newton, quadrature refinement, optimizer)
    /// did not reach its tolerance within the iteration budget.
    NoConvergence(String),
    /// The argument region is not covered by any implemented method.
    UnsupportedRegion(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Domain(msg) => write!(f, "domain error: {msg}"),
            Self::NearSingularity(msg) => write!(f, "near singularity: {msg}"),
            Self::NoConvergence(msg) => write!(f, "no convergence: {msg}"),
            Self::UnsupportedRegion(msg) => write!(f, "unsupported region: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
