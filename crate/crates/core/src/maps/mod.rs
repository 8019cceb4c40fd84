//! Exact conformal maps for the two special triangles.
//!
//! Three independent constructions cover the isosceles right triangle:
//! Weierstrass-sigma quotients on the unit triangle ([`sigma`]), the
//! ℘-based half-plane pair φ/ψ ([`halfplane`]), and the Jacobi-function
//! map on the symmetric chart ([`kober`]). The 30-60-90 triangle has its
//! own Jacobi construction ([`tri_30_60_90`]).

pub mod halfplane;
pub mod kober;
pub mod sigma;
pub mod tri_30_60_90;
