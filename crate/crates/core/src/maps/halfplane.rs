//! Half-plane maps of the unit isosceles right triangle built on ℘.
//!
//! ψ maps T onto the upper half plane with (0, 1, i) ↦ (∞, 0, 1); φ is
//! its diagonal-reflected partner with (0, 1, i) ↦ (0, 1, ∞), tied to ψ
//! by conj(ψ(i·conj z))·φ(z) = 1. Their inverses are incomplete beta
//! integrals normalized by Γ(1/4)² factors.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::sigma::unit_triangle_margin;
use crate::special::{incomplete_beta, weierstrass_p, Lattice, GAMMA_QUARTER};
use crate::{Error, Result};

/// Allowed excursion outside the closed triangle.
const CLOSURE_SLACK: f64 = 1e-9;

/// Guard radius around the poles z = 0 (for ψ) and z = i (for φ).
const POLE_GUARD: f64 = 1e-9;

/// ψ(z) = −(℘(z) − ℘(1))² / (4 ℘(1) ℘(z)), mapping T onto ℂ⁺ with
/// (0, 1, i) ↦ (∞, 0, 1).
pub fn map_psi(z: Complex64) -> Result<Complex64> {
    if unit_triangle_margin(z) < -CLOSURE_SLACK {
        return Err(Error::Domain(format!(
            "map_psi: {z} is outside the closed unit triangle"
        )));
    }
    if z.norm() < POLE_GUARD {
        return Err(Error::NearSingularity(format!(
            "map_psi: {z} is at the pole of the map (vertex 0)"
        )));
    }
    let lat = Lattice::square();
    let p = weierstrass_p(z, &lat)?;
    let e1 = lat.p_half1;
    let d = p - e1;
    Ok(-(d * d) / (4.0 * e1 * p))
}

/// φ(z) = 1 / conj(ψ(i·conj z)), mapping T onto ℂ⁺ with (0, 1, i) ↦
/// (0, 1, ∞).
pub fn map_phi(z: Complex64) -> Result<Complex64> {
    if unit_triangle_margin(z) < -CLOSURE_SLACK {
        return Err(Error::Domain(format!(
            "map_phi: {z} is outside the closed unit triangle"
        )));
    }
    if (z - Complex64::new(0.0, 1.0)).norm() < POLE_GUARD {
        return Err(Error::NearSingularity(format!(
            "map_phi: {z} is at the pole of the map (vertex i)"
        )));
    }
    let mirrored = Complex64::new(0.0, 1.0) * z.conj();
    Ok(1.0 / map_psi(mirrored)?.conj())
}

/// φ⁻¹(ζ) = √(2π)·Γ(1/4)⁻²·B(ζ, 1/2, 1/4) for ζ in the closed upper
/// half plane; sends (0, 1, ∞-limit) to the vertices (0, 1, i).
pub fn map_phi_inv(zeta: Complex64) -> Result<Complex64> {
    let b = incomplete_beta(zeta, 0.5, 0.25)?;
    Ok(b * (2.0 * PI).sqrt() / (GAMMA_QUARTER * GAMMA_QUARTER))
}

/// ψ⁻¹(ζ) = (i−1)·√π·Γ(1/4)⁻²·B(ζ, 1/4, 1/4) + 1 for ζ in the closed
/// upper half plane; sends (0, 1, ∞-limit) to the vertices (1, i, 0).
pub fn map_psi_inv(zeta: Complex64) -> Result<Complex64> {
    let b = incomplete_beta(zeta, 0.25, 0.25)?;
    Ok(Complex64::new(-1.0, 1.0) * b * PI.sqrt() / (GAMMA_QUARTER * GAMMA_QUARTER) + 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn psi_vertex_images() {
        assert!(map_psi(c(1.0, 0.0)).unwrap().norm() < 1e-14);
        // ψ(i) = 1 since ℘(i) = −℘(1).
        assert!((map_psi(c(0.0, 1.0)).unwrap() - c(1.0, 0.0)).norm() < 1e-12);
        assert!(map_psi(c(0.0, 0.0)).is_err());
    }

    #[test]
    fn phi_vertex_images() {
        assert!((map_phi(c(1.0, 0.0)).unwrap() - c(1.0, 0.0)).norm() < 1e-12);
        assert!(map_phi(c(0.0, 1.0)).is_err());
        // φ(0) = 1/conj(ψ(0)) = 0 in the limit; the guarded pole of ψ
        // sits exactly there, so probe just off the vertex instead.
        let near = map_phi(c(1e-4, 1e-4)).unwrap();
        assert!(near.norm() < 1e-6);
    }

    #[test]
    fn images_lie_in_the_upper_half_plane() {
        for z in [c(0.4, 0.3), c(0.2, 0.1), c(0.15, 0.6), c(0.45, 0.45)] {
            assert!(map_psi(z).unwrap().im > 0.0, "psi({z})");
            assert!(map_phi(z).unwrap().im > 0.0, "phi({z})");
        }
    }

    #[test]
    fn reflected_product_identity() {
        let z = c(0.3, 0.2);
        let lhs = map_psi(Complex64::new(0.0, 1.0) * z.conj()).unwrap().conj()
            * map_phi(z).unwrap();
        assert!((lhs - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn preimages_of_i_match_reference_digits() {
        let phi_w = map_phi_inv(c(0.0, 1.0)).unwrap();
        assert!((phi_w - c(0.1926647354739, 0.2970894700534)).norm() < 1e-11);
        let psi_w = map_psi_inv(c(0.0, 1.0)).unwrap();
        assert!((psi_w - c(0.2970894700534, 0.1926647354739)).norm() < 1e-11);
        // The two base points are diagonal mirrors of each other.
        assert!((psi_w - Complex64::new(0.0, 1.0) * phi_w.conj()).norm() < 1e-13);
    }

    #[test]
    fn inverse_vertex_normalization() {
        assert!(map_phi_inv(c(0.0, 0.0)).unwrap().norm() < 1e-15);
        assert!((map_phi_inv(c(1.0, 0.0)).unwrap() - c(1.0, 0.0)).norm() < 1e-12);
        assert!((map_psi_inv(c(0.0, 0.0)).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
        assert!((map_psi_inv(c(1.0, 0.0)).unwrap() - c(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn forward_inverse_round_trips() {
        for zeta in [c(0.0, 1.0), c(0.5, 0.8), c(-0.7, 0.4), c(2.0, 1.5)] {
            let w = map_phi_inv(zeta).unwrap();
            let back = map_phi(w).unwrap();
            assert!((back - zeta).norm() < 1e-9, "phi round trip at {zeta}: {back}");
            let w = map_psi_inv(zeta).unwrap();
            let back = map_psi(w).unwrap();
            assert!((back - zeta).norm() < 1e-9, "psi round trip at {zeta}: {back}");
        }
    }
}
