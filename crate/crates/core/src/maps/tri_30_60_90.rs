//! Jacobi-function map of the 30-60-90 triangle T with vertices
//! (0, κ₃₀, i√3 κ₃₀), where κ₃₀ = Γ(1/3)Γ(1/6)/(2^{5/3}√π).
//!
//! θ(z) = 3√3·sn²·dn²/(1+cn)⁴ at argument c₄ z and modulus m₄ =
//! (2+√3)/4 maps T onto the upper half plane with (0, κ₃₀, i√3 κ₃₀) ↦
//! (0, 1/4, ∞). Its inverse is an incomplete beta integral shifted to
//! the hypotenuse midpoint.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::special::{incomplete_beta, jacobi_sn_cn_dn, GAMMA_SIXTH, GAMMA_THIRD};
use crate::{Error, Result};

/// Allowed excursion outside the closed triangle.
const CLOSURE_SLACK: f64 = 1e-9;

/// Minimum interior margin for base points of the density.
const BASE_MARGIN: f64 = 1e-9;

/// Guard for the quadruple pole factor (1 + cn)⁻⁴ at the 30° vertex.
const POLE_GUARD: f64 = 1e-9;

/// Jacobi modulus m₄ = (2+√3)/4 of the degree-four map.
fn modulus() -> f64 {
    (2.0 + 3.0_f64.sqrt()) / 4.0
}

/// Argument scale c₄ = 2^{2/3}/3^{3/4}.
fn arg_scale() -> f64 {
    2.0_f64.powf(2.0 / 3.0) / 3.0_f64.powf(0.75)
}

/// Short leg of T: κ₃₀ = Γ(1/3)Γ(1/6)/(2^{5/3}√π) = 2.6499581254…
pub fn kappa_30() -> f64 {
    GAMMA_THIRD * GAMMA_SIXTH / (2.0_f64.powf(5.0 / 3.0) * PI.sqrt())
}

/// Signed distance from z to the boundary of T, positive inside.
pub fn triangle_30_60_90_margin(z: Complex64) -> f64 {
    let s3 = 3.0_f64.sqrt();
    let hyp = (s3 * kappa_30() - s3 * z.re - z.im) / 2.0;
    z.re.min(z.im).min(hyp)
}

/// θ(z) = 3√3·sn²(u)·dn²(u)/(1+cn(u))⁴ with u = c₄ z and m = m₄,
/// mapping T onto the closed upper half plane with (0, κ₃₀, i√3 κ₃₀) ↦
/// (0, 1/4, ∞).
pub fn theta_306090(z: Complex64) -> Result<Complex64> {
    if triangle_30_60_90_margin(z) < -CLOSURE_SLACK {
        return Err(Error::Domain(format!(
            "theta_306090: {z} is outside the closed triangle"
        )));
    }
    let (sn, cn, dn) = jacobi_sn_cn_dn(arg_scale() * z, modulus())?;
    let one_plus = 1.0 + cn;
    if one_plus.norm() < POLE_GUARD {
        return Err(Error::NearSingularity(format!(
            "theta_306090: {z} is at the pole of the map (30-degree vertex)"
        )));
    }
    let q = one_plus * one_plus;
    Ok(3.0 * 3.0_f64.sqrt() * (sn * dn) * (sn * dn) / (q * q))
}

/// dθ/dz = 3√3·c₄·[(1+cn)·2·sn·cn·dn·(dn² − m₄ sn²) + 4 sn³dn³]/(1+cn)⁵.
pub fn theta_306090_prime(z: Complex64) -> Result<Complex64> {
    if triangle_30_60_90_margin(z) < -CLOSURE_SLACK {
        return Err(Error::Domain(format!(
            "theta_306090_prime: {z} is outside the closed triangle"
        )));
    }
    let m = modulus();
    let (sn, cn, dn) = jacobi_sn_cn_dn(arg_scale() * z, m)?;
    let one_plus = 1.0 + cn;
    if one_plus.norm() < POLE_GUARD {
        return Err(Error::NearSingularity(format!(
            "theta_306090_prime: {z} is at the pole of the map (30-degree vertex)"
        )));
    }
    let sd = sn * dn;
    let num = one_plus * 2.0 * sn * cn * dn * (dn * dn - m * sn * sn) + 4.0 * sd * sd * sd;
    let q2 = one_plus * one_plus;
    Ok(3.0 * 3.0_f64.sqrt() * arg_scale() * num / (q2 * q2 * one_plus))
}

/// θ⁻¹(ζ) = B(1/2 + √ζ, 1/3, 1/3) − κ₃₀ for ζ in the closed upper half
/// plane; sends (0, 1/4, ∞-limit) to the vertices (0, κ₃₀, i√3 κ₃₀).
pub fn theta_306090_inv(zeta: Complex64) -> Result<Complex64> {
    // Rounding from upstream Möbius arithmetic may leave a tiny
    // negative imaginary part; snap it so the principal square root
    // stays on the upper-half-plane branch.
    let mut z = zeta;
    if z.im < 0.0 && z.im.abs() <= 1e-13 * (1.0 + z.norm()) {
        z.im = 0.0;
    }
    let b = incomplete_beta(0.5 + z.sqrt(), 1.0 / 3.0, 1.0 / 3.0)?;
    Ok(b - kappa_30())
}

/// Boundary density h(w) = |θ′(w)| / (2·Im θ(w)); its reciprocal is the
/// inner radius of T at w.
pub fn h_306090(w: Complex64) -> Result<f64> {
    if triangle_30_60_90_margin(w) < BASE_MARGIN {
        return Err(Error::Domain(format!(
            "h_306090: base point {w} is not interior to the triangle"
        )));
    }
    let tw = theta_306090(w)?;
    let tpw = theta_306090_prime(w)?;
    Ok(tpw.norm() / (tw - tw.conj()).norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn kappa_30_matches_reference_digits() {
        assert!((kappa_30() - 2.649_958_125_428_174_9).abs() < 1e-13);
        // Same constant in the alternative closed form Γ(1/3)³√3/(4π).
        let alt = GAMMA_THIRD.powi(3) * 3.0_f64.sqrt() / (4.0 * PI);
        assert!((kappa_30() - alt).abs() < 1e-14);
    }

    #[test]
    fn vertex_and_checkpoint_images() {
        let k = kappa_30();
        assert!(theta_306090(c(0.0, 0.0)).unwrap().norm() < 1e-15);
        assert!((theta_306090(c(k, 0.0)).unwrap() - c(0.25, 0.0)).norm() < 1e-13);
        // Interior point whose image is exactly i.
        let w4 = c(0.706_581_259_9, 1.681_445_094_3);
        assert!((theta_306090(w4).unwrap() - c(0.0, 1.0)).norm() < 1e-8);
    }

    #[test]
    fn image_stays_in_upper_half_plane() {
        for z in [c(0.5, 0.9), c(0.2, 0.3), c(1.2, 1.5), c(0.8, 2.8)] {
            assert!(theta_306090(z).unwrap().im > 0.0, "theta({z})");
        }
    }

    #[test]
    fn legs_map_to_the_real_axis() {
        let k = kappa_30();
        for t in [0.2, 0.5, 0.8] {
            let horizontal = theta_306090(c(t * k, 0.0)).unwrap();
            assert!(horizontal.im.abs() < 1e-13);
            assert!(horizontal.re > 0.0 && horizontal.re < 0.25);
            let vertical = theta_306090(c(0.0, 0.3 * t * k)).unwrap();
            assert!(vertical.im.abs() < 1e-13);
            assert!(vertical.re < 0.0);
        }
    }

    #[test]
    fn derivative_matches_central_differences() {
        let h = 1e-6;
        for z in [c(0.5, 0.9), c(1.0, 1.2), c(0.3, 2.0)] {
            let exact = theta_306090_prime(z).unwrap();
            let fd = (theta_306090(z + c(h, 0.0)).unwrap()
                - theta_306090(z - c(h, 0.0)).unwrap())
                / (2.0 * h);
            assert!((exact - fd).norm() < 1e-6 * exact.norm(), "theta'({z})");
        }
    }

    #[test]
    fn inverse_hits_vertices_and_round_trips() {
        let k = kappa_30();
        assert!(theta_306090_inv(c(0.0, 0.0)).unwrap().norm() < 1e-12);
        assert!((theta_306090_inv(c(0.25, 0.0)).unwrap() - c(k, 0.0)).norm() < 1e-12);
        let w4 = theta_306090_inv(c(0.0, 1.0)).unwrap();
        assert!((w4 - c(0.706_581_259_9, 1.681_445_094_3)).norm() < 1e-9);
        for zeta in [c(0.1, 0.2), c(-0.4, 0.6), c(0.0, 1.5), c(0.3, 0.05)] {
            let z = theta_306090_inv(zeta).unwrap();
            let back = theta_306090(z).unwrap();
            assert!((back - zeta).norm() < 1e-9, "round trip at {zeta}: {back}");
        }
    }

    #[test]
    fn density_minimum_matches_reference_digits() {
        let k = kappa_30();
        let w0 = k * c(0.359_937_127_240_694_5, 0.406_260_405_744_530_4);
        let radius = 1.0 / h_306090(w0).unwrap();
        let hypotenuse = 2.0 * k;
        assert!((radius / hypotenuse - 0.210_570_462_244_511_47).abs() < 1e-9);
        // Closed form of the normalized maximum radius.
        let closed = 2.0_f64.powf(4.0 / 3.0) * PI
            / (5.0_f64.powf(5.0 / 12.0) * GAMMA_THIRD.powi(3));
        assert!((radius / hypotenuse - closed).abs() < 1e-10);
    }

    #[test]
    fn base_point_guards() {
        assert!(h_306090(c(0.5, -0.1)).is_err());
        assert!(h_306090(c(0.5, 1e-12)).is_err());
        let k = kappa_30();
        // The 30-degree vertex pole is reported, not returned.
        assert!(theta_306090(c(1e-11, 3.0_f64.sqrt() * k - 1e-11)).is_err());
    }
}
