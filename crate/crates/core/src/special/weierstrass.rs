//! Weierstrass σ, ℘ and ℘′ on the square lattice Λ = {2m + 2ni}.
//!
//! All three are evaluated through the θ₁ series:
//!
//! ```text
//!   σ(z) = exp(η₁ z²/2) θ₁(πz/2) / ((π/2) θ₁′(0))
//!   ℘(z) = −η₁ − (π/2)² (log θ₁)″(πz/2)
//!   ℘′(z) = −(π/2)³ (log θ₁)‴(πz/2)
//! ```
//!
//! which converge in a few terms, unlike the defining lattice sums.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::theta::{theta1_batch, Lattice};
use crate::{Error, Result};

/// Minimum distance from the lattice accepted by ℘ and ℘′.
const POLE_GUARD: f64 = 1e-12;

/// Reduces z modulo the period lattice 2ℤ + 2iℤ into |Re|, |Im| ≤ 1.
fn reduce(z: Complex64) -> Complex64 {
    Complex64::new(
        z.re - 2.0 * (z.re / 2.0).round(),
        z.im - 2.0 * (z.im / 2.0).round(),
    )
}

/// Weierstrass sigma; entire, odd, σ(z) = z + O(z⁵) near 0.
///
/// Accurate to better than 1e-12 relative for |z| ≤ 3; the argument is
/// deliberately not reduced (σ is only quasi-periodic).
pub fn weierstrass_sigma(z: Complex64, lat: &Lattice) -> Complex64 {
    let v = z * (PI / 2.0);
    let th = theta1_batch(v, lat.nome_q);
    let gauss = (z * z * (lat.eta1 / 2.0)).exp();
    gauss * th[0] / ((PI / 2.0) * lat.theta1_prime0)
}

/// Weierstrass ℘ for the square lattice; fails within [`POLE_GUARD`] of Λ.
pub fn weierstrass_p(z: Complex64, lat: &Lattice) -> Result<Complex64> {
    let zr = reduce(z);
    if zr.norm() < POLE_GUARD {
        return Err(Error::NearSingularity(format!(
            "weierstrass_p: z = {z} lies on the period lattice"
        )));
    }
    let v = zr * (PI / 2.0);
    let th = theta1_batch(v, lat.nome_q);
    let log_dd = (th[2] * th[0] - th[1] * th[1]) / (th[0] * th[0]);
    Ok(-lat.eta1 - (PI / 2.0) * (PI / 2.0) * log_dd)
}

/// Derivative ℘′; same pole guard as [`weierstrass_p`].
pub fn weierstrass_p_prime(z: Complex64, lat: &Lattice) -> Result<Complex64> {
    let zr = reduce(z);
    if zr.norm() < POLE_GUARD {
        return Err(Error::NearSingularity(format!(
            "weierstrass_p_prime: z = {z} lies on the period lattice"
        )));
    }
    let v = zr * (PI / 2.0);
    let th = theta1_batch(v, lat.nome_q);
    let t0 = th[0];
    let log_ddd = (th[3] * t0 * t0 - 3.0 * th[2] * th[1] * t0 + 2.0 * th[1] * th[1] * th[1])
        / (t0 * t0 * t0);
    Ok(-(PI / 2.0).powi(3) * log_ddd)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat() -> Lattice {
        Lattice::square()
    }

    #[test]
    fn p_at_one_matches_quartic_gamma_value() {
        let p1 = weierstrass_p(Complex64::new(1.0, 0.0), &lat()).unwrap();
        assert!((p1.re - 1.7187964545050932).abs() < 1e-12);
        assert!(p1.im.abs() < 1e-13);
    }

    #[test]
    fn p_rotation_antisymmetry() {
        // i·Λ = Λ and homogeneity give ℘(iz) = −℘(z).
        let l = lat();
        let z = Complex64::new(0.4, 0.1);
        let a = weierstrass_p(Complex64::new(0.0, 1.0) * z, &l).unwrap();
        let b = weierstrass_p(z, &l).unwrap();
        assert!((a + b).norm() < 1e-12 * b.norm().max(1.0));
    }

    #[test]
    fn p_differential_equation() {
        // (℘′)² = 4℘³ − g₂℘ (g₃ = 0 here).
        let l = lat();
        let z = Complex64::new(0.35, 0.25);
        let p = weierstrass_p(z, &l).unwrap();
        let dp = weierstrass_p_prime(z, &l).unwrap();
        let residual = dp * dp - (4.0 * p * p * p - l.g2 * p);
        assert!(residual.norm() < 1e-9, "residual {residual}");
    }

    #[test]
    fn p_lattice_periodicity() {
        let l = lat();
        let z = Complex64::new(0.31, 0.47);
        let p = weierstrass_p(z, &l).unwrap();
        let p_re = weierstrass_p(z + Complex64::new(2.0, 0.0), &l).unwrap();
        let p_im = weierstrass_p(z + Complex64::new(0.0, 2.0), &l).unwrap();
        assert!((p - p_re).norm() < 1e-10);
        assert!((p - p_im).norm() < 1e-10);
    }

    #[test]
    fn p_pole_guard() {
        let l = lat();
        assert!(weierstrass_p(Complex64::new(2.0, -2.0), &l).is_err());
        assert!(weierstrass_p(Complex64::new(0.0, 0.0), &l).is_err());
    }

    #[test]
    fn sigma_is_odd_and_z_like_at_origin() {
        let l = lat();
        let z = Complex64::new(0.62, -0.38);
        let a = weierstrass_sigma(z, &l);
        let b = weierstrass_sigma(-z, &l);
        assert!((a + b).norm() < 1e-13 * a.norm());
        // σ(z)/z → 1 with a quartic correction.
        let eps = Complex64::new(1e-4, 0.0);
        let ratio = weierstrass_sigma(eps, &l) / eps;
        assert!((ratio.re - 1.0).abs() < 1e-14);
    }

    #[test]
    fn sigma_quasi_periodicity_both_directions() {
        let l = lat();
        let z = Complex64::new(0.27, 0.53);
        // σ(z+2ω) = −exp(2η(z+ω)) σ(z) for ω = 1 (η = η₁) and ω = i
        // (η = −iη₁ by the quarter-turn symmetry of Λ).
        let s = weierstrass_sigma(z, &l);
        let s1 = weierstrass_sigma(z + Complex64::new(2.0, 0.0), &l);
        let f1 = -((z + 1.0) * 2.0 * l.eta1).exp();
        assert!((s1 - f1 * s).norm() < 1e-10 * s1.norm());
        let s2 = weierstrass_sigma(z + Complex64::new(0.0, 2.0), &l);
        let eta2 = Complex64::new(0.0, -l.eta1);
        let f2 = -((z + Complex64::new(0.0, 1.0)) * 2.0 * eta2).exp();
        assert!((s2 - f2 * s).norm() < 1e-10 * s2.norm());
    }

    #[test]
    fn p_is_second_log_derivative_of_sigma() {
        // ℘ = −(log σ)″, checked by central differences.
        let l = lat();
        let z = Complex64::new(0.45, 0.33);
        let h = 1e-4;
        let ls = |w: Complex64| weierstrass_sigma(w, &l).ln();
        let second = (ls(z + h) - 2.0 * ls(z) + ls(z - h)) / Complex64::new(h * h, 0.0);
        let p = weierstrass_p(z, &l).unwrap();
        assert!((second + p).norm() < 1e-6);
    }
}
