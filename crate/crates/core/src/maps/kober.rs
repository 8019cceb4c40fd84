//! Jacobi-function map of the isosceles right triangle T̃ with vertices
//! (−κ, κ, iκ), where κ = K(1/2)/√2.
//!
//! θ(z) = √2·sn(√2 z|1/2)·dn(√2 z|1/2) maps T̃ onto the upper half
//! plane with (−κ, κ, iκ) ↦ (−1, 1, ∞). The disk map with base point w
//! is the Möbius quotient (θ(z) − θ(w))/(θ(z) − conj θ(w)), and the
//! density h is read off from its derivative at w.

use num_complex::Complex64;
use std::f64::consts::SQRT_2;

use crate::special::{elliptic_f, elliptic_k, gauss_2f1, jacobi_sn_cn_dn};
use crate::{Error, Result};

/// Allowed excursion outside the closed triangle.
const CLOSURE_SLACK: f64 = 1e-9;

/// Minimum interior margin for base points of the disk map.
const BASE_MARGIN: f64 = 1e-9;

/// Half the hypotenuse of T̃: κ = K(1/2)/√2 = 1.3110287771…
pub fn kappa() -> f64 {
    elliptic_k(0.5).expect("modulus 1/2 is inside the parameter domain") / SQRT_2
}

/// Signed distance from z to the boundary of T̃, positive inside.
pub fn kober_triangle_margin(z: Complex64) -> f64 {
    let k = kappa();
    let base = z.im;
    let right = (k - z.re - z.im) / SQRT_2;
    let left = (k + z.re - z.im) / SQRT_2;
    base.min(right).min(left)
}

/// θ(z) = √2·sn(√2 z)·dn(√2 z) at modulus m = 1/2, mapping T̃ onto the
/// closed upper half plane with (−κ, κ, iκ) ↦ (−1, 1, ∞).
pub fn theta_iso(z: Complex64) -> Result<Complex64> {
    if kober_triangle_margin(z) < -CLOSURE_SLACK {
        return Err(Error::Domain(format!(
            "theta_iso: {z} is outside the closed triangle"
        )));
    }
    let (sn, _, dn) = jacobi_sn_cn_dn(SQRT_2 * z, 0.5)?;
    Ok(SQRT_2 * sn * dn)
}

/// dθ/dz = 2·cn(u)·(dn(u)² − sn(u)²/2) with u = √2 z.
pub fn theta_iso_prime(z: Complex64) -> Result<Complex64> {
    if kober_triangle_margin(z) < -CLOSURE_SLACK {
        return Err(Error::Domain(format!(
            "theta_iso_prime: {z} is outside the closed triangle"
        )));
    }
    let (sn, cn, dn) = jacobi_sn_cn_dn(SQRT_2 * z, 0.5)?;
    Ok(2.0 * cn * (dn * dn - 0.5 * sn * sn))
}

/// θ⁻¹(ζ) = (ζ/2)·₂F₁(1/2, 3/4; 3/2; ζ²) for ζ in the closed upper
/// half plane with |ζ| away from the branch points ±1 handled by the
/// hypergeometric continuation.
pub fn theta_iso_inv(zeta: Complex64) -> Result<Complex64> {
    // θ is odd with real coefficients, so θ⁻¹(−conj ζ) = −conj θ⁻¹(ζ).
    // Reducing to Re ζ ≥ 0 keeps squared boundary arguments on the
    // upper side of the [1, ∞) cut, where the continuation takes its
    // boundary values.
    if zeta.re < 0.0 {
        return Ok(-theta_iso_inv(-zeta.conj())?.conj());
    }
    let f = gauss_2f1(0.5, 0.75, 1.5, zeta * zeta)?;
    Ok(0.5 * zeta * f)
}

/// Disk-normalized map of T̃ with base point w: (θ(z) − θ(w))/(θ(z) −
/// conj θ(w)). Sends w to 0 and the boundary to the unit circle.
pub fn f_w_theta(z: Complex64, w: Complex64) -> Result<Complex64> {
    if kober_triangle_margin(w) < BASE_MARGIN {
        return Err(Error::Domain(format!(
            "f_w_theta: base point {w} is not interior to the triangle"
        )));
    }
    let tw = theta_iso(w)?;
    let tz = theta_iso(z)?;
    Ok((tz - tw) / (tz - tw.conj()))
}

/// Boundary density h(w) = |θ′(w)| / (2·Im θ(w)); its reciprocal is the
/// inner radius of T̃ at w.
pub fn h_theta(w: Complex64) -> Result<f64> {
    if kober_triangle_margin(w) < BASE_MARGIN {
        return Err(Error::Domain(format!(
            "h_theta: base point {w} is not interior to the triangle"
        )));
    }
    let tw = theta_iso(w)?;
    let tpw = theta_iso_prime(w)?;
    Ok(tpw.norm() / (tw - tw.conj()).norm())
}

/// Residual of the symmetry-axis optimality condition at w = iy:
/// dn(i√2 y | 1/2) − √((1+√3)/2). The inner radius on the axis is
/// critical exactly at the root.
pub fn axis_critical_equation(y: f64) -> Result<f64> {
    let (_, _, dn) = jacobi_sn_cn_dn(Complex64::new(0.0, SQRT_2 * y), 0.5)?;
    let target = ((1.0 + 3.0_f64.sqrt()) / 2.0).sqrt();
    Ok(dn.re - target)
}

/// Diagonal coordinate t₀ of the least capacity point (1+i)t₀ of the
/// unit triangle (0, 1, i), in closed form: the axis-critical root
/// dn(i√2 y | 1/2) = √((1+√3)/2) solved by inverting the elliptic
/// integral of the first kind at parameter 2.
pub fn t0_closed_form() -> Result<f64> {
    let x = ((1.0 + 3.0_f64.sqrt()) / 2.0).sqrt();
    let phi = Complex64::new(x, 0.0).asin();
    Ok(elliptic_f(phi, 2.0)?.re / (2.0 * kappa()))
}

/// Similarity taking T̃ onto the unit triangle: (iκ, −κ, κ) ↦ (0, 1, i).
pub fn similarity_to_unit(z: Complex64) -> Complex64 {
    let k = kappa();
    let half = Complex64::new(0.5, 0.5);
    -z / (k * Complex64::new(1.0, 1.0)) + half
}

/// Inverse similarity taking the unit triangle onto T̃.
pub fn similarity_from_unit(z: Complex64) -> Complex64 {
    let k = kappa();
    let half = Complex64::new(0.5, 0.5);
    k * Complex64::new(1.0, 1.0) * (half - z)
}

/// h(iy) on the symmetry axis in closed Jacobi form,
/// |cn³/(√2·sn·dn)| at i√2 y; used to cross-check the generic h.
#[cfg(test)]
fn h_theta_axis(y: f64) -> f64 {
    let (sn, cn, dn) = jacobi_sn_cn_dn(Complex64::new(0.0, SQRT_2 * y), 0.5).unwrap();
    ((cn * cn * cn) / (SQRT_2 * sn * dn)).norm()
}
