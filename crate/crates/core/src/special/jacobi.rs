//! Jacobi elliptic functions sn, cn, dn and the complete integral K.
//!
//! Parameter convention: everything takes the PARAMETER m = k², not the
//! modulus k. Real arguments use the arithmetic-geometric-mean descent;
//! complex arguments u = x + iy combine real evaluations at parameter m
//! (for x) and 1 − m (for y) through the standard addition decomposition,
//! so no complex AGM branches are ever needed.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::{Error, Result};

/// Complete elliptic integral of the first kind, K(m) = F(π/2, m),
/// via AGM. Requires m < 1.
pub fn elliptic_k(m: f64) -> Result<f64> {
    if m >= 1.0 {
        return Err(Error::Domain(format!(
            "elliptic_k: parameter m = {m} must be < 1"
        )));
    }
    let mut a = 1.0_f64;
    let mut b = (1.0 - m).sqrt();
    for _ in 0..64 {
        if (a - b).abs() <= f64::EPSILON * a {
            break;
        }
        let an = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = an;
    }
    Ok(PI / (2.0 * a))
}

/// sn, cn, dn of a real argument, m ∈ [0, 1], by AGM descent.
fn sncndn_real(u: f64, m: f64) -> (f64, f64, f64) {
    debug_assert!((0.0..=1.0).contains(&m));
    if m == 0.0 {
        return (u.sin(), u.cos(), 1.0);
    }
    if m == 1.0 {
        let c = 1.0 / u.cosh();
        return (u.tanh(), c, c);
    }
    // Ascending AGM scale with a0 = 1, b0 = √(1−m), c0 = √m.
    let mut a = vec![1.0_f64];
    let mut c = vec![m.sqrt()];
    let mut b = (1.0 - m).sqrt();
    while *c.last().unwrap() > f64::EPSILON * a.last().unwrap() {
        let (an, bn) = (a.last().unwrap() + b, a.last().unwrap() * b);
        c.push(0.5 * (a.last().unwrap() - b));
        a.push(0.5 * an);
        b = bn.sqrt();
        assert!(a.len() < 64, "AGM failed to converge");
    }
    let n = a.len() - 1;
    // Descend the amplitude: sin(2φ_{k−1} − φ_k) = (c_k/a_k) sin φ_k.
    let mut phi = 2f64.powi(n as i32) * a[n] * u;
    for k in (1..=n).rev() {
        let s = ((c[k] / a[k]) * phi.sin()).clamp(-1.0, 1.0);
        phi = 0.5 * (phi + s.asin());
    }
    let (sn, cn) = (phi.sin(), phi.cos());
    // dn never vanishes on the real axis for m < 1, so the defining
    // identity is stable where the amplitude-quotient form is 0/0.
    let dn = (1.0 - m * sn * sn).sqrt();
    (sn, cn, dn)
}

/// sn, cn, dn at complex argument, m strictly inside (0, 1).
///
/// Fails near the poles u ≡ iK′ (mod 2K, 2iK′), where the common
/// denominator of the addition decomposition vanishes.
pub fn jacobi_sn_cn_dn(u: Complex64, m: f64) -> Result<(Complex64, Complex64, Complex64)> {
    if !(0.0 < m && m < 1.0) {
        return Err(Error::Domain(format!(
            "jacobi_sn_cn_dn: parameter m = {m} must lie in (0, 1)"
        )));
    }
    let (s, c, d) = sncndn_real(u.re, m);
    let (s1, c1, d1) = sncndn_real(u.im, 1.0 - m);
    let den = c1 * c1 + m * (s * s1) * (s * s1);
    if den.abs() < 1e-12 {
        return Err(Error::NearSingularity(format!(
            "jacobi_sn_cn_dn: u = {u} is too close to a pole"
        )));
    }
    let i = Complex64::new(0.0, 1.0);
    let sn = (Complex64::new(s * d1, 0.0) + i * (c * d * s1 * c1)) / den;
    let cn = (Complex64::new(c * c1, 0.0) - i * (s * d * s1 * d1)) / den;
    let dn = (Complex64::new(d * c1 * d1, 0.0) - i * (m * s * c * s1)) / den;
    Ok((sn, cn, dn))
}
