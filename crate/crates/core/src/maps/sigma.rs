//! Disk map of the unit isosceles right triangle from Weierstrass sigma.
//!
//! T = {x > 0, y > 0, x + y < 1}. Reflecting T across the hypotenuse
//! yields the unit square, whose double is a fundamental cell of the
//! lattice Λ = {2m + 2ni}; the Green's function of T with pole at w is
//! then realizable as a ratio of sigma factors, zeros at the reflections
//! of w and poles at the reflections of its mirror point
//! w′ = 1 + i − i·conj(w).

use num_complex::Complex64;

use crate::special::{weierstrass_sigma, Lattice};
use crate::{Error, Result};

/// Interior margin demanded of base points.
const BOUNDARY_GUARD: f64 = 1e-9;

/// Proximity to a pole of f_w at which evaluation refuses to proceed.
const POLE_GUARD: f64 = 1e-12;

/// Base-point data of the sigma-quotient disk map f_w.
#[derive(Debug, Clone, Copy)]
pub struct SigmaMapContext {
    /// Base point, strictly inside T.
    pub w: Complex64,
    /// Reflection of w across the hypotenuse.
    pub w_prime: Complex64,
    /// Normalizing constant making f_w(1) = 1.
    pub c_w: Complex64,
    /// Square-lattice constants shared by every sigma evaluation.
    pub lat: Lattice,
}

/// Signed distance of w from the boundary of T (positive inside).
pub fn unit_triangle_margin(w: Complex64) -> f64 {
    w.re.min(w.im).min((1.0 - w.re - w.im) / std::f64::consts::SQRT_2)
}

impl SigmaMapContext {
    /// Prepares the map data for a base point strictly inside T.
    pub fn new(w: Complex64) -> Result<SigmaMapContext> {
        if unit_triangle_margin(w) < BOUNDARY_GUARD {
            return Err(Error::Domain(format!(
                "sigma map: base point {w} is not strictly inside the unit triangle"
            )));
        }
        let lat = Lattice::square();
        let w_prime = Complex64::new(1.0, 1.0) - Complex64::new(0.0, 1.0) * w.conj();
        let one = Complex64::new(1.0, 0.0);
        let s = |z: Complex64| weierstrass_sigma(z, &lat);
        let c_w = (s(one - w_prime) * s(one + w_prime) * s(one - w.conj()) * s(one + w.conj()))
            / (s(one - w) * s(one + w) * s(one - w_prime.conj()) * s(one + w_prime.conj()));
        Ok(SigmaMapContext { w, w_prime, c_w, lat })
    }
}

/// The disk map f_w as a sigma quotient: zero at w, modulus 1 on ∂T,
/// f_w(1) = 1.
///
/// The quotient is doubly periodic in z, so evaluation is deliberately
/// not restricted to T (the reflection identities across the extended
/// boundary need exterior samples); only the poles are guarded.
pub fn f_w_sigma(z: Complex64, ctx: &SigmaMapContext) -> Result<Complex64> {
    let poles = [
        ctx.w_prime,
        -ctx.w_prime,
        ctx.w.conj(),
        -ctx.w.conj(),
    ];
    for p in poles {
        if lattice_distance(z - p) < POLE_GUARD * (1.0 + z.norm()) {
            return Err(Error::NearSingularity(format!(
                "f_w_sigma: z = {z} is at a pole of the reflected map"
            )));
        }
    }
    let s = |v: Complex64| weierstrass_sigma(v, &ctx.lat);
    let num = s(z - ctx.w) * s(z + ctx.w) * s(z - ctx.w_prime.conj()) * s(z + ctx.w_prime.conj());
    let den = s(z - ctx.w_prime) * s(z + ctx.w_prime) * s(z - ctx.w.conj()) * s(z + ctx.w.conj());
    Ok(ctx.c_w * num / den)
}

/// The capacity kernel h(w) = lim_{z→w} |f_w(z)/(z − w)|; the inner
/// radius of T relative to w is 1/h(w).
pub fn h_sigma(w: Complex64) -> Result<f64> {
    let ctx = SigmaMapContext::new(w)?;
    let s = |v: Complex64| weierstrass_sigma(v, &ctx.lat);
    let wp = ctx.w_prime;
    let num = s(2.0 * w) * s(w - wp.conj()) * s(w + wp.conj());
    let den = s(w - wp) * s(w + wp) * s(w - w.conj()) * s(w + w.conj());
    Ok((ctx.c_w * num / den).norm())
}

/// Distance from v to the nearest point of Λ = 2ℤ + 2iℤ.
fn lattice_distance(v: Complex64) -> f64 {
    Complex64::new(
        v.re - 2.0 * (v.re / 2.0).round(),
        v.im - 2.0 * (v.im / 2.0).round(),
    )
    .norm()
}
