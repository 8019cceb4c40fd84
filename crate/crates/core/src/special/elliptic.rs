//! Incomplete elliptic integral of the first kind, parameter form.
//!
//! F(φ, m) = ∫₀^{sin φ} dτ / (√(1−τ²) √(1−mτ²)), integrated along the
//! straight path. Branch points crossed by the path (the m > 1 case puts
//! 1/√m and 1 inside [0, sin φ]) are handled by the path integrator's
//! upper-half-plane limit, which matches displacing the contour by +iε.

use num_complex::Complex64;

use crate::quad::{AlgebraicIntegrand, Factor, PathIntegrator, QuadConfig};
use crate::{Error, Result};

/// F(φ, m) for complex amplitude and real parameter m ≥ 0, m ≠ 1.
pub fn elliptic_f(phi: Complex64, m: f64) -> Result<Complex64> {
    if m < 0.0 {
        return Err(Error::Domain(format!(
            "elliptic_f: negative parameter m = {m} is not supported"
        )));
    }
    if m == 1.0 {
        return Err(Error::Domain(
            "elliptic_f: m = 1 has a logarithmic singularity at the endpoint".into(),
        ));
    }
    let mut x = phi.sin();
    // sin(arcsin x) re-derives real endpoints with a femto-scale imaginary
    // residue; snap it so the on-axis branch convention stays in charge.
    if x.im.abs() <= 1e-13 * (1.0 + x.re.abs()) {
        x = Complex64::new(x.re, 0.0);
    }
    if x.norm() == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    if m == 0.0 {
        return Ok(x.asin());
    }
    let rm = m.sqrt();
    let f = AlgebraicIntegrand {
        scale: Complex64::new(1.0, 0.0),
        power_at_origin: 0.0,
        factors: vec![
            Factor { root: Complex64::new(1.0, 0.0), exponent: -0.5 },
            Factor { root: Complex64::new(-1.0, 0.0), exponent: -0.5 },
            Factor { root: Complex64::new(1.0 / rm, 0.0), exponent: -0.5 },
            Factor { root: Complex64::new(-1.0 / rm, 0.0), exponent: -0.5 },
        ],
    };
    let integ = PathIntegrator::new(QuadConfig::default());
    integ.integrate(&f, &[Complex64::new(0.0, 0.0), x])
}
