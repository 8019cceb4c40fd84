//! Numerical Schwarz-Christoffel map from the unit disk onto an
//! arbitrary triangle.
//!
//! With prevertices pinned at the cube roots of unity there is no
//! parameter problem: the angle exponents already determine the image
//! up to similarity, and the affine constants are fixed by matching two
//! vertices. The third vertex then lands on its target up to quadrature
//! error, which is kept as a closure diagnostic.
//!
//! The map is f(ζ) = A + C·∫₀^ζ ∏_k (1 − s/z_k)^{α_k − 1} ds with
//! α_k the interior angles as fractions of π. Every factor has positive
//! real part inside the disk, so principal powers are branch-safe, and
//! segments ending at a prevertex absorb the singular factor into a
//! Gauss-Jacobi weight.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::geometry::Triangle;
use crate::quad::{AlgebraicIntegrand, Factor, PathIntegrator, QuadConfig};
use crate::{Error, Result};

/// Nodes per quadrature segment; enough for spectral accuracy since
/// subdivision keeps singularities at least half a segment away.
const QUAD_NODES: usize = 48;

/// Evaluation points closer to a prevertex than this are reached by
/// integrating from that prevertex instead of from the disk center.
const NEAR_VERTEX_RADIUS: f64 = 0.5;

/// Newton iterates are kept strictly inside the disk.
const DISK_CAP: f64 = 1.0 - 1e-12;

/// Inner-radius queries must keep this fraction of the diameter between
/// the point and the boundary.
const BOUNDARY_MARGIN: f64 = 1e-6;

/// Disk-to-triangle Schwarz-Christoffel map with prevertices at the
/// cube roots of unity.
pub struct ScMap {
    triangle: Triangle,
    prevertices: [Complex64; 3],
    alpha: [f64; 3],
    offset: Complex64,
    scale: Complex64,
    vertex_values: [Complex64; 3],
    closure_residual: f64,
    integrator: PathIntegrator,
}

/// Inner radius of a triangle at an interior point, together with the
/// inversion diagnostics that produced it.
#[derive(Debug, Clone, Copy)]
pub struct InnerRadiusEval {
    /// The queried interior point.
    pub point: Complex64,
    /// Its preimage in the unit disk.
    pub preimage: Complex64,
    /// |f′(preimage)|·(1 − |preimage|²).
    pub radius: f64,
    /// Newton steps spent inverting the map.
    pub newton_iters: usize,
    /// Final inversion residual |f(preimage) − point|.
    pub residual: f64,
}

impl ScMap {
    /// Builds the map onto `triangle`.
    pub fn new(triangle: Triangle) -> Result<ScMap> {
        let alpha = triangle.angles();
        let prevertices = [0, 1, 2].map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / 3.0));
        let integrator = PathIntegrator::new(QuadConfig::fixed(QUAD_NODES));
        let integrand = AlgebraicIntegrand {
            scale: Complex64::new(1.0, 0.0),
            power_at_origin: 0.0,
            factors: prevertices
                .iter()
                .zip(alpha.iter())
                .map(|(&z, &a)| Factor { root: z, exponent: a - 1.0 })
                .collect(),
        };
        let origin = Complex64::new(0.0, 0.0);
        let mut chords = [Complex64::new(0.0, 0.0); 3];
        for k in 0..3 {
            chords[k] = integrator.integrate(&integrand, &[origin, prevertices[k]])?;
        }
        let v = triangle.vertices();
        let scale = (v[1] - v[0]) / (chords[1] - chords[0]);
        let offset = v[0] - scale * chords[0];
        let vertex_values = chords.map(|i| offset + scale * i);
        let closure_residual = (vertex_values[2] - v[2]).norm();
        Ok(ScMap {
            triangle,
            prevertices,
            alpha,
            offset,
            scale,
            vertex_values,
            closure_residual,
            integrator,
        })
    }

    /// The image triangle.
    pub fn triangle(&self) -> &Triangle {
        &self.triangle
    }

    /// Prevertices on the unit circle, in vertex order.
    pub fn prevertices(&self) -> [Complex64; 3] {
        self.prevertices
    }

    /// Distance between the computed and prescribed third vertex; a
    /// quadrature health check, zero in exact arithmetic.
    pub fn closure_residual(&self) -> f64 {
        self.closure_residual
    }

    fn integrand(&self) -> AlgebraicIntegrand {
        AlgebraicIntegrand {
            scale: Complex64::new(1.0, 0.0),
            power_at_origin: 0.0,
            factors: self
                .prevertices
                .iter()
                .zip(self.alpha.iter())
                .map(|(&z, &a)| Factor { root: z, exponent: a - 1.0 })
                .collect(),
        }
    }

    /// f(ζ) for ζ in the closed unit disk. Points near a prevertex are
    /// reached from that prevertex so the endpoint singularity is
    /// absorbed exactly.
    pub fn eval(&self, zeta: Complex64) -> Result<Complex64> {
        if zeta.norm() > 1.0 + 1e-12 {
            return Err(Error::Domain(format!(
                "sc eval: {zeta} is outside the closed unit disk"
            )));
        }
        let integrand = self.integrand();
        let (k, d) = self.nearest_prevertex(zeta);
        let (start, base) = if d < NEAR_VERTEX_RADIUS {
            (self.prevertices[k], self.vertex_values[k])
        } else {
            (Complex64::new(0.0, 0.0), self.offset)
        };
        let integral = self.integrator.integrate(&integrand, &[start, zeta])?;
        Ok(base + self.scale * integral)
    }

    /// f′(ζ) = C·∏(1 − ζ/z_k)^{α_k − 1}; diverges at the prevertices.
    pub fn deriv(&self, zeta: Complex64) -> Result<Complex64> {
        let (_, d) = self.nearest_prevertex(zeta);
        if d < 1e-12 {
            return Err(Error::NearSingularity(format!(
                "sc deriv: {zeta} is at a prevertex"
            )));
        }
        let mut v = self.scale;
        for (&z, &a) in self.prevertices.iter().zip(self.alpha.iter()) {
            v *= (Complex64::new(1.0, 0.0) - zeta / z).powf(a - 1.0);
        }
        Ok(v)
    }

    fn nearest_prevertex(&self, zeta: Complex64) -> (usize, f64) {
        let mut best = (0, f64::INFINITY);
        for (k, &z) in self.prevertices.iter().enumerate() {
            let d = (zeta - z).norm();
            if d < best.1 {
                best = (k, d);
            }
        }
        best
    }

    /// Preimage of an interior point `w`, found by an 8-step explicit
    /// predictor along the straight path from f(0) to w followed by
    /// Newton iteration. Returns the preimage with the step count and
    /// final residual.
    pub fn invert(&self, w: Complex64) -> Result<(Complex64, usize, f64)> {
        if self.triangle.boundary_distance(w) <= 0.0 {
            return Err(Error::Domain(format!(
                "sc invert: {w} is not interior to the triangle"
            )));
        }
        let tol = 1e-12 * self.triangle.diameter();
        let mut zeta = Complex64::new(0.0, 0.0);
        // Predictor: dζ/dt = (w − f(0))/f′(ζ) moves f(ζ(t)) along the
        // chord from f(0) to w in exact arithmetic.
        let chord = w - self.offset;
        for _ in 0..8 {
            let fp = self.deriv(zeta)?;
            zeta += chord / (8.0 * fp);
            zeta = clamp_to_disk(zeta);
        }
        let mut residual = f64::INFINITY;
        for it in 0..50 {
            let f = self.eval(zeta)?;
            residual = (f - w).norm();
            if residual <= tol {
                return Ok((zeta, it, residual));
            }
            let fp = self.deriv(zeta)?;
            zeta -= (f - w) / fp;
            zeta = clamp_to_disk(zeta);
        }
        Err(Error::NoConvergence(format!(
            "sc invert: Newton stalled at residual {residual:.3e} for {w}"
        )))
    }

    /// Inner radius |f′(ζ)|·(1 − |ζ|²) at the preimage ζ of `w`.
    pub fn inner_radius(&self, w: Complex64) -> Result<InnerRadiusEval> {
        let margin = BOUNDARY_MARGIN * self.triangle.diameter();
        if self.triangle.boundary_distance(w) < margin {
            return Err(Error::NearSingularity(format!(
                "inner radius: {w} is within {margin:.3e} of the boundary"
            )));
        }
        let (zeta, newton_iters, residual) = self.invert(w)?;
        let fp = self.deriv(zeta)?;
        let radius = fp.norm() * (1.0 - zeta.norm_sqr());
        Ok(InnerRadiusEval { point: w, preimage: zeta, radius, newton_iters, residual })
    }
}

fn clamp_to_disk(zeta: Complex64) -> Complex64 {
    let r = zeta.norm();
    if r > DISK_CAP {
        zeta * (DISK_CAP / r)
    } else {
        zeta
    }
}
