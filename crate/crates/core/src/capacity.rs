//! Backend selection and uniform capacity reports.
//!
//! Special shapes get exact engines: isosceles right triangles go
//! through the elliptic-function maps (sigma or Jacobi form), 30-60-90
//! triangles through their exact degree-four map; everything else uses
//! the numerical Schwarz-Christoffel map. Shape detection matches
//! angles to 1e-9, and a similarity chart (with a reflection when the
//! triangle has the mirrored handedness) carries points and radii
//! between the input triangle and the engine's reference triangle.

use num_complex::Complex64;
use std::f64::consts::SQRT_2;

use crate::geometry::Triangle;
use crate::maps::kober::{h_theta, kappa, similarity_from_unit, t0_closed_form};
use crate::maps::sigma::h_sigma;
use crate::maps::tri_30_60_90::{h_306090, kappa_30};
use crate::optim::{maximize_inner_radius, OptimizerConfig};
use crate::sc::ScMap;
use crate::{Error, Result};

/// Angle tolerance (as a fraction of π) for shape detection.
const ANGLE_TOL: f64 = 1e-9;

/// Computational engine behind a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    /// Exact isosceles-right map built on the Weierstrass sigma function.
    SigmaExact,
    /// Exact isosceles-right map built on Jacobi elliptic functions.
    JacobiExact,
    /// Exact 30-60-90 map built on Jacobi elliptic functions.
    Exact306090,
    /// Numerical Schwarz-Christoffel map; valid for every triangle.
    SchwarzChristoffel,
}

impl Backend {
    /// Stable identifier used in reports and the command line.
    pub fn name(&self) -> &'static str {
        match self {
            Backend::SigmaExact => "sigma",
            Backend::JacobiExact => "jacobi",
            Backend::Exact306090 => "exact-30-60-90",
            Backend::SchwarzChristoffel => "sc",
        }
    }
}

/// What a report answers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Query {
    /// Inner radius at a given point.
    Radius,
    /// Location of the least capacity point.
    Center,
}

impl Query {
    /// Stable identifier used in reports.
    pub fn name(&self) -> &'static str {
        match self {
            Query::Radius => "radius",
            Query::Center => "center",
        }
    }
}

/// Uniform answer record for capacity queries.
#[derive(Debug, Clone)]
pub struct CapacityReport {
    /// The analyzed triangle (vertices counterclockwise).
    pub triangle: Triangle,
    /// Engine that produced the numbers.
    pub backend: Backend,
    /// Which question was answered.
    pub query: Query,
    /// The evaluation point (given or found).
    pub point: Complex64,
    /// Inner radius at `point`.
    pub inner_radius: f64,
    /// Barycentric coordinates of `point`.
    pub barycentric: [f64; 3],
    /// Euclidean distance from `point` to the triangle's shortest side.
    pub distance_to_shortest_side: f64,
    /// Radius/map evaluations spent.
    pub evals: usize,
    /// Conservative estimate of the numerical error in the answer: in
    /// the radius for [`Query::Radius`], in the point location for
    /// [`Query::Center`].
    pub tolerance_achieved: f64,
}

/// Detected special shape, if any.
pub(crate) enum Shape {
    /// Right angle at `right`, 45-45 elsewhere.
    IsoRight { right: usize },
    /// Right angle at `right`; `direct` when the 60-degree vertex
    /// follows it counterclockwise (the reference handedness).
    Tri306090 { right: usize, direct: bool },
    Generic,
}

pub(crate) fn detect_shape(tri: &Triangle) -> Shape {
    let a = tri.angles();
    for k in 0..3 {
        if (a[k] - 0.5).abs() > ANGLE_TOL {
            continue;
        }
        let next = a[(k + 1) % 3];
        let prev = a[(k + 2) % 3];
        if (next - 0.25).abs() <= ANGLE_TOL && (prev - 0.25).abs() <= ANGLE_TOL {
            return Shape::IsoRight { right: k };
        }
        if (next - 1.0 / 3.0).abs() <= ANGLE_TOL && (prev - 1.0 / 6.0).abs() <= ANGLE_TOL {
            return Shape::Tri306090 { right: k, direct: true };
        }
        if (next - 1.0 / 6.0).abs() <= ANGLE_TOL && (prev - 1.0 / 3.0).abs() <= ANGLE_TOL {
            return Shape::Tri306090 { right: k, direct: false };
        }
    }
    Shape::Generic
}

/// Similarity between the input triangle and an engine's reference
/// triangle; `Mirrored` composes with complex conjugation, which the
/// radius (a Euclidean invariant) does not notice.
pub(crate) enum Chart {
    Direct { a: Complex64, b: Complex64 },
    Mirrored { a: Complex64, b: Complex64 },
}

impl Chart {
    pub(crate) fn to_reference(&self, w: Complex64) -> Complex64 {
        match self {
            Chart::Direct { a, b } => (w - b) / a,
            Chart::Mirrored { a, b } => ((w - b) / a).conj(),
        }
    }

    pub(crate) fn from_reference(&self, z: Complex64) -> Complex64 {
        match self {
            Chart::Direct { a, b } => a * z + b,
            Chart::Mirrored { a, b } => a * z.conj() + b,
        }
    }

    pub(crate) fn scale(&self) -> f64 {
        match self {
            Chart::Direct { a, .. } | Chart::Mirrored { a, .. } => a.norm(),
        }
    }
}

/// Chart onto the unit triangle (0, 1, i) with the right angle at the
/// origin. Isosceles right triangles are never mirrored: the two
/// 45-degree vertices are interchangeable.
pub(crate) fn iso_right_chart(tri: &Triangle, right: usize) -> Chart {
    let v = tri.vertices();
    let a = v[(right + 1) % 3] - v[right];
    Chart::Direct { a, b: v[right] }
}

/// Chart onto the reference 30-60-90 triangle (0, κ₃₀, i√3 κ₃₀).
pub(crate) fn tri_306090_chart(tri: &Triangle, right: usize, direct: bool) -> Chart {
    let v = tri.vertices();
    let k = kappa_30();
    if direct {
        let a = (v[(right + 1) % 3] - v[right]) / k;
        Chart::Direct { a, b: v[right] }
    } else {
        // The 60-degree vertex precedes the right angle counterclockwise.
        let a = (v[(right + 2) % 3] - v[right]) / k;
        Chart::Mirrored { a, b: v[right] }
    }
}

/// A resolved engine: backend plus whatever reference data it needs.
struct Engine {
    backend: Backend,
    chart: Option<Chart>,
    sc: Option<ScMap>,
}

/// One radius evaluation with its work and accuracy bookkeeping.
struct RadiusSample {
    radius: f64,
    work: usize,
    residual: f64,
}

impl Engine {
    fn new(tri: &Triangle, backend: Backend) -> Result<Engine> {
        let shape = detect_shape(tri);
        let chart = match (backend, &shape) {
            (Backend::SigmaExact | Backend::JacobiExact, Shape::IsoRight { right }) => {
                Some(iso_right_chart(tri, *right))
            }
            (Backend::SigmaExact | Backend::JacobiExact, _) => {
                return Err(Error::Domain(format!(
                    "backend {} requires an isosceles right triangle",
                    backend.name()
                )));
            }
            (Backend::Exact306090, Shape::Tri306090 { right, direct }) => {
                Some(tri_306090_chart(tri, *right, *direct))
            }
            (Backend::Exact306090, _) => {
                return Err(Error::Domain(format!(
                    "backend {} requires a 30-60-90 triangle",
                    backend.name()
                )));
            }
            (Backend::SchwarzChristoffel, _) => None,
        };
        let sc = match backend {
            Backend::SchwarzChristoffel => Some(ScMap::new(*tri)?),
            _ => None,
        };
        Ok(Engine { backend, chart, sc })
    }

    fn radius(&self, w: Complex64) -> Result<RadiusSample> {
        match self.backend {
            Backend::SigmaExact => {
                let chart = self.chart.as_ref().unwrap();
                let z = chart.to_reference(w);
                let r = chart.scale() / h_sigma(z)?;
                Ok(RadiusSample { radius: r, work: 1, residual: 0.0 })
            }
            Backend::JacobiExact => {
                let chart = self.chart.as_ref().unwrap();
                let z = chart.to_reference(w);
                let zt = similarity_from_unit(z);
                let r = chart.scale() / (SQRT_2 * kappa() * h_theta(zt)?);
                Ok(RadiusSample { radius: r, work: 1, residual: 0.0 })
            }
            Backend::Exact306090 => {
                let chart = self.chart.as_ref().unwrap();
                let z = chart.to_reference(w);
                let r = chart.scale() / h_306090(z)?;
                Ok(RadiusSample { radius: r, work: 1, residual: 0.0 })
            }
            Backend::SchwarzChristoffel => {
                let eval = self.sc.as_ref().unwrap().inner_radius(w)?;
                Ok(RadiusSample {
                    radius: eval.radius,
                    work: eval.newton_iters + 1,
                    residual: eval.residual,
                })
            }
        }
    }
}

pub(crate) fn resolve_backend(tri: &Triangle, requested: Option<Backend>) -> Backend {
    match requested {
        Some(b) => b,
        None => match detect_shape(tri) {
            Shape::IsoRight { .. } => Backend::SigmaExact,
            Shape::Tri306090 { .. } => Backend::Exact306090,
            Shape::Generic => Backend::SchwarzChristoffel,
        },
    }
}

fn report(
    tri: &Triangle,
    backend: Backend,
    query: Query,
    point: Complex64,
    inner_radius: f64,
    evals: usize,
    tolerance_achieved: f64,
) -> CapacityReport {
    CapacityReport {
        triangle: *tri,
        backend,
        query,
        point,
        inner_radius,
        barycentric: tri.barycentric(point),
        distance_to_shortest_side: tri.distance_to_side(point, tri.shortest_side()),
        evals,
        tolerance_achieved,
    }
}

/// Inner radius of `tri` at the interior point `w`. `backend` forces an
/// engine; `None` picks the best available for the shape.
pub fn radius_at(
    tri: &Triangle,
    w: Complex64,
    backend: Option<Backend>,
) -> Result<CapacityReport> {
    if tri.boundary_distance(w) <= 0.0 {
        return Err(Error::Domain(format!(
            "radius query: {w} is not interior to the triangle"
        )));
    }
    let backend = resolve_backend(tri, backend);
    let engine = Engine::new(tri, backend)?;
    let sample = engine.radius(w)?;
    let tolerance = match backend {
        Backend::SchwarzChristoffel => {
            (sample.residual + 1e-12 * tri.diameter()).max(1e-12 * sample.radius)
        }
        _ => 1e-12 * sample.radius,
    };
    Ok(report(tri, backend, Query::Radius, w, sample.radius, sample.work, tolerance))
}

/// Least capacity point of `tri`: the interior maximizer of the inner
/// radius. Isosceles right triangles get the closed-form location,
/// cross-checked against the interior search; other shapes rely on the
/// search with a Richardson-polished finish.
pub fn least_capacity_point(
    tri: &Triangle,
    backend: Option<Backend>,
) -> Result<CapacityReport> {
    let backend = resolve_backend(tri, backend);
    let engine = Engine::new(tri, backend)?;
    let cfg = OptimizerConfig::for_triangle(tri);
    let mut evals = 0usize;
    let opt = maximize_inner_radius(
        tri,
        |w| {
            let s = engine.radius(w)?;
            evals += s.work;
            Ok(s.radius)
        },
        &cfg,
    )?;
    if !opt.converged {
        return Err(Error::NoConvergence(format!(
            "least capacity point search exhausted {} evaluations",
            cfg.max_evals
        )));
    }

    match detect_shape(tri) {
        Shape::IsoRight { right }
            if matches!(backend, Backend::SigmaExact | Backend::JacobiExact) =>
        {
            let t0 = t0_closed_form()?;
            let chart = iso_right_chart(tri, right);
            let closed = chart.from_reference(Complex64::new(t0, t0));
            let agreement = (closed - opt.point).norm();
            let sample = engine.radius(closed)?;
            evals += sample.work;
            Ok(report(
                tri,
                backend,
                Query::Center,
                closed,
                sample.radius,
                evals,
                agreement.max(1e-13 * tri.diameter()),
            ))
        }
        _ => {
            let tolerance = opt.polish_step_final.max(cfg.tol_x);
            Ok(report(tri, backend, Query::Center, opt.point, opt.value, evals, tolerance))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    const T0: f64 = 0.301_121_610_841_322_081_5;
    const R0: f64 = 0.334_616_100_956_841_791_9;

    /// Unit iso-right triangle rotated, scaled, and translated.
    fn placed_iso_right(a: Complex64, b: Complex64) -> Triangle {
        Triangle::new(b, a + b, Complex64::new(0.0, 1.0) * a + b).unwrap()
    }

    #[test]
    fn auto_backend_matches_shape() {
        let iso = placed_iso_right(c(0.7, 0.4), c(-2.0, 1.0));
        assert_eq!(resolve_backend(&iso, None), Backend::SigmaExact);
        let k = kappa_30();
        let t306090 = Triangle::new(c(0.0, 0.0), c(k, 0.0), c(0.0, 3f64.sqrt() * k)).unwrap();
        assert_eq!(resolve_backend(&t306090, None), Backend::Exact306090);
        let scalene =
            Triangle::new(c(0.0, 0.0), c(6.0, 0.0), c(-13.0 / 3.0, 4.0 * 35f64.sqrt() / 3.0))
                .unwrap();
        assert_eq!(resolve_backend(&scalene, None), Backend::SchwarzChristoffel);
    }

    #[test]
    fn radius_is_similarity_covariant_for_the_exact_engine() {
        let a = c(0.7, 0.4);
        let b = c(-2.0, 1.0);
        let tri = placed_iso_right(a, b);
        let w = a * c(T0, T0) + b;
        let rep = radius_at(&tri, w, None).unwrap();
        assert_eq!(rep.backend, Backend::SigmaExact);
        assert!((rep.inner_radius - a.norm() * R0).abs() < 1e-12 * a.norm());
    }

    #[test]
    fn sigma_and_jacobi_engines_agree() {
        let tri = placed_iso_right(c(1.3, -0.2), c(0.5, 0.5));
        for &bary in &[[0.2, 0.3, 0.5], [0.6, 0.2, 0.2], [0.25, 0.5, 0.25]] {
            let w = tri.from_barycentric(bary);
            let rs = radius_at(&tri, w, Some(Backend::SigmaExact)).unwrap().inner_radius;
            let rj = radius_at(&tri, w, Some(Backend::JacobiExact)).unwrap().inner_radius;
            assert!((rs - rj).abs() < 1e-11 * rs, "sigma {rs} vs jacobi {rj}");
        }
    }

    #[test]
    fn sc_engine_agrees_with_the_exact_engine() {
        let tri = placed_iso_right(c(1.0, 0.0), c(0.0, 0.0));
        for &bary in &[[0.2, 0.3, 0.5], [0.5, 0.25, 0.25]] {
            let w = tri.from_barycentric(bary);
            let re = radius_at(&tri, w, None).unwrap().inner_radius;
            let rsc = radius_at(&tri, w, Some(Backend::SchwarzChristoffel))
                .unwrap()
                .inner_radius;
            assert!((re - rsc).abs() < 1e-9 * re, "exact {re} vs sc {rsc}");
        }
    }

    #[test]
    fn mirrored_30_60_90_chart_reaches_the_exact_engine() {
        let k = kappa_30();
        // Conjugated reference triangle placed with a similarity: its
        // counterclockwise angle order is 90-30-60, the mirror image.
        let a = c(2.0, 1.0);
        let b = c(1.0, -3.0);
        let refv = [c(0.0, 0.0), c(k, 0.0), c(0.0, 3f64.sqrt() * k)];
        let tri =
            Triangle::new(a * refv[0].conj() + b, a * refv[1].conj() + b, a * refv[2].conj() + b)
                .unwrap();
        let w0_ref = k * c(0.359_937_127_240_694_5, 0.406_260_405_744_530_4);
        let w = a * w0_ref.conj() + b;
        let rep = radius_at(&tri, w, None).unwrap();
        assert_eq!(rep.backend, Backend::Exact306090);
        let expect = a.norm() * 2.0 * k * 0.210_570_462_244_511_47;
        assert!((rep.inner_radius - expect).abs() < 1e-9 * expect);
    }

    #[test]
    fn backend_shape_mismatch_is_rejected() {
        let scalene =
            Triangle::new(c(0.0, 0.0), c(6.0, 0.0), c(-13.0 / 3.0, 4.0 * 35f64.sqrt() / 3.0))
                .unwrap();
        assert!(radius_at(&scalene, c(0.5, 0.5), Some(Backend::SigmaExact)).is_err());
        assert!(radius_at(&scalene, c(0.5, 0.5), Some(Backend::JacobiExact)).is_err());
        assert!(radius_at(&scalene, c(0.5, 0.5), Some(Backend::Exact306090)).is_err());
        // Schwarz-Christoffel accepts everything.
        assert!(radius_at(&scalene, c(0.5, 0.5), Some(Backend::SchwarzChristoffel)).is_ok());
    }

    #[test]
    fn exterior_point_is_rejected() {
        let tri = placed_iso_right(c(1.0, 0.0), c(0.0, 0.0));
        assert!(radius_at(&tri, c(2.0, 2.0), None).is_err());
        assert!(radius_at(&tri, c(0.5, 0.5), None).is_err());
    }

    #[test]
    fn least_capacity_point_iso_right_closed_form() {
        let a = c(0.9, 0.3);
        let b = c(0.2, -0.7);
        let tri = placed_iso_right(a, b);
        let rep = least_capacity_point(&tri, None).unwrap();
        assert_eq!(rep.query, Query::Center);
        let expect = a * c(T0, T0) + b;
        assert!((rep.point - expect).norm() < 1e-11 * a.norm(), "point {}", rep.point);
        assert!((rep.inner_radius - a.norm() * R0).abs() < 1e-12 * a.norm());
        assert!(rep.tolerance_achieved < 1e-8 * tri.diameter());
        // The Jacobi engine lands on the same point.
        let rep2 = least_capacity_point(&tri, Some(Backend::JacobiExact)).unwrap();
        assert!((rep2.point - expect).norm() < 1e-11 * a.norm());
    }

    #[test]
    fn least_capacity_point_30_60_90() {
        let k = kappa_30();
        let tri = Triangle::new(c(0.0, 0.0), c(k, 0.0), c(0.0, 3f64.sqrt() * k)).unwrap();
        let rep = least_capacity_point(&tri, None).unwrap();
        assert_eq!(rep.backend, Backend::Exact306090);
        let w0 = k * c(0.359_937_127_240_694_5, 0.406_260_405_744_530_4);
        assert!((rep.point - w0).norm() < 1e-9, "point {} vs {w0}", rep.point);
        let r = 2.0 * k * 0.210_570_462_244_511_47;
        assert!((rep.inner_radius - r).abs() < 1e-10);
    }

    #[test]
    fn least_capacity_point_sc_scalene() {
        let tri =
            Triangle::new(c(0.0, 0.0), c(6.0, 0.0), c(-13.0 / 3.0, 4.0 * 35f64.sqrt() / 3.0))
                .unwrap();
        let rep = least_capacity_point(&tri, None).unwrap();
        assert_eq!(rep.backend, Backend::SchwarzChristoffel);
        let w_star = c(0.929_618_878_685_846_406, 1.842_562_537_464_447_414);
        assert!((rep.point - w_star).norm() < 1e-6, "point {}", rep.point);
        assert!((rep.inner_radius - 1.979_479_831_402_717_53).abs() < 1e-8);
        assert!(rep.evals > 0);
    }

    #[test]
    fn center_barycentric_is_similarity_invariant() {
        let tri =
            Triangle::new(c(0.0, 0.0), c(6.0, 0.0), c(-13.0 / 3.0, 4.0 * 35f64.sqrt() / 3.0))
                .unwrap();
        let a = c(0.6, -1.1);
        let b = c(2.0, 3.0);
        let v = tri.vertices();
        let moved = Triangle::new(a * v[0] + b, a * v[1] + b, a * v[2] + b).unwrap();
        let base = least_capacity_point(&tri, None).unwrap();
        let image = least_capacity_point(&moved, None).unwrap();
        for k in 0..3 {
            assert!(
                (base.barycentric[k] - image.barycentric[k]).abs() < 1e-9,
                "coordinate {k}: {} vs {}",
                base.barycentric[k],
                image.barycentric[k]
            );
        }
    }

    #[test]
    fn report_geometry_fields_are_consistent() {
        let tri = placed_iso_right(c(1.0, 0.0), c(0.0, 0.0));
        let w = c(0.3, 0.25);
        let rep = radius_at(&tri, w, None).unwrap();
        let back = tri.from_barycentric(rep.barycentric);
        assert!((back - w).norm() < 1e-13);
        // Shortest side of the unit iso-right triangle is a leg.
        assert!(rep.distance_to_shortest_side > 0.0);
        assert!(rep.evals >= 1);
        assert_eq!(rep.query.name(), "radius");
        assert_eq!(rep.backend.name(), "sigma");
    }
}
