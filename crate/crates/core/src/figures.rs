//! Images of the polar grid of the unit disk inside a triangle.
//!
//! For a base point `w` the figure draws the conformal map
//! `g: disk -> T` with `g(0) = w`: concentric circles `|zeta| = k/n`
//! map to the level curves of the Green's function of `T` with pole at
//! `w`, and radial spokes map to its flow lines. The two families stay
//! orthogonal wherever they cross, the circle images are nested, and
//! the outermost circle is the triangle boundary itself.
//!
//! Isosceles right and 30-60-90 triangles use the closed-form inverse
//! of the matching half-plane map; every other shape runs the forward
//! Schwarz-Christoffel map composed with a disk automorphism.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::capacity::{
    detect_shape, iso_right_chart, resolve_backend, tri_306090_chart, Backend, Chart, Shape,
};
use crate::geometry::Triangle;
use crate::maps::kober::{similarity_from_unit, similarity_to_unit, theta_iso, theta_iso_inv};
use crate::maps::tri_30_60_90::{theta_306090, theta_306090_inv};
use crate::sc::ScMap;
use crate::{Error, Result};

/// Fraction of the disk radius trimmed from the outer end of every
/// spoke. The spoke through `zeta = 1` heads for the half-plane point
/// at infinity, so its samples must stay strictly inside the disk.
const SPOKE_END_INSET: f64 = 1e-6;

/// Curve counts and resolution of a figure.
#[derive(Debug, Clone, Copy)]
pub struct FigureConfig {
    /// Concentric circles, at radii `k / n_circles` for `k = 1..=n_circles`.
    pub n_circles: usize,
    /// Equally spaced radial spokes.
    pub n_rays: usize,
    /// Points per polyline.
    pub samples: usize,
}

impl Default for FigureConfig {
    fn default() -> FigureConfig {
        FigureConfig { n_circles: 10, n_rays: 24, samples: 512 }
    }
}

/// Polyline images of the polar grid under the disk-to-triangle map.
#[derive(Debug, Clone)]
pub struct FigureGeometry {
    /// Engine that produced the curves.
    pub backend: Backend,
    /// Image of the disk center; every spoke starts here.
    pub base_point: Complex64,
    /// Circle images, innermost first; the last traces the boundary.
    pub circle_images: Vec<Vec<Complex64>>,
    /// Spoke images, ordered by angle.
    pub ray_images: Vec<Vec<Complex64>>,
}

/// The disk-to-triangle map, in whichever form the shape admits.
enum Mapper {
    /// Exact inverse for isosceles right triangles. Both exact
    /// backends realize the same conformal map, so they share it.
    IsoRight { chart: Chart, c: Complex64 },
    /// Exact inverse for 30-60-90 triangles.
    Tri306090 { chart: Chart, c: Complex64 },
    /// Forward numerical map, recentered by a disk automorphism.
    Numeric { map: ScMap, center: Complex64 },
}

/// Half-plane coordinate of the disk point `zeta` when the base point
/// sits at `c`: the Moebius map sending `c -> 0`, `conj(c) -> inf` is
/// inverted at `zeta`.
fn halfplane_coord(c: Complex64, zeta: Complex64) -> Complex64 {
    (c - zeta * c.conj()) / (1.0 - zeta)
}

/// Same coordinate on the unit circle, `zeta = exp(i phi)`, where the
/// quotient is real by symmetry; computing it in real form keeps the
/// boundary samples exactly on the axis.
fn halfplane_coord_boundary(c: Complex64, phi: f64) -> Complex64 {
    let rotated = c * Complex64::from_polar(1.0, -0.5 * phi);
    Complex64::new(-rotated.im / (0.5 * phi).sin(), 0.0)
}

impl Mapper {
    fn new(tri: &Triangle, w: Complex64, backend: Backend) -> Result<Mapper> {
        match backend {
            Backend::SigmaExact | Backend::JacobiExact => match detect_shape(tri) {
                Shape::IsoRight { right } => {
                    let chart = iso_right_chart(tri, right);
                    let c = theta_iso(similarity_from_unit(chart.to_reference(w)))?;
                    Ok(Mapper::IsoRight { chart, c })
                }
                _ => Err(Error::Domain(format!(
                    "backend {} requires an isosceles right triangle",
                    backend.name()
                ))),
            },
            Backend::Exact306090 => match detect_shape(tri) {
                Shape::Tri306090 { right, direct } => {
                    let chart = tri_306090_chart(tri, right, direct);
                    let c = theta_306090(chart.to_reference(w))?;
                    Ok(Mapper::Tri306090 { chart, c })
                }
                _ => Err(Error::Domain(format!(
                    "backend {} requires a 30-60-90 triangle",
                    backend.name()
                ))),
            },
            Backend::SchwarzChristoffel => {
                let map = ScMap::new(*tri)?;
                let (center, _, _) = map.invert(w)?;
                Ok(Mapper::Numeric { map, center })
            }
        }
    }

    /// Image of an interior disk point.
    fn eval(&self, zeta: Complex64) -> Result<Complex64> {
        match self {
            Mapper::IsoRight { chart, c } => {
                let z = theta_iso_inv(halfplane_coord(*c, zeta))?;
                Ok(chart.from_reference(similarity_to_unit(z)))
            }
            Mapper::Tri306090 { chart, c } => {
                let z = theta_306090_inv(halfplane_coord(*c, zeta))?;
                Ok(chart.from_reference(z))
            }
            Mapper::Numeric { map, center } => {
                let moved = (zeta + center) / (1.0 + center.conj() * zeta);
                map.eval(moved)
            }
        }
    }

    /// Image of the boundary point `exp(i phi)`, `phi` in `(0, 2 pi)`.
    fn eval_boundary(&self, phi: f64) -> Result<Complex64> {
        match self {
            Mapper::IsoRight { chart, c } => {
                let z = theta_iso_inv(halfplane_coord_boundary(*c, phi))?;
                Ok(chart.from_reference(similarity_to_unit(z)))
            }
            Mapper::Tri306090 { chart, c } => {
                let z = theta_306090_inv(halfplane_coord_boundary(*c, phi))?;
                Ok(chart.from_reference(z))
            }
            Mapper::Numeric { .. } => self.eval(Complex64::from_polar(1.0, phi)),
        }
    }
}

/// Circle and spoke images of the disk map onto `tri` based at `w`.
/// `backend` forces an engine; `None` picks the best for the shape.
///
/// Circle `k` is sampled at angles `2 pi (j + 1/2) / samples`; the
/// half step keeps the outermost circle away from `zeta = 1`, whose
/// image is a vertex the exact inverses cannot reach in one quadrature.
pub fn figure_geometry(
    tri: &Triangle,
    w: Complex64,
    backend: Option<Backend>,
    cfg: &FigureConfig,
) -> Result<FigureGeometry> {
    if cfg.n_circles == 0 || cfg.n_rays == 0 {
        return Err(Error::Domain(
            "figure needs at least one circle and one spoke".into(),
        ));
    }
    if cfg.samples < 2 {
        return Err(Error::Domain(
            "figure needs at least two samples per curve".into(),
        ));
    }
    if tri.boundary_distance(w) <= 0.0 {
        return Err(Error::Domain(format!(
            "figure base point {w} is not interior to the triangle"
        )));
    }
    let resolved = resolve_backend(tri, backend);
    let mapper = Mapper::new(tri, w, resolved)?;

    let mut circle_images = Vec::with_capacity(cfg.n_circles);
    for k in 1..=cfg.n_circles {
        let r = k as f64 / cfg.n_circles as f64;
        let mut curve = Vec::with_capacity(cfg.samples);
        for j in 0..cfg.samples {
            let phi = TAU * (j as f64 + 0.5) / cfg.samples as f64;
            let p = if k == cfg.n_circles {
                mapper.eval_boundary(phi)?
            } else {
                mapper.eval(Complex64::from_polar(r, phi))?
            };
            curve.push(p);
        }
        circle_images.push(curve);
    }

    let mut ray_images = Vec::with_capacity(cfg.n_rays);
    for j in 0..cfg.n_rays {
        let dir = Complex64::from_polar(1.0, TAU * j as f64 / cfg.n_rays as f64);
        let mut curve = Vec::with_capacity(cfg.samples);
        for i in 0..cfg.samples {
            let t = (1.0 - SPOKE_END_INSET) * i as f64 / (cfg.samples - 1) as f64;
            curve.push(mapper.eval(dir * t)?);
        }
        ray_images.push(curve);
    }

    Ok(FigureGeometry {
        backend: resolved,
        base_point: w,
        circle_images,
        ray_images,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn unit_right() -> Triangle {
        Triangle::new(c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)).unwrap()
    }

    fn tri_306090() -> Triangle {
        let k = crate::maps::tri_30_60_90::kappa_30();
        Triangle::new(c(0.0, 0.0), c(k, 0.0), c(0.0, 3f64.sqrt() * k)).unwrap()
    }

    fn tri_6_9_13() -> Triangle {
        Triangle::new(
            c(0.0, 0.0),
            c(6.0, 0.0),
            c(-13.0 / 3.0, 4.0 * 35f64.sqrt() / 3.0),
        )
        .unwrap()
    }

    fn point_in_polygon(p: Complex64, poly: &[Complex64]) -> bool {
        let mut inside = false;
        for i in 0..poly.len() {
            let a = poly[i];
            let b = poly[(i + 1) % poly.len()];
            if (a.im > p.im) != (b.im > p.im) {
                let x = a.re + (p.im - a.im) / (b.im - a.im) * (b.re - a.re);
                if x > p.re {
                    inside = !inside;
                }
            }
        }
        inside
    }

    fn assert_figure_invariants(tri: &Triangle, fig: &FigureGeometry) {
        let d = tri.diameter();
        for curve in fig.circle_images.iter().chain(fig.ray_images.iter()) {
            for p in curve {
                assert!(tri.boundary_distance(*p) >= -1e-9 * d);
            }
        }
        for curve in &fig.circle_images {
            assert_eq!(curve.len(), fig.circle_images[0].len());
        }
        for outer in fig.circle_images.last().unwrap() {
            assert!(tri.boundary_distance(*outer).abs() <= 1e-9 * d);
        }
        for ray in &fig.ray_images {
            assert!((ray[0] - fig.base_point).norm() <= 1e-9 * d);
        }
        for k in 1..fig.circle_images.len() {
            let outer = &fig.circle_images[k];
            for p in fig.circle_images[k - 1].iter().step_by(7) {
                assert!(point_in_polygon(*p, outer));
            }
        }
    }

    #[test]
    fn iso_right_figure_lands_on_the_boundary() {
        let tri = unit_right();
        let w = Complex64::new(0.3, 0.25);
        let cfg = FigureConfig { n_circles: 4, n_rays: 8, samples: 64 };
        let fig = figure_geometry(&tri, w, None, &cfg).unwrap();
        assert!(matches!(fig.backend, Backend::SigmaExact));
        assert_eq!(fig.circle_images.len(), 4);
        assert_eq!(fig.ray_images.len(), 8);
        assert_figure_invariants(&tri, &fig);
    }

    #[test]
    fn tri_306090_figure_lands_on_the_boundary() {
        let tri = tri_306090();
        let w = tri.centroid();
        let cfg = FigureConfig { n_circles: 4, n_rays: 6, samples: 64 };
        let fig = figure_geometry(&tri, w, None, &cfg).unwrap();
        assert!(matches!(fig.backend, Backend::Exact306090));
        assert_figure_invariants(&tri, &fig);
    }

    #[test]
    fn mirrored_306090_figure_lands_on_the_boundary() {
        let k = crate::maps::tri_30_60_90::kappa_30();
        let tri =
            Triangle::new(c(0.0, 0.0), c(k, 0.0), c(k, 3f64.sqrt() * k)).unwrap();
        let w = tri.centroid();
        let cfg = FigureConfig { n_circles: 3, n_rays: 6, samples: 64 };
        let fig = figure_geometry(&tri, w, None, &cfg).unwrap();
        assert!(matches!(fig.backend, Backend::Exact306090));
        assert_figure_invariants(&tri, &fig);
    }

    #[test]
    fn generic_figure_uses_the_numerical_map() {
        let tri = tri_6_9_13();
        let w = tri.centroid();
        let cfg = FigureConfig { n_circles: 3, n_rays: 4, samples: 48 };
        let fig = figure_geometry(&tri, w, None, &cfg).unwrap();
        assert!(matches!(fig.backend, Backend::SchwarzChristoffel));
        let d = tri.diameter();
        for curve in fig.circle_images.iter().chain(fig.ray_images.iter()) {
            for p in curve {
                assert!(tri.boundary_distance(*p) >= -1e-8 * d);
            }
        }
        for outer in fig.circle_images.last().unwrap() {
            assert!(tri.boundary_distance(*outer).abs() <= 1e-8 * d);
        }
        for ray in &fig.ray_images {
            assert!((ray[0] - w).norm() <= 1e-8 * d);
        }
    }

    #[test]
    fn forced_numerical_backend_works_on_exact_shapes() {
        let tri = unit_right();
        let w = Complex64::new(0.3, 0.3);
        let cfg = FigureConfig { n_circles: 2, n_rays: 4, samples: 32 };
        let fig =
            figure_geometry(&tri, w, Some(Backend::SchwarzChristoffel), &cfg).unwrap();
        assert!(matches!(fig.backend, Backend::SchwarzChristoffel));
        for outer in fig.circle_images.last().unwrap() {
            assert!(tri.boundary_distance(*outer).abs() <= 1e-8 * tri.diameter());
        }
    }

    #[test]
    fn circles_cross_spokes_at_right_angles() {
        // Samples chosen so spoke angles fall midway between adjacent
        // circle samples and circle radii on exact spoke samples: the
        // circle chord across the crossing and the centered spoke
        // difference then both approximate tangents at the same point.
        let tri = unit_right();
        let w = Complex64::new(0.35, 0.3);
        let n_rays = 8;
        let circle_cfg = FigureConfig { n_circles: 5, n_rays, samples: 21 * n_rays };
        let ray_cfg = FigureConfig { n_circles: 5, n_rays, samples: 171 };
        let circles = figure_geometry(&tri, w, None, &circle_cfg).unwrap();
        let rays = figure_geometry(&tri, w, None, &ray_cfg).unwrap();
        let mut worst: f64 = 0.0;
        for k in [2usize, 4] {
            // Spoke sample index with t = k / n_circles.
            let i = 170 * k / 5;
            for j in 0..n_rays {
                let m = 21 * j;
                let circle = &circles.circle_images[k - 1];
                let chord = circle[m] - circle[(m + circle.len() - 1) % circle.len()];
                let ray = &rays.ray_images[j];
                let along = ray[i + 1] - ray[i - 1];
                let cross = (chord * along.conj()).re / (chord.norm() * along.norm());
                worst = worst.max(cross.abs());
            }
        }
        // cos(89.5 deg) ~ 8.7e-3.
        assert!(worst <= 8.7e-3, "worst |cos| {worst:.3e}");
    }

    #[test]
    fn exact_backends_must_match_the_shape() {
        let tri = tri_6_9_13();
        let cfg = FigureConfig::default();
        let err =
            figure_geometry(&tri, tri.centroid(), Some(Backend::SigmaExact), &cfg);
        assert!(err.is_err());
        let outside = Complex64::new(40.0, 40.0);
        assert!(figure_geometry(&tri, outside, None, &cfg).is_err());
    }
}
