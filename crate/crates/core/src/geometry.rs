//! Plane triangles: orientation, angles, barycentric coordinates, and the
//! distance queries the capacity reports need.

use num_complex::Complex64;

use crate::{Error, Result};

/// A non-degenerate triangle with counterclockwise vertices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Triangle {
    v: [Complex64; 3],
}

impl Triangle {
    /// Builds a triangle, reversing the vertex order if it was given
    /// clockwise. Degenerate input (area ≤ 1e-12 of the squared longest
    /// side) is rejected.
    pub fn new(a: Complex64, b: Complex64, c: Complex64) -> Result<Triangle> {
        let two_area = cross(b - a, c - a);
        let longest = (b - a).norm().max((c - b).norm()).max((a - c).norm());
        if two_area.abs() <= 2e-12 * longest * longest {
            return Err(Error::Domain(format!(
                "degenerate triangle: vertices {a}, {b}, {c} are nearly collinear"
            )));
        }
        let v = if two_area > 0.0 { [a, b, c] } else { [a, c, b] };
        Ok(Triangle { v })
    }

    /// The vertices, counterclockwise.
    pub fn vertices(&self) -> [Complex64; 3] {
        self.v
    }

    /// Interior angles as fractions of π, indexed like the vertices;
    /// each lies in (0, 1) and they sum to 1.
    pub fn angles(&self) -> [f64; 3] {
        let mut alpha = [0.0; 3];
        for k in 0..3 {
            let p = self.v[(k + 2) % 3] - self.v[k];
            let q = self.v[(k + 1) % 3] - self.v[k];
            alpha[k] = cross(q, p).atan2(dot(q, p)) / std::f64::consts::PI;
        }
        alpha
    }

    /// Area (positive).
    pub fn area(&self) -> f64 {
        0.5 * cross(self.v[1] - self.v[0], self.v[2] - self.v[0])
    }

    /// Length of the longest side.
    pub fn diameter(&self) -> f64 {
        (0..3)
            .map(|k| self.side_length(k))
            .fold(0.0, f64::max)
    }

    /// Vertex centroid.
    pub fn centroid(&self) -> Complex64 {
        (self.v[0] + self.v[1] + self.v[2]) / 3.0
    }

    /// Length of side k, joining vertex k to vertex k+1.
    pub fn side_length(&self, k: usize) -> f64 {
        (self.v[(k + 1) % 3] - self.v[k]).norm()
    }

    /// Index of the shortest side; ties resolve to the earliest index.
    pub fn shortest_side(&self) -> usize {
        let mut best = 0;
        for k in 1..3 {
            if self.side_length(k) < self.side_length(best) {
                best = k;
            }
        }
        best
    }

    /// Perpendicular distance from w to the line carrying side k.
    pub fn distance_to_side(&self, w: Complex64, k: usize) -> f64 {
        let a = self.v[k];
        let b = self.v[(k + 1) % 3];
        (cross(b - a, w - a) / (b - a).norm()).abs()
    }

    /// Signed distance from w to the boundary: positive inside, negative
    /// outside, the minimum over the three side half-planes.
    pub fn boundary_distance(&self, w: Complex64) -> f64 {
        (0..3)
            .map(|k| {
                let a = self.v[k];
                let b = self.v[(k + 1) % 3];
                cross(b - a, w - a) / (b - a).norm()
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Whether w lies at least `margin` inside the triangle.
    pub fn contains(&self, w: Complex64, margin: f64) -> bool {
        self.boundary_distance(w) >= margin
    }

    /// Barycentric coordinates of w with respect to the vertices.
    pub fn barycentric(&self, w: Complex64) -> [f64; 3] {
        let total = cross(self.v[1] - self.v[0], self.v[2] - self.v[0]);
        [
            cross(self.v[2] - self.v[1], w - self.v[1]) / total,
            cross(self.v[0] - self.v[2], w - self.v[2]) / total,
            cross(self.v[1] - self.v[0], w - self.v[0]) / total,
        ]
    }

    /// Point with the given barycentric coordinates (need not sum to 1;
    /// they are normalized first).
    pub fn from_barycentric(&self, b: [f64; 3]) -> Complex64 {
        let s = b[0] + b[1] + b[2];
        (self.v[0] * b[0] + self.v[1] * b[1] + self.v[2] * b[2]) / s
    }
}

fn cross(p: Complex64, q: Complex64) -> f64 {
    p.re * q.im - p.im * q.re
}

fn dot(p: Complex64, q: Complex64) -> f64 {
    p.re * q.re + p.im * q.im
}
