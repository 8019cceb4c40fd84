//! Interior maximization of the inner radius.
//!
//! The search runs in barycentric coordinates, minimizing −log(radius)
//! with a hard barrier just inside the boundary. A Nelder-Mead simplex
//! brings the point into the quadratic basin; a finite-difference
//! Newton polish with Richardson extrapolation then pushes the argmax
//! well below the noise plateau of direct function comparisons, which
//! flattens near √ε because the objective is stationary at the optimum.

use num_complex::Complex64;

use crate::geometry::Triangle;
use crate::{Error, Result};

/// Tuning knobs of [`maximize_inner_radius`].
#[derive(Debug, Clone)]
pub struct OptimizerConfig {
    /// Simplex-diameter convergence threshold, in triangle units.
    pub tol_x: f64,
    /// Objective-spread convergence threshold.
    pub tol_f: f64,
    /// Radius-evaluation budget.
    pub max_evals: usize,
    /// Barrier distance from the boundary, in triangle units.
    pub penalty_margin: f64,
    /// Barycentric start point.
    pub seed: [f64; 3],
    /// Edge length of the initial simplex in barycentric coordinates.
    pub initial_edge: f64,
}

impl OptimizerConfig {
    /// Defaults scaled to the triangle: tol_x = 1e-12·diameter, barrier
    /// at 1e-7·diameter, seeded at the centroid.
    pub fn for_triangle(tri: &Triangle) -> OptimizerConfig {
        let d = tri.diameter();
        OptimizerConfig {
            tol_x: 1e-12 * d,
            tol_f: 1e-14,
            max_evals: 2000,
            penalty_margin: 1e-7 * d,
            seed: [1.0 / 3.0; 3],
            initial_edge: 0.1,
        }
    }
}

/// Result of an interior maximization.
#[derive(Debug, Clone, Copy)]
pub struct Optimum {
    /// The maximizing point.
    pub point: Complex64,
    /// The maximal inner radius.
    pub value: f64,
    /// Radius evaluations spent.
    pub evals: usize,
    /// False when the evaluation budget ran out first.
    pub converged: bool,
    /// Simplex diameter (in triangle units) when the simplex stage
    /// stopped.
    pub simplex_diameter_final: f64,
    /// Distance (in triangle units) moved by the last polish round; an
    /// upper estimate of the remaining argmax error, since the polish
    /// converges superlinearly.
    pub polish_step_final: f64,
}

/// Result of a one-dimensional maximization on a segment.
#[derive(Debug, Clone, Copy)]
pub struct SegmentOptimum {
    /// The maximizing parameter.
    pub x: f64,
    /// The maximal value.
    pub value: f64,
    /// Function evaluations spent.
    pub evals: usize,
}

/// Finds the interior point of `tri` maximizing `radius`, which may
/// reject points (errors count as barrier hits). The returned point is
/// accurate to well below `tol_x` for twice-differentiable radii.
pub fn maximize_inner_radius<F>(
    tri: &Triangle,
    mut radius: F,
    cfg: &OptimizerConfig,
) -> Result<Optimum>
where
    F: FnMut(Complex64) -> Result<f64>,
{
    let mut evals = 0usize;
    let mut objective = |u: [f64; 2], evals: &mut usize| -> f64 {
        let b = [1.0 - u[0] - u[1], u[0], u[1]];
        if b.iter().any(|&x| x <= 0.0) {
            return f64::INFINITY;
        }
        let w = tri.from_barycentric(b);
        if tri.boundary_distance(w) < cfg.penalty_margin {
            return f64::INFINITY;
        }
        *evals += 1;
        match radius(w) {
            Ok(r) if r > 0.0 => -r.ln(),
            _ => f64::INFINITY,
        }
    };

    // Nelder-Mead with the standard coefficients (1, 2, 1/2, 1/2).
    let seed = [cfg.seed[1], cfg.seed[2]];
    let mut simplex = [
        seed,
        [seed[0] + cfg.initial_edge, seed[1]],
        [seed[0], seed[1] + cfg.initial_edge],
    ];
    let mut fval = [0.0f64; 3];
    for k in 0..3 {
        fval[k] = objective(simplex[k], &mut evals);
    }

    let point_of = |u: [f64; 2]| tri.from_barycentric([1.0 - u[0] - u[1], u[0], u[1]]);
    let simplex_diameter = |s: &[[f64; 2]; 3]| -> f64 {
        let p = [point_of(s[0]), point_of(s[1]), point_of(s[2])];
        let mut d = 0.0f64;
        for i in 0..3 {
            for j in i + 1..3 {
                d = d.max((p[i] - p[j]).norm());
            }
        }
        d
    };

    let mut converged = false;
    let mut final_diameter = simplex_diameter(&simplex);
    while evals < cfg.max_evals {
        // Order so that index 0 is best, 2 is worst.
        let mut order = [0usize, 1, 2];
        order.sort_by(|&a, &b| fval[a].partial_cmp(&fval[b]).unwrap());
        let (best, mid, worst) = (order[0], order[1], order[2]);

        final_diameter = simplex_diameter(&simplex);
        if final_diameter < cfg.tol_x
            || (fval[worst] - fval[best]).abs() < cfg.tol_f && fval[worst].is_finite()
        {
            converged = true;
            break;
        }

        let centroid = [
            0.5 * (simplex[best][0] + simplex[mid][0]),
            0.5 * (simplex[best][1] + simplex[mid][1]),
        ];
        let dir = [centroid[0] - simplex[worst][0], centroid[1] - simplex[worst][1]];
        let at = |t: f64| [centroid[0] + t * dir[0], centroid[1] + t * dir[1]];

        let xr = at(1.0);
        let fr = objective(xr, &mut evals);
        if fr < fval[best] {
            let xe = at(2.0);
            let fe = objective(xe, &mut evals);
            if fe < fr {
                simplex[worst] = xe;
                fval[worst] = fe;
            } else {
                simplex[worst] = xr;
                fval[worst] = fr;
            }
        } else if fr < fval[mid] {
            simplex[worst] = xr;
            fval[worst] = fr;
        } else {
            let (xc, fc) = if fr < fval[worst] {
                let x = at(0.5);
                (x, objective(x, &mut evals))
            } else {
                let x = at(-0.5);
                (x, objective(x, &mut evals))
            };
            if fc < fval[worst].min(fr) {
                simplex[worst] = xc;
                fval[worst] = fc;
            } else {
                // Shrink toward the best vertex.
                for k in 0..3 {
                    if k == best {
                        continue;
                    }
                    simplex[k] = [
                        0.5 * (simplex[k][0] + simplex[best][0]),
                        0.5 * (simplex[k][1] + simplex[best][1]),
                    ];
                    fval[k] = objective(simplex[k], &mut evals);
                }
            }
        }
    }

    let mut best_idx = 0;
    for k in 1..3 {
        if fval[k] < fval[best_idx] {
            best_idx = k;
        }
    }
    if !fval[best_idx].is_finite() {
        return Err(Error::NoConvergence(
            "interior maximization found no feasible point".into(),
        ));
    }

    // Newton polish on a 3x3 stencil, once per scale, with Richardson
    // extrapolation of the two stationary-point estimates.
    let mut u = simplex[best_idx];
    let mut fu = fval[best_idx];
    let mut polish_step_final = final_diameter;
    for &delta in &[1.6e-3, 8e-4] {
        let coarse = quadratic_step(&mut objective, &mut evals, u, delta);
        let fine = quadratic_step(&mut objective, &mut evals, u, 0.5 * delta);
        if let (Some(vc), Some(vf)) = (coarse, fine) {
            let cand = [
                (4.0 * vf[0] - vc[0]) / 3.0,
                (4.0 * vf[1] - vc[1]) / 3.0,
            ];
            let fc = objective(cand, &mut evals);
            if fc.is_finite() {
                polish_step_final = (point_of(cand) - point_of(u)).norm();
                u = cand;
                fu = fc;
            }
        }
    }

    Ok(Optimum {
        point: point_of(u),
        value: (-fu).exp(),
        evals,
        converged,
        simplex_diameter_final: final_diameter,
        polish_step_final,
    })
}

/// One damped Newton step from the quadratic model on a 3x3 stencil of
/// spacing `delta`; None when the stencil leaves the feasible region or
/// the model has no descent curvature.
fn quadratic_step<F>(
    objective: &mut F,
    evals: &mut usize,
    u: [f64; 2],
    delta: f64,
) -> Option<[f64; 2]>
where
    F: FnMut([f64; 2], &mut usize) -> f64,
{
    let mut f = |du: f64, dv: f64, evals: &mut usize| -> f64 {
        objective([u[0] + du, u[1] + dv], evals)
    };
    let f00 = f(0.0, 0.0, evals);
    let fp0 = f(delta, 0.0, evals);
    let fm0 = f(-delta, 0.0, evals);
    let f0p = f(0.0, delta, evals);
    let f0m = f(0.0, -delta, evals);
    let fpp = f(delta, delta, evals);
    let fpm = f(delta, -delta, evals);
    let fmp = f(-delta, delta, evals);
    let fmm = f(-delta, -delta, evals);
    for v in [f00, fp0, fm0, f0p, f0m, fpp, fpm, fmp, fmm] {
        if !v.is_finite() {
            return None;
        }
    }
    let g = [(fp0 - fm0) / (2.0 * delta), (f0p - f0m) / (2.0 * delta)];
    let h11 = (fp0 - 2.0 * f00 + fm0) / (delta * delta);
    let h22 = (f0p - 2.0 * f00 + f0m) / (delta * delta);
    let h12 = (fpp - fpm - fmp + fmm) / (4.0 * delta * delta);
    let det = h11 * h22 - h12 * h12;
    if det <= 0.0 || h11 <= 0.0 {
        return None;
    }
    let step = [
        -(h22 * g[0] - h12 * g[1]) / det,
        -(h11 * g[1] - h12 * g[0]) / det,
    ];
    // The quadratic model is only trusted near the stencil.
    let cap = 8.0 * delta;
    let norm = step[0].hypot(step[1]);
    let s = if norm > cap { cap / norm } else { 1.0 };
    Some([u[0] + s * step[0], u[1] + s * step[1]])
}

/// Maximizes `f` on [a, b] by golden-section search followed by a
/// Richardson-extrapolated parabolic polish. Evaluation errors are
/// treated as −∞ (the point loses every comparison).
pub fn maximize_on_segment<F>(mut f: F, a: f64, b: f64, tol: f64) -> Result<SegmentOptimum>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(b > a) || !tol.is_finite() || tol <= 0.0 {
        return Err(Error::Domain(format!(
            "maximize_on_segment: invalid interval [{a}, {b}] or tolerance {tol}"
        )));
    }
    let mut evals = 0usize;
    let mut g = |x: f64, evals: &mut usize| -> f64 {
        *evals += 1;
        f(x).unwrap_or(f64::NEG_INFINITY)
    };
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (a, b);
    let mut x1 = hi - phi * (hi - lo);
    let mut x2 = lo + phi * (hi - lo);
    let mut f1 = g(x1, &mut evals);
    let mut f2 = g(x2, &mut evals);
    for _ in 0..300 {
        if hi - lo <= tol.max(1e-14 * (a.abs() + b.abs())) {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = g(x2, &mut evals);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = g(x1, &mut evals);
        }
    }
    let mut x = if f1 > f2 { x1 } else { x2 };
    let mut fx = f1.max(f2);
    if !fx.is_finite() {
        return Err(Error::NoConvergence(
            "maximize_on_segment: no feasible point found".into(),
        ));
    }

    // Parabolic polish at two stencil scales plus Richardson; each
    // vertex estimate has O(delta^2) bias with a scale-free leading
    // coefficient, so the extrapolation removes it.
    let scale = (b - a).max(x.abs());
    for &delta in &[1.6e-3 * scale, 8e-4 * scale] {
        let mut vertex = |d: f64, evals: &mut usize| -> Option<f64> {
            let (xl, xr) = (x - d, x + d);
            if xl <= a || xr >= b {
                return None;
            }
            let (fl, fr) = (g(xl, evals), g(xr, evals));
            let denom = fl - 2.0 * fx + fr;
            if !(denom < 0.0) {
                return None;
            }
            Some(x - 0.5 * d * (fr - fl) / denom)
        };
        let coarse = vertex(delta, &mut evals);
        let fine = vertex(0.5 * delta, &mut evals);
        if let (Some(vc), Some(vf)) = (coarse, fine) {
            let cand = (4.0 * vf - vc) / 3.0;
            if cand > a && cand < b {
                let fc = g(cand, &mut evals);
                if fc.is_finite() {
                    x = cand;
                    fx = fc;
                }
            }
        }
    }
    Ok(SegmentOptimum { x, value: fx, evals })
}
