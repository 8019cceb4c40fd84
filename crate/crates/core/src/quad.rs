//! Gauss quadrature rules and contour integration of algebraic integrands.
//!
//! The map engines all reduce to integrals of the form
//!
//! ```text
//!   ∫ scale · s^g · ∏_j (1 − s/root_j)^{e_j} ds
//! ```
//!
//! along polyline paths in the complex plane, with exponents in (−1, 0)
//! producing integrable endpoint singularities. [`PathIntegrator`] evaluates
//! such integrals by compound Gauss quadrature:
//!
//! * segments ending exactly at a singular point use Gauss-Jacobi nodes with
//!   the matching endpoint exponent, so the singular factor is absorbed into
//!   the quadrature weight;
//! * a singular point strictly inside a segment splits it there;
//! * any other singularity closer to a segment than half its length causes a
//!   bisection (the classic one-half rule), which also yields geometric
//!   subdivision of long tails automatically.
//!
//! Branch choice: each factor uses the principal power, except exactly on
//! its cut, where the limit from the upper half plane in `s` is taken. This
//! makes integrals along the real axis (which the elliptic integrals with
//! parameter m > 1 require) well-defined and deterministic.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_complex::Complex64;

use crate::special;
use crate::{Error, Result};

/// Nodes and weights integrating (1−x)^alpha (1+x)^beta f(x) over [−1, 1].
#[derive(Debug, Clone)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub alpha: f64,
    pub beta: f64,
}

impl GaussRule {
    /// Gauss-Legendre rule with `n` nodes (weight function 1).
    pub fn legendre(n: usize) -> GaussRule {
        Self::jacobi(n, 0.0, 0.0)
    }

    /// Gauss-Jacobi rule with `n` nodes for weight (1−x)^alpha (1+x)^beta,
    /// alpha, beta > −1, via the Golub-Welsch eigenvalue method.
    pub fn jacobi(n: usize, alpha: f64, beta: f64) -> GaussRule {
        assert!(n >= 1 && alpha > -1.0 && beta > -1.0);
        let ab = alpha + beta;
        // Three-term recurrence of the monic Jacobi polynomials:
        // p_{k+1} = (x − a_k) p_k − b_k p_{k−1}.
        let mut diag = vec![0.0; n];
        let mut off = vec![0.0; n]; // off[k] = sqrt(b_k), k = 1..n-1
        diag[0] = (beta - alpha) / (ab + 2.0);
        for k in 1..n {
            let kk = 2.0 * k as f64 + ab;
            diag[k] = (beta * beta - alpha * alpha) / (kk * (kk + 2.0));
            let b = if k == 1 {
                4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab))
            } else {
                let kf = k as f64;
                4.0 * kf * (kf + alpha) * (kf + beta) * (kf + ab)
                    / (kk * kk * (kk + 1.0) * (kk - 1.0))
            };
            off[k] = b.sqrt();
        }
        // Total weight mu0 = ∫ (1−x)^alpha (1+x)^beta dx.
        let mu0 = (ab + 1.0) * 2f64.ln() + lg(alpha + 1.0) + lg(beta + 1.0) - lg(ab + 2.0);
        let mu0 = mu0.exp();

        let mut z = vec![0.0; n];
        z[0] = 1.0;
        tql_first_components(&mut diag, &mut off, &mut z);

        let mut pairs: Vec<(f64, f64)> = diag
            .iter()
            .zip(z.iter())
            .map(|(&x, &c)| (x, mu0 * c * c))
            .collect();
        pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        GaussRule {
            nodes: pairs.iter().map(|p| p.0).collect(),
            weights: pairs.iter().map(|p| p.1).collect(),
            alpha,
            beta,
        }
    }

    /// Integrates f over [a, b] ⊂ ℝ, weighting by the rule's endpoint
    /// factors mapped onto [a, b] (for the plain Legendre rule this is the
    /// ordinary integral of f).
    pub fn integrate_real<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let h = 0.5 * (b - a);
        let m = 0.5 * (a + b);
        let ha = h.powf(self.alpha + self.beta + 1.0);
        ha * self
            .nodes
            .iter()
            .zip(self.weights.iter())
            .map(|(&x, &w)| w * f(m + h * x))
            .sum::<f64>()
    }
}

fn lg(x: f64) -> f64 {
    special::lgamma(x)
}

/// Symmetric tridiagonal QL with implicit shifts, accumulating only the
/// first row of the eigenvector matrix (all that Golub-Welsch needs).
/// `d` holds the diagonal (eigenvalues on return), `e[1..]` the
/// subdiagonal, `z` the seed row vector.
fn tql_first_components(d: &mut [f64], e: &mut [f64], z: &mut [f64]) {
    let n = d.len();
    if n == 1 {
        return;
    }
    // Shift the subdiagonal down for the classic indexing, e[l] couples
    // d[l] and d[l+1].
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    for l in 0..n {
        let mut iter = 0;
        loop {
            // Find a negligible subdiagonal element.
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd + f64::MIN_POSITIVE {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            assert!(iter <= 50, "tridiagonal QL failed to converge");
            // Implicit shift from the 2x2 trailing block.
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c) = (1.0, 1.0);
            let mut p = 0.0;
            let mut underflow = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                // Rotate the tracked eigenvector row.
                f = z[i + 1];
                z[i + 1] = s * z[i] + c * f;
                z[i] = c * z[i] - s * f;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
}

/// One algebraic factor (1 − s/root)^exponent of a path integrand.
#[derive(Debug, Clone, Copy)]
pub struct Factor {
    pub root: Complex64,
    pub exponent: f64,
}

/// Integrand scale · s^power_at_origin · ∏ (1 − s/root_j)^{e_j}.
#[derive(Debug, Clone)]
pub struct AlgebraicIntegrand {
    pub scale: Complex64,
    /// Exponent of the bare s factor; 0 means the factor is absent.
    pub power_at_origin: f64,
    pub factors: Vec<Factor>,
}

impl AlgebraicIntegrand {
    /// Full integrand value with the on-cut branch rule.
    pub fn eval(&self, s: Complex64) -> Complex64 {
        let mut v = self.scale;
        if self.power_at_origin != 0.0 {
            v *= origin_power(s, self.power_at_origin);
        }
        for f in &self.factors {
            v *= factor_power(s, f);
        }
        v
    }

    /// All singular points of the integrand.
    fn singular_points(&self) -> Vec<Complex64> {
        let mut pts = Vec::with_capacity(self.factors.len() + 1);
        if self.power_at_origin != 0.0 {
            pts.push(Complex64::new(0.0, 0.0));
        }
        pts.extend(self.factors.iter().map(|f| f.root));
        pts
    }
}

/// s^g on the principal branch; exactly on the negative real axis the
/// limit from above is used (arg → +π).
fn origin_power(s: Complex64, g: f64) -> Complex64 {
    if s.im == 0.0 && s.re < 0.0 {
        Complex64::from_polar((-s.re).powf(g), std::f64::consts::PI * g)
    } else {
        s.powf(g)
    }
}

/// (1 − s/root)^e on the principal branch; exactly on the cut, the branch
/// is the limit of displacing s into the upper half plane.
fn factor_power(s: Complex64, f: &Factor) -> Complex64 {
    let w = Complex64::new(1.0, 0.0) - s / f.root;
    if w.im == 0.0 && w.re < 0.0 {
        // Displacing s by +iε moves w by −iε/root; the sign of the
        // resulting imaginary part is −sign(Re root).
        let sign = if f.root.re >= 0.0 { -1.0 } else { 1.0 };
        Complex64::from_polar((-w.re).powf(f.exponent), sign * std::f64::consts::PI * f.exponent)
    } else {
        w.powf(f.exponent)
    }
}

/// Node budget and refinement policy of a [`PathIntegrator`].
#[derive(Debug, Clone, Copy)]
pub struct QuadConfig {
    /// Nodes per segment for the first pass.
    pub base_nodes: usize,
    /// Refinement cap; equal to `base_nodes` disables refinement.
    pub max_nodes: usize,
    /// Node counts double until two successive results agree to this
    /// tolerance (relative to max(1, |I|)).
    pub tol: f64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig { base_nodes: 64, max_nodes: 1024, tol: 1e-13 }
    }
}

impl QuadConfig {
    /// Fixed-node configuration (no refinement), as used by the
    /// Schwarz-Christoffel engine.
    pub fn fixed(n: usize) -> Self {
        QuadConfig { base_nodes: n, max_nodes: n, tol: 0.0 }
    }
}

/// Compound Gauss integrator for [`AlgebraicIntegrand`]s over polyline
/// paths; caches the quadrature rules it builds.
pub struct PathIntegrator {
    cfg: QuadConfig,
    cache: Mutex<HashMap<(usize, u64, u64), Arc<GaussRule>>>,
}

const MAX_SPLIT_DEPTH: usize = 64;

/// Endpoint coincidence test, scaled to the points themselves rather
/// than to the segment length: a very long segment must not swallow
/// singular roots that are merely small compared to it.
fn coincides(p: Complex64, q: Complex64) -> bool {
    (p - q).norm() <= 1e-13 * (1.0 + p.norm().max(q.norm()))
}

impl PathIntegrator {
    pub fn new(cfg: QuadConfig) -> Self {
        PathIntegrator { cfg, cache: Mutex::new(HashMap::new()) }
    }

    fn rule(&self, n: usize, alpha: f64, beta: f64) -> Arc<GaussRule> {
        let key = (n, alpha.to_bits(), beta.to_bits());
        let mut cache = self.cache.lock().unwrap();
        cache
            .entry(key)
            .or_insert_with(|| Arc::new(GaussRule::jacobi(n, alpha, beta)))
            .clone()
    }

    /// Integral of `f` along the straight segments of `path`.
    pub fn integrate(&self, f: &AlgebraicIntegrand, path: &[Complex64]) -> Result<Complex64> {
        let mut n = self.cfg.base_nodes;
        let mut prev = self.pass(f, path, n)?;
        if self.cfg.max_nodes <= self.cfg.base_nodes {
            return Ok(prev);
        }
        loop {
            n *= 2;
            if n > self.cfg.max_nodes {
                return Err(Error::NoConvergence(format!(
                    "quadrature did not stabilize below {} nodes per segment",
                    self.cfg.max_nodes
                )));
            }
            let cur = self.pass(f, path, n)?;
            if (cur - prev).norm() <= self.cfg.tol * cur.norm().max(1.0) {
                return Ok(cur);
            }
            prev = cur;
        }
    }

    fn pass(&self, f: &AlgebraicIntegrand, path: &[Complex64], n: usize) -> Result<Complex64> {
        let sing = f.singular_points();
        let mut total = Complex64::new(0.0, 0.0);
        for pair in path.windows(2) {
            total += self.segment(f, &sing, pair[0], pair[1], n, 0)?;
        }
        Ok(total)
    }

    fn segment(
        &self,
        f: &AlgebraicIntegrand,
        sing: &[Complex64],
        a: Complex64,
        b: Complex64,
        n: usize,
        depth: usize,
    ) -> Result<Complex64> {
        let len = (b - a).norm();
        if len == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        if depth > MAX_SPLIT_DEPTH {
            return Err(Error::NoConvergence(
                "path subdivision exceeded the depth limit (singularity on or \
                 too close to the integration path?)"
                    .into(),
            ));
        }
        let dir = (b - a) / len;

        // Pass 1: find a singular point strictly inside the segment; it
        // splits the segment in two, each half owning it as an endpoint.
        for &p in sing {
            if coincides(p, a) || coincides(p, b) {
                continue;
            }
            let t = ((p - a) * dir.conj()).re;
            if t > 0.0 && t < len {
                let d = (p - (a + dir * t)).norm();
                if d <= 1e-13 * len {
                    return Ok(self.segment(f, sing, a, p, n, depth + 1)?
                        + self.segment(f, sing, p, b, n, depth + 1)?);
                }
            }
        }

        // Pass 2: the one-half rule. A singularity that is not one of this
        // segment's own endpoints must stay at least half a segment-length
        // away, otherwise bisect.
        for &p in sing {
            if coincides(p, a) || coincides(p, b) {
                continue;
            }
            let t = ((p - a) * dir.conj()).re.clamp(0.0, len);
            let d = (p - (a + dir * t)).norm();
            if d < 0.5 * len {
                let mid = 0.5 * (a + b);
                return Ok(self.segment(f, sing, a, mid, n, depth + 1)?
                    + self.segment(f, sing, mid, b, n, depth + 1)?);
            }
        }

        // Gauss pass: absorb endpoint singularities into the weight.
        let origin = Complex64::new(0.0, 0.0);
        let mut alpha = 0.0; // exponent at b (x = +1)
        let mut beta = 0.0; // exponent at a (x = −1)
        let mut skip_origin = false;
        let mut skip_idx = [usize::MAX; 2];
        let mut n_skip = 0;
        if f.power_at_origin != 0.0 {
            if coincides(origin, a) {
                beta += f.power_at_origin;
                skip_origin = true;
            } else if coincides(origin, b) {
                alpha += f.power_at_origin;
                skip_origin = true;
            }
        }
        for (i, fac) in f.factors.iter().enumerate() {
            if coincides(fac.root, a) {
                beta += fac.exponent;
                skip_idx[n_skip.min(1)] = i;
                n_skip += 1;
            } else if coincides(fac.root, b) {
                alpha += fac.exponent;
                skip_idx[n_skip.min(1)] = i;
                n_skip += 1;
            }
        }
        debug_assert!(n_skip <= 2);

        let h = 0.5 * (b - a);
        let m = 0.5 * (a + b);
        // Each singular item equals C·(1∓x)^e exactly along the segment,
        // with C its branch-correct value at the midpoint (x = 0).
        let mut c_pulled = Complex64::new(1.0, 0.0);
        if skip_origin {
            c_pulled *= origin_power(m, f.power_at_origin);
        }
        for k in 0..n_skip.min(2) {
            c_pulled *= factor_power(m, &f.factors[skip_idx[k]]);
        }

        let rule = self.rule(n, alpha, beta);
        let mut sum = Complex64::new(0.0, 0.0);
        for (&x, &w) in rule.nodes.iter().zip(rule.weights.iter()) {
            let s = m + h * x;
            let mut v = f.scale;
            if f.power_at_origin != 0.0 && !skip_origin {
                v *= origin_power(s, f.power_at_origin);
            }
            for (i, fac) in f.factors.iter().enumerate() {
                if i == skip_idx[0] || i == skip_idx[1] {
                    continue;
                }
                v *= factor_power(s, fac);
            }
            sum += w * v;
        }
        Ok(h * c_pulled * sum)
    }
}
