//! Jacobi theta function θ₁ and the square-lattice constant block.
//!
//! θ₁(v | q) = 2 Σ_{n≥0} (−1)ⁿ q^{(n+1/2)²} sin((2n+1)v). With the nome
//! q = e^{−π} (lattice ratio τ = i) the series converges in a handful of
//! terms for every argument this crate produces, so all σ, ℘ and ℘′
//! evaluations reduce to it.

use num_complex::Complex64;
use std::f64::consts::PI;

/// Terms beyond which the q^{(n+1/2)²} prefactor is below 1e−300 even
/// against the worst-case exponential growth of sin((2n+1)v) here.
const MAX_TERMS: usize = 48;

/// θ₁ and its first three derivatives in v: `[θ₁, θ₁′, θ₁″, θ₁‴]`.
///
/// All four share the same term prefactors, so computing them together
/// costs one series pass.
pub fn theta1_batch(v: Complex64, q: f64) -> [Complex64; 4] {
    debug_assert!(q > 0.0 && q < 1.0);
    let mut t = [Complex64::new(0.0, 0.0); 4];
    let mut small_streak = 0;
    for n in 0..MAX_TERMS {
        let k = (2 * n + 1) as f64;
        // (−1)ⁿ q^{(n+1/2)²}, via exp/ln to avoid powf error growth.
        let mut a = ((k * k / 4.0) * q.ln()).exp();
        if n % 2 == 1 {
            a = -a;
        }
        let kv = k * v;
        let (s, c) = (kv.sin(), kv.cos());
        t[0] += a * s;
        t[1] += a * k * c;
        t[2] -= a * k * k * s;
        t[3] -= a * k * k * k * c;
        // Alternating terms can vanish accidentally; require two
        // consecutive negligible terms before stopping. The k³ factor
        // covers the slowest-converging derivative component.
        let scale = t[0].norm().max(t[1].norm()).max(1e-300);
        if a.abs() * k * k * k * (s.norm() + c.norm()) <= 1e-18 * scale {
            small_streak += 1;
            if small_streak >= 2 {
                break;
            }
        } else {
            small_streak = 0;
        }
    }
    let two = Complex64::new(2.0, 0.0);
    [two * t[0], two * t[1], two * t[2], two * t[3]]
}

/// Constants of the square period lattice Λ = {2m + 2ni}.
///
/// All derived fields come from θ₁-series derivatives at v = 0 and
/// v = π/2; nothing is hard-coded beyond the nome.
#[derive(Debug, Clone, Copy)]
pub struct Lattice {
    /// First half-period, 1.
    pub half_period_1: Complex64,
    /// Second half-period, i.
    pub half_period_2: Complex64,
    /// Invariant g₂ of ℘ for this lattice.
    pub g2: f64,
    /// Invariant g₃; zero by the fourfold symmetry of Λ.
    pub g3: f64,
    /// Nome q = e^{−π} matching τ = i.
    pub nome_q: f64,
    /// η₁ = ζ(1), the Weierstrass zeta value at the first half-period.
    pub eta1: f64,
    /// θ₁′(0 | q), the normalizer of the σ representation.
    pub theta1_prime0: f64,
    /// ℘(1), the positive half-period value e₁ (g₂ = 4e₁²).
    pub p_half1: f64,
}

impl Lattice {
    /// Builds the Λ = {2m + 2ni} constant block.
    pub fn square() -> Lattice {
        let q = (-PI).exp();
        let zero = Complex64::new(0.0, 0.0);
        let at0 = theta1_batch(zero, q);
        let theta1_prime0 = at0[1].re;
        // η₁ = −(π²/12)·θ₁‴(0)/θ₁′(0) for half-period 1.
        let eta1 = -(PI * PI / 12.0) * at0[3].re / theta1_prime0;

        // ℘(1) = −η₁ − (π/2)²·(log θ₁)″ at v = π/2.
        let half = Complex64::new(PI / 2.0, 0.0);
        let th = theta1_batch(half, q);
        let log_dd = (th[2] * th[0] - th[1] * th[1]) / (th[0] * th[0]);
        let p_half1 = -eta1 - (PI / 2.0) * (PI / 2.0) * log_dd.re;

        Lattice {
            half_period_1: Complex64::new(1.0, 0.0),
            half_period_2: Complex64::new(0.0, 1.0),
            g2: 4.0 * p_half1 * p_half1,
            g3: 0.0,
            nome_q: q,
            eta1,
            theta1_prime0,
            p_half1,
        }
    }
}
