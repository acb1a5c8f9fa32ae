//! The Lobachevskii function and closed-form Loebell volumes.
//!
//! Λ(z) = −∫₀^z log|2 sin t| dt is odd, π-periodic and maximal at π/6.  Two
//! independent evaluations are provided: a Maclaurin-type series with a
//! provable tail bound (the value that is returned) and direct numerical
//! quadrature of the defining integral on a mesh graded into the log
//! singularities.  With `RAP_VERIFY=1` every call cross-checks the two.

use std::f64::consts::PI;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{RapError, Result};
use crate::verify;

pub type Radians = f64;

/// A volume in cubic hyperbolic units together with a numerical error bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Volume {
    pub value: f64,
    pub error_bound: f64,
}

/// Series tail / quadrature tolerance; well below the 1e-10 contract.
const SERIES_TAIL: f64 = 1e-15;
/// Methods must agree at least this tightly.
const CROSS_CHECK_TOL: f64 = 1e-9;

/// The Lobachevskii function Λ(θ).
///
/// Absolute error stays below 1e-10.  When verification mode is enabled the
/// series value is checked against quadrature at call time.
pub fn lobachevsky(theta: Radians) -> Result<f64> {
    let s = lobachevsky_series(theta)?;
    if verify::enabled() {
        let q = lobachevsky_quadrature(theta)?;
        if (s - q).abs() > CROSS_CHECK_TOL {
            return Err(RapError::Internal(format!(
                "Lobachevskii evaluations disagree at theta = {theta}: series {s} vs quadrature {q}"
            )));
        }
    }
    Ok(s)
}

/// Series evaluation of Λ.
///
/// After exact reduction modulo π (and the reflection Λ(π−x) = −Λ(x) for the
/// upper half period) the expansion
///
///   Λ(x) = x − x·log(2x) + x·Σ_{m≥1} ζ(2m)/(m(2m+1)) · (x/π)^{2m}
///
/// converges geometrically with ratio (x/π)² ≤ 1/4 on [0, π/2]; the tail
/// after the last kept term is below `SERIES_TAIL`.  Summation is
/// compensated (Kahan).
pub fn lobachevsky_series(theta: Radians) -> Result<f64> {
    if !theta.is_finite() {
        return Err(RapError::NonFinite);
    }
    let r = reduce_mod_pi(theta);
    if r <= PI / 2.0 {
        Ok(series_core(r))
    } else {
        Ok(-series_core(PI - r))
    }
}

/// Quadrature evaluation of Λ: numerical integration of −log|2 sin t|.
///
/// The integrand has logarithmic singularities at multiples of π; panels are
/// graded geometrically into the singular endpoints and integrated with
/// Gauss-Legendre rules, which resolves the log endpoint to machine
/// precision.
pub fn lobachevsky_quadrature(theta: Radians) -> Result<f64> {
    if !theta.is_finite() {
        return Err(RapError::NonFinite);
    }
    // Λ is π-periodic and the integral over a full period vanishes, so only
    // the reduced part matters.
    let r = reduce_mod_pi(theta);
    let val = if r <= PI / 2.0 {
        -integral_log2sin_from_zero(r)
    } else {
        // ∫_{π/2}^{r} log(2 sin t) dt = ∫_{π-r}^{π/2} log(2 sin u) du, so both
        // pieces reduce to integrals on (0, π/2] where sin is increasing.
        let head = integral_log2sin_from_zero(PI / 2.0);
        let tail = integral_log2sin_from_zero(PI / 2.0) - integral_log2sin_from_zero(PI - r);
        -(head + tail)
    };
    Ok(val)
}

/// θ_n = π/2 − arccos(1 / (2 cos(π/n))), the base angle of the nth Loebell
/// polyhedron.  Satisfies π/6 < θ_n < π/4 for n ≥ 5.
pub fn theta_n(n: u64) -> Result<Radians> {
    if n < 5 {
        return Err(RapError::NTooSmall { n });
    }
    let t = PI / 2.0 - (1.0 / (2.0 * (PI / n as f64).cos())).acos();
    debug_assert!(t > PI / 6.0 && t < PI / 4.0);
    Ok(t)
}

/// Closed-form volume of the Loebell polyhedron L(n):
///
///   vol(L(n)) = (n/2)·(2Λ(θ_n) + Λ(θ_n + π/n) + Λ(θ_n − π/n) − Λ(2θ_n − π/2))
pub fn lobell_volume(n: u64) -> Result<Volume> {
    let t = theta_n(n)?;
    let step = PI / n as f64;
    let value = (n as f64 / 2.0)
        * (2.0 * lobachevsky(t)? + lobachevsky(t + step)? + lobachevsky(t - step)?
            - lobachevsky(2.0 * t - PI / 2.0)?);
    // Five Λ evaluations, each within a few 1e-15, scaled by n/2, plus the
    // final rounding.
    let error_bound = n as f64 * 1e-14 + value.abs() * 1e-15;
    debug_assert!(value > 0.0);
    Ok(Volume { value, error_bound })
}

/// Reduces θ into [0, π).
fn reduce_mod_pi(theta: f64) -> f64 {
    let mut r = theta - PI * (theta / PI).floor();
    // Guard against rounding pushing the result onto π.
    if r >= PI {
        r -= PI;
    }
    if r < 0.0 {
        r += PI;
    }
    r
}

/// ζ(2), ζ(4), ζ(6), ... by Euler's recurrence
/// (m + 1/2)·ζ(2m) = Σ_{j=1}^{m−1} ζ(2j)ζ(2m−2j), seeded with ζ(2) = π²/6.
fn zeta_even() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut z = vec![0.0f64; 41];
        z[1] = PI * PI / 6.0;
        for m in 2..z.len() {
            let mut s = 0.0;
            for j in 1..m {
                s += z[j] * z[m - j];
            }
            z[m] = s / (m as f64 + 0.5);
        }
        z
    })
}

/// Λ(x) for x ∈ [0, π/2].
fn series_core(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let zetas = zeta_even();
    let q = (x / PI) * (x / PI);
    let mut qm = q;
    let mut sum = 0.0f64;
    let mut comp = 0.0f64; // Kahan compensation
    for (m, &zeta) in zetas.iter().enumerate().skip(1) {
        let term = zeta / (m as f64 * (2 * m + 1) as f64) * qm;
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        // Terms decrease geometrically with ratio q <= 1/4, so the tail is
        // at most term * q / (1 - q) <= term / 3.
        if term < SERIES_TAIL && m >= 4 {
            break;
        }
        qm *= q;
    }
    x - x * (2.0 * x).ln() + x * sum
}

/// ∫₀^b log(2 sin t) dt for b ∈ [0, π/2], graded dyadic panels with
/// Gauss-Legendre quadrature on each.
fn integral_log2sin_from_zero(b: f64) -> f64 {
    if b == 0.0 {
        return 0.0;
    }
    let mut total = 0.0f64;
    let mut hi = b;
    // Peel dyadic panels [b/2^{j+1}, b/2^j]; the remaining integral below
    // 2^{-64} b is bounded by δ(1 + |log 2δ|) < 1e-17.
    for _ in 0..64 {
        let lo = hi / 2.0;
        total += gauss_panel(lo, hi);
        hi = lo;
    }
    total
}

fn gauss_panel(a: f64, b: f64) -> f64 {
    let (nodes, weights) = gauss_legendre_20();
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut s = 0.0;
    for i in 0..nodes.len() {
        let t = mid + half * nodes[i];
        s += weights[i] * (2.0 * t.sin()).ln();
    }
    s * half
}

/// 20-point Gauss-Legendre nodes and weights on [-1, 1], computed by Newton
/// iteration on the Legendre polynomial from Chebyshev initial guesses.
fn gauss_legendre_20() -> (&'static [f64], &'static [f64]) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    let (n, w) = RULE.get_or_init(|| {
        let n = 20usize;
        let mut nodes = vec![0.0f64; n];
        let mut weights = vec![0.0f64; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            loop {
                // Evaluate P_n(x) and P_{n-1}(x) by the three-term recurrence.
                let mut p0 = 1.0f64;
                let mut p1 = 0.0f64;
                for j in 0..n {
                    let p2 = p1;
                    p1 = p0;
                    p0 = ((2 * j + 1) as f64 * x * p1 - j as f64 * p2) / (j as f64 + 1.0);
                }
                let dp = n as f64 * (x * p0 - p1) / (x * x - 1.0);
                let dx = p0 / dp;
                x -= dx;
                if dx.abs() < 1e-15 {
                    let mut p0 = 1.0f64;
                    let mut p1 = 0.0f64;
                    for j in 0..n {
                        let p2 = p1;
                        p1 = p0;
                        p0 = ((2 * j + 1) as f64 * x * p1 - j as f64 * p2) / (j as f64 + 1.0);
                    }
                    let dp = n as f64 * (x * p0 - p1) / (x * x - 1.0);
                    nodes[i] = -x;
                    nodes[n - 1 - i] = x;
                    let wt = 2.0 / ((1.0 - x * x) * dp * dp);
                    weights[i] = wt;
                    weights[n - 1 - i] = wt;
                    break;
                }
            }
        }
        (nodes, weights)
    });
    (n, w)
}
