//! Adaptive Gauss-Legendre quadrature on dyadic subdivisions.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const ORDER: usize = 20;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Upper limit on the number of subintervals per integral.
    pub max_subdivisions: usize,
    /// Largest truncation point a half-line integral may use.
    pub tail_cut: f64,
    /// Split point between the singular part `(0, s0]` and the regular part.
    pub split: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig { rel_tol: 1e-12, abs_tol: 1e-15, max_subdivisions: 2000, tail_cut: 400.0, split: 1.0 }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol >= 1e-13) {
            return Err(Error::InvalidArgument(format!("rel_tol {} is below 1e-13", self.rel_tol)));
        }
        if !(self.abs_tol > 0.0) {
            return Err(Error::InvalidArgument("abs_tol must be positive".into()));
        }
        if !(self.split > 0.0 && self.tail_cut > self.split) {
            return Err(Error::InvalidArgument("need 0 < split < tail_cut".into()));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::InvalidArgument("max_subdivisions must be positive".into()));
        }
        Ok(())
    }

    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_abs_tol(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
    pub subdivisions: usize,
}

impl std::ops::Add for Quadrature {
    type Output = Quadrature;
    fn add(self, rhs: Quadrature) -> Quadrature {
        Quadrature {
            value: self.value + rhs.value,
            error: self.error + rhs.error,
            subdivisions: self.subdivisions + rhs.subdivisions,
        }
    }
}

/// Nodes and weights on `[-1, 1]`, nonnegative half only.
fn rule() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = ORDER;
        let mut out = Vec::with_capacity(n / 2);
        for i in 0..n / 2 {
            let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp;
            loop {
                let (mut p1, mut p2) = (1.0, 0.0);
                for j in 0..n {
                    let p3 = p2;
                    p2 = p1;
                    p1 = ((2 * j + 1) as f64 * z * p2 - j as f64 * p3) / (j + 1) as f64;
                }
                dp = n as f64 * (z * p1 - p2) / (z * z - 1.0);
                let z1 = z;
                z = z1 - p1 / dp;
                if (z - z1).abs() < 1e-16 {
                    break;
                }
            }
            out.push((z, 2.0 / ((1.0 - z * z) * dp * dp)));
        }
        out
    })
}

fn gauss<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let sum: f64 = rule().iter().map(|&(z, w)| w * (f(mid + half * z) + f(mid - half * z))).sum();
    sum * half
}

struct Piece {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error).then_with(|| other.a.total_cmp(&self.a))
    }
}

fn refine<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, whole: f64) -> (Piece, Piece) {
    let m = 0.5 * (a + b);
    let (l, r) = (gauss(f, a, m), gauss(f, m, b));
    // the halves are far more accurate than the whole, so their gap bounds both
    let err = 0.5 * (l + r - whole).abs();
    (Piece { a, b: m, value: l, error: err }, Piece { a: m, b, value: r, error: err })
}

/// Globally adaptive integration of `f` over `[a, b]`, bisecting the piece
/// with the largest error estimate until
/// `error <= max(abs_tol, rel_tol |value|)`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<Quadrature> {
    if a == b {
        return Ok(Quadrature { value: 0.0, error: 0.0, subdivisions: 0 });
    }
    let whole = gauss(&f, a, b);
    let (l, r) = refine(&f, a, b, whole);
    let mut heap = BinaryHeap::new();
    heap.push(l);
    heap.push(r);
    let mut pieces = 2;
    loop {
        let value: f64 = heap.iter().map(|p| p.value).sum();
        let error: f64 = heap.iter().map(|p| p.error).sum();
        if !value.is_finite() {
            return Err(Error::Convergence { estimate: f64::INFINITY, tolerance: cfg.abs_tol });
        }
        let tol = cfg.abs_tol.max(cfg.rel_tol * value.abs());
        if error <= tol {
            return Ok(Quadrature { value, error, subdivisions: pieces });
        }
        if pieces >= cfg.max_subdivisions {
            return Err(Error::Convergence { estimate: error, tolerance: tol });
        }
        let worst = heap.pop().expect("nonempty");
        let (l, r) = refine(&f, worst.a, worst.b, worst.value);
        heap.push(l);
        heap.push(r);
        pieces += 1;
    }
}

/// `int_0^{s0} f(x) dx` through `x = s0 e^{-y}`, for integrands with an
/// integrable endpoint singularity at 0. The `y` range is extended while
/// `x f(x)` at its end is not yet negligible; the integrand is assumed to
/// decay monotonically in `y` there.
pub fn integrate_origin<F: Fn(f64) -> f64>(f: F, s0: f64, cfg: &QuadratureConfig) -> Result<Quadrature> {
    let g = |y: f64| {
        let x = s0 * (-y).exp();
        if x == 0.0 {
            0.0
        } else {
            x * f(x)
        }
    };
    let mut y_max = 16.0;
    while y_max < 740.0 && (g(y_max).abs() > 1e-3 * cfg.abs_tol || g(0.75 * y_max).abs() > cfg.abs_tol) {
        y_max *= 2.0;
    }
    integrate(g, 0.0, y_max.min(740.0), cfg)
}

/// `int_{s0}^inf f` truncated at the first `T = s0 * 2^k` where `tail(T)`, a
/// bound on `int_T^inf |f|`, is below `abs_tol`; fails once `T` would exceed
/// `tail_cut`.
pub fn integrate_tail<F: Fn(f64) -> f64, B: Fn(f64) -> f64>(
    f: F,
    s0: f64,
    tail: B,
    cfg: &QuadratureConfig,
) -> Result<(Quadrature, f64)> {
    let mut t = 2.0 * s0;
    while tail(t) > cfg.abs_tol {
        t *= 2.0;
        if t > cfg.tail_cut {
            return Err(Error::Convergence { estimate: tail(cfg.tail_cut), tolerance: cfg.abs_tol });
        }
    }
    let mut q = integrate(f, s0, t, cfg)?;
    q.error += tail(t);
    Ok((q, t))
}

/// Bound on `Gamma(s, y) = int_y^inf t^{s-1} e^{-t} dt` for `y > s - 1`.
pub fn upper_gamma_bound(s: f64, y: f64) -> f64 {
    if s <= 1.0 {
        return y.powf(s - 1.0) * (-y).exp();
    }
    if y <= s - 1.0 {
        return f64::INFINITY;
    }
    (y.powf(s - 1.0) * (-y).exp()) / (1.0 - (s - 1.0) / y)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_is_exact_for_polynomials() {
        let weights: f64 = rule().iter().map(|&(_, w)| 2.0 * w).sum();
        assert!((weights - 2.0).abs() < 1e-14);
        let v = gauss(&|x: f64| x.powi(38), -1.0, 1.0);
        assert!((v - 2.0 / 39.0).abs() < 1e-14);
    }

    #[test]
    fn adaptive_cases() {
        let cfg = QuadratureConfig::default();
        let q = integrate(|x: f64| x.sin(), 0.0, PI, &cfg).unwrap();
        assert!((q.value - 2.0).abs() < 1e-13);
        let q = integrate(|x: f64| x.sqrt(), 0.0, 1.0, &cfg).unwrap();
        assert!((q.value - 2.0 / 3.0).abs() < 1e-12);
        let q = integrate_origin(|x: f64| -x.ln() / x.sqrt(), 1.0, &cfg).unwrap();
        assert!((q.value - 4.0).abs() < 1e-11, "{}", q.value);
        let (q, t) = integrate_tail(|x: f64| (-x).exp(), 1.0, |t: f64| (-t).exp(), &cfg).unwrap();
        assert!((q.value - (-1.0f64).exp()).abs() < 1e-14 && t >= 32.0);
    }

    #[test]
    fn deterministic_and_validated() {
        let cfg = QuadratureConfig::default();
        let f = |x: f64| (10.0 * x).cos() * (-x).exp();
        assert_eq!(integrate(f, 0.0, 7.0, &cfg).unwrap(), integrate(f, 0.0, 7.0, &cfg).unwrap());
        assert!(cfg.clone().with_rel_tol(1e-14).validate().is_err());
        let tight = QuadratureConfig { max_subdivisions: 3, ..cfg };
        assert!(matches!(integrate(|x: f64| (1.0 / x).sin(), 1e-6, 1.0, &tight), Err(Error::Convergence { .. })));
    }

    #[test]
    fn incomplete_gamma_bound() {
        // Gamma(3, 10) = e^{-10} (100 + 20 + 2)
        let exact = 122.0 * (-10.0f64).exp();
        let b = upper_gamma_bound(3.0, 10.0);
        assert!(b >= exact && b < 1.3 * exact);
    }
}
