//! Numerical counterparts of the exact layer: the weight of the moment
//! functional, the Kontorovich-Lebedev representation of `p_n`, its generating
//! function, the forward KL transform and the Euler-number integral.

use std::f64::consts::{FRAC_PI_2, LN_2, PI};

use serde::Serialize;

use super::bessel::{bessel_k0, bessel_k_itau};
use super::gamma::{gamma, ln_abs_gamma_sq, ln_gamma};
use super::quadrature::{integrate, integrate_origin, integrate_tail, upper_gamma_bound, Quadrature, QuadratureConfig};
use crate::bessel_poly::pn_polys;
use crate::error::{Error, Result};
use crate::euler::euler_diag;
use crate::field::Field;
use crate::poly::Polynomial;
use crate::rational::Rational;

/// Angle used in the kernel bound when truncating `tau` integrals.
const ENVELOPE_DELTA: f64 = FRAC_PI_2 - 0.05;

/// Weight `c_alpha e^{-x} x^{alpha-1} K_0(x)` on `(0, inf)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WeightSpec {
    pub alpha: f64,
    /// `2^alpha Gamma(alpha + 1/2) / (sqrt(pi) Gamma(alpha)^2)`.
    pub c_alpha: f64,
}

impl WeightSpec {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::InvalidArgument(format!("weight needs alpha > 0, got {alpha}")));
        }
        let ln_c = alpha * LN_2 + ln_gamma(alpha + 0.5)? - 0.5 * PI.ln() - 2.0 * ln_gamma(alpha)?;
        Ok(WeightSpec { alpha, c_alpha: ln_c.exp() })
    }

    pub fn density(&self, x: f64) -> Result<f64> {
        Ok(self.c_alpha * ((self.alpha - 1.0) * x.ln() - x).exp() * bessel_k0(x)?)
    }
}

/// `int_0^inf x^n c_alpha e^{-x} x^{alpha-1} K_0(x) dx`.
///
/// The tail beyond `T` is bounded through `K_0(x) <= sqrt(pi/(2x)) e^{-x}`.
pub fn weight_moment(n: usize, w: &WeightSpec, cfg: &QuadratureConfig) -> Result<Quadrature> {
    cfg.validate()?;
    let p = n as f64 + w.alpha - 1.0;
    let f = |x: f64| w.c_alpha * (p * x.ln() - x).exp() * bessel_k0(x).unwrap_or(f64::NAN);
    let s = n as f64 + w.alpha - 0.5;
    let tail = |t: f64| w.c_alpha * FRAC_PI_2.sqrt() * upper_gamma_bound(s, 2.0 * t) / 2f64.powf(s);
    let head = integrate_origin(f, cfg.split, cfg)?;
    let (body, _) = integrate_tail(f, cfg.split, tail, cfg)?;
    Ok(head + body)
}

fn ln_sinh_pi(tau: f64) -> f64 {
    let y = PI * tau;
    if y < 20.0 {
        y.sinh().ln()
    } else {
        y - LN_2 + (-(-2.0 * y).exp()).ln_1p()
    }
}

/// `tau sinh(pi tau) |Gamma(alpha + i tau)|^2`, combined in log space.
fn spectral_weight(tau: f64, alpha: f64) -> Result<f64> {
    if tau == 0.0 {
        return Ok(0.0);
    }
    Ok((tau.ln() + ln_sinh_pi(tau) + ln_abs_gamma_sq(alpha, tau)?).exp())
}

/// `2^{1-alpha} e^x x^{-alpha} / (pi^{3/2} Gamma(alpha + 1/2))`.
fn kl_prefactor(x: f64, alpha: f64) -> Result<f64> {
    Ok(((1.0 - alpha) * LN_2 + x - alpha * x.ln() - 1.5 * PI.ln() - ln_gamma(alpha + 0.5)?).exp())
}

fn check_point(x: f64, alpha: f64) -> Result<()> {
    if !(x > 0.0 && alpha > 0.0) {
        return Err(Error::InvalidArgument(format!("need x > 0 and alpha > 0, got x={x}, alpha={alpha}")));
    }
    Ok(())
}

fn tau_config(cfg: &QuadratureConfig) -> QuadratureConfig {
    QuadratureConfig { rel_tol: cfg.rel_tol.max(1e-10), abs_tol: cfg.abs_tol.max(1e-11), ..cfg.clone() }
}

/// `int_0^inf g(tau) tau^{2n} sinh(pi tau)|Gamma(alpha+i tau)|^2 K_{i tau}(x) tau dtau`
/// with `|g| <= 1`, truncated where the kernel bound
/// `|K_{i tau}(x)| <= e^{-delta tau} K_0(x cos delta)` makes the rest negligible.
fn tau_integral<G: Fn(f64) -> f64>(n: usize, x: f64, alpha: f64, g: G, cfg: &QuadratureConfig) -> Result<Quadrature> {
    let local = tau_config(cfg);
    let k0_env = bessel_k0(x * ENVELOPE_DELTA.cos())?;
    let power = 2 * n as i32;
    let envelope = |tau: f64| -> f64 {
        spectral_weight(tau, alpha).unwrap_or(f64::INFINITY) * tau.powi(power) * (-ENVELOPE_DELTA * tau).exp() * k0_env
    };
    // the envelope behaves like tau^m e^{-delta tau} with m = 2n + 2 alpha
    let m = power as f64 + 2.0 * alpha;
    let tail = |t: f64| {
        let rate = ENVELOPE_DELTA - m / t;
        if rate <= 0.0 {
            f64::INFINITY
        } else {
            envelope(t) / rate
        }
    };
    let f = |tau: f64| {
        let k = bessel_k_itau(tau, x, cfg).unwrap_or(f64::NAN);
        g(tau) * spectral_weight(tau, alpha).unwrap_or(f64::NAN) * tau.powi(power) * k
    };
    let mut t = 8.0;
    while tail(t) > local.abs_tol {
        t += 4.0;
        if t > local.tail_cut {
            return Err(Error::Convergence { estimate: tail(local.tail_cut), tolerance: local.abs_tol });
        }
    }
    let mut q = integrate(f, 0.0, t, &local)?;
    q.error += tail(t);
    Ok(q)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RepresentationValue {
    pub value: f64,
    pub error: f64,
}

/// `p_n(x; alpha)` from its Kontorovich-Lebedev integral
/// `(-1)^n 2^{1-alpha} e^x x^{-alpha} / (pi^{3/2} Gamma(alpha+1/2)) int_0^inf tau^{2n+1} sinh(pi tau) |Gamma(alpha+i tau)|^2 K_{i tau}(x) dtau`.
pub fn pn_integral_representation(n: usize, x: f64, alpha: f64, cfg: &QuadratureConfig) -> Result<RepresentationValue> {
    check_point(x, alpha)?;
    let pre = kl_prefactor(x, alpha)?;
    let q = tau_integral(n, x, alpha, |_| 1.0, cfg)?;
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(RepresentationValue { value: sign * pre * q.value, error: pre * q.error })
}

/// Exact `p_n(x; alpha)` at float arguments, through the exact dyadic value of `alpha`.
pub fn pn_exact_f64(n: usize, x: f64, alpha: f64) -> Result<f64> {
    let a = Rational::from_f64(alpha)?;
    let p = pn_polys(n, &a)?.pop().expect("n + 1 polynomials");
    Ok(eval_f64(&p, x))
}

fn eval_f64(p: &Polynomial<Rational>, x: f64) -> f64 {
    p.coeffs().iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GfNumeric {
    /// `F_alpha(u, x)` by quadrature.
    pub integral: f64,
    pub integral_error: f64,
    /// `sum_{n<=N} p_n(x; alpha) u^{2n} / (2n)!`.
    pub partial_sum: f64,
    /// Size of the first omitted term.
    pub remainder_estimate: f64,
}

/// Generating function `F_alpha(u, x)`: the cosine-weighted KL integral and
/// the even power series with coefficients `p_n(x; alpha)/(2n)!`.
pub fn gf_numeric(u: f64, x: f64, alpha: f64, n_terms: usize, cfg: &QuadratureConfig) -> Result<GfNumeric> {
    check_point(x, alpha)?;
    let u = u.abs();
    let a = Rational::from_f64(alpha)?;
    let polys = pn_polys(n_terms + 1, &a)?;
    let mut terms = Vec::with_capacity(n_terms + 2);
    let mut scale = 1.0;
    for (n, p) in polys.iter().enumerate() {
        if n > 0 {
            scale *= u * u / ((2 * n - 1) * (2 * n)) as f64;
        }
        terms.push(eval_f64(p, x) * scale);
    }
    let remainder_estimate = terms.pop().expect("nonempty").abs();
    let partial_sum: f64 = terms.iter().sum();
    if remainder_estimate > 1e-6 * partial_sum.abs().max(1.0) {
        return Err(Error::InvalidArgument(format!(
            "partial sum with {n_terms} terms has not converged at u={u}: next term {remainder_estimate:e}"
        )));
    }
    let pre = kl_prefactor(x, alpha)?;
    let q = tau_integral(0, x, alpha, |tau| (tau * u).cos(), cfg)?;
    Ok(GfNumeric { integral: pre * q.value, integral_error: pre * q.error, partial_sum, remainder_estimate })
}

/// `int_0^inf K_{i tau}(x) f(x) dx`.
///
/// `(0, s0]` goes through the logarithmic map. Beyond `s0` the range doubles
/// until `int_T^{2T} K_0 |f|`, taken as the size of the remaining tail, is
/// below `abs_tol`, so `K_0 |f|` should decay at least geometrically there.
pub fn kl_forward<F: Fn(f64) -> f64>(f: F, tau: f64, cfg: &QuadratureConfig) -> Result<Quadrature> {
    cfg.validate()?;
    let g = |x: f64| bessel_k_itau(tau, x, cfg).unwrap_or(f64::NAN) * f(x);
    let envelope = |x: f64| bessel_k0(x).unwrap_or(f64::NAN) * f(x).abs();
    let tail = |t: f64| integrate(envelope, t, 2.0 * t, cfg).map_or(f64::INFINITY, |q| 2.0 * q.value.abs());
    let head = integrate_origin(g, cfg.split, cfg)?;
    let (body, _) = integrate_tail(g, cfg.split, tail, cfg)?;
    Ok(head + body)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EulerIntegralReport {
    pub n: usize,
    pub alpha: Rational,
    /// `int_0^inf e^{-2x} x^{alpha-1} p_n(x; alpha) dx` by quadrature.
    pub integral_quadrature: f64,
    /// The same integral from exact Gamma moments.
    pub integral_exact: f64,
    /// `E_{2n}^{2 alpha}(alpha)`, exact.
    pub euler_value: Rational,
    /// `(-1)^n 2^{alpha-1} / Gamma(alpha)`, the constant as stated.
    pub stated_constant: f64,
    /// `E_{2n}^{2 alpha}(alpha) / integral_quadrature`.
    pub fitted_constant: f64,
    /// `2^alpha / Gamma(alpha)`, the closed form the fit reproduces.
    pub corrected_constant: f64,
    pub ratio_fitted_to_stated: f64,
    /// `|E - corrected_constant * integral| / |E|`.
    pub corrected_residual: f64,
}

/// Compare `E_{2n}^{2 alpha}(alpha)` with `int_0^inf e^{-2x} x^{alpha-1} p_n(x; alpha) dx`.
pub fn euler_integral_probe(n: usize, alpha: &Rational, cfg: &QuadratureConfig) -> Result<EulerIntegralReport> {
    if !alpha.is_positive() {
        return Err(Error::InvalidArgument(format!("alpha must be positive, got {alpha}")));
    }
    let a = alpha.to_f64();
    let p = pn_polys(n, alpha)?.pop().expect("n + 1 polynomials");
    // int e^{-2x} x^{alpha-1} x^nu dx = Gamma(alpha) (alpha)_nu / 2^{alpha+nu}
    let j: Rational = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(nu, c)| c * &alpha.pochhammer(nu) * Rational::from(2).pow(-(nu as i32)).expect("nonzero"))
        .sum();
    let gamma_a = gamma(a)?;
    let integral_exact = gamma_a / 2f64.powf(a) * j.to_f64();

    let f = |x: f64| ((a - 1.0) * x.ln() - 2.0 * x).exp() * eval_f64(&p, x);
    let abs_coeffs: Vec<f64> = p.coeffs().iter().map(|c| c.to_f64().abs()).collect();
    let tail = |t: f64| {
        abs_coeffs
            .iter()
            .enumerate()
            .map(|(nu, c)| {
                let s = nu as f64 + a;
                c * upper_gamma_bound(s, 2.0 * t) / 2f64.powf(s)
            })
            .sum::<f64>()
    };
    let head = integrate_origin(f, cfg.split, cfg)?;
    let (body, _) = integrate_tail(f, cfg.split, tail, cfg)?;
    let integral = (head + body).value;
    if integral == 0.0 {
        return Err(Error::Inconsistent("vanishing Euler integral".into()));
    }

    let euler_value = euler_diag(2 * n, alpha);
    let e = euler_value.to_f64();
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let stated_constant = sign * 2f64.powf(a - 1.0) / gamma_a;
    let corrected_constant = 2f64.powf(a) / gamma_a;
    let fitted_constant = e / integral;
    Ok(EulerIntegralReport {
        n,
        alpha: alpha.clone(),
        integral_quadrature: integral,
        integral_exact,
        euler_value,
        stated_constant,
        fitted_constant,
        corrected_constant,
        ratio_fitted_to_stated: fitted_constant / stated_constant,
        corrected_residual: (e - corrected_constant * integral).abs() / e.abs(),
    })
}

/// `|-x^2 K'' - x K' + x^2 K - tau^2 K|` for `K = K_{i tau}` with central
/// differences of step `h`.
pub fn eigen_residual(tau: f64, x: f64, h: f64, cfg: &QuadratureConfig) -> Result<f64> {
    let k = |y: f64| bessel_k_itau(tau, y, cfg);
    let (km, k0, kp) = (k(x - h)?, k(x)?, k(x + h)?);
    let d1 = (kp - km) / (2.0 * h);
    let d2 = (kp - 2.0 * k0 + km) / (h * h);
    Ok((-x * x * d2 - x * d1 + x * x * k0 - tau * tau * k0).abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn weight_normalization_and_moments() {
        for alpha in [0.5, 1.0, 2.5] {
            let w = WeightSpec::new(alpha).unwrap();
            assert!(rel(weight_moment(0, &w, &cfg()).unwrap().value, 1.0) < 1e-10);
        }
        let w = WeightSpec::new(1.0).unwrap();
        assert!(rel(weight_moment(1, &w, &cfg()).unwrap().value, 1.0 / 3.0) < 1e-10);
        assert!(rel(weight_moment(2, &w, &cfg()).unwrap().value, 4.0 / 15.0) < 1e-10);
        assert!(WeightSpec::new(0.0).is_err());
    }

    #[test]
    fn representation_small_cases() {
        let v = pn_integral_representation(0, 1.0, 1.0, &cfg()).unwrap();
        assert!((v.value - 1.0).abs() < 1e-6, "{v:?}");
        let v = pn_integral_representation(1, 2.0, 1.0, &cfg()).unwrap();
        assert!((v.value + 5.0).abs() < 5e-5, "{v:?}");
        let exact = pn_exact_f64(2, 1.0, 1.5).unwrap();
        let v = pn_integral_representation(2, 1.0, 1.5, &cfg()).unwrap();
        assert!(rel(v.value, exact) < 1e-5, "{v:?} {exact}");
    }

    #[test]
    fn generating_function() {
        let g = gf_numeric(0.0, 1.0, 1.0, 4, &cfg()).unwrap();
        assert!((g.partial_sum - 1.0).abs() < 1e-15 && (g.integral - 1.0).abs() < 1e-6);
        let (a, b) = (gf_numeric(0.3, 1.0, 1.0, 6, &cfg()).unwrap(), gf_numeric(-0.3, 1.0, 1.0, 6, &cfg()).unwrap());
        assert_eq!(a, b);
        let g = gf_numeric(0.2, 1.0, 1.0, 6, &cfg()).unwrap();
        assert!((g.integral - g.partial_sum).abs() < 1e-5, "{g:?}");
        assert!(gf_numeric(5.0, 1.0, 1.0, 2, &cfg()).is_err());
    }

    #[test]
    fn kl_forward_values() {
        let v = kl_forward(|x: f64| (-x).exp(), 0.0, &cfg()).unwrap();
        assert!((v.value - 1.0).abs() < 1e-8, "{v:?}");
        let v = kl_forward(|x: f64| (-x).exp(), 1.0, &cfg()).unwrap();
        assert!((v.value - PI / PI.sinh()).abs() < 1e-7, "{v:?}");
        let v = kl_forward(|x: f64| (-x).exp() / x.sqrt(), 0.0, &cfg()).unwrap();
        let expected = PI.sqrt() * PI / 2f64.sqrt();
        assert!((v.value - expected).abs() < 1e-6, "{v:?} {expected}");
    }

    #[test]
    fn euler_probe_fits_corrected_constant() {
        let r = euler_integral_probe(0, &Rational::one(), &cfg()).unwrap();
        assert!((r.integral_quadrature - 0.5).abs() < 1e-12);
        assert!((r.fitted_constant - 2.0).abs() < 1e-10 && (r.stated_constant - 1.0).abs() < 1e-15);
        let r = euler_integral_probe(1, &Rational::one(), &cfg()).unwrap();
        assert!((r.integral_quadrature + 0.25).abs() < 1e-12);
        assert_eq!(r.euler_value, Rational::frac(-1, 2));
        assert!((r.ratio_fitted_to_stated + 2.0).abs() < 1e-10);
        let r = euler_integral_probe(3, &Rational::from(2), &cfg()).unwrap();
        assert!(r.corrected_residual < 1e-10 && (r.fitted_constant - 4.0).abs() < 1e-9);
    }

    #[test]
    fn eigenfunction_residual() {
        assert!(eigen_residual(1.0, 2.0, 1e-4, &cfg()).unwrap() < 1e-5);
    }
}
