//! Macdonald functions `K_0(x)` and `K_{i tau}(x)` for real `tau` and `x > 0`.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use super::quadrature::{integrate, QuadratureConfig};
use crate::error::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Decay exponent that makes `exp(-DECAY)` negligible next to `f64::EPSILON`.
const DECAY: f64 = 42.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum K0Method {
    /// Power series below `x = 2`, Steed's continued fraction above.
    Series,
    /// Adaptive quadrature of `int_0^inf exp(-x cosh u) du`.
    Integral,
}

fn check_x(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("Macdonald functions need x > 0, got {x}")))
    }
}

fn k0_series(x: f64) -> f64 {
    let y = 0.25 * x * x;
    let log_term = (0.5 * x).ln() + EULER_GAMMA;
    let (mut term, mut harmonic) = (1.0, 0.0);
    let (mut i0, mut rest) = (1.0, 0.0);
    for k in 1..60 {
        term *= y / (k * k) as f64;
        harmonic += 1.0 / k as f64;
        i0 += term;
        rest += term * harmonic;
        if term * harmonic < 1e-17 * rest.abs() {
            break;
        }
    }
    -log_term * i0 + rest
}

/// Steed's continued fraction CF2 (Temme's form) at order zero.
fn k0_steed(x: f64) -> f64 {
    let a1 = 0.25;
    let (mut b, mut a) = (2.0 * (1.0 + x), -a1);
    let mut d = 1.0 / b;
    let mut delh = d;
    let (mut q1, mut q2) = (0.0, 1.0);
    let (mut q, mut c) = (a1, a1);
    let mut s = 1.0 + q * delh;
    for i in 1..10_000 {
        let fi = i as f64;
        a -= 2.0 * fi;
        c = -a * c / (fi + 1.0);
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < 1e-17 {
            break;
        }
    }
    (PI / (2.0 * x)).sqrt() * (-x).exp() / s
}

fn k0_integral(x: f64, cfg: &QuadratureConfig) -> Result<f64> {
    let u_max = (1.0 + DECAY / x).acosh();
    let f = |u: f64| {
        let s = (0.5 * u).sinh();
        (-2.0 * x * s * s).exp()
    };
    Ok((-x).exp() * integrate(f, 0.0, u_max, cfg)?.value)
}

pub fn bessel_k0(x: f64) -> Result<f64> {
    check_x(x)?;
    Ok(if x <= 2.0 { k0_series(x) } else { k0_steed(x) })
}

pub fn bessel_k0_with(x: f64, method: K0Method, cfg: &QuadratureConfig) -> Result<f64> {
    match method {
        K0Method::Series => bessel_k0(x),
        K0Method::Integral => {
            check_x(x)?;
            k0_integral(x, cfg)
        }
    }
}

/// `K_{i tau}(x) = int_0^inf exp(-x cosh u) cos(tau u) du`.
///
/// For larger `tau` the contour is moved to `Im u = theta` with
/// `theta = pi/2 - 3/tau`, which gives
/// `K = e^{-tau theta} int_0^inf e^{-x cos(theta) cosh u} cos(tau u - x sin(theta) sinh u) du`
/// and avoids the `e^{-pi tau/2}` cancellation of the real-axis integral.
pub fn bessel_k_itau(tau: f64, x: f64, cfg: &QuadratureConfig) -> Result<f64> {
    check_x(x)?;
    let tau = tau.abs();
    let theta = if tau > 6.0 / PI { FRAC_PI_2 - 3.0 / tau } else { 0.0 };
    let (ct, st) = (theta.cos(), theta.sin());
    let xc = x * ct;
    let u_max = (1.0 + DECAY / xc).acosh();
    let f = |u: f64| {
        let s = (0.5 * u).sinh();
        (-2.0 * xc * s * s).exp() * (tau * u - x * st * u.sinh()).cos()
    };
    let local = QuadratureConfig { abs_tol: cfg.abs_tol.max(1e-15 * u_max), ..cfg.clone() };
    let j = integrate(f, 0.0, u_max, &local)?.value;
    Ok((-tau * theta - xc).exp() * j)
}

/// The bound `|K_{i tau}(x)| <= e^{-delta tau} K_0(x cos delta)`, `0 < delta < pi/2`.
pub fn k_itau_bound(tau: f64, x: f64, delta: f64) -> Result<f64> {
    if !(delta > 0.0 && delta < FRAC_PI_2) {
        return Err(Error::InvalidArgument(format!("delta must lie in (0, pi/2), got {delta}")));
    }
    Ok((-delta * tau.abs()).exp() * bessel_k0(x * delta.cos())?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn k0_reference_values() {
        let k1 = 0.421_024_438_240_708_5;
        assert!((bessel_k0(1.0).unwrap() / k1 - 1.0).abs() < 1e-14);
        // K_0(2.5) and K_0(10)
        assert!((bessel_k0(2.5).unwrap() / 0.062_347_553_200_366_17 - 1.0).abs() < 1e-13);
        assert!((bessel_k0(10.0).unwrap() / 1.778_006_231_616_917e-5 - 1.0).abs() < 1e-13);
        assert!(bessel_k0(0.0).is_err() && bessel_k0(-1.0).is_err());
    }

    #[test]
    fn k0_methods_agree_across_branch() {
        for x in [1e-3, 0.1, 1.9, 2.0, 2.1, 7.0, 50.0] {
            let a = bessel_k0(x).unwrap();
            let b = bessel_k0_with(x, K0Method::Integral, &cfg()).unwrap();
            assert!((a / b - 1.0).abs() < 1e-12, "x={x} {a} {b}");
        }
    }

    #[test]
    fn k_itau_reduces_and_is_even() {
        for x in [0.5, 1.0, 5.0] {
            let k = bessel_k_itau(0.0, x, &cfg()).unwrap();
            assert!((k / bessel_k0(x).unwrap() - 1.0).abs() < 1e-12);
        }
        assert_eq!(bessel_k_itau(3.0, 1.0, &cfg()).unwrap(), bessel_k_itau(-3.0, 1.0, &cfg()).unwrap());
    }

    #[test]
    fn large_tau_reference_values() {
        let cases = [
            (5.0, 1.0, 3.804_618_279_975_637e-4),
            (10.0, 1.0, 1.129_455_082_168_180_2e-7),
            (20.0, 0.5, -8.105_606_834_724_834e-15),
            (30.0, 2.0, -8.792_128_974_393_286e-22),
            (40.0, 1.0, -1.700_441_280_980_42e-28),
        ];
        for (tau, x, exact) in cases {
            let k = bessel_k_itau(tau, x, &cfg()).unwrap();
            assert!((k / exact - 1.0).abs() < 1e-9, "tau={tau} x={x} {k} {exact}");
        }
    }

    #[test]
    fn shifted_contour_matches_real_axis() {
        // tau above the switch point, both contours are usable at this size
        for (tau, x) in [(2.5, 1.0), (4.0, 3.0), (6.0, 0.5)] {
            let shifted = bessel_k_itau(tau, x, &cfg()).unwrap();
            let u_max = (1.0 + DECAY / x).acosh();
            let direct = integrate(|u: f64| (-x * u.cosh()).exp() * (tau * u).cos(), 0.0, u_max, &cfg()).unwrap();
            assert!((shifted - direct.value).abs() < 1e-13, "{tau} {x} {shifted} {}", direct.value);
        }
    }
}
