//! Complex log-gamma by the Lanczos approximation (g = 7, nine terms).

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut x = Complex64::new(COEFFS[0], 0.0);
    for (i, &c) in COEFFS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

/// A branch of `log Gamma(z)` for `Re z > 0`; the real part is `log |Gamma(z)|`.
pub fn log_gamma_complex(z: Complex64) -> Result<Complex64> {
    if !(z.re > 0.0) {
        return Err(Error::InvalidArgument(format!("log_gamma_complex needs Re z > 0, got {z}")));
    }
    if z.re < 0.5 {
        return Ok(lanczos(z + 1.0) - z.ln());
    }
    Ok(lanczos(z))
}

/// `log Gamma(x)` for real `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    Ok(log_gamma_complex(Complex64::new(x, 0.0))?.re)
}

pub fn gamma(x: f64) -> Result<f64> {
    Ok(ln_gamma(x)?.exp())
}

/// `log |Gamma(a + i t)|^2`.
pub fn ln_abs_gamma_sq(a: f64, t: f64) -> Result<f64> {
    Ok(2.0 * log_gamma_complex(Complex64::new(a, t))?.re)
}
