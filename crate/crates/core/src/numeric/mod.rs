//! Floating-point layer: Macdonald functions, complex log-gamma, adaptive
//! quadrature, and numerical checks of the integral representations.

pub mod bessel;
pub mod gamma;
pub mod integrals;
pub mod quadrature;

pub use bessel::{bessel_k0, bessel_k0_with, bessel_k_itau, k_itau_bound, K0Method};
pub use gamma::{ln_abs_gamma_sq, ln_gamma, log_gamma_complex};
pub use integrals::{
    eigen_residual, euler_integral_probe, gf_numeric, kl_forward, pn_exact_f64, pn_integral_representation,
    weight_moment, EulerIntegralReport, GfNumeric, RepresentationValue, WeightSpec,
};
pub use quadrature::{integrate, integrate_origin, integrate_tail, Quadrature, QuadratureConfig};
