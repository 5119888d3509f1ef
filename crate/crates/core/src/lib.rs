#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod combinatorics;
pub mod error;
pub mod field;
mod modgcd;
pub mod poly;
pub mod ratfunc;
pub mod rational;
pub mod series;
pub mod verify;
mod zpoly;

pub use bessel_poly::AlphaMode;
pub use error::{Error, Result};
pub use field::Field;
pub use poly::Polynomial;
pub use ratfunc::{poly_gcd, RationalFunction};
pub use rational::Rational;
pub use series::PowerSeries;
pub use verify::{Check, RunReport, Status, Suite, VerifyOptions};
pub mod bessel_poly;
pub mod euler;
pub mod moments;
pub mod numeric;
