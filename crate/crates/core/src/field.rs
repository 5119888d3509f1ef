//! Coefficient fields shared by every exact pipeline.
//!
//! The same construction code runs "at fixed alpha" (coefficients in
//! [`Rational`]) and "symbolically in alpha" (coefficients in
//! [`RationalFunction`](crate::ratfunc::RationalFunction)); both implement
//! [`Field`].

use std::fmt;

use crate::error::Result;
use crate::rational::Rational;

pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn is_zero(&self) -> bool;

    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    /// Fails with [`Error::DivisionByZero`](crate::Error::DivisionByZero).
    fn divided(&self, rhs: &Self) -> Result<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from(n))
    }

    fn scaled(&self, r: &Rational) -> Self {
        self.times(&Self::from_rational(r))
    }

    fn powi(&self, exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.times(&base);
            }
        }
        acc
    }

    /// Rising factorial `(self)_n = self (self+1) ... (self+n-1)`, `(y)_0 = 1`.
    fn pochhammer(&self, n: usize) -> Self {
        (0..n).fold(Self::one(), |acc, k| acc.times(&self.plus(&Self::from_i64(k as i64))))
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn is_one(&self) -> bool {
        Rational::is_one(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn divided(&self, rhs: &Self) -> Result<Self> {
        self.checked_div(rhs)
    }
    fn scaled(&self, r: &Rational) -> Self {
        self * r
    }
}

/// Free-function form of [`Field::pochhammer`].
pub fn pochhammer<F: Field>(y: &F, n: usize) -> F {
    y.pochhammer(n)
}
