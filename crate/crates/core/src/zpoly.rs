//! Dense polynomials over the integers, used where intermediate fractions are
//! known to cancel.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::Rational;

/// Products of at least this many coefficient pairs go through Kronecker
/// substitution.
const KRONECKER_THRESHOLD: usize = 256;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub(crate) struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn zero() -> Self {
        ZPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        ZPoly { coeffs: vec![BigInt::one()] }
    }

    /// `c0 + c1 x`.
    pub fn linear(c0: i64, c1: i64) -> Self {
        Self::new(vec![BigInt::from(c0), BigInt::from(c1)])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn to_rational(&self) -> Polynomial<Rational> {
        Polynomial::new(self.coeffs.iter().map(|c| Rational::from(c.clone())).collect())
    }

    fn max_bits(&self) -> u64 {
        self.coeffs.iter().map(BigInt::bits).max().unwrap_or(0)
    }

    fn schoolbook(&self, rhs: &Self) -> Self {
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    fn pack(&self, slot: u64) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| (acc << slot) + c)
    }

    /// Inverse of [`ZPoly::pack`] with balanced digits.
    fn unpack(mut value: BigInt, slot: u64, len: usize) -> Self {
        let modulus = BigInt::one() << slot;
        let half = BigInt::one() << (slot - 1);
        let mut out = Vec::with_capacity(len);
        for _ in 0..len {
            let mut digit = value.mod_floor(&modulus);
            if digit >= half {
                digit -= &modulus;
            }
            value = (value - &digit) >> slot;
            out.push(digit);
        }
        debug_assert!(value.is_zero());
        Self::new(out)
    }

    fn kronecker(&self, rhs: &Self) -> Self {
        let terms = self.coeffs.len().min(rhs.coeffs.len()) as u64;
        let slot = self.max_bits() + rhs.max_bits() + 64 - terms.leading_zeros() as u64 + 2;
        let product = self.pack(slot) * rhs.pack(slot);
        Self::unpack(product, slot, self.coeffs.len() + rhs.coeffs.len() - 1)
    }

    /// Exact quotient; errors when `divisor` does not divide `self` in `Z[x]`.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        let Some(lead) = divisor.coeffs.last() else { return Err(Error::DivisionByZero) };
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Err(Error::Inconsistent("integer polynomial division is not exact".into()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let (q, r) = rem[k + dd].div_rem(lead);
            if !r.is_zero() {
                return Err(Error::Inconsistent("integer polynomial division is not exact".into()));
            }
            if !q.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &q * d;
                }
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::Inconsistent("integer polynomial division is not exact".into()));
        }
        Ok(Self::new(quot))
    }
}

impl Add for &ZPoly {
    type Output = ZPoly;
    fn add(self, rhs: &ZPoly) -> ZPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = long.coeffs.clone();
        for (o, c) in out.iter_mut().zip(&short.coeffs) {
            *o += c;
        }
        ZPoly::new(out)
    }
}

impl Neg for &ZPoly {
    type Output = ZPoly;
    fn neg(self) -> ZPoly {
        ZPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Sub for &ZPoly {
    type Output = ZPoly;
    fn sub(self, rhs: &ZPoly) -> ZPoly {
        self + &(-rhs)
    }
}

impl Mul for &ZPoly {
    type Output = ZPoly;
    fn mul(self, rhs: &ZPoly) -> ZPoly {
        if self.is_zero() || rhs.is_zero() {
            return ZPoly::zero();
        }
        if self.coeffs.len() * rhs.coeffs.len() >= KRONECKER_THRESHOLD {
            self.kronecker(rhs)
        } else {
            self.schoolbook(rhs)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: &[i64]) -> ZPoly {
        ZPoly::new(v.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn kronecker_matches_schoolbook() {
        let big = BigInt::from(3).pow(200);
        let a = ZPoly::new((0..40).map(|i| if i % 3 == 0 { -&big + i } else { BigInt::from(i * 7 - 100) }).collect());
        let b =
            ZPoly::new((0..25).map(|i| BigInt::from(if i % 2 == 0 { -1 } else { 1 }) * (&big >> (i * 5))).collect());
        assert_eq!(a.kronecker(&b), a.schoolbook(&b));
        assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
    }

    #[test]
    fn inexact_division_is_reported() {
        assert!(z(&[1, 0, 1]).exact_div(&z(&[1, 1])).is_err());
        assert!(z(&[1, 2]).exact_div(&z(&[0, 2])).is_err());
        assert_eq!(z(&[-1, 0, 1]).exact_div(&z(&[1, 1])).unwrap(), z(&[-1, 1]));
    }
}
