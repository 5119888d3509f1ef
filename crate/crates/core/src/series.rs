//! Truncated power series in `t` with exact rational coefficients.

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, PartialEq, Debug)]
pub struct PowerSeries {
    coeffs: Vec<Rational>,
}

impl PowerSeries {
    /// Pads or truncates `coeffs` to `order + 1` terms.
    pub fn new(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        PowerSeries { coeffs }
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    /// `exp(c t)` truncated at `order`.
    pub fn exp_linear(c: &Rational, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut term = Rational::one();
        for k in 0..=order {
            if k > 0 {
                term = &term * c / Rational::from(k as i64);
            }
            coeffs.push(term.clone());
        }
        PowerSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    fn check_order(&self, rhs: &Self) -> Result<()> {
        if self.order() != rhs.order() {
            return Err(Error::InvalidArgument(format!("series orders differ: {} vs {}", self.order(), rhs.order())));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_order(rhs)?;
        Ok(PowerSeries { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        PowerSeries { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_order(rhs)?;
        let n = self.coeffs.len();
        let coeffs = (0..n).map(|k| (0..=k).map(|j| &self.coeffs[j] * &rhs.coeffs[k - j]).sum()).collect();
        Ok(PowerSeries { coeffs })
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn recip(&self) -> Result<Self> {
        let a0_inv = self.coeffs[0].recip()?;
        let n = self.coeffs.len();
        let mut out: Vec<Rational> = Vec::with_capacity(n);
        out.push(a0_inv.clone());
        for k in 1..n {
            let s: Rational = (1..=k).map(|j| &self.coeffs[j] * &out[k - j]).sum();
            out.push(-(s * &a0_inv));
        }
        Ok(PowerSeries { coeffs: out })
    }

    /// `exp(self)`; the constant term must vanish (callers factor it out).
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::InvalidArgument("exp of a series needs a zero constant term".into()));
        }
        let n = self.coeffs.len();
        let mut out: Vec<Rational> = Vec::with_capacity(n);
        out.push(Rational::one());
        // b' = a' b  =>  k b_k = sum_j j a_j b_{k-j}
        for k in 1..n {
            let s: Rational = (1..=k).map(|j| Rational::from(j as i64) * &self.coeffs[j] * &out[k - j]).sum();
            out.push(s / Rational::from(k as i64));
        }
        Ok(PowerSeries { coeffs: out })
    }

    /// Integer power; negative exponents require an invertible constant term.
    pub fn powi(&self, exp: i64) -> Result<Self> {
        let base = if exp < 0 { self.recip()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::constant(Rational::one(), self.order());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    #[test]
    fn exp_taylor() {
        let t = PowerSeries::new(vec![r(0, 1), r(1, 1)], 3);
        assert_eq!(t.exp().unwrap().coeffs(), &[r(1, 1), r(1, 1), r(1, 2), r(1, 6)]);
        assert_eq!(PowerSeries::exp_linear(&r(1, 1), 3), t.exp().unwrap());
    }

    #[test]
    fn square() {
        let s = PowerSeries::new(vec![r(1, 1), r(1, 1)], 2);
        assert_eq!(s.powi(2).unwrap().coeffs(), &[r(1, 1), r(2, 1), r(1, 1)]);
    }

    #[test]
    fn geometric_inverse() {
        let s = PowerSeries::new(vec![r(1, 1), r(1, 1)], 2);
        // Independent oracle: 1/(1+t) = sum (-t)^k.
        let geometric: Vec<Rational> = (0..=2).map(|k| r(if k % 2 == 0 { 1 } else { -1 }, 1)).collect();
        assert_eq!(s.powi(-1).unwrap().coeffs(), geometric.as_slice());
    }

    #[test]
    fn errors() {
        let t = PowerSeries::new(vec![r(0, 1), r(1, 1)], 3);
        assert!(t.powi(-1).is_err());
        assert!(PowerSeries::constant(r(1, 1), 3).exp().is_err());
        assert!(t.mul(&PowerSeries::constant(r(1, 1), 2)).is_err());
    }
}
