//! Rational functions in the parameter alpha over the rationals.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::modgcd::gcd_primitive;
use crate::poly::Polynomial;
use crate::rational::Rational;

pub type RationalPoly = Polynomial<Rational>;

/// Scale a rational polynomial to a primitive integer polynomial with positive
/// leading coefficient. Empty for the zero polynomial.
fn primitive_integer(p: &RationalPoly) -> Vec<BigInt> {
    if p.is_zero() {
        return Vec::new();
    }
    let lcm = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> = p.coeffs().iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    make_primitive(&mut ints);
    ints
}

fn make_primitive(ints: &mut Vec<BigInt>) {
    while ints.last().is_some_and(Zero::is_zero) {
        ints.pop();
    }
    let Some(last) = ints.last() else { return };
    let mut content = BigInt::zero();
    for c in ints.iter() {
        content = content.gcd(c);
        if content.is_one() {
            break;
        }
    }
    if last.is_negative() {
        content = -content;
    }
    if !content.is_one() {
        for c in ints.iter_mut() {
            *c = &*c / &content;
        }
    }
}

/// Pseudo-remainder of `a` by `b` followed by content removal.
fn primitive_prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    while r.len() > db {
        let lr = r.last().expect("nonempty").clone();
        let shift = r.len() - 1 - db;
        let g = lr.gcd(lb);
        let mr = lb / &g;
        let mb = &lr / &g;
        for c in r.iter_mut() {
            *c *= &mr;
        }
        for (j, bc) in b.iter().enumerate() {
            r[shift + j] -= &mb * bc;
        }
        r.pop();
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    make_primitive(&mut r);
    r
}

/// Monic gcd over the rationals.
pub fn poly_gcd(p: &RationalPoly, q: &RationalPoly) -> Result<RationalPoly> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::ZeroGcd);
    }
    let (a, b) = (primitive_integer(p), primitive_integer(q));
    if a.is_empty() || b.is_empty() {
        return Ok(monic_from_ints(if a.is_empty() { b } else { a }));
    }
    if a.len() == 1 || b.len() == 1 {
        return Ok(RationalPoly::one());
    }
    match gcd_primitive(&a, &b) {
        Some(g) => Ok(monic_from_ints(g)),
        None => prs_gcd(a, b),
    }
}

fn monic_from_ints(a: Vec<BigInt>) -> RationalPoly {
    let lead = a.last().expect("nonzero gcd").clone();
    Polynomial::new(a.into_iter().map(|c| Rational::new(c, lead.clone()).expect("nonzero lead")).collect())
}

/// Euclidean remainder sequence on primitive parts.
fn prs_gcd(mut a: Vec<BigInt>, mut b: Vec<BigInt>) -> Result<RationalPoly> {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        if b.len() == 1 {
            return Ok(RationalPoly::one());
        }
        let r = primitive_prem(&a, &b);
        a = b;
        b = r;
    }
    Ok(monic_from_ints(a))
}

/// Quotient `num / den` with the denominator monic and coprime to the numerator.
#[derive(Clone, PartialEq, Debug)]
pub struct RationalFunction {
    num: RationalPoly,
    den: RationalPoly,
}

impl RationalFunction {
    pub fn new(num: RationalPoly, den: RationalPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero_value());
        }
        if den.degree() == Some(0) {
            let lead = den.leading().expect("nonzero").clone();
            return Ok(RationalFunction { num: num.div_scalar(&lead)?, den: RationalPoly::one() });
        }
        let g = poly_gcd(&num, &den)?;
        let (num, den) = if g.degree() == Some(0) { (num, den) } else { (num.exact_div(&g)?, den.exact_div(&g)?) };
        let lead = den.leading().expect("nonzero").clone();
        Ok(RationalFunction { num: num.div_scalar(&lead)?, den: den.div_scalar(&lead)? })
    }

    fn zero_value() -> Self {
        RationalFunction { num: RationalPoly::zero(), den: RationalPoly::one() }
    }

    pub fn from_poly(num: RationalPoly) -> Self {
        RationalFunction { num, den: RationalPoly::one() }
    }

    /// The indeterminate alpha.
    pub fn var() -> Self {
        Self::from_poly(RationalPoly::x())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(RationalPoly::constant(c))
    }

    pub fn num(&self) -> &RationalPoly {
        &self.num
    }

    pub fn den(&self) -> &RationalPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match (self.num.degree(), self.is_polynomial()) {
            (None, _) => Some(Rational::zero()),
            (Some(0), true) => Some(self.num.coeff(0)),
            _ => None,
        }
    }

    /// Substitute a value for alpha.
    pub fn eval(&self, alpha: &Rational) -> Result<Rational> {
        let d = self.den.eval(alpha);
        if d.is_zero() {
            return Err(Error::PochhammerPole { base: self.den.display_with("a"), len: 1, alpha: alpha.to_string() });
        }
        self.num.eval(alpha).checked_div(&d)
    }

    pub fn eval_f64(&self, alpha: f64) -> f64 {
        let ev = |p: &RationalPoly| p.coeffs().iter().rev().fold(0.0, |acc, c| acc * alpha + c.to_f64());
        ev(&self.num) / ev(&self.den)
    }

    /// Degree of the numerator in alpha; `None` for zero.
    pub fn num_degree(&self) -> Option<usize> {
        self.num.degree()
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv = RationalFunction { num: rhs.den.clone(), den: rhs.num.clone() };
        Ok(self.mul_ref(&normalize_sign(inv)?))
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        if self.num.is_zero() {
            return rhs.clone();
        }
        if rhs.num.is_zero() {
            return self.clone();
        }
        if self.is_polynomial() && rhs.is_polynomial() {
            return Self::from_poly(&self.num + &rhs.num);
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            return Self::new(num, self.den.clone()).expect("nonzero denominator");
        }
        // Henrici: with g = gcd(b, d), only gcd(numerator, g) can cancel.
        let g = poly_gcd(&self.den, &rhs.den).expect("nonzero denominators");
        if g.degree() == Some(0) {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            return RationalFunction { num, den: &self.den * &rhs.den }.reduced_monic();
        }
        let b1 = self.den.exact_div(&g).expect("gcd divides");
        let d1 = rhs.den.exact_div(&g).expect("gcd divides");
        let num = &(&self.num * &d1) + &(&rhs.num * &b1);
        if num.is_zero() {
            return Self::zero_value();
        }
        let h = poly_gcd(&num, &g).expect("nonzero");
        let (num, g) = if h.degree() == Some(0) {
            (num, g)
        } else {
            (num.exact_div(&h).expect("gcd divides"), g.exact_div(&h).expect("gcd divides"))
        };
        RationalFunction { num, den: &(&b1 * &d1) * &g }.reduced_monic()
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.num.is_zero() || rhs.num.is_zero() {
            return Self::zero_value();
        }
        if self.is_polynomial() && rhs.is_polynomial() {
            return Self::from_poly(&self.num * &rhs.num);
        }
        let (a, d) = cancel(&self.num, &rhs.den);
        let (c, b) = cancel(&rhs.num, &self.den);
        RationalFunction { num: &a * &c, den: &b * &d }.reduced_monic()
    }

    /// Make the denominator monic, assuming the parts are already coprime.
    fn reduced_monic(self) -> Self {
        if self.num.is_zero() {
            return Self::zero_value();
        }
        let lead = self.den.leading().expect("nonzero").clone();
        if lead.is_one() {
            return self;
        }
        RationalFunction {
            num: self.num.div_scalar(&lead).expect("nonzero"),
            den: self.den.div_scalar(&lead).expect("nonzero"),
        }
    }

    /// Render with `a` as the variable name.
    pub fn display_alpha(&self) -> String {
        if self.is_polynomial() {
            self.num.display_with("a")
        } else {
            // Scale so the denominator has coprime integer coefficients.
            let l = self.den.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            let g = self.den.coeffs().iter().fold(BigInt::zero(), |acc, c| acc.gcd(&(c.numer() * &l / c.denom())));
            let s = Rational::from_int(l) / Rational::from_int(g);
            format!("({})/({})", self.num.scale(&s).display_with("a"), self.den.scale(&s).display_with("a"))
        }
    }
}

fn normalize_sign(f: RationalFunction) -> Result<RationalFunction> {
    let lead = f.den.leading().ok_or(Error::DivisionByZero)?.clone();
    Ok(RationalFunction { num: f.num.div_scalar(&lead)?, den: f.den.div_scalar(&lead)? })
}

/// Divide both polynomials by their gcd.
fn cancel(p: &RationalPoly, q: &RationalPoly) -> (RationalPoly, RationalPoly) {
    if q.degree() == Some(0) || p.degree() == Some(0) {
        return (p.clone(), q.clone());
    }
    let g = poly_gcd(p, q).expect("nonzero");
    if g.degree() == Some(0) {
        return (p.clone(), q.clone());
    }
    (p.exact_div(&g).expect("gcd divides"), q.exact_div(&g).expect("gcd divides"))
}

impl Field for RationalFunction {
    fn zero() -> Self {
        Self::zero_value()
    }
    fn one() -> Self {
        Self::from_poly(RationalPoly::one())
    }
    fn from_rational(r: &Rational) -> Self {
        Self::constant(r.clone())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.add_ref(rhs)
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.add_ref(&rhs.negated())
    }
    fn times(&self, rhs: &Self) -> Self {
        self.mul_ref(rhs)
    }
    fn negated(&self) -> Self {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }
    fn divided(&self, rhs: &Self) -> Result<Self> {
        self.checked_div(rhs)
    }
    fn scaled(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero_value();
        }
        RationalFunction { num: self.num.scale(r), den: self.den.clone() }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_alpha())
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: Self) -> RationalFunction {
        self.add_ref(rhs)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: Self) -> RationalFunction {
        self.minus(rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: Self) -> RationalFunction {
        self.mul_ref(rhs)
    }
}

/// Panics on a zero divisor; use [`RationalFunction::checked_div`] otherwise.
impl Div for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: Self) -> RationalFunction {
        self.checked_div(rhs).expect("rational function division by zero")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        self.negated()
    }
}

#[derive(Serialize, Deserialize)]
struct RationalFunctionRepr {
    num: Vec<Rational>,
    den: Vec<Rational>,
}

impl Serialize for RationalFunction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let num = if self.num.is_zero() { vec![Rational::zero()] } else { self.num.coeffs().to_vec() };
        RationalFunctionRepr { num, den: self.den.coeffs().to_vec() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RationalFunction {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = RationalFunctionRepr::deserialize(deserializer)?;
        RationalFunction::new(Polynomial::new(repr.num), Polynomial::new(repr.den)).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(c: &[i64]) -> RationalPoly {
        Polynomial::new(c.iter().map(|&v| Rational::from(v)).collect())
    }

    fn a() -> RationalFunction {
        RationalFunction::var()
    }

    fn konst(v: i64) -> RationalFunction {
        RationalFunction::from_i64(v)
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(poly_gcd(&q(&[-1, 0, 1]), &q(&[-1, 1])).unwrap(), q(&[-1, 1]));
        assert_eq!(poly_gcd(&q(&[0, 0, 1]), &q(&[0, 0, 0, 1])).unwrap(), q(&[0, 0, 1]));
        assert_eq!(poly_gcd(&q(&[1, 1]), &q(&[2, 1])).unwrap(), q(&[1]));
        assert_eq!(poly_gcd(&q(&[0, 6]), &RationalPoly::zero()).unwrap(), q(&[0, 1]));
        assert_eq!(poly_gcd(&RationalPoly::zero(), &RationalPoly::zero()), Err(Error::ZeroGcd));
    }

    #[test]
    fn modular_gcd_matches_remainder_sequence() {
        let common = q(&[7, -3, 0, 11, 2]);
        for (x, y) in [(q(&[1, 2, 3]), q(&[-5, 0, 0, 1])), (q(&[4, 4, 1]), q(&[2, 1])), (q(&[9]), q(&[0, 1]))] {
            let (a, b) = (&common * &x, &common * &y);
            let modular = poly_gcd(&a, &b).unwrap();
            let prs = prs_gcd(primitive_integer(&a), primitive_integer(&b)).unwrap();
            assert_eq!(modular, prs);
        }
    }

    #[test]
    fn gcd_with_fractional_coefficients() {
        // (x/2 - 1/3)(x + 5) and (x/2 - 1/3)(3x - 7)
        let common = Polynomial::new(vec![Rational::frac(-1, 3), Rational::frac(1, 2)]);
        let p = &common * &q(&[5, 1]);
        let r = &common * &q(&[-7, 3]);
        assert_eq!(poly_gcd(&p, &r).unwrap(), common.monic().unwrap());
    }

    #[test]
    fn substitution() {
        let two_a_plus_one = &(&a() * &konst(2)) + &konst(1);
        let f = &(&a() * &a()) / &two_a_plus_one;
        assert_eq!(f.eval(&Rational::one()).unwrap(), Rational::frac(1, 3));
        assert!(f.eval(&Rational::frac(-1, 2)).is_err());
    }

    #[test]
    fn cancellation() {
        let ap1 = &a() + &konst(1);
        let f = &a() / &ap1;
        let g = &ap1 / &a();
        assert_eq!(&f * &g, RationalFunction::one());
    }

    #[test]
    fn same_denominator_sum() {
        let den = &(&a() * &konst(2)) + &konst(1);
        let f = &a() / &den;
        let expected = &(&a() * &konst(2)) / &den;
        assert_eq!(&f + &f, expected);
    }

    #[test]
    fn denominator_is_monic() {
        let f = &konst(3) / &(&(&a() * &konst(2)) + &konst(4));
        assert!(f.den().is_monic());
        assert_eq!(f.num(), &Polynomial::constant(Rational::frac(3, 2)));
        assert!(RationalFunction::new(q(&[1]), RationalPoly::zero()).is_err());
        assert!(konst(1).checked_div(&RationalFunction::zero()).is_err());
    }

    #[test]
    fn serde_shape() {
        let f = &a() / &(&a() + &konst(1));
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, r#"{"num":["0","1"],"den":["1","1"]}"#);
        let back: RationalFunction = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
    }
}
