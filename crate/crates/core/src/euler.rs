//! Generalized Euler polynomials `E_n^{2 alpha}(x)`, the exact Bernoulli
//! integral identity, and oracle resolvers for two identities whose stated
//! constants do not hold as stated.

use std::f64::consts::PI;

use serde::Serialize;

use crate::bessel_poly::pn_polys;
use crate::combinatorics::{binomial, BernoulliCache, StirlingTable};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Polynomial;
use crate::rational::Rational;
use crate::series::PowerSeries;

/// `E_n^{2a}(x) = x^n + sum_{k<n} C(n,k) [sum_{t=1}^{n-k} (-2)^{-t} (2a)_t S(n-k,t)] x^k`.
pub fn gen_euler_poly<F: Field>(n: usize, alpha: &F) -> Polynomial<F> {
    let stirling = StirlingTable::second_kind(n);
    let two_alpha = F::from_i64(2).times(alpha);
    // inner[j] = sum_{t=1}^{j} (-2)^{-t} (2a)_t S(j,t)
    let inner: Vec<F> = (0..=n)
        .map(|j| {
            (1..=j).fold(F::zero(), |acc, t| {
                let w =
                    Rational::from(-2).pow(-(t as i32)).expect("nonzero base") * Rational::from_int(stirling.get(j, t));
                acc.plus(&two_alpha.pochhammer(t).scaled(&w))
            })
        })
        .collect();
    let coeffs = (0..=n)
        .map(|k| if k == n { F::one() } else { inner[n - k].scaled(&Rational::from_int(binomial(n as u64, k as u64))) })
        .collect();
    Polynomial::new(coeffs)
}

/// Diagonal value `E_n^{2 alpha}(alpha)`.
pub fn euler_diag<F: Field>(n: usize, alpha: &F) -> F {
    gen_euler_poly(n, alpha).eval(alpha)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GfCheck {
    pub q: u32,
    pub x0: Rational,
    /// Coefficients of `t^k` in `(2/(e^t+1))^q e^{x0 t}`.
    pub series: Vec<Rational>,
    /// `E_k^q(x0) / k!` from the Stirling formula.
    pub formula: Vec<Rational>,
    pub matches: bool,
}

/// Compare the exact truncated generating function against the Stirling
/// formula for an even positive integer `q = 2 alpha`.
pub fn gf_check_integer(q: u32, x0: &Rational, order: usize) -> Result<GfCheck> {
    if q == 0 || !q.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("q = 2 alpha must be a positive even integer, got {q}")));
    }
    let one_plus_exp =
        PowerSeries::exp_linear(&Rational::one(), order).add(&PowerSeries::constant(Rational::one(), order))?;
    let base = one_plus_exp.recip()?.scale(&Rational::from(2));
    let series = base.powi(q as i64)?.mul(&PowerSeries::exp_linear(x0, order))?;
    let alpha = Rational::from(q as i64 / 2);
    let mut fact = Rational::one();
    let mut formula = Vec::with_capacity(order + 1);
    for k in 0..=order {
        if k > 0 {
            fact = fact * Rational::from(k as i64);
        }
        formula.push(gen_euler_poly(k, &alpha).eval(x0) / fact.clone());
    }
    let series = series.coeffs().to_vec();
    let matches = series == formula;
    Ok(GfCheck { q, x0: x0.clone(), series, formula, matches })
}

/// `B_{2n} = n/(1 - 2^{2n}) int_0^inf e^{-2x} p_n(x;0) dx/x`, evaluated exactly
/// through `int_0^inf e^{-2x} x^k dx = k!/2^{k+1}`.
pub fn bernoulli_integral(n: usize) -> Result<Rational> {
    if n == 0 {
        return Err(Error::InvalidArgument("the Bernoulli integral identity needs n >= 1".into()));
    }
    let p = pn_polys(n, &Rational::zero())?.pop().expect("nonempty");
    debug_assert!(p.coeff(0).is_zero());
    let mut integral = Rational::zero();
    let mut fact = Rational::one(); // (k-1)!
    for k in 1..=n {
        if k > 1 {
            fact = fact * Rational::from(k as i64 - 1);
        }
        let moment = &fact / &Rational::from(2).pow(k as i32)?;
        integral = integral + p.coeff(k) * moment;
    }
    let four_n = Rational::from(4).pow(n as i32)?;
    Ok(integral * Rational::from(n as i64) / (Rational::one() - four_n))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConnectionReport {
    pub m: usize,
    /// Tested `n = 0..=n_max`.
    pub n_max: usize,
    /// Fitted constant `kappa_m` with
    /// `x^m p_n(x;m) = kappa_m sum_s ŝ_0(m,s) p_{n+s}(x;0)`.
    pub kappa: Rational,
    /// Stated constant `C_m (-1)^m pi^2/2`, `C_m = (2/pi) / (2^m (1/2)_m)`.
    pub stated_constant: f64,
    pub ratio: f64,
}

pub fn stated_connection_constant(m: usize) -> f64 {
    let half_poch: f64 = (0..m).map(|k| 0.5 + k as f64).product();
    let c_m = 2.0 / PI / (2f64.powi(m as i32) * half_poch);
    let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
    c_m * sign * PI * PI / 2.0
}

/// Solve for the single constant relating `x^m p_n(x;m)` to the
/// `ŝ_0`-weighted combination of `p_{n+s}(x;0)`, over `n = 0..=n_max`.
pub fn connection_m(m: usize, n_max: usize) -> Result<ConnectionReport> {
    let shifted = pn_polys(n_max, &Rational::from(m as i64))?;
    let base = pn_polys(n_max + m, &Rational::zero())?;
    let s0 = StirlingTable::modified_first_zero(m);
    let mut kappa: Option<Rational> = None;
    for n in 0..=n_max {
        let lhs = shifted[n].shift_up(m);
        let rhs =
            (0..=m).fold(Polynomial::zero(), |acc, s| &acc + &base[n + s].scale(&Rational::from_int(s0.get(m, s))));
        let k = lhs
            .leading()
            .zip(rhs.leading())
            .map(|(a, b)| a / b)
            .ok_or_else(|| Error::Inconsistent(format!("connection m={m}, n={n}: a side vanishes")))?;
        if !(&lhs - &rhs.scale(&k)).is_zero() {
            return Err(Error::Inconsistent(format!("connection m={m}, n={n}: sides are not proportional")));
        }
        match &kappa {
            Some(prev) if *prev != k => {
                return Err(Error::Inconsistent(format!(
                    "connection m={m}: constant {prev} at smaller n but {k} at n={n}"
                )));
            }
            _ => kappa = Some(k),
        }
    }
    let kappa = kappa.expect("n range is nonempty");
    let stated_constant = stated_connection_constant(m);
    Ok(ConnectionReport { m, n_max, ratio: kappa.to_f64() / stated_constant, kappa, stated_constant })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EulerBernoulliTerms {
    pub n: usize,
    pub m: usize,
    /// `E_{2n}^{2m}(m)`.
    pub lhs: Rational,
    /// Stated right-hand side with its literal prefactor.
    pub stated_rhs: Rational,
    /// `lhs / stated_rhs`, absent when the stated side vanishes.
    pub ratio: Option<Rational>,
}

/// Both sides of
/// `E_{2n}^{2m}(m) = ((-1)^{n+m} 2^{2m-2}/(2m-1)!) sum_s ((1-2^{2n+2s})/(n+s)) ŝ_0(m,s) B_{2n+2s}`.
pub fn euler_bernoulli_relation(n: usize, m: usize) -> Result<EulerBernoulliTerms> {
    if m == 0 {
        return Err(Error::InvalidArgument("the Euler-Bernoulli relation needs m >= 1".into()));
    }
    let s0 = StirlingTable::modified_first_zero(m);
    let bern = BernoulliCache::new(2 * (n + m));
    let mut sum = Rational::zero();
    for s in 0..=m {
        let weight = Rational::from_int(s0.get(m, s));
        if weight.is_zero() {
            // ŝ_0(m,0) = 0 annihilates the s = 0 term before the 1/(n+s) division.
            continue;
        }
        let k = n + s;
        let num = Rational::one() - Rational::from(2).pow(2 * k as i32)?;
        sum = sum + num / Rational::from(k as i64) * weight * bern.get(2 * k);
    }
    let sign = if (n + m).is_multiple_of(2) { 1 } else { -1 };
    let fact: Rational = (1..2 * m as i64).map(Rational::from).product();
    let prefactor = Rational::from(sign) * Rational::from(2).pow(2 * m as i32 - 2)? / fact;
    let stated_rhs = prefactor * sum;
    let lhs = euler_diag(2 * n, &Rational::from(m as i64));
    let ratio = (!stated_rhs.is_zero()).then(|| &lhs / &stated_rhs);
    Ok(EulerBernoulliTerms { n, m, lhs, stated_rhs, ratio })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EulerBernoulliFit {
    pub m: usize,
    pub terms: Vec<EulerBernoulliTerms>,
    /// The raw ratio `lhs / stated_rhs` is the same for every tested `n`.
    pub ratio_constant: bool,
    /// Common value of `(-1)^n lhs / stated_rhs`, if it is constant in `n`.
    pub sign_adjusted_constant: Option<Rational>,
}

/// Tabulate the relation for `n in n_range` and find an `n`-independent correction.
pub fn euler_bernoulli_fit(m: usize, n_range: std::ops::RangeInclusive<usize>) -> Result<EulerBernoulliFit> {
    let terms = n_range.map(|n| euler_bernoulli_relation(n, m)).collect::<Result<Vec<_>>>()?;
    let ratios: Option<Vec<Rational>> = terms.iter().map(|t| t.ratio.clone()).collect();
    let (ratio_constant, sign_adjusted_constant) = match ratios {
        Some(r) if !r.is_empty() => {
            let constant = r.windows(2).all(|w| w[0] == w[1]);
            let adjusted: Vec<Rational> =
                terms.iter().zip(&r).map(|(t, v)| if t.n % 2 == 0 { v.clone() } else { -v }).collect();
            let adj = adjusted.windows(2).all(|w| w[0] == w[1]).then(|| adjusted[0].clone());
            (constant, adj)
        }
        _ => (false, None),
    };
    Ok(EulerBernoulliFit { m, terms, ratio_constant, sign_adjusted_constant })
}
