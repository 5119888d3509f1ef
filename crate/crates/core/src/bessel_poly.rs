//! The polynomials `p_n(x; alpha) = (-1)^n e^x x^{-alpha} A^n e^{-x} x^alpha`
//! generated by the Bessel operator `A`, built three independent ways, plus
//! their monic normalization `P_n` and the exact structural identities.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Polynomial;
use crate::ratfunc::RationalFunction;
use crate::rational::Rational;

/// Whether alpha is a fixed rational or the indeterminate of
/// [`RationalFunction`].
#[derive(Clone, Debug, PartialEq)]
pub enum AlphaMode {
    Fixed(Rational),
    Symbolic,
}

impl FromStr for AlphaMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim().eq_ignore_ascii_case("symbolic") {
            Ok(AlphaMode::Symbolic)
        } else {
            s.parse().map(AlphaMode::Fixed)
        }
    }
}

impl fmt::Display for AlphaMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphaMode::Fixed(a) => write!(f, "{a}"),
            AlphaMode::Symbolic => f.write_str("symbolic"),
        }
    }
}

/// The symbolic alpha as a field element.
pub fn symbolic_alpha() -> RationalFunction {
    RationalFunction::var()
}

fn half<F: Field>() -> F {
    F::from_rational(&Rational::frac(1, 2))
}

/// Rejects alpha for which `(alpha + 1/2)_n = 0`, naming the vanishing factor.
pub fn degree_guard<F: Field>(alpha: &F, n: usize) -> Result<()> {
    let base = alpha.plus(&half());
    for k in 0..n {
        if base.plus(&F::from_i64(k as i64)).is_zero() {
            return Err(Error::DegreeGuard { alpha: alpha.to_string(), k, n });
        }
    }
    Ok(())
}

/// Leading coefficient `(-2)^n (alpha + 1/2)_n` of `p_n`.
pub fn leading_coefficient<F: Field>(alpha: &F, n: usize) -> F {
    F::from_i64(-2).powi(n as u32).times(&alpha.plus(&half()).pochhammer(n))
}

/// `x^2 p'' - x(2x - 1 - 2 alpha) p' - ((2 alpha + 1) x - alpha^2) p`, which maps
/// `p_n` to `p_{n+1}`.
pub fn raise_operator<F: Field>(p: &Polynomial<F>, alpha: &F) -> Polynomial<F> {
    let two = F::from_i64(2);
    let d1 = p.derivative();
    let d2 = d1.derivative();
    // x(2x - 1 - 2a) = (-1 - 2a) x + 2 x^2
    let psi = Polynomial::new(vec![F::zero(), F::one().plus(&two.times(alpha)).negated(), two.clone()]);
    // (2a + 1) x - a^2
    let chi = Polynomial::new(vec![alpha.times(alpha).negated(), two.times(alpha).plus(&F::one())]);
    &(&d2.shift_up(2) - &(&psi * &d1)) - &(&chi * p)
}

/// `L(f) = -x^2 f'' + x(2x - 1 - 2 alpha) f' + ((2 alpha + 1) x - alpha^2) f`,
/// the negated raising operator. `L(P_n) = (2n + 2 alpha + 1) P_{n+1}`.
pub fn lowered_operator<F: Field>(p: &Polynomial<F>, alpha: &F) -> Polynomial<F> {
    raise_operator(p, alpha).neg()
}

/// Apply the raising operator `k` times.
pub fn raise_power<F: Field>(p: &Polynomial<F>, k: usize, alpha: &F) -> Polynomial<F> {
    (0..k).fold(p.clone(), |acc, _| raise_operator(&acc, alpha))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BesselPoly<F> {
    pub n: usize,
    #[serde(skip)]
    pub poly: Polynomial<F>,
}

/// `p_0..=p_N` by iterating the raising operator from `p_0 = 1`.
pub fn pn_sequence<F: Field>(n_max: usize, alpha: &F) -> Result<Vec<BesselPoly<F>>> {
    degree_guard(alpha, n_max)?;
    let mut out = Vec::with_capacity(n_max + 1);
    let mut p = Polynomial::one();
    for n in 0..=n_max {
        if n > 0 {
            p = raise_operator(&p, alpha);
        }
        out.push(BesselPoly { n, poly: p.clone() });
    }
    Ok(out)
}

/// Just the polynomials of [`pn_sequence`].
pub fn pn_polys<F: Field>(n_max: usize, alpha: &F) -> Result<Vec<Polynomial<F>>> {
    Ok(pn_sequence(n_max, alpha)?.into_iter().map(|b| b.poly).collect())
}

/// Lower-triangular table; row `n` has entries for `nu = 0..=n`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientTable<F> {
    rows: Vec<Vec<F>>,
}

impl<F: Field> CoefficientTable<F> {
    pub fn rows(&self) -> &[Vec<F>] {
        &self.rows
    }

    pub fn row(&self, n: usize) -> &[F] {
        &self.rows[n]
    }

    pub fn get(&self, n: usize, nu: usize) -> F {
        self.rows.get(n).and_then(|r| r.get(nu)).cloned().unwrap_or_else(F::zero)
    }

    pub fn polynomial(&self, n: usize) -> Polynomial<F> {
        Polynomial::new(self.rows[n].clone())
    }
}

/// `c_{n+1,nu} = (nu + alpha)^2 c_{n,nu} - (2 nu + 2 alpha - 1) c_{n,nu-1}`.
pub fn cn_triangular<F: Field>(n_max: usize, alpha: &F) -> CoefficientTable<F> {
    let mut rows: Vec<Vec<F>> = vec![vec![F::one()]];
    for n in 0..n_max {
        let prev = &rows[n];
        let at = |nu: usize| prev.get(nu).cloned().unwrap_or_else(F::zero);
        let row = (0..=n + 1)
            .map(|nu| {
                let s = F::from_i64(nu as i64).plus(alpha);
                let same = s.times(&s).times(&at(nu));
                if nu == 0 {
                    return same;
                }
                let lin = F::from_i64(2).times(&s).minus(&F::one());
                same.minus(&lin.times(&at(nu - 1)))
            })
            .collect();
        rows.push(row);
    }
    CoefficientTable { rows }
}

/// `c~_{n+1,nu} = c~_{n,nu-1} + (nu + alpha)^2 c~_{n,nu}`, `c~_{0,0} = 1`.
pub fn ctilde_table<F: Field>(n_max: usize, alpha: &F) -> CoefficientTable<F> {
    let mut rows: Vec<Vec<F>> = vec![vec![F::one()]];
    for n in 0..n_max {
        let prev = &rows[n];
        let at = |nu: usize| prev.get(nu).cloned().unwrap_or_else(F::zero);
        let row = (0..=n + 1)
            .map(|nu| {
                let s = F::from_i64(nu as i64).plus(alpha);
                let same = s.times(&s).times(&at(nu));
                if nu == 0 {
                    same
                } else {
                    same.plus(&at(nu - 1))
                }
            })
            .collect();
        rows.push(row);
    }
    CoefficientTable { rows }
}

/// Scaling factor `(-2)^nu (alpha + 1/2)_nu` from `c~` to `c`.
pub fn ctilde_scale<F: Field>(alpha: &F, nu: usize) -> F {
    leading_coefficient(alpha, nu)
}

/// `c_{n,nu} = (-2)^nu (alpha + 1/2)_nu c~_{n,nu}` applied to a whole table.
pub fn ctilde_scaled_table<F: Field>(n_max: usize, alpha: &F) -> CoefficientTable<F> {
    let tilde = ctilde_table(n_max, alpha);
    let scales: Vec<F> = (0..=n_max).map(|nu| ctilde_scale(alpha, nu)).collect();
    let rows = tilde
        .rows
        .into_iter()
        .map(|row| row.into_iter().enumerate().map(|(nu, c)| c.times(&scales[nu])).collect())
        .collect();
    CoefficientTable { rows }
}

/// Closed form
/// `c~_{n,nu} = (2/nu!) sum_mu C(nu,mu) (-1)^{mu+nu} (alpha+mu)^{2n+1} / (2 alpha + mu)_{nu+1}`,
/// the Gamma ratio kept as a Pochhammer reciprocal.
pub fn ctilde_explicit<F: Field>(n: usize, nu: usize, alpha: &F) -> Result<F> {
    if nu > n {
        return Ok(F::zero());
    }
    let two_alpha = F::from_i64(2).times(alpha);
    let mut sum = F::zero();
    for mu in 0..=nu {
        let base = two_alpha.plus(&F::from_i64(mu as i64));
        let denom = base.pochhammer(nu + 1);
        if denom.is_zero() {
            return Err(Error::PochhammerPole {
                base: format!("2*alpha + {mu}"),
                len: nu + 1,
                alpha: alpha.to_string(),
            });
        }
        let sign = if (mu + nu).is_multiple_of(2) { 1 } else { -1 };
        let coef = Rational::from_int(binomial(nu as u64, mu as u64) * sign);
        let term = alpha.plus(&F::from_i64(mu as i64)).powi(2 * n as u32 + 1).scaled(&coef);
        sum = sum.plus(&term.divided(&denom)?);
    }
    let nu_fact: Rational = (1..=nu as i64).map(Rational::from).product();
    Ok(sum.scaled(&(Rational::from(2) / nu_fact)))
}

/// Closed-form `c_{n,nu}`.
pub fn cn_explicit<F: Field>(n: usize, nu: usize, alpha: &F) -> Result<F> {
    Ok(ctilde_explicit(n, nu, alpha)?.times(&ctilde_scale(alpha, nu)))
}

pub fn cn_explicit_table<F: Field>(n_max: usize, alpha: &F) -> Result<CoefficientTable<F>> {
    let rows = (0..=n_max)
        .map(|n| (0..=n).map(|nu| cn_explicit(n, nu, alpha)).collect::<Result<Vec<F>>>())
        .collect::<Result<_>>()?;
    Ok(CoefficientTable { rows })
}

/// Outcome of an exact identity: it holds iff the residual is the zero polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityCheck<F> {
    pub holds: bool,
    pub residual: Polynomial<F>,
}

impl<F: Field> IdentityCheck<F> {
    fn from_residual(residual: Polynomial<F>) -> Self {
        IdentityCheck { holds: residual.is_zero(), residual }
    }
}

/// Residual of `(2 alpha + 1) x p_n(x; alpha+1) + p_{n+1}(x; alpha) - alpha^2 p_n(x; alpha)`.
pub fn shift_alpha_check<F: Field>(n: usize, alpha: &F) -> Result<IdentityCheck<F>> {
    let here = pn_polys(n + 1, alpha)?;
    let shifted = pn_polys(n, &alpha.plus(&F::one()))?;
    let two_a1 = F::from_i64(2).times(alpha).plus(&F::one());
    let lhs = shifted[n].shift_up(1).scale(&two_a1);
    let rhs = &here[n].scale(&alpha.times(alpha)) - &here[n + 1];
    Ok(IdentityCheck::from_residual(&lhs - &rhs))
}

/// Residual of
/// `(2 alpha + 1) p_n(x; alpha+1) = -x p_n'' + (2x - 1 - 2 alpha) p_n' + (1 + 2 alpha) p_n`.
pub fn diff_rel_check<F: Field>(n: usize, alpha: &F) -> Result<IdentityCheck<F>> {
    let p = pn_polys(n, alpha)?.pop().expect("nonempty");
    let shifted = pn_polys(n, &alpha.plus(&F::one()))?.pop().expect("nonempty");
    let two_a1 = F::from_i64(2).times(alpha).plus(&F::one());
    let d1 = p.derivative();
    let d2 = d1.derivative();
    let lin = Polynomial::new(vec![two_a1.negated(), F::from_i64(2)]);
    let rhs = &(&d2.shift_up(1).neg() + &(&lin * &d1)) + &p.scale(&two_a1);
    Ok(IdentityCheck::from_residual(&shifted.scale(&two_a1) - &rhs))
}

/// Monic `P_n = p_n / ((-2)^n (alpha + 1/2)_n)` for `n = 0..=N`.
pub fn monic_p<F: Field>(n_max: usize, alpha: &F) -> Result<Vec<Polynomial<F>>> {
    pn_polys(n_max, alpha)?.into_iter().enumerate().map(|(n, p)| p.div_scalar(&leading_coefficient(alpha, n))).collect()
}

/// Residual of `raise(P_n) + (2n + 2 alpha + 1) P_{n+1}`.
pub fn monic_raise_check<F: Field>(n: usize, alpha: &F) -> Result<IdentityCheck<F>> {
    let ps = monic_p(n + 1, alpha)?;
    let factor = F::from_i64(2 * n as i64 + 1).plus(&F::from_i64(2).times(alpha));
    Ok(IdentityCheck::from_residual(&raise_operator(&ps[n], alpha) + &ps[n + 1].scale(&factor)))
}

/// Residual of `x P_n(x; alpha+1) - P_{n+1}(x; alpha) - alpha^2/(2n + 2 alpha + 1) P_n(x; alpha)`.
pub fn monic_shift_check<F: Field>(n: usize, alpha: &F) -> Result<IdentityCheck<F>> {
    let here = monic_p(n + 1, alpha)?;
    let shifted = monic_p(n, &alpha.plus(&F::one()))?;
    let denom = F::from_i64(2 * n as i64 + 1).plus(&F::from_i64(2).times(alpha));
    let coef = alpha.times(alpha).divided(&denom)?;
    let residual = &(&shifted[n].shift_up(1) - &here[n + 1]) - &here[n].scale(&coef);
    Ok(IdentityCheck::from_residual(residual))
}

/// Degree of `p_n(x; alpha)` as a polynomial in alpha.
pub fn alpha_degree(n: usize) -> usize {
    let p = pn_polys(n, &symbolic_alpha()).expect("symbolic alpha never trips the guard");
    p[n].coeffs().iter().filter_map(RationalFunction::num_degree).max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    type Rf = RationalFunction;

    fn a() -> Rf {
        symbolic_alpha()
    }

    fn k(v: i64) -> Rf {
        Rf::from_i64(v)
    }

    /// Evaluate a polynomial expression in alpha given by nested closures.
    fn poly_a(coeffs: &[i64]) -> Rf {
        Rf::from_poly(Polynomial::new(coeffs.iter().map(|&c| Rational::from(c)).collect()))
    }

    fn p1_listed() -> Polynomial<Rf> {
        // x(-2a - 1) + a^2
        Polynomial::new(vec![&a() * &a(), poly_a(&[-1, -2])])
    }

    fn p2_listed() -> Polynomial<Rf> {
        let al = a();
        let x2 = &(&(&k(4) * &al) * &(&al + &k(2))) + &k(3);
        let inner = &(&al * &(&(&k(2) * &al) + &k(3))) + &k(2);
        let x1 = &(&(&k(-2) * &al) * &inner) - &k(1);
        Polynomial::new(vec![al.powi(4), x1, x2])
    }

    #[test]
    fn raise_from_one() {
        let p1 = raise_operator(&Polynomial::one(), &a());
        assert_eq!(p1, p1_listed());
        assert_eq!(raise_operator(&p1, &a()), p2_listed());
    }

    #[test]
    fn p3_at_zero() {
        let p3 = raise_power(&Polynomial::one(), 3, &Rational::zero());
        let expected: Vec<Rational> = [0, -1, 15, -15].iter().map(|&v| Rational::from(v)).collect();
        assert_eq!(p3.coeffs(), expected.as_slice());
    }

    #[test]
    fn sequence_invariants() {
        let seq = pn_sequence(8, &a()).unwrap();
        for b in &seq {
            assert_eq!(b.poly.degree(), Some(b.n));
            assert_eq!(b.poly.coeff(0), a().powi(2 * b.n as u32));
            assert_eq!(b.poly.leading().unwrap(), &leading_coefficient(&a(), b.n));
        }
        assert_eq!(raise_power(&seq[1].poly, 2, &a()), seq[3].poly);
    }

    #[test]
    fn degree_guard_names_factor() {
        let err = pn_sequence(4, &Rational::frac(-5, 2)).unwrap_err();
        assert_eq!(err, Error::DegreeGuard { alpha: "-5/2".into(), k: 2, n: 4 });
        assert!(pn_sequence(2, &Rational::frac(-5, 2)).is_ok());
        assert!(pn_sequence(4, &Rational::frac(-3, 4)).is_ok());
    }

    #[test]
    fn triangular_entries() {
        let c = cn_triangular(2, &a());
        assert_eq!(c.get(1, 1), poly_a(&[-1, -2]));
        assert_eq!(c.get(1, 0), &a() * &a());
        assert_eq!(c.get(2, 1), p2_listed().coeff(1));
        let expected4 = pn_polys(4, &a()).unwrap();
        assert_eq!(cn_triangular(4, &a()).polynomial(4), expected4[4]);
    }

    #[test]
    fn ctilde_entries() {
        let t = ctilde_table(2, &a());
        assert_eq!(t.get(1, 1), k(1));
        assert_eq!(t.get(2, 1), poly_a(&[1, 2, 2]));
        assert_eq!(t.get(2, 2), k(1));
        let scaled = &t.get(2, 1) * &ctilde_scale(&a(), 1);
        assert_eq!(scaled, cn_triangular(2, &a()).get(2, 1));
        for n in 0..=5 {
            assert_eq!(t_row0(n), a().powi(2 * n as u32));
        }
        fn t_row0(n: usize) -> Rf {
            ctilde_table(n, &symbolic_alpha()).get(n, 0)
        }
    }

    #[test]
    fn explicit_formula() {
        for n in 0..=4 {
            assert_eq!(ctilde_explicit(n, 0, &a()).unwrap(), a().powi(2 * n as u32));
        }
        assert_eq!(ctilde_explicit(2, 2, &a()).unwrap(), k(1));
        assert_eq!(ctilde_explicit(5, 3, &a()).unwrap(), ctilde_table(5, &a()).get(5, 3));
    }

    #[test]
    fn explicit_formula_pole() {
        // 2 alpha + 0 = 0 at alpha = 0.
        let err = ctilde_explicit(2, 1, &Rational::zero()).unwrap_err();
        assert!(matches!(err, Error::PochhammerPole { .. }));
        assert!(ctilde_explicit(3, 1, &Rational::frac(-1, 2)).is_err());
    }

    #[test]
    fn shift_identities() {
        for n in 0..=3 {
            assert!(shift_alpha_check(n, &a()).unwrap().holds);
            assert!(diff_rel_check(n, &a()).unwrap().holds);
        }
        assert!(shift_alpha_check(8, &Rational::frac(3, 2)).unwrap().holds);
        assert!(diff_rel_check(6, &Rational::one()).unwrap().holds);
    }

    #[test]
    fn monic_sequence() {
        let ps = monic_p(4, &a()).unwrap();
        let expected_p1 = Polynomial::new(vec![(&(&a() * &a()) / &poly_a(&[1, 2])).negated(), k(1)]);
        assert_eq!(ps[1], expected_p1);
        assert!(ps.iter().all(Polynomial::is_monic));
        assert!(monic_shift_check(1, &a()).unwrap().holds);
        assert!(monic_raise_check(3, &a()).unwrap().holds);
    }

    #[test]
    fn degree_in_alpha() {
        assert_eq!(alpha_degree(1), 2);
        assert_eq!(alpha_degree(2), 4);
        assert_eq!(alpha_degree(5), 10);
    }

    #[test]
    fn alpha_mode_parsing() {
        assert_eq!("symbolic".parse::<AlphaMode>().unwrap(), AlphaMode::Symbolic);
        assert_eq!("7/3".parse::<AlphaMode>().unwrap(), AlphaMode::Fixed(Rational::frac(7, 3)));
        assert!("seven".parse::<AlphaMode>().is_err());
    }
}
