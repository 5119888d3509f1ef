//! The canonical form `u_0(alpha)` of the dual sequence of `P_n(x; alpha)`:
//! exact moments, the linear functional, Hankel determinants, and the monic
//! orthogonal sequence `Q_n` with its recurrence coefficients.

use rayon::prelude::*;
use serde::Serialize;

use crate::bessel_poly::{lowered_operator, monic_p};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Polynomial;
use crate::ratfunc::{RationalFunction, RationalPoly};
use crate::rational::Rational;
use crate::zpoly::ZPoly;

/// `(u_0(alpha))_n` for `n = 0..=N`.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentVector<F> {
    moments: Vec<F>,
}

impl<F: Field> MomentVector<F> {
    pub fn from_values(moments: Vec<F>) -> Self {
        MomentVector { moments }
    }

    pub fn values(&self) -> &[F] {
        &self.moments
    }

    pub fn get(&self, n: usize) -> &F {
        &self.moments[n]
    }

    pub fn max_index(&self) -> usize {
        self.moments.len() - 1
    }
}

/// `(u_0(alpha))_n = [(alpha)_n]^2 / (2^n (alpha + 1/2)_n)`.
pub fn moments<F: Field>(n_max: usize, alpha: &F) -> Result<MomentVector<F>> {
    let half = F::from_rational(&Rational::frac(1, 2));
    let mut out = Vec::with_capacity(n_max + 1);
    let mut current = F::one();
    out.push(current.clone());
    for n in 0..n_max {
        // ratio (alpha + n)^2 / (2 (alpha + 1/2 + n))
        let a_n = alpha.plus(&F::from_i64(n as i64));
        let d = alpha.plus(&half).plus(&F::from_i64(n as i64)).times(&F::from_i64(2));
        if d.is_zero() {
            return Err(Error::PochhammerPole { base: "alpha + 1/2".into(), len: n + 1, alpha: alpha.to_string() });
        }
        current = current.times(&a_n.times(&a_n)).divided(&d)?;
        out.push(current.clone());
    }
    Ok(MomentVector { moments: out })
}

/// `<u, f> = sum_nu f_nu (u)_nu`.
pub fn apply_functional<F: Field>(u: &MomentVector<F>, f: &Polynomial<F>) -> Result<F> {
    if let Some(d) = f.degree() {
        if d > u.max_index() {
            return Err(Error::DegreeOverflow { degree: d, available: u.max_index() });
        }
    }
    Ok(f.coeffs()
        .iter()
        .zip(&u.moments)
        .filter(|(c, _)| !c.is_zero())
        .fold(F::zero(), |acc, (c, m)| acc.plus(&c.times(m))))
}

#[derive(Clone, Debug, PartialEq)]
pub struct MonicOps<F> {
    pub polys: Vec<Polynomial<F>>,
}

/// `Q_{n+2} = (x - beta_{n+1}) Q_{n+1} - gamma_{n+1} Q_n`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RecurrenceTable<F> {
    /// `beta_0..beta_{N-1}`.
    pub betas: Vec<F>,
    /// `gamma_1..gamma_N`; `gammas[0]` is `gamma_1`.
    pub gammas: Vec<F>,
    /// `<u, Q_n^2>` for `n = 0..=N`.
    pub norms: Vec<F>,
}

impl<F: Field> RecurrenceTable<F> {
    pub fn beta(&self, n: usize) -> &F {
        &self.betas[n]
    }

    /// `gamma_n` for `n >= 1`.
    pub fn gamma(&self, n: usize) -> &F {
        &self.gammas[n - 1]
    }
}

/// Stieltjes procedure against the exact functional: builds `Q_0..=Q_N` and
/// the coefficients `beta_n = <u, x Q_n^2>/<u, Q_n^2>`,
/// `gamma_{n+1} = <u, Q_{n+1}^2>/<u, Q_n^2>`.
pub fn stieltjes_orthogonalize<F: Field>(n_max: usize, alpha: &F) -> Result<(MonicOps<F>, RecurrenceTable<F>)> {
    let u = moments(2 * n_max, alpha)?;
    let x = Polynomial::<F>::x();
    let mut polys: Vec<Polynomial<F>> = vec![Polynomial::one()];
    let mut betas = Vec::new();
    let mut gammas = Vec::new();
    let mut norms = Vec::new();
    for n in 0..=n_max {
        let q = &polys[n];
        let sq = q * q;
        let norm = apply_functional(&u, &sq)?;
        if norm.is_zero() {
            return Err(Error::Regularity { n });
        }
        if n > 0 {
            gammas.push(norm.divided(&norms[n - 1])?);
        }
        norms.push(norm);
        if n == n_max {
            break;
        }
        let beta = apply_functional(&u, &sq.shift_up(1))?.divided(&norms[n])?;
        let mut next = &x * q;
        next = &next - &q.scale(&beta);
        if n > 0 {
            next = &next - &polys[n - 1].scale(&gammas[n - 1]);
        }
        betas.push(beta);
        polys.push(next);
    }
    Ok((MonicOps { polys }, RecurrenceTable { betas, gammas, norms }))
}

/// Gaussian elimination determinant with pivot search on nonzero entries.
pub fn determinant<F: Field>(mut m: Vec<Vec<F>>) -> Result<F> {
    let n = m.len();
    let mut det = F::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Ok(F::zero());
        };
        if piv != col {
            m.swap(piv, col);
            det = det.negated();
        }
        let p = m[col][col].clone();
        det = det.times(&p);
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].divided(&p)?;
            for c in col + 1..n {
                let delta = factor.times(&m[col][c]);
                m[r][c] = m[r][c].minus(&delta);
            }
        }
    }
    Ok(det)
}

/// `Delta_n = det[(u)_{i+j}]_{0<=i,j<=n}` for `n = 0..=N`.
///
/// One elimination pass yields every leading principal minor as a running
/// product of pivots; a vanishing pivot falls back to direct determinants.
pub fn hankel_dets<F: Field>(n_max: usize, alpha: &F) -> Result<Vec<F>> {
    let u = moments(2 * n_max, alpha)?;
    let size = n_max + 1;
    let hankel = |k: usize| -> Vec<Vec<F>> { (0..k).map(|i| (0..k).map(|j| u.get(i + j).clone()).collect()).collect() };
    let mut m = hankel(size);
    let mut dets = Vec::with_capacity(size);
    let mut running = F::one();
    for col in 0..size {
        let p = m[col][col].clone();
        if p.is_zero() {
            for k in col..size {
                dets.push(determinant(hankel(k + 1))?);
            }
            return Ok(dets);
        }
        running = running.times(&p);
        dets.push(running.clone());
        for r in col + 1..size {
            let factor = m[r][col].divided(&p)?;
            for c in col + 1..size {
                let delta = factor.times(&m[col][c]);
                m[r][c] = m[r][c].minus(&delta);
            }
        }
    }
    Ok(dets)
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrthogonalityReport<F> {
    pub holds: bool,
    /// Pairs `n < m` with `<u, Q_n Q_m> != 0`.
    pub off_diagonal_violations: Vec<(usize, usize)>,
    /// Indices with `<u, Q_n^2> = 0`.
    pub degenerate_norms: Vec<usize>,
    pub norms: Vec<F>,
}

/// Evaluate `<u_0, Q_n Q_m>` for every pair `n, m <= N`.
pub fn orthogonality_check<F: Field>(n_max: usize, alpha: &F) -> Result<OrthogonalityReport<F>> {
    let (ops, _) = stieltjes_orthogonalize(n_max, alpha)?;
    let u = moments(2 * n_max, alpha)?;
    let pairs: Vec<(usize, usize)> = (0..=n_max).flat_map(|n| (n..=n_max).map(move |m| (n, m))).collect();
    let values = pairs
        .par_iter()
        .map(|&(n, m)| apply_functional(&u, &(&ops.polys[n] * &ops.polys[m])).map(|v| ((n, m), v)))
        .collect::<Result<Vec<_>>>()?;
    let mut off = Vec::new();
    let mut degenerate = Vec::new();
    let mut norms = vec![F::zero(); n_max + 1];
    for ((n, m), v) in values {
        if n == m {
            if v.is_zero() {
                degenerate.push(n);
            }
            norms[n] = v;
        } else if !v.is_zero() {
            off.push((n, m));
        }
    }
    Ok(OrthogonalityReport {
        holds: off.is_empty() && degenerate.is_empty(),
        off_diagonal_violations: off,
        degenerate_norms: degenerate,
        norms,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Witness<F> {
    pub n: usize,
    pub m: usize,
    /// `<u_0, P_n P_m>`, nonzero.
    pub value: F,
}

/// First pair `n < m <= max_degree` (ordered by `m`, then `n`) with
/// `<u_0, P_n P_m> != 0`.
pub fn non_orthogonality_of_p<F: Field>(alpha: &F, max_degree: usize) -> Result<Witness<F>> {
    let ps = monic_p(max_degree, alpha)?;
    let u = moments(2 * max_degree, alpha)?;
    for m in 1..=max_degree {
        for n in 0..m {
            let value = apply_functional(&u, &(&ps[n] * &ps[m]))?;
            if !value.is_zero() {
                return Ok(Witness { n, m, value });
            }
        }
    }
    Err(Error::Inconsistent(format!("no non-orthogonality witness with degree <= {max_degree}")))
}

/// `(u_0(alpha))_{n+1} = alpha^2/(2 alpha + 1) (u_0(alpha+1))_n` for `n <= N`.
/// Returns the indices where it fails.
pub fn shift_functional_check<F: Field>(n_max: usize, alpha: &F) -> Result<Vec<usize>> {
    let here = moments(n_max + 1, alpha)?;
    let shifted = moments(n_max, &alpha.plus(&F::one()))?;
    let factor = alpha.times(alpha).divided(&F::from_i64(2).times(alpha).plus(&F::one()))?;
    Ok((0..=n_max).filter(|&n| *here.get(n + 1) != factor.times(shifted.get(n))).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MomentSignReport<F> {
    /// `(2n + 2 alpha + 1)(u)_{n+1} - (n + alpha)^2 (u)_n`.
    pub plus_residuals: Vec<F>,
    /// `(2n + 2 alpha + 1)(u)_{n+1} + (n + alpha)^2 (u)_n`.
    pub minus_residuals: Vec<F>,
    pub consistent_sign: Option<Sign>,
}

/// Test both sign choices of the first-order moment recurrence against the
/// closed-form moments.
pub fn moment_difference_probe<F: Field>(n_max: usize, alpha: &F) -> Result<MomentSignReport<F>> {
    let u = moments(n_max + 1, alpha)?;
    let mut plus = Vec::with_capacity(n_max + 1);
    let mut minus = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let lead = F::from_i64(2 * n as i64 + 1).plus(&F::from_i64(2).times(alpha)).times(u.get(n + 1));
        let an = alpha.plus(&F::from_i64(n as i64));
        let tail = an.times(&an).times(u.get(n));
        plus.push(lead.minus(&tail));
        minus.push(lead.plus(&tail));
    }
    let consistent_sign = if plus.iter().all(Field::is_zero) {
        Some(Sign::Plus)
    } else if minus.iter().all(Field::is_zero) {
        Some(Sign::Minus)
    } else {
        None
    };
    Ok(MomentSignReport { plus_residuals: plus, minus_residuals: minus, consistent_sign })
}

/// Coordinates of `f` in the `P_n(.; alpha)` basis, i.e. `<u_n, f>` for `n = 0..=deg f`.
pub fn dual_expand<F: Field>(f: &Polynomial<F>, alpha: &F) -> Result<Vec<F>> {
    let Some(d) = f.degree() else { return Ok(Vec::new()) };
    let ps = monic_p(d, alpha)?;
    dual_expand_in(f, &ps)
}

/// [`dual_expand`] against a precomputed monic basis.
pub fn dual_expand_in<F: Field>(f: &Polynomial<F>, basis: &[Polynomial<F>]) -> Result<Vec<F>> {
    let Some(d) = f.degree() else { return Ok(Vec::new()) };
    if d >= basis.len() {
        return Err(Error::DegreeOverflow { degree: d, available: basis.len() - 1 });
    }
    let mut rest = f.clone();
    let mut coords = vec![F::zero(); d + 1];
    for k in (0..=d).rev() {
        let c = rest.coeff(k);
        if !c.is_zero() {
            rest = &rest - &basis[k].scale(&c);
        }
        coords[k] = c;
    }
    debug_assert!(rest.is_zero());
    Ok(coords)
}

/// `<u_0, x^n>` read off the dual expansion of `x^n`, for `n = 0..=N`.
pub fn dual_moments<F: Field>(n_max: usize, alpha: &F) -> Result<Vec<F>> {
    let ps = monic_p(n_max, alpha)?;
    (0..=n_max).map(|n| Ok(dual_expand_in(&Polynomial::monomial(F::one(), n), &ps)?[0].clone())).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct DualEquation<F> {
    pub k: usize,
    pub n: usize,
    /// `<u_{k+1}, L(P_n)>`.
    pub value: F,
    /// `(2n + 2 alpha + 1) delta_{n,k}`.
    pub expected: F,
    /// `<u_0, L(P_n)>`, zero when the equation for `u_0` holds.
    pub u0_value: F,
    pub holds: bool,
}

/// Transposed check of the dual-sequence equations through the operator `L`
/// with `L(P_n) = (2n + 2 alpha + 1) P_{n+1}`.
pub fn dual_equation_check<F: Field>(k: usize, n: usize, alpha: &F) -> Result<DualEquation<F>> {
    let ps = monic_p(n.max(k) + 1, alpha)?;
    let lp = lowered_operator(&ps[n], alpha);
    let coords = dual_expand_in(&lp, &ps)?;
    let at = |i: usize| coords.get(i).cloned().unwrap_or_else(F::zero);
    let value = at(k + 1);
    let u0_value = at(0);
    let expected = if n == k { F::from_i64(2 * n as i64 + 1).plus(&F::from_i64(2).times(alpha)) } else { F::zero() };
    let holds = value == expected && u0_value.is_zero();
    Ok(DualEquation { k, n, value, expected, u0_value, holds })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChiConventionReport {
    /// `chi = -(2 alpha + 1) x + alpha^2` annihilates every `x^k`, `k <= N`.
    pub stated_chi_consistent: bool,
    /// The opposite sign `chi = (2 alpha + 1) x - alpha^2` does.
    pub flipped_chi_consistent: bool,
}

/// Check `<u_0, phi f'' - psi f' + chi f> = 0` on `f = x^k` for both signs of
/// `chi`, with `phi = x^2` and `psi = x(2x - 2 alpha - 1)`.
pub fn chi_convention_check<F: Field>(n_max: usize, alpha: &F) -> Result<ChiConventionReport> {
    let u = moments(n_max + 2, alpha)?;
    let two = F::from_i64(2);
    let phi = Polynomial::monomial(F::one(), 2);
    let psi = Polynomial::new(vec![F::zero(), two.times(alpha).plus(&F::one()).negated(), two.clone()]);
    let chi = Polynomial::new(vec![alpha.times(alpha), two.times(alpha).plus(&F::one()).negated()]);
    let annihilates = |chi: &Polynomial<F>| -> Result<bool> {
        for k in 0..=n_max {
            let f = Polynomial::monomial(F::one(), k);
            let d1 = f.derivative();
            let g = &(&(&phi * &d1.derivative()) - &(&psi * &d1)) + &(chi * &f);
            if !apply_functional(&u, &g)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    };
    Ok(ChiConventionReport {
        stated_chi_consistent: annihilates(&chi)?,
        flipped_chi_consistent: annihilates(&chi.neg())?,
    })
}

/// Symbolic Stieltjes data kept over the integers in alpha.
///
/// With `D = prod_{j<2N} (2 alpha + 2j + 1)` the scaled moments `M_k = D (u)_k`
/// are polynomials and define the same orthogonal sequence. `Delta_{n-1}(M) Q_n`
/// has polynomial coefficients, and `Delta_n(M) = D^{n+1} Delta_n(u)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FractionFreeOps {
    n_max: usize,
    scale: ZPoly,
    moments: Vec<ZPoly>,
    scaled: Vec<Vec<ZPoly>>,
    hankel: Vec<ZPoly>,
    beta_numerators: Vec<ZPoly>,
}

/// `<M, x^j q>` for `j = 0..=j_max`.
fn shifted_pairings(m: &[ZPoly], q: &[ZPoly], j_max: usize) -> Vec<ZPoly> {
    (0..=j_max).map(|j| q.iter().enumerate().fold(ZPoly::zero(), |acc, (i, c)| &acc + &(c * &m[i + j]))).collect()
}

fn dot(a: &[ZPoly], b: &[ZPoly]) -> ZPoly {
    a.iter().zip(b).fold(ZPoly::zero(), |acc, (x, y)| &acc + &(x * y))
}

/// Stieltjes orthogonalization for symbolic alpha without intermediate gcds.
///
/// `<M, Q_n^2>` and `<M, x Q_n^2>` are expanded bilinearly in the moments, and
/// with `R_n = Delta_{n-1} Q_n`,
/// `R_{n+1} = ((Delta_n Delta_{n-1} x - B_n) R_n - Delta_n^2 R_{n-1}) / Delta_{n-1}^2`
/// is an exact division in `Z[alpha]`.
pub fn stieltjes_fraction_free(n_max: usize) -> Result<FractionFreeOps> {
    let top = 2 * n_max;
    let odd = |j: usize| ZPoly::linear(2 * j as i64 + 1, 2);
    let scale = (0..top).fold(ZPoly::one(), |acc, j| &acc * &odd(j));
    let mut moments = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let rising = (0..k).fold(ZPoly::one(), |acc, j| &acc * &ZPoly::linear(j as i64, 1));
        let tail = (k..top).fold(ZPoly::one(), |acc, j| &acc * &odd(j));
        moments.push(&(&rising * &rising) * &tail);
    }

    let one = ZPoly::one();
    let mut scaled: Vec<Vec<ZPoly>> = vec![vec![ZPoly::one()]];
    let mut hankel: Vec<ZPoly> = Vec::with_capacity(n_max + 1);
    let mut beta_numerators = Vec::with_capacity(n_max);
    for n in 0..=n_max {
        let q = &scaled[n];
        let w = shifted_pairings(&moments, q, if n == n_max { n } else { n + 1 });
        let prev = if n == 0 { &one } else { &hankel[n - 1] };
        let delta = dot(q, &w).exact_div(prev)?;
        if delta.is_zero() {
            return Err(Error::Regularity { n });
        }
        hankel.push(delta);
        if n == n_max {
            break;
        }
        let b = dot(q, &w[1..]);
        let delta = &hankel[n];
        let prev = if n == 0 { &one } else { &hankel[n - 1] };
        let lead = delta * prev;
        let mut next = vec![ZPoly::zero(); n + 2];
        for (i, c) in q.iter().enumerate() {
            next[i + 1] = &next[i + 1] + &(&lead * c);
            next[i] = &next[i] - &(&b * c);
        }
        if n > 0 {
            let d2 = delta * delta;
            for (i, c) in scaled[n - 1].iter().enumerate() {
                next[i] = &next[i] - &(&d2 * c);
            }
        }
        let divisor = prev * prev;
        let next = next.iter().map(|c| c.exact_div(&divisor)).collect::<Result<Vec<_>>>()?;
        beta_numerators.push(b);
        scaled.push(next);
    }
    Ok(FractionFreeOps { n_max, scale, moments, scaled, hankel, beta_numerators })
}

impl FractionFreeOps {
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// `D`, the common denominator of `(u)_0..(u)_{2N}`.
    pub fn scale(&self) -> RationalPoly {
        self.scale.to_rational()
    }

    /// `M_k = D (u)_k`.
    pub fn scaled_moment(&self, k: usize) -> RationalPoly {
        self.moments[k].to_rational()
    }

    /// `Delta_n(M)`.
    pub fn scaled_hankel(&self, n: usize) -> RationalPoly {
        self.hankel[n].to_rational()
    }

    /// Coefficients of `Delta_{n-1}(M) Q_n`.
    pub fn scaled_poly(&self, n: usize) -> Vec<RationalPoly> {
        self.scaled[n].iter().map(ZPoly::to_rational).collect()
    }

    fn lowered(&self, n: usize) -> RationalPoly {
        if n == 0 {
            RationalPoly::one()
        } else {
            self.scaled_hankel(n - 1)
        }
    }

    fn norm(&self, n: usize) -> Result<RationalFunction> {
        // <u, Q_n^2> = Delta_n(u) / Delta_{n-1}(u) = Delta_n(M) / (D Delta_{n-1}(M))
        RationalFunction::new(self.scaled_hankel(n), &self.scale() * &self.lowered(n))
    }

    /// Reduced monic `Q_0..=Q_N` and the recurrence table.
    pub fn reduce(&self) -> Result<(MonicOps<RationalFunction>, RecurrenceTable<RationalFunction>)> {
        let polys = (0..=self.n_max)
            .into_par_iter()
            .map(|n| {
                let d = self.lowered(n);
                let coeffs = self
                    .scaled_poly(n)
                    .into_iter()
                    .map(|c| RationalFunction::new(c, d.clone()))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Polynomial::new(coeffs))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((MonicOps { polys }, self.recurrence()?))
    }

    /// The recurrence table alone, without reducing the polynomials.
    pub fn recurrence(&self) -> Result<RecurrenceTable<RationalFunction>> {
        let betas = (0..self.n_max)
            .into_par_iter()
            .map(|n| {
                let h = &self.lowered(n) * &self.scaled_hankel(n);
                RationalFunction::new(self.beta_numerators[n].to_rational(), h)
            })
            .collect::<Result<Vec<_>>>()?;
        let gammas = (1..=self.n_max)
            .into_par_iter()
            .map(|n| {
                let prev = self.scaled_hankel(n - 1);
                RationalFunction::new(&self.scaled_hankel(n) * &self.lowered(n - 1), &prev * &prev)
            })
            .collect::<Result<Vec<_>>>()?;
        let norms = (0..=self.n_max).into_par_iter().map(|n| self.norm(n)).collect::<Result<Vec<_>>>()?;
        Ok(RecurrenceTable { betas, gammas, norms })
    }

    /// `Delta_n(u_0)` as reduced rational functions.
    pub fn hankel_dets(&self) -> Result<Vec<RationalFunction>> {
        let scale = self.scale();
        let mut power = RationalPoly::one();
        let mut out = Vec::with_capacity(self.hankel.len());
        for h in &self.hankel {
            power = &power * &scale;
            out.push(RationalFunction::new(h.to_rational(), power.clone())?);
        }
        Ok(out)
    }

    /// Exact `<u_0, Q_n Q_m>` test for all `n, m <= N`, evaluated as polynomials
    /// in alpha after clearing the known denominators.
    pub fn orthogonality(&self) -> Result<OrthogonalityReport<RationalFunction>> {
        let n_max = self.n_max;
        let pairings: Vec<Vec<ZPoly>> =
            self.scaled.par_iter().map(|q| shifted_pairings(&self.moments, q, n_max)).collect();
        let pairs: Vec<(usize, usize)> = (0..=n_max).flat_map(|n| (n..=n_max).map(move |m| (n, m))).collect();
        let zero: Vec<bool> = pairs.par_iter().map(|&(n, m)| dot(&self.scaled[n], &pairings[m]).is_zero()).collect();
        let mut off = Vec::new();
        let mut degenerate = Vec::new();
        for (&(n, m), &z) in pairs.iter().zip(&zero) {
            if n == m && z {
                degenerate.push(n);
            } else if n != m && !z {
                off.push((n, m));
            }
        }
        let norms = (0..=n_max).map(|n| self.norm(n)).collect::<Result<Vec<_>>>()?;
        Ok(OrthogonalityReport {
            holds: off.is_empty() && degenerate.is_empty(),
            off_diagonal_violations: off,
            degenerate_norms: degenerate,
            norms,
        })
    }
}

/// [`stieltjes_orthogonalize`] for symbolic alpha through [`stieltjes_fraction_free`].
pub fn stieltjes_symbolic(n_max: usize) -> Result<(MonicOps<RationalFunction>, RecurrenceTable<RationalFunction>)> {
    stieltjes_fraction_free(n_max)?.reduce()
}

/// [`orthogonality_check`] for symbolic alpha through [`stieltjes_fraction_free`].
pub fn orthogonality_check_symbolic(n_max: usize) -> Result<OrthogonalityReport<RationalFunction>> {
    stieltjes_fraction_free(n_max)?.orthogonality()
}

#[cfg(test)]
mod tests {
    use super::*;
    type Rf = RationalFunction;

    fn a() -> Rf {
        Rf::var()
    }

    fn k(v: i64) -> Rf {
        Rf::from_i64(v)
    }

    fn lin(c0: i64, c1: i64) -> Rf {
        Rf::from_poly(Polynomial::new(vec![Rational::from(c0), Rational::from(c1)]))
    }

    #[test]
    fn first_moments() {
        let u = moments(2, &a()).unwrap();
        assert_eq!(u.get(0), &k(1));
        assert_eq!(u.get(1), &(&(&a() * &a()) / &lin(1, 2)));
        let ap1 = lin(1, 1);
        let expected = &(&(&(&a() * &a()) * &ap1) * &ap1) / &(&lin(1, 2) * &lin(3, 2));
        assert_eq!(u.get(2), &expected);
    }

    #[test]
    fn fixed_moments_positive() {
        for alpha in [Rational::frac(1, 4), Rational::one(), Rational::frac(7, 2)] {
            let u = moments(12, &alpha).unwrap();
            assert!(u.values().iter().all(Rational::is_positive));
        }
        let u = moments(2, &Rational::one()).unwrap();
        assert_eq!(u.values(), &[Rational::one(), Rational::frac(1, 3), Rational::frac(4, 15)]);
        assert!(moments(3, &Rational::frac(-3, 2)).is_err());
    }

    #[test]
    fn functional_action() {
        let u = moments(4, &a()).unwrap();
        assert_eq!(apply_functional(&u, &Polynomial::one()).unwrap(), k(1));
        let p1 = &monic_p(1, &a()).unwrap()[1];
        assert!(apply_functional(&u, p1).unwrap().is_zero());
        assert_eq!(apply_functional(&u, &Polynomial::monomial(k(1), 2)).unwrap(), u.get(2).clone());
        let too_big = Polynomial::monomial(k(1), 5);
        assert!(matches!(apply_functional(&u, &too_big), Err(Error::DegreeOverflow { .. })));
    }

    #[test]
    fn dual_moments_match_closed_form() {
        let u = moments(6, &a()).unwrap();
        assert_eq!(dual_moments(6, &a()).unwrap(), u.values());
    }

    #[test]
    fn first_recurrence_coefficients() {
        let (_, rec) = stieltjes_orthogonalize(2, &a()).unwrap();
        assert_eq!(rec.beta(0), &(&(&a() * &a()) / &lin(1, 2)));
        let g1_num =
            &(&a() * &a()) * &Rf::from_poly(Polynomial::new([1, 4, 2].iter().map(|&c| Rational::from(c)).collect()));
        let g1_den = &(&lin(1, 2) * &lin(1, 2)) * &lin(3, 2);
        assert_eq!(rec.gamma(1), &(&g1_num / &g1_den));
    }

    #[test]
    fn hankel_vs_recurrence() {
        let dets = hankel_dets(2, &a()).unwrap();
        let (_, rec) = stieltjes_orthogonalize(3, &a()).unwrap();
        assert_eq!(dets[0], k(1));
        assert_eq!(dets[1], rec.gamma(1).clone());
        assert_eq!(&(&dets[2] * &dets[0]) / &(&dets[1] * &dets[1]), rec.gamma(2).clone());
        let fixed = hankel_dets(6, &Rational::one()).unwrap();
        assert!(fixed.iter().all(Rational::is_positive));
    }

    #[test]
    fn determinant_with_pivoting() {
        let r = |v: i64| Rational::from(v);
        let m = vec![vec![r(0), r(1)], vec![r(1), r(0)]];
        assert_eq!(determinant(m).unwrap(), r(-1));
        let singular = vec![vec![r(1), r(2)], vec![r(2), r(4)]];
        assert_eq!(determinant(singular).unwrap(), r(0));
    }

    #[test]
    fn orthogonality_small() {
        let report = orthogonality_check(3, &a()).unwrap();
        assert!(report.holds, "{:?}", report.off_diagonal_violations);
        assert!(!report.norms[2].is_zero());
    }

    #[test]
    fn p_is_not_orthogonal() {
        let u = moments(2, &a()).unwrap();
        let ps = monic_p(1, &a()).unwrap();
        assert!(apply_functional(&u, &(&ps[0] * &ps[1])).unwrap().is_zero());
        let w = non_orthogonality_of_p(&a(), 4).unwrap();
        assert_eq!((w.n, w.m), (1, 2));
        assert!(!w.value.is_zero());
        let wf = non_orthogonality_of_p(&Rational::one(), 4).unwrap();
        assert!(wf.value.to_f64() != 0.0);
    }

    #[test]
    fn shift_functional() {
        assert!(shift_functional_check(3, &a()).unwrap().is_empty());
        assert!(shift_functional_check(10, &Rational::frac(2, 3)).unwrap().is_empty());
    }

    #[test]
    fn moment_sign() {
        let report = moment_difference_probe(0, &a()).unwrap();
        assert!(report.plus_residuals[0].is_zero());
        assert_eq!(report.minus_residuals[0], &k(2) * &(&a() * &a()));
        assert_eq!(report.consistent_sign, Some(Sign::Plus));
        let fixed = moment_difference_probe(5, &Rational::one()).unwrap();
        assert!(fixed.plus_residuals.iter().all(Rational::is_zero));
    }

    #[test]
    fn dual_expansion() {
        let ps = monic_p(6, &a()).unwrap();
        let coords = dual_expand(&ps[3], &a()).unwrap();
        assert_eq!(coords, vec![k(0), k(0), k(0), k(1)]);
        let x_coords = dual_expand(&Polynomial::x(), &a()).unwrap();
        assert_eq!(x_coords, vec![&(&a() * &a()) / &lin(1, 2), k(1)]);
        let f: Polynomial<Rf> = Polynomial::new((1..=7).map(|c| lin(c, 7 - 2 * c)).collect());
        let coords = dual_expand(&f, &a()).unwrap();
        let rebuilt = coords.iter().enumerate().fold(Polynomial::zero(), |acc, (i, c)| &acc + &ps[i].scale(c));
        assert_eq!(rebuilt, f);
    }

    #[test]
    fn dual_equations() {
        let e = dual_equation_check(0, 0, &a()).unwrap();
        assert_eq!(e.value, lin(1, 2));
        assert!(e.holds);
        assert!(dual_equation_check(1, 3, &a()).unwrap().value.is_zero());
        assert_eq!(dual_equation_check(3, 3, &Rational::one()).unwrap().value, Rational::from(9));
    }

    #[test]
    fn chi_convention() {
        let report = chi_convention_check(6, &a()).unwrap();
        assert!(report.stated_chi_consistent);
        assert!(!report.flipped_chi_consistent);
    }

    #[test]
    fn fraction_free_agrees_with_generic() {
        let ff = stieltjes_fraction_free(4).unwrap();
        let (ops, rec) = ff.reduce().unwrap();
        let (ops2, rec2) = stieltjes_orthogonalize(4, &a()).unwrap();
        assert_eq!(ops, ops2);
        assert_eq!(rec, rec2);
        assert_eq!(ff.hankel_dets().unwrap(), hankel_dets(4, &a()).unwrap());
        let u = moments(8, &a()).unwrap();
        let d = Rf::from_poly(ff.scale());
        for k in 0..=8 {
            assert_eq!(Rf::from_poly(ff.scaled_moment(k)), &d * u.get(k));
        }
        let report = ff.orthogonality().unwrap();
        assert!(report.holds);
        assert_eq!(report.norms, rec.norms);
    }

    #[test]
    fn fixed_alpha_specializes_symbolic() {
        let (_, rec) = stieltjes_symbolic(3).unwrap();
        let alpha = Rational::frac(7, 2);
        let (_, fixed) = stieltjes_orthogonalize(3, &alpha).unwrap();
        for (s, f) in rec.betas.iter().zip(&fixed.betas) {
            assert_eq!(&s.eval(&alpha).unwrap(), f);
        }
        for (s, f) in rec.gammas.iter().zip(&fixed.gammas) {
            assert_eq!(&s.eval(&alpha).unwrap(), f);
        }
    }
}
