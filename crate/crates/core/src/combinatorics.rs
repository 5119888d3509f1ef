//! Exact combinatorial sequences: Stirling numbers, the 0-modified Stirling
//! numbers of the first kind, Bernoulli numbers and binomials.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::rational::Rational;

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StirlingKind {
    Second,
    ModifiedFirstZero,
}

/// Triangular table, rows `0..=N`, row `n` holding entries for `0..=n`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StirlingTable {
    pub kind: StirlingKind,
    rows: Vec<Vec<BigInt>>,
}

impl StirlingTable {
    /// `S(n,k) = S(n-1,k-1) + k S(n-1,k)`, `S(0,0) = 1`.
    pub fn second_kind(max_n: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
        for n in 1..=max_n {
            let prev = &rows[n - 1];
            let row = (0..=n)
                .map(|k| {
                    let left = if k >= 1 { prev.get(k - 1).cloned().unwrap_or_default() } else { BigInt::zero() };
                    let up = prev.get(k).cloned().unwrap_or_default();
                    left + BigInt::from(k) * up
                })
                .collect();
            rows.push(row);
        }
        StirlingTable { kind: StirlingKind::Second, rows }
    }

    /// Coefficients of `[x]_n = prod_{s=0}^{n-1} (x - s^2)`.
    pub fn modified_first_zero(max_n: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
        for n in 1..=max_n {
            let prev = &rows[n - 1];
            let root = BigInt::from((n - 1) * (n - 1));
            // [x]_n = x [x]_{n-1} - (n-1)^2 [x]_{n-1}
            let row = (0..=n)
                .map(|nu| {
                    let shifted = if nu >= 1 { prev.get(nu - 1).cloned().unwrap_or_default() } else { BigInt::zero() };
                    let same = prev.get(nu).cloned().unwrap_or_default();
                    shifted - &root * same
                })
                .collect();
            rows.push(row);
        }
        StirlingTable { kind: StirlingKind::ModifiedFirstZero, rows }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn row(&self, n: usize) -> &[BigInt] {
        &self.rows[n]
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    /// Zero outside the triangle.
    pub fn get(&self, n: usize, k: usize) -> BigInt {
        self.rows.get(n).and_then(|r| r.get(k)).cloned().unwrap_or_default()
    }

    /// CSV with a header `n,0,1,...,N`; cells beyond the row are left empty.
    pub fn to_csv(&self) -> String {
        let n_max = self.max_n();
        let mut out = String::from("n");
        for k in 0..=n_max {
            out.push_str(&format!(",{k}"));
        }
        out.push('\n');
        for (n, row) in self.rows.iter().enumerate() {
            out.push_str(&n.to_string());
            for k in 0..=n_max {
                out.push(',');
                if let Some(v) = row.get(k) {
                    out.push_str(&v.to_string());
                }
            }
            out.push('\n');
        }
        out
    }
}

pub fn stirling2(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    StirlingTable::second_kind(n).get(n, k)
}

/// `ŝ_0(n, nu)` for `nu = 0..=n`.
pub fn mod_stirling1_0(n: usize) -> Vec<BigInt> {
    StirlingTable::modified_first_zero(n).row(n).to_vec()
}

/// Bernoulli numbers `B_0..=B_N` with `B_1 = -1/2`.
#[derive(Clone, Debug, PartialEq)]
pub struct BernoulliCache {
    values: Vec<Rational>,
}

impl BernoulliCache {
    /// From `sum_{k=0}^{n} C(n+1,k) B_k = 0`.
    pub fn new(max_n: usize) -> Self {
        let mut values = vec![Rational::one()];
        for n in 1..=max_n {
            let s: Rational = (0..n).map(|k| Rational::from_int(binomial(n as u64 + 1, k as u64)) * &values[k]).sum();
            values.push(-s / Rational::from(n as i64 + 1));
        }
        BernoulliCache { values }
    }

    pub fn get(&self, n: usize) -> &Rational {
        &self.values[n]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }
}

pub fn bernoulli(n: usize) -> Rational {
    BernoulliCache::new(n).get(n).clone()
}
