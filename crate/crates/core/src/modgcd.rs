//! Multi-modular gcd of primitive integer polynomials: images modulo word-size
//! primes, Chinese remaindering, and a trial-division acceptance test.

use std::sync::OnceLock;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

const PRIME_COUNT: usize = 400;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for 64-bit inputs.
fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &b in &BASES {
        let mut x = pow_mod(b, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(PRIME_COUNT);
        let mut n = (1u64 << 62) - 1;
        while out.len() < PRIME_COUNT {
            if is_prime(n) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

fn reduce(c: &BigInt, p: u64) -> u64 {
    let r = (c.magnitude() % p).to_u64().expect("below modulus");
    if c.sign() == Sign::Minus && r != 0 {
        p - r
    } else {
        r
    }
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Monic gcd over GF(p); empty when both inputs vanish.
fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let inv = inv_mod(*b.last().expect("nonempty"), p);
        let db = b.len() - 1;
        while a.len() > db {
            let q = mul_mod(*a.last().expect("nonempty"), inv, p);
            let shift = a.len() - 1 - db;
            for (j, &bc) in b.iter().enumerate() {
                let t = mul_mod(q, bc, p);
                a[shift + j] = (a[shift + j] + p - t) % p;
            }
            a.pop();
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(&lead) = a.last() {
        let inv = inv_mod(lead, p);
        for c in a.iter_mut() {
            *c = mul_mod(*c, inv, p);
        }
    }
    a
}

/// Exact division test over the integers.
fn divides(d: &[BigInt], a: &[BigInt]) -> bool {
    let dd = d.len() - 1;
    let ld = &d[dd];
    let mut r = a.to_vec();
    while r.len() > dd {
        let top = r.last().expect("nonempty");
        let (q, rem) = top.div_rem(ld);
        if !rem.is_zero() {
            return false;
        }
        let shift = r.len() - 1 - dd;
        for (j, dc) in d.iter().enumerate() {
            r[shift + j] -= &q * dc;
        }
        r.pop();
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    r.is_empty()
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let mut content = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if v.last().is_some_and(Signed::is_negative) {
        content = -content;
    }
    if !content.is_one() {
        for c in v.iter_mut() {
            *c = &*c / &content;
        }
    }
    v
}

/// Primitive gcd with positive leading coefficient of two nonzero primitive
/// integer polynomials, or `None` when the prime supply runs out.
pub(crate) fn gcd_primitive(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let (la, lb) = (a.last()?, b.last()?);
    let lc_g = la.gcd(lb);
    let mut acc: Option<(Vec<BigInt>, BigInt)> = None;
    let mut previous: Option<Vec<BigInt>> = None;
    for &p in primes() {
        if reduce(la, p) == 0 || reduce(lb, p) == 0 {
            continue;
        }
        let image = gcd_mod(a.iter().map(|c| reduce(c, p)).collect(), b.iter().map(|c| reduce(c, p)).collect(), p);
        if image.len() == 1 {
            return Some(vec![BigInt::one()]);
        }
        let scale = reduce(&lc_g, p);
        let image: Vec<u64> = image.into_iter().map(|c| mul_mod(c, scale, p)).collect();
        let fresh = match &acc {
            None => true,
            Some((h, _)) if image.len() < h.len() => true,
            Some((h, _)) if image.len() > h.len() => continue,
            _ => false,
        };
        let pb = BigInt::from(p);
        if fresh {
            acc = Some((image.iter().map(|&c| BigInt::from(c)).collect(), pb));
            previous = None;
        } else {
            let (h, m) = acc.as_mut().expect("accumulator set");
            let m_inv = inv_mod(reduce(m, p), p);
            for (hc, &r) in h.iter_mut().zip(&image) {
                let diff = (r + p - reduce(hc, p)) % p;
                let t = mul_mod(diff, m_inv, p);
                *hc += &*m * t;
            }
            *m *= &pb;
        }
        let (h, m) = acc.as_ref().expect("accumulator set");
        let half: BigInt = m >> 1u32;
        let sym: Vec<BigInt> = h.iter().map(|c| if c > &half { c - m } else { c.clone() }).collect();
        if previous.as_ref() == Some(&sym) {
            let cand = primitive(sym.clone());
            if divides(&cand, a) && divides(&cand, b) {
                return Some(cand);
            }
        }
        previous = Some(sym);
    }
    None
}
