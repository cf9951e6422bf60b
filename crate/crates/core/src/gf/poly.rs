//! Dense univariate polynomials over a [`FieldCtx`], lowest degree first.

use super::{FieldCtx, FieldElem};
use crate::error::{Error, Result};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Default seed for the equal-degree splitting randomness.
pub const DEFAULT_ROOT_SEED: u64 = 0x5eed_c0de;

pub fn trim(f: &mut Vec<FieldElem>) {
    while f.last().is_some_and(|c| c.is_zero()) {
        f.pop();
    }
}

/// Degree, `None` for the zero polynomial.
pub fn degree(f: &[FieldElem]) -> Option<usize> {
    f.iter().rposition(|c| !c.is_zero())
}

pub fn eval(k: &FieldCtx, f: &[FieldElem], x: FieldElem) -> FieldElem {
    f.iter().rev().fold(FieldElem::ZERO, |acc, &c| k.add(k.mul(acc, x), c))
}

pub fn add(k: &FieldCtx, a: &[FieldElem], b: &[FieldElem]) -> Vec<FieldElem> {
    let n = a.len().max(b.len());
    let mut out: Vec<FieldElem> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(FieldElem::ZERO);
            let y = b.get(i).copied().unwrap_or(FieldElem::ZERO);
            k.add(x, y)
        })
        .collect();
    trim(&mut out);
    out
}

pub fn sub(k: &FieldCtx, a: &[FieldElem], b: &[FieldElem]) -> Vec<FieldElem> {
    let nb: Vec<FieldElem> = b.iter().map(|&c| k.neg(c)).collect();
    add(k, a, &nb)
}

pub fn mul(k: &FieldCtx, a: &[FieldElem], b: &[FieldElem]) -> Vec<FieldElem> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![FieldElem::ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = k.add(out[i + j], k.mul(x, y));
        }
    }
    trim(&mut out);
    out
}

pub fn scale(k: &FieldCtx, a: &[FieldElem], c: FieldElem) -> Vec<FieldElem> {
    let mut out: Vec<FieldElem> = a.iter().map(|&x| k.mul(x, c)).collect();
    trim(&mut out);
    out
}

/// Makes `f` monic; `f` must be nonzero.
pub fn monic(k: &FieldCtx, f: &[FieldElem]) -> Vec<FieldElem> {
    let d = degree(f).expect("monic of zero polynomial");
    let inv = k.inv(f[d]).unwrap();
    f[..=d].iter().map(|&c| k.mul(c, inv)).collect()
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem(k: &FieldCtx, a: &[FieldElem], b: &[FieldElem]) -> (Vec<FieldElem>, Vec<FieldElem>) {
    let db = degree(b).expect("division by zero polynomial");
    let inv = k.inv(b[db]).unwrap();
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() <= db {
        return (vec![], r);
    }
    let mut quo = vec![FieldElem::ZERO; r.len() - db];
    while r.len() > db {
        let top = r.len() - 1;
        let c = k.mul(r[top], inv);
        let shift = top - db;
        quo[shift] = c;
        if !c.is_zero() {
            let nc = k.neg(c);
            for j in 0..=db {
                r[shift + j] = k.add(r[shift + j], k.mul(nc, b[j]));
            }
        }
        r.pop();
        trim(&mut r);
    }
    trim(&mut quo);
    (quo, r)
}

pub fn rem(k: &FieldCtx, a: &[FieldElem], b: &[FieldElem]) -> Vec<FieldElem> {
    divrem(k, a, b).1
}

/// Monic gcd (zero when both inputs are zero).
pub fn gcd(k: &FieldCtx, a: &[FieldElem], b: &[FieldElem]) -> Vec<FieldElem> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(k, &a, &b);
        a = b;
        b = r;
    }
    if a.is_empty() {
        a
    } else {
        monic(k, &a)
    }
}

pub fn derivative(k: &FieldCtx, f: &[FieldElem]) -> Vec<FieldElem> {
    let mut out: Vec<FieldElem> = f.iter().enumerate().skip(1).map(|(i, &c)| k.mul(c, k.from_int(i as i64))).collect();
    trim(&mut out);
    out
}

pub fn mulmod(k: &FieldCtx, a: &[FieldElem], b: &[FieldElem], m: &[FieldElem]) -> Vec<FieldElem> {
    rem(k, &mul(k, a, b), m)
}

pub fn powmod(k: &FieldCtx, base: &[FieldElem], mut e: u64, m: &[FieldElem]) -> Vec<FieldElem> {
    let mut acc = rem(k, &[FieldElem::ONE], m);
    let mut b = rem(k, base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(k, &acc, &b, m);
        }
        e >>= 1;
        if e > 0 {
            b = mulmod(k, &b, &b, m);
        }
    }
    acc
}

/// `x^q mod f` for monic `f` of degree >= 1, via `x^p` and the semilinear Frobenius.
pub fn x_pow_q_mod(k: &FieldCtx, f: &[FieldElem]) -> Vec<FieldElem> {
    let d = degree(f).unwrap();
    let x = vec![FieldElem::ZERO, FieldElem::ONE];
    let xp = powmod(k, &x, k.p() as u64, f);
    if k.r() == 1 {
        return xp;
    }
    // basis[i] = x^{i p} mod f
    let mut basis = Vec::with_capacity(d);
    let mut cur = rem(k, &[FieldElem::ONE], f);
    for _ in 0..d {
        basis.push(cur.clone());
        cur = mulmod(k, &cur, &xp, f);
    }
    let mut h = xp;
    for _ in 1..k.r() {
        let mut next = vec![FieldElem::ZERO; d];
        for (i, &c) in h.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cp = k.pow(c, k.p() as u64);
            for (j, &b) in basis[i].iter().enumerate() {
                next[j] = k.add(next[j], k.mul(cp, b));
            }
        }
        trim(&mut next);
        h = next;
    }
    h
}

/// Monic product of the distinct linear factors of `f` over `F_q`.
fn split_part(k: &FieldCtx, f: &[FieldElem]) -> Vec<FieldElem> {
    let f = monic(k, f);
    if f.len() <= 2 {
        return f;
    }
    let h = x_pow_q_mod(k, &f);
    let hx = sub(k, &h, &[FieldElem::ZERO, FieldElem::ONE]);
    gcd(k, &f, &hx)
}

fn random_elem(k: &FieldCtx, rng: &mut ChaCha8Rng) -> FieldElem {
    let q = k.q() as u64;
    let zone = u64::MAX - (u64::MAX % q);
    loop {
        let v = rng.next_u64();
        if v < zone {
            return k.element((v % q) as u32);
        }
    }
}

/// Roots of a monic squarefree `g` that splits into distinct linear factors.
fn equal_degree_roots(k: &FieldCtx, g: &[FieldElem], rng: &mut ChaCha8Rng, out: &mut Vec<FieldElem>) {
    let d = degree(g).unwrap();
    if d == 0 {
        return;
    }
    if d == 1 {
        out.push(k.neg(g[0]));
        return;
    }
    if d == 2 && k.p() != 2 {
        // x^2 + b x + c
        let (b, c) = (g[1], g[0]);
        let disc = k.sub(k.mul(b, b), k.mul(k.from_int(4), c));
        let s = k.sqrt(disc).expect("split quadratic has square discriminant");
        let half = k.inv(k.from_int(2)).unwrap();
        out.push(k.mul(k.sub(s, b), half));
        out.push(k.mul(k.sub(k.neg(s), b), half));
        return;
    }
    loop {
        let w = if k.p() == 2 {
            // absolute trace of a*x
            let a = random_elem(k, rng);
            let u = rem(k, &[FieldElem::ZERO, a], g);
            let mut t = u.clone();
            let mut cur = u;
            let m = k.r();
            for _ in 1..m {
                cur = mulmod(k, &cur, &cur, g);
                t = add(k, &t, &cur);
            }
            t
        } else {
            let a = random_elem(k, rng);
            let base = vec![a, FieldElem::ONE];
            let pw = powmod(k, &base, (k.q() as u64 - 1) / 2, g);
            sub(k, &pw, &[FieldElem::ONE])
        };
        let h = gcd(k, g, &w);
        let dh = degree(&h).unwrap_or(0);
        if h.is_empty() || dh == 0 || dh == d {
            continue;
        }
        let (quo, _) = divrem(k, g, &h);
        equal_degree_roots(k, &h, rng, out);
        equal_degree_roots(k, &monic(k, &quo), rng, out);
        return;
    }
}

/// Distinct roots of `f` in `F_q`, sorted lexicographically by coordinates.
pub fn distinct_roots(k: &FieldCtx, f: &[FieldElem]) -> Result<Vec<FieldElem>> {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_ROOT_SEED);
    distinct_roots_seeded(k, f, &mut rng)
}

pub fn distinct_roots_seeded(k: &FieldCtx, f: &[FieldElem], rng: &mut ChaCha8Rng) -> Result<Vec<FieldElem>> {
    if degree(f).is_none() {
        return Err(Error::ZeroPolynomial);
    }
    let g = split_part(k, f);
    let mut out = Vec::new();
    equal_degree_roots(k, &g, rng, &mut out);
    k.sort_elements(&mut out);
    Ok(out)
}

/// Number of distinct roots of a nonzero `f` in `F_q`.
pub fn count_distinct_roots(k: &FieldCtx, f: &[FieldElem]) -> Result<usize> {
    if degree(f).is_none() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(degree(&split_part(k, f)).unwrap_or(0))
}

/// Roots of `f` in `F_q` with multiplicity, sorted lexicographically by coordinates.
pub fn poly_roots(k: &FieldCtx, f: &[FieldElem]) -> Result<Vec<FieldElem>> {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_ROOT_SEED);
    poly_roots_seeded(k, f, &mut rng)
}

/// As [`poly_roots`], drawing the splitting randomness from `rng`.
pub fn poly_roots_seeded(k: &FieldCtx, f: &[FieldElem], rng: &mut ChaCha8Rng) -> Result<Vec<FieldElem>> {
    let roots = distinct_roots_seeded(k, f, rng)?;
    let mut out = Vec::new();
    for &a in &roots {
        let lin = [k.neg(a), FieldElem::ONE];
        let mut cur = f.to_vec();
        trim(&mut cur);
        loop {
            let (quo, r) = divrem(k, &cur, &lin);
            if !r.is_empty() {
                break;
            }
            out.push(a);
            cur = quo;
        }
    }
    Ok(out)
}
