//! Factorization in `Z[T]`: squarefree decomposition, modular factorization
//! (distinct- and equal-degree splitting), multifactor Hensel lifting and
//! subset recombination.

use super::zpoly::{self, ZPoly};
use crate::gf::poly as fpoly;
use crate::gf::{is_prime_u64, FieldCtx, FieldElem};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `f = content * prod factor_i^{mult_i}` with primitive, positive-leading factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub content: BigInt,
    pub factors: Vec<(ZPoly, usize)>,
}

impl Factorization {
    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

/// Complete factorization of a nonzero integer polynomial over `Q`, with integer content split off.
pub fn factor_over_z(f: &[BigInt]) -> Factorization {
    let f = zpoly::trimmed(f.to_vec());
    assert!(!f.is_empty(), "factorization of the zero polynomial");
    let mut content = zpoly::content(&f);
    if f.last().unwrap().is_negative() {
        content = -content;
    }
    let mut prim: ZPoly = f.iter().map(|x| x / &content).collect();
    let mut factors = Vec::new();
    let zeros = prim.iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        factors.push((zpoly::from_i64(&[0, 1]), zeros));
        prim.drain(..zeros);
    }
    for (a, mult) in zpoly::squarefree_decomposition(&prim) {
        for g in factor_squarefree(&a) {
            factors.push((g, mult));
        }
    }
    factors.sort_by(|a, b| (a.0.len(), &a.0, a.1).cmp(&(b.0.len(), &b.0, b.1)));
    // merge identical factors coming from different squarefree layers (cannot happen, kept for safety)
    let mut merged: Vec<(ZPoly, usize)> = Vec::new();
    for (g, m) in factors {
        match merged.last_mut() {
            Some((h, k)) if *h == g => *k += m,
            _ => merged.push((g, m)),
        }
    }
    Factorization { content, factors: merged }
}

fn to_fp(k: &FieldCtx, f: &[BigInt]) -> Vec<FieldElem> {
    let p = BigInt::from(k.p());
    let mut out: Vec<FieldElem> = f.iter().map(|c| k.from_int(c.mod_floor(&p).to_i64().unwrap())).collect();
    fpoly::trim(&mut out);
    out
}

fn from_fp(k: &FieldCtx, f: &[FieldElem]) -> ZPoly {
    f.iter().map(|&c| BigInt::from(k.to_coeffs(c)[0])).collect()
}

fn powmod_big(k: &FieldCtx, base: &[FieldElem], e: &BigUint, m: &[FieldElem]) -> Vec<FieldElem> {
    let mut acc = fpoly::rem(k, &[FieldElem::ONE], m);
    let b = fpoly::rem(k, base, m);
    for i in (0..e.bits()).rev() {
        acc = fpoly::mulmod(k, &acc, &acc, m);
        if e.bit(i) {
            acc = fpoly::mulmod(k, &acc, &b, m);
        }
    }
    acc
}

/// Distinct-degree factorization of a monic squarefree polynomial mod p.
fn ddf(k: &FieldCtx, f: &[FieldElem]) -> Vec<(Vec<FieldElem>, usize)> {
    let mut out = Vec::new();
    let mut f = f.to_vec();
    let x = vec![FieldElem::ZERO, FieldElem::ONE];
    let mut h = fpoly::rem(k, &x, &f);
    let mut d = 1;
    while fpoly::degree(&f).unwrap_or(0) >= 2 * d {
        h = fpoly::powmod(k, &h, k.p() as u64, &f);
        let g = fpoly::gcd(k, &f, &fpoly::sub(k, &h, &x));
        if fpoly::degree(&g).unwrap_or(0) > 0 {
            f = fpoly::divrem(k, &f, &g).0;
            h = fpoly::rem(k, &h, &f);
            out.push((g, d));
        }
        d += 1;
    }
    let df = fpoly::degree(&f).unwrap_or(0);
    if df > 0 {
        out.push((fpoly::monic(k, &f), df));
    }
    out
}

/// Equal-degree splitting of a monic product of distinct irreducibles of degree `d` (odd p).
fn edf(k: &FieldCtx, g: &[FieldElem], d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Vec<FieldElem>>) {
    let n = fpoly::degree(g).unwrap();
    if n == d {
        out.push(g.to_vec());
        return;
    }
    let e = (BigUint::from(k.p()).pow(d as u32) - 1u32) / 2u32;
    loop {
        let u: Vec<FieldElem> = (0..n).map(|_| k.element((rng.next_u64() % k.q() as u64) as u32)).collect();
        let mut u = u;
        fpoly::trim(&mut u);
        if fpoly::degree(&u).unwrap_or(0) == 0 {
            continue;
        }
        let w = fpoly::sub(k, &powmod_big(k, &u, &e, g), &[FieldElem::ONE]);
        let h = fpoly::gcd(k, g, &w);
        let dh = fpoly::degree(&h).unwrap_or(0);
        if h.is_empty() || dh == 0 || dh == n {
            continue;
        }
        let quo = fpoly::divrem(k, g, &h).0;
        edf(k, &h, d, rng, out);
        edf(k, &fpoly::monic(k, &quo), d, rng, out);
        return;
    }
}

fn modular_factors(k: &FieldCtx, f: &[FieldElem]) -> Vec<Vec<FieldElem>> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xfac7);
    let mut out = Vec::new();
    for (g, d) in ddf(k, &fpoly::monic(k, f)) {
        edf(k, &g, d, &mut rng, &mut out);
    }
    out
}

fn sym_mod(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn reduce(f: &[BigInt], m: &BigInt) -> ZPoly {
    zpoly::trimmed(f.iter().map(|c| c.mod_floor(m)).collect())
}

/// Lifts `f = g h (mod p)` (g monic) to `f = g h (mod p^e)`.
fn hensel_pair(f: &[BigInt], g: &ZPoly, h: &ZPoly, k: &FieldCtx, e: u32) -> (ZPoly, ZPoly) {
    let p = BigInt::from(k.p());
    let gp = to_fp(k, g);
    let hp = to_fp(k, h);
    // s g + t h = 1 mod p
    let (_, t) = ext_gcd(k, &gp, &hp);
    let mut g = g.clone();
    let mut h = h.clone();
    let mut pk = p.clone();
    for _ in 1..e {
        let next = &pk * &p;
        let diff = reduce(&zpoly::sub(f, &zpoly::mul(&g, &h)), &next);
        let ediv: ZPoly = diff.iter().map(|c| c / &pk).collect();
        let ep = to_fp(k, &ediv);
        let a = fpoly::rem(k, &fpoly::mul(k, &t, &ep), &gp);
        let b = fpoly::divrem(k, &fpoly::sub(k, &ep, &fpoly::mul(k, &a, &hp)), &gp).0;
        g = reduce(&zpoly::add(&g, &zpoly::scale(&from_fp(k, &a), &pk)), &next);
        h = reduce(&zpoly::add(&h, &zpoly::scale(&from_fp(k, &b), &pk)), &next);
        pk = next;
    }
    (g, h)
}

fn ext_gcd(k: &FieldCtx, a: &[FieldElem], b: &[FieldElem]) -> (Vec<FieldElem>, Vec<FieldElem>) {
    // returns (s, t) with s a + t b = 1
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![FieldElem::ONE], vec![]);
    let (mut t0, mut t1) = (vec![], vec![FieldElem::ONE]);
    while !r1.is_empty() {
        let (q, r) = fpoly::divrem(k, &r0, &r1);
        let s2 = fpoly::sub(k, &s0, &fpoly::mul(k, &q, &s1));
        let t2 = fpoly::sub(k, &t0, &fpoly::mul(k, &q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    // r0 is a nonzero constant
    let inv = k.inv(r0[0]).expect("coprime factors");
    (fpoly::scale(k, &s0, inv), fpoly::scale(k, &t0, inv))
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).filter(|&n| is_prime_u64(n))
}

fn factor_squarefree(f: &ZPoly) -> Vec<ZPoly> {
    let n = zpoly::degree(f).unwrap();
    if n <= 1 {
        return vec![f.clone()];
    }
    let lc = f[n].clone();
    // choose a prime with the fewest modular factors among a few good ones
    let mut best: Option<(FieldCtx, Vec<Vec<FieldElem>>)> = None;
    let mut tried = 0;
    for p in small_primes() {
        if tried >= 6 || p > 4000 {
            break;
        }
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let k = FieldCtx::new(p, 1).expect("prime field");
        let fp = to_fp(&k, f);
        let g = fpoly::gcd(&k, &fp, &fpoly::derivative(&k, &fp));
        if fpoly::degree(&g).unwrap_or(0) > 0 {
            continue;
        }
        tried += 1;
        let facs = modular_factors(&k, &fp);
        if facs.len() == 1 {
            return vec![f.clone()];
        }
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((k, facs));
        }
    }
    let (k, facs) = best.expect("some prime keeps the polynomial squarefree");
    let p = BigInt::from(k.p());
    // coefficient bound for factors of lc * f
    let norm2: BigInt = f.iter().map(|c| c * c).sum::<BigInt>().sqrt() + 1;
    let bound = (BigInt::one() << n) * norm2 * lc.abs() * 2;
    let mut e = 1u32;
    let mut pe = p.clone();
    while pe <= bound {
        pe *= &p;
        e += 1;
    }
    // multifactor lift: peel off one factor at a time
    let mut lifted: Vec<ZPoly> = Vec::new();
    let mut rest_f = reduce(f, &pe);
    for i in 0..facs.len() - 1 {
        let g = from_fp(&k, &facs[i]);
        let mut hp = vec![k.from_int(lc.mod_floor(&p).to_i64().unwrap())];
        for fac in &facs[i + 1..] {
            hp = fpoly::mul(&k, &hp, fac);
        }
        let h = from_fp(&k, &hp);
        let (gl, hl) = hensel_pair(&rest_f, &g, &h, &k, e);
        lifted.push(gl);
        rest_f = hl;
    }
    // normalise the last cofactor to monic: rest_f = lc * g_last (mod p^e)
    let lc_inv_pe = lc.mod_floor(&pe).modinv(&pe).expect("lc invertible mod p^e");
    lifted.push(reduce(&zpoly::scale(&rest_f, &lc_inv_pe), &pe));

    // recombination
    let mut result = Vec::new();
    let mut current = f.clone();
    let mut pool: Vec<ZPoly> = lifted;
    let mut s = 1;
    while 2 * s <= pool.len() {
        let mut found = false;
        for subset in subsets(pool.len(), s) {
            let lcc = current.last().unwrap().clone();
            let mut g = vec![lcc.clone()];
            for &i in &subset {
                g = reduce(&zpoly::mul(&g, &pool[i]), &pe);
            }
            let g: ZPoly = zpoly::trimmed(g.iter().map(|c| sym_mod(c, &pe)).collect());
            let g = zpoly::primitive(&g);
            if let Some(quo) = zpoly::div_exact(&current, &g) {
                result.push(g);
                current = quo;
                let mut idx = subset.clone();
                idx.sort_unstable_by(|a, b| b.cmp(a));
                for i in idx {
                    pool.remove(i);
                }
                found = true;
                break;
            }
        }
        if !found {
            s += 1;
        }
    }
    if zpoly::degree(&current).unwrap_or(0) > 0 {
        result.push(zpoly::primitive(&current));
    }
    result
}

fn subsets(n: usize, s: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(s);
    fn rec(start: usize, n: usize, s: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == s {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < s - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, s, cur, out);
            cur.pop();
        }
    }
    rec(0, n, s, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weil::zpoly::{from_i64, mul, pow};

    #[test]
    fn paper_quartics() {
        let f = from_i64(&[-36, 48, -9, -4, 1]);
        let fac = factor_over_z(&f);
        assert_eq!(fac.factors, vec![(from_i64(&[-3, 1]), 1), (from_i64(&[-1, 1]), 1), (from_i64(&[-12, 0, 1]), 1)]);
        let g = mul(&from_i64(&[2, -4, 1]), &from_i64(&[-11, 0, 1]));
        let fac = factor_over_z(&g);
        assert_eq!(fac.factors, vec![(from_i64(&[-11, 0, 1]), 1), (from_i64(&[2, -4, 1]), 1)]);
    }

    #[test]
    fn powers_and_content() {
        let f = pow(&from_i64(&[32, 1]), 10);
        let fac = factor_over_z(&f);
        assert_eq!(fac.factors, vec![(from_i64(&[32, 1]), 10)]);
        let g = zpoly::scale(&mul(&from_i64(&[1, 0, 7]), &from_i64(&[1, 1])), &BigInt::from(-6));
        let fac = factor_over_z(&g);
        assert_eq!(fac.content, BigInt::from(-6));
        assert_eq!(fac.factors.len(), 2);
    }

    #[test]
    fn swinnerton_dyer_like() {
        // x^4 - 10x^2 + 1 is irreducible but splits modulo every prime
        let f = from_i64(&[1, 0, -10, 0, 1]);
        assert!(factor_over_z(&f).is_irreducible());
        // 1 + 7^5 T^10 = (1 + 7 T^2)(...)
        let f = zpoly::add(&from_i64(&[1]), &zpoly::scale(&pow(&from_i64(&[0, 1]), 10), &BigInt::from(16807)));
        let fac = factor_over_z(&f);
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(fac.factors[0], (from_i64(&[1, 0, 7]), 1));
    }
}
