//! Exact real-root counting with endpoints of the form `c * sqrt(d)`.

use super::zpoly::{self, ZPoly};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::cmp::Ordering;

/// A real number `c * sqrt(d)` with integers `c` and `d >= 0`.
#[derive(Clone, Debug)]
pub struct Surd {
    pub c: BigInt,
    pub d: BigInt,
}

impl Surd {
    pub fn new(c: BigInt, d: BigInt) -> Surd {
        Surd { c, d }
    }
    pub fn neg(&self) -> Surd {
        Surd { c: -&self.c, d: self.d.clone() }
    }
}

/// Sign of `A + B sqrt(d)`.
pub fn sign_of(a: &BigInt, b: &BigInt, d: &BigInt) -> Ordering {
    let sa = a.sign();
    let sb = if d.is_zero() { num_bigint::Sign::NoSign } else { b.sign() };
    use num_bigint::Sign::*;
    let to_ord = |s| match s {
        Minus => Ordering::Less,
        NoSign => Ordering::Equal,
        Plus => Ordering::Greater,
    };
    match (sa, sb) {
        (NoSign, s) | (s, NoSign) => to_ord(s),
        (x, y) if x == y => to_ord(x),
        _ => {
            let lhs = a * a;
            let rhs = b * b * d;
            match lhs.cmp(&rhs) {
                Ordering::Greater => to_ord(sa),
                Ordering::Less => to_ord(sb),
                Ordering::Equal => Ordering::Equal,
            }
        }
    }
}

/// Sign of `f(x)`.
pub fn sign_at(f: &[BigInt], x: &Surd) -> Ordering {
    // f(c sqrt d) = A + B sqrt d
    let mut a = BigInt::zero();
    let mut b = BigInt::zero();
    let c2d = &x.c * &x.c * &x.d;
    // process even and odd powers separately: c^k d^{floor(k/2)}
    let mut even_pow = BigInt::from(1); // (c^2 d)^{k/2}
    let mut odd_pow = x.c.clone(); // c (c^2 d)^{(k-1)/2}
    for (k, coef) in f.iter().enumerate() {
        if k % 2 == 0 {
            a += coef * &even_pow;
            even_pow *= &c2d;
        } else {
            b += coef * &odd_pow;
            odd_pow *= &c2d;
        }
    }
    sign_of(&a, &b, &x.d)
}

/// Sturm sequence with positive-multiplier pseudo-remainders.
pub fn sturm_sequence(f: &[BigInt]) -> Vec<ZPoly> {
    let mut seq = vec![zpoly::primitive(f)];
    let d = zpoly::derivative(&seq[0]);
    if d.is_empty() {
        return seq;
    }
    seq.push(zpoly::primitive(&d));
    loop {
        let n = seq.len();
        let r = zpoly::pseudo_rem(&seq[n - 2], &seq[n - 1]);
        if r.is_empty() {
            break;
        }
        let neg: ZPoly = r.iter().map(|x| -x).collect();
        // divide by the positive content only
        let c = zpoly::content(&neg);
        seq.push(neg.iter().map(|x| x / &c).collect());
    }
    seq
}

fn variations(seq: &[ZPoly], x: &Surd) -> usize {
    let signs: Vec<Ordering> = seq.iter().map(|p| sign_at(p, x)).filter(|s| *s != Ordering::Equal).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

fn variations_at_infinity(seq: &[ZPoly], positive: bool) -> usize {
    let signs: Vec<bool> = seq
        .iter()
        .map(|p| {
            let d = p.len() - 1;
            let lc_pos = p[d].is_positive();
            if positive || d % 2 == 0 {
                lc_pos
            } else {
                !lc_pos
            }
        })
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots of a nonzero polynomial in the closed interval `[lo, hi]`.
pub fn count_roots_closed(f: &[BigInt], lo: &Surd, hi: &Surd) -> usize {
    let sf = zpoly::squarefree_part(f);
    if zpoly::degree(&sf).unwrap_or(0) == 0 {
        return 0;
    }
    let seq = sturm_sequence(&sf);
    let at_lo = sign_at(&sf, lo) == Ordering::Equal;
    let v_lo = variations(&seq, lo);
    let v_hi = variations(&seq, hi);
    v_lo - v_hi + usize::from(at_lo)
}

/// Number of distinct real roots.
pub fn count_real_roots(f: &[BigInt]) -> usize {
    let sf = zpoly::squarefree_part(f);
    if zpoly::degree(&sf).unwrap_or(0) == 0 {
        return 0;
    }
    let seq = sturm_sequence(&sf);
    variations_at_infinity(&seq, false) - variations_at_infinity(&seq, true)
}

/// Whether every complex root of `f` is real and lies in `[-c sqrt d, c sqrt d]`.
pub fn all_roots_real_in(f: &[BigInt], c: &BigInt, d: &BigInt) -> bool {
    let sf = zpoly::squarefree_part(f);
    let deg = zpoly::degree(&sf).unwrap_or(0);
    if deg == 0 {
        return true;
    }
    let hi = Surd::new(c.clone(), d.clone());
    count_roots_closed(&sf, &hi.neg(), &hi) == deg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weil::zpoly::from_i64;

    #[test]
    fn counts() {
        // (x-1)(x-3)(x^2-12): roots 1, 3, +-3.46
        let f = from_i64(&[-36, 48, -9, -4, 1]);
        assert_eq!(count_real_roots(&f), 4);
        let two = BigInt::from(2);
        // [-2 sqrt 3, 2 sqrt 3] contains all four, with +-sqrt 12 on the boundary
        assert!(all_roots_real_in(&f, &two, &BigInt::from(3)));
        // [-2 sqrt 2, 2 sqrt 2] misses 3 and +-sqrt 12
        let hi = Surd::new(two.clone(), BigInt::from(2));
        assert_eq!(count_roots_closed(&f, &hi.neg(), &hi), 1);
        // x^2 + 1
        assert_eq!(count_real_roots(&from_i64(&[1, 0, 1])), 0);
        // rational endpoint that is a root
        let f = from_i64(&[-4, 0, 1]);
        let hi = Surd::new(BigInt::from(2), BigInt::from(1));
        assert_eq!(count_roots_closed(&f, &hi.neg(), &hi), 2);
    }
}
