//! Allocation-free root counting and root finding for polynomials of degree < 8,
//! used in the enumeration kernels.

use super::poly;
use super::{FieldCtx, FieldElem};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

const CAP: usize = 8;
type Arr = [FieldElem; CAP];
const Z: FieldElem = FieldElem::ZERO;

/// Root counting and root finding for small-degree polynomials over a fixed field.
#[derive(Clone)]
pub struct SmallRootFinder {
    k: FieldCtx,
    brute: bool,
}

impl SmallRootFinder {
    pub fn new(k: &FieldCtx) -> Self {
        SmallRootFinder { k: k.clone(), brute: k.q() <= 8 }
    }

    pub fn field(&self) -> &FieldCtx {
        &self.k
    }

    /// Number of distinct roots of `c[0] + c[1] t + ...` (`c.len() <= 8`); `None` when the
    /// polynomial is identically zero.
    pub fn count(&self, c: &[FieldElem]) -> Option<usize> {
        let k = &self.k;
        let d = c.iter().rposition(|x| !x.is_zero())?;
        match d {
            0 => return Some(0),
            1 => return Some(1),
            2 if k.p() != 2 => {
                let disc = k.sub(k.mul(c[1], c[1]), k.mul(k.from_int(4), k.mul(c[0], c[2])));
                return Some(match disc.log() {
                    None => 1,
                    Some(l) if l % 2 == 0 => 2,
                    _ => 0,
                });
            }
            _ => {}
        }
        if self.brute {
            return Some(k.elements().filter(|&x| poly::eval(k, &c[..=d], x).is_zero()).count());
        }
        Some(self.split_part(c, d).1)
    }

    /// Appends the distinct roots of a nonzero polynomial to `out` (unsorted). Returns
    /// `false` when the polynomial is identically zero.
    pub fn roots(&self, c: &[FieldElem], out: &mut Vec<FieldElem>) -> bool {
        let k = &self.k;
        let Some(d) = c.iter().rposition(|x| !x.is_zero()) else {
            return false;
        };
        if d == 0 {
            return true;
        }
        if d == 1 {
            out.push(k.neg(k.mul(c[0], k.inv(c[1]).unwrap())));
            return true;
        }
        if self.brute {
            out.extend(k.elements().filter(|&x| poly::eval(k, &c[..=d], x).is_zero()));
            return true;
        }
        let (g, dg) = self.split_part(c, d);
        match dg {
            0 => {}
            1 => out.push(k.neg(g[0])),
            2 if k.p() != 2 => {
                let disc = k.sub(k.mul(g[1], g[1]), k.mul(k.from_int(4), g[0]));
                let s = k.sqrt(disc).expect("split quadratic");
                let half = k.inv(k.from_int(2)).unwrap();
                out.push(k.mul(k.sub(s, g[1]), half));
                out.push(k.mul(k.sub(k.neg(s), g[1]), half));
            }
            _ => {
                let gv: Vec<FieldElem> = g[..=dg].to_vec();
                let mut rng = ChaCha8Rng::seed_from_u64(poly::DEFAULT_ROOT_SEED);
                let r = poly::distinct_roots_seeded(k, &gv, &mut rng).expect("nonzero");
                out.extend(r);
            }
        }
        true
    }

    /// Monic gcd of `f` with `x^q - x` and its degree.
    fn split_part(&self, c: &[FieldElem], d: usize) -> (Arr, usize) {
        let k = &self.k;
        let inv = k.inv(c[d]).unwrap();
        let mut f: Arr = [Z; CAP];
        for i in 0..=d {
            f[i] = k.mul(c[i], inv);
        }
        let mut negf: Arr = [Z; CAP];
        for i in 0..d {
            negf[i] = k.neg(f[i]);
        }
        let h = self.x_pow_q(&negf, d);
        // h - x
        let mut hx = h;
        hx[1] = k.sub(hx[1], FieldElem::ONE);
        let (g, dg) = gcd(k, f, d, hx);
        (g, dg)
    }

    fn mulmod(&self, a: &Arr, b: &Arr, negf: &Arr, d: usize) -> Arr {
        let k = &self.k;
        let mut prod = [Z; 2 * CAP];
        for i in 0..d {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..d {
                prod[i + j] = k.add(prod[i + j], k.mul(a[i], b[j]));
            }
        }
        for t in (d..2 * d - 1).rev() {
            let top = prod[t];
            if top.is_zero() {
                continue;
            }
            for j in 0..d {
                prod[t - d + j] = k.add(prod[t - d + j], k.mul(top, negf[j]));
            }
        }
        let mut out = [Z; CAP];
        out[..d].copy_from_slice(&prod[..d]);
        out
    }

    fn mul_x(&self, a: &Arr, negf: &Arr, d: usize) -> Arr {
        let k = &self.k;
        let top = a[d - 1];
        let mut out = [Z; CAP];
        for j in (1..d).rev() {
            out[j] = a[j - 1];
        }
        if !top.is_zero() {
            for j in 0..d {
                out[j] = k.add(out[j], k.mul(top, negf[j]));
            }
        }
        out
    }

    /// `x^q mod f` where `f = x^d - sum negf_i x^i`, `d >= 2`.
    fn x_pow_q(&self, negf: &Arr, d: usize) -> Arr {
        let k = &self.k;
        let p = k.p() as u64;
        let mut x = [Z; CAP];
        x[1] = FieldElem::ONE;
        // x^p by left-to-right binary powering
        let mut acc = x;
        let bits = 64 - p.leading_zeros();
        for b in (0..bits - 1).rev() {
            acc = self.mulmod(&acc, &acc, negf, d);
            if (p >> b) & 1 == 1 {
                acc = self.mul_x(&acc, negf, d);
            }
        }
        if k.r() == 1 {
            return acc;
        }
        let xp = acc;
        let mut basis = [[Z; CAP]; CAP];
        basis[0][0] = FieldElem::ONE;
        for i in 1..d {
            basis[i] = self.mulmod(&basis[i - 1], &xp, negf, d);
        }
        let mut h = xp;
        for _ in 1..k.r() {
            let mut next = [Z; CAP];
            for i in 0..d {
                if h[i].is_zero() {
                    continue;
                }
                let cp = k.pow(h[i], p);
                for j in 0..d {
                    next[j] = k.add(next[j], k.mul(cp, basis[i][j]));
                }
            }
            h = next;
        }
        h
    }
}

fn deg(a: &Arr) -> Option<usize> {
    a.iter().rposition(|x| !x.is_zero())
}

/// Monic gcd of monic `f` (degree `df`) and `g`.
fn gcd(k: &FieldCtx, f: Arr, df: usize, g: Arr) -> (Arr, usize) {
    let mut a = f;
    let mut da = Some(df);
    let mut b = g;
    let mut db = deg(&b);
    while let Some(dbv) = db {
        // a <- a mod b
        let inv = k.inv(b[dbv]).unwrap();
        let mut dav = da.unwrap();
        while dav >= dbv {
            let c = k.mul(a[dav], inv);
            if !c.is_zero() {
                let nc = k.neg(c);
                for j in 0..=dbv {
                    a[dav - dbv + j] = k.add(a[dav - dbv + j], k.mul(nc, b[j]));
                }
            }
            match deg(&a) {
                Some(x) => dav = x,
                None => break,
            }
            if dav < dbv {
                break;
            }
        }
        let na = deg(&a);
        std::mem::swap(&mut a, &mut b);
        da = db;
        db = na;
    }
    let dav = da.unwrap();
    let inv = k.inv(a[dav]).unwrap();
    for x in a.iter_mut().take(dav + 1) {
        *x = k.mul(*x, inv);
    }
    (a, dav)
}
