//! Finite fields `F_{p^r}` with table-driven arithmetic.
//!
//! Nonzero elements are stored as discrete logarithms with respect to a fixed
//! primitive element `g`; addition goes through a Zech-logarithm table
//! (`1 + g^k = g^{zech[k]}`). The field is presented as `F_p[t]/(m(t))` with
//! `m` the lexicographically least monic irreducible polynomial of degree `r`
//! (coefficients compared from the constant term upward), so coefficient
//! vectors are reproducible across runs.

mod embed;
mod fp;
pub mod poly;
mod small;

pub use embed::{subfield_embed, Embedding};
pub use poly::{count_distinct_roots, distinct_roots, poly_roots, poly_roots_seeded};
pub use small::SmallRootFinder;

use crate::error::{Error, Result};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock, Weak};

/// Largest field size supported by the logarithm tables.
pub const MAX_FIELD_SIZE: u64 = 1 << 25;

const NONE: u32 = u32::MAX;

/// An element of a finite field, stored as a discrete logarithm.
///
/// The value is only meaningful together with the [`FieldCtx`] it came from.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElem(u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(NONE);
    pub const ONE: FieldElem = FieldElem(0);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == NONE
    }

    /// Discrete logarithm, `None` for zero.
    #[inline]
    pub fn log(self) -> Option<u32> {
        if self.is_zero() {
            None
        } else {
            Some(self.0)
        }
    }

    #[inline]
    pub(crate) fn from_log(l: u32) -> FieldElem {
        FieldElem(l)
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.log() {
            None => write!(f, "0"),
            Some(l) => write!(f, "g^{l}"),
        }
    }
}

pub(crate) struct FieldInner {
    p: u32,
    r: u32,
    q: u32,
    order: u32,
    modulus: Vec<u32>,
    zech: Vec<u32>,
    exp: Vec<u32>,
    prime_logs: Vec<u32>,
    neg_one: u32,
    log_t: u32,
}

/// A finite field `F_q`, `q = p^r`. Cheap to clone and shareable across threads.
#[derive(Clone)]
pub struct FieldCtx(Arc<FieldInner>);

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.r == other.0.r
    }
}
impl Eq for FieldCtx {}

impl std::hash::Hash for FieldCtx {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        (self.0.p, self.0.r).hash(h);
    }
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.spec_string())
    }
}

fn cache() -> &'static Mutex<HashMap<(u32, u32), Weak<FieldInner>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Weak<FieldInner>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Builds (or fetches from the process-wide cache) the field `F_{p^r}`.
pub fn field_create(p: u64, r: u32) -> Result<FieldCtx> {
    FieldCtx::new(p, r)
}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^r` when `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut r = 0;
    let mut m = q;
    while m.is_multiple_of(p) {
        m /= p;
        r += 1;
    }
    (m == 1).then_some((p, r))
}

impl FieldCtx {
    pub fn new(p: u64, r: u32) -> Result<FieldCtx> {
        if !is_prime_u64(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if r == 0 {
            return Err(Error::InvalidField("extension degree must be at least 1".into()));
        }
        let q = (p as u128).checked_pow(r).unwrap_or(u128::MAX);
        if q > MAX_FIELD_SIZE as u128 {
            return Err(Error::InvalidField(format!("{p}^{r} exceeds the supported field size {MAX_FIELD_SIZE}")));
        }
        let key = (p as u32, r);
        let mut guard = cache().lock().unwrap_or_else(|e| e.into_inner());
        if let Some(inner) = guard.get(&key).and_then(Weak::upgrade) {
            return Ok(FieldCtx(inner));
        }
        let inner = Arc::new(build(p as u32, r));
        guard.insert(key, Arc::downgrade(&inner));
        guard.retain(|_, w| w.strong_count() > 0);
        Ok(FieldCtx(inner))
    }

    /// Parses `"p"` or `"p^r"`.
    pub fn from_spec(s: &str) -> Result<FieldCtx> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad field specification '{s}'"));
        let (p, r) = match s.split_once('^') {
            Some((a, b)) => (a.trim().parse::<u64>().map_err(|_| bad())?, b.trim().parse::<u32>().map_err(|_| bad())?),
            None => {
                let q = s.parse::<u64>().map_err(|_| bad())?;
                prime_power(q).ok_or_else(|| Error::InvalidField(format!("{q} is not a prime power")))?
            }
        };
        FieldCtx::new(p, r)
    }

    /// `"p"` or `"p^r"`.
    pub fn spec_string(&self) -> String {
        if self.0.r == 1 {
            format!("{}", self.0.p)
        } else {
            format!("{}^{}", self.0.p, self.0.r)
        }
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.0.p
    }
    #[inline]
    pub fn r(&self) -> u32 {
        self.0.r
    }
    #[inline]
    pub fn q(&self) -> u32 {
        self.0.q
    }
    /// Order of the multiplicative group, `q - 1`.
    #[inline]
    pub fn order(&self) -> u32 {
        self.0.order
    }
    /// Coefficients of the defining polynomial, constant term first (length `r + 1`).
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// The extension `F_{q^k}` built directly over the prime field.
    pub fn extension(&self, k: u32) -> Result<FieldCtx> {
        FieldCtx::new(self.0.p as u64, self.0.r * k)
    }

    #[inline]
    pub fn zero(&self) -> FieldElem {
        FieldElem::ZERO
    }
    #[inline]
    pub fn one(&self) -> FieldElem {
        FieldElem::ONE
    }

    /// The primitive element used as logarithm base.
    pub fn generator(&self) -> FieldElem {
        FieldElem(if self.0.order == 1 { 0 } else { 1 })
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.is_zero() || b.is_zero() {
            return FieldElem::ZERO;
        }
        let s = a.0 + b.0;
        let m = self.0.order;
        FieldElem(if s >= m { s - m } else { s })
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        let m = self.0.order;
        let d = if b.0 >= a.0 { b.0 - a.0 } else { b.0 + m - a.0 };
        // d < m, and zech has length m
        let z = unsafe { *self.0.zech.get_unchecked(d as usize) };
        if z == NONE {
            FieldElem::ZERO
        } else {
            let s = a.0 + z;
            FieldElem(if s >= m { s - m } else { s })
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        self.mul(a, FieldElem(self.0.neg_one))
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: FieldElem) -> Option<FieldElem> {
        let l = a.log()?;
        Some(FieldElem(if l == 0 { 0 } else { self.0.order - l }))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inv(b).ok_or(Error::ZeroElement)?))
    }

    /// `a^e` for `e >= 0` (with `0^0 = 1`).
    pub fn pow(&self, a: FieldElem, e: u64) -> FieldElem {
        if e == 0 {
            return FieldElem::ONE;
        }
        match a.log() {
            None => FieldElem::ZERO,
            Some(l) => FieldElem(((l as u64 * (e % self.0.order as u64)) % self.0.order as u64) as u32),
        }
    }

    /// `a^{p^k}`.
    pub fn frobenius(&self, a: FieldElem, k: u32) -> FieldElem {
        let mut e = 1u64;
        for _ in 0..(k % self.0.r) {
            e *= self.0.p as u64;
        }
        self.pow(a, e)
    }

    /// Membership in `(F_q^x)^2`. Every nonzero element is a square in even characteristic.
    pub fn is_square(&self, a: FieldElem) -> Result<bool> {
        let l = a.log().ok_or(Error::ZeroElement)?;
        Ok(self.0.p == 2 || l % 2 == 0)
    }

    /// A square root of `a` when one exists in `F_q`.
    pub fn sqrt(&self, a: FieldElem) -> Option<FieldElem> {
        let Some(l) = a.log() else {
            return Some(FieldElem::ZERO);
        };
        if self.0.p == 2 {
            // squaring is a bijection; its inverse is a -> a^{q/2}
            return Some(self.pow(a, self.0.q as u64 / 2));
        }
        (l % 2 == 0).then_some(FieldElem(l / 2))
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElem {
        let c = n.rem_euclid(self.0.p as i64) as usize;
        FieldElem(self.0.prime_logs[c])
    }

    /// Element with the given coordinates in the power basis `1, t, ..., t^{r-1}`.
    pub fn from_coeffs(&self, coeffs: &[i64]) -> Result<FieldElem> {
        if coeffs.len() > self.0.r as usize {
            return Err(Error::Parse(format!(
                "element has {} coordinates, field degree is {}",
                coeffs.len(),
                self.0.r
            )));
        }
        let t = FieldElem(self.0.log_t);
        let mut acc = FieldElem::ZERO;
        for &c in coeffs.iter().rev() {
            acc = self.add(self.mul(acc, t), self.from_int(c));
        }
        Ok(acc)
    }

    /// Packed integer `sum c_i p^i` of the coordinate vector.
    #[inline]
    fn packed(&self, a: FieldElem) -> u32 {
        match a.log() {
            None => 0,
            Some(l) => self.0.exp[l as usize],
        }
    }

    /// Coordinates in the power basis, constant term first (length `r`).
    pub fn to_coeffs(&self, a: FieldElem) -> Vec<u32> {
        let mut v = self.packed(a);
        let p = self.0.p;
        (0..self.0.r)
            .map(|_| {
                let c = v % p;
                v /= p;
                c
            })
            .collect()
    }

    /// Key realizing the lexicographic order on coordinate vectors read from the constant term.
    pub fn sort_key(&self, a: FieldElem) -> u64 {
        self.to_coeffs(a).iter().fold(0u64, |acc, &c| acc * self.0.p as u64 + c as u64)
    }

    /// Sorts elements lexicographically by coordinates.
    pub fn sort_elements(&self, v: &mut [FieldElem]) {
        v.sort_by_key(|&a| self.sort_key(a));
    }

    /// Enumeration index in `0..q` (zero is index 0).
    #[inline]
    pub fn index(&self, a: FieldElem) -> u32 {
        if a.is_zero() {
            0
        } else {
            a.0 + 1
        }
    }

    #[inline]
    pub fn element(&self, idx: u32) -> FieldElem {
        if idx == 0 {
            FieldElem::ZERO
        } else {
            FieldElem(idx - 1)
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.0.q).map(move |i| self.element(i))
    }

    /// Whether `x -> x^3` is a bijection of `F_q`.
    pub fn cube_map_is_bijective(&self) -> bool {
        !self.0.order.is_multiple_of(3)
    }

    /// Decimal literal for prime fields, `[c0,c1,...]` otherwise.
    pub fn format(&self, a: FieldElem) -> String {
        let c = self.to_coeffs(a);
        if self.0.r == 1 {
            c[0].to_string()
        } else {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            format!("[{}]", parts.join(","))
        }
    }

    /// Parses a decimal integer (reduced mod p) or a bracketed coordinate vector.
    pub fn parse(&self, s: &str) -> Result<FieldElem> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('[').and_then(|x| x.strip_suffix(']')) {
            let coeffs = inner
                .split(',')
                .filter(|x| !x.trim().is_empty())
                .map(|x| x.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad coordinate '{x}'"))))
                .collect::<Result<Vec<_>>>()?;
            self.from_coeffs(&coeffs)
        } else {
            let n = s.parse::<i64>().map_err(|_| Error::Parse(format!("bad field element '{s}'")))?;
            Ok(self.from_int(n))
        }
    }
}

fn build(p: u32, r: u32) -> FieldInner {
    let modulus = fp::least_irreducible(p, r);
    let arith = fp::PackedArith::new(p, modulus.clone());
    let q = arith.q;
    let order = q - 1;
    let gen = arith.primitive_element();
    let mut exp = Vec::with_capacity(order as usize);
    let mut cur = 1u32;
    let by_t = r > 1 && gen == p;
    for _ in 0..order {
        exp.push(cur);
        cur = if by_t { arith.mul_by_t(cur) } else { arith.mul(cur, gen) };
    }
    debug_assert_eq!(cur, 1);
    let mut log = vec![NONE; q as usize];
    for (k, &v) in exp.iter().enumerate() {
        log[v as usize] = k as u32;
    }
    let zech: Vec<u32> = exp
        .iter()
        .map(|&v| {
            let c0 = v % p;
            let w = if c0 == p - 1 { v - (p - 1) } else { v + 1 };
            if w == 0 {
                NONE
            } else {
                log[w as usize]
            }
        })
        .collect();
    let prime_logs: Vec<u32> = (0..p).map(|c| if c == 0 { NONE } else { log[c as usize] }).collect();
    let neg_one = prime_logs[(p - 1) as usize];
    let log_t = if r == 1 { NONE } else { log[p as usize] };
    FieldInner { p, r, q, order, modulus, zech, exp, prime_logs, neg_one, log_t }
}
