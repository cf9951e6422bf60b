//! Sparse multivariate polynomials over a finite field.

use crate::error::{Error, Result};
use crate::gf::{Embedding, FieldCtx, FieldElem};
use std::collections::BTreeMap;

/// Exponent vector.
pub type Monomial = Vec<u8>;

/// A polynomial in `nvars` variables with coefficients in `field`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    field: FieldCtx,
    nvars: usize,
    terms: BTreeMap<Monomial, FieldElem>,
}

impl MPoly {
    pub fn zero(field: &FieldCtx, nvars: usize) -> MPoly {
        MPoly { field: field.clone(), nvars, terms: BTreeMap::new() }
    }

    pub fn constant(field: &FieldCtx, nvars: usize, c: FieldElem) -> MPoly {
        let mut p = MPoly::zero(field, nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// The variable `x_i`.
    pub fn var(field: &FieldCtx, nvars: usize, i: usize) -> MPoly {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = MPoly::zero(field, nvars);
        p.add_term(e, FieldElem::ONE);
        p
    }

    /// `sum c_i x_i`.
    pub fn linear(field: &FieldCtx, coeffs: &[FieldElem]) -> MPoly {
        let n = coeffs.len();
        let mut p = MPoly::zero(field, n);
        for (i, &c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, c);
        }
        p
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }
    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn terms(&self) -> &BTreeMap<Monomial, FieldElem> {
        &self.terms
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e: Monomial, c: FieldElem) {
        debug_assert_eq!(e.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        let k = &self.field;
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = k.add(*v, c);
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn coeff(&self, e: &[u8]) -> FieldElem {
        self.terms.get(e).copied().unwrap_or(FieldElem::ZERO)
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|e| e.iter().map(|&x| x as usize).sum()).max()
    }

    pub fn is_homogeneous_of(&self, d: usize) -> bool {
        self.terms.keys().all(|e| e.iter().map(|&x| x as usize).sum::<usize>() == d)
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.scale(self.field.neg(FieldElem::ONE)))
    }

    pub fn scale(&self, c: FieldElem) -> MPoly {
        let mut out = MPoly::zero(&self.field, self.nvars);
        for (e, &v) in &self.terms {
            out.add_term(e.clone(), self.field.mul(v, c));
        }
        out
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let k = &self.field;
        let mut out = MPoly::zero(k, self.nvars);
        for (e1, &c1) in &self.terms {
            for (e2, &c2) in &other.terms {
                let e: Monomial = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, k.mul(c1, c2));
            }
        }
        out
    }

    pub fn eval(&self, x: &[FieldElem]) -> FieldElem {
        let k = &self.field;
        let mut acc = FieldElem::ZERO;
        for (e, &c) in &self.terms {
            let mut t = c;
            for (i, &d) in e.iter().enumerate() {
                if d > 0 {
                    t = k.mul(t, k.pow(x[i], d as u64));
                }
            }
            acc = k.add(acc, t);
        }
        acc
    }

    /// Formal partial derivative with respect to `x_i`.
    pub fn derivative(&self, i: usize) -> MPoly {
        let k = &self.field;
        let mut out = MPoly::zero(k, self.nvars);
        for (e, &c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut f = e.clone();
            f[i] -= 1;
            out.add_term(f, k.mul(c, k.from_int(e[i] as i64)));
        }
        out
    }

    /// Substitutes `x_i = sum_j a[i][j] y_j` (a is `nvars x m`).
    pub fn linear_substitute(&self, a: &[Vec<FieldElem>]) -> MPoly {
        let k = &self.field;
        let m = a.first().map_or(0, |r| r.len());
        let forms: Vec<MPoly> = a.iter().map(|row| MPoly::linear(k, row)).collect();
        let mut out = MPoly::zero(k, m);
        for (e, &c) in &self.terms {
            let mut t = MPoly::constant(k, m, c);
            for (i, &d) in e.iter().enumerate() {
                for _ in 0..d {
                    t = t.mul(&forms[i]);
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Substitutes `x_i = c_i + y_i`.
    pub fn translate(&self, c: &[FieldElem]) -> MPoly {
        let k = &self.field;
        let n = self.nvars;
        let shifted: Vec<MPoly> = (0..n).map(|i| MPoly::var(k, n, i).add(&MPoly::constant(k, n, c[i]))).collect();
        let mut out = MPoly::zero(k, n);
        for (e, &coef) in &self.terms {
            let mut t = MPoly::constant(k, n, coef);
            for (i, &d) in e.iter().enumerate() {
                for _ in 0..d {
                    t = t.mul(&shifted[i]);
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Part of total degree `d`.
    pub fn homogeneous_part(&self, d: usize) -> MPoly {
        let mut out = MPoly::zero(&self.field, self.nvars);
        for (e, &c) in &self.terms {
            if e.iter().map(|&x| x as usize).sum::<usize>() == d {
                out.add_term(e.clone(), c);
            }
        }
        out
    }

    /// Sets `x_i = value` and removes the variable.
    pub fn specialize(&self, i: usize, value: FieldElem) -> MPoly {
        let k = &self.field;
        let mut out = MPoly::zero(k, self.nvars - 1);
        for (e, &c) in &self.terms {
            let mut f = e.clone();
            let d = f.remove(i);
            out.add_term(f, k.mul(c, k.pow(value, d as u64)));
        }
        out
    }

    /// Splits off the powers of `x_i`: returns `(d, coefficient of x_i^d)` in the remaining variables.
    pub fn coefficients_in(&self, i: usize) -> BTreeMap<u8, MPoly> {
        let mut out: BTreeMap<u8, MPoly> = BTreeMap::new();
        for (e, &c) in &self.terms {
            let mut f = e.clone();
            let d = f.remove(i);
            out.entry(d).or_insert_with(|| MPoly::zero(&self.field, self.nvars - 1)).add_term(f, c);
        }
        out
    }

    /// Maps the coefficients into an extension field.
    pub fn embed(&self, emb: &Embedding) -> Result<MPoly> {
        if emb.small() != &self.field {
            return Err(Error::IncompatibleFields("polynomial is not over the embedding's base field".into()));
        }
        let mut out = MPoly::zero(emb.big(), self.nvars);
        for (e, &c) in &self.terms {
            out.add_term(e.clone(), emb.apply(c));
        }
        Ok(out)
    }

    /// Human-readable rendering with variables `x1, x2, ...`.
    pub fn format(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let k = &self.field;
        let mut parts = Vec::new();
        for (e, &c) in self.terms.iter().rev() {
            let mut mono = Vec::new();
            for (i, &d) in e.iter().enumerate() {
                match d {
                    0 => {}
                    1 => mono.push(format!("x{}", i + 1)),
                    _ => mono.push(format!("x{}^{}", i + 1, d)),
                }
            }
            let coef = k.format(c);
            let s = if mono.is_empty() {
                coef
            } else if c == FieldElem::ONE {
                mono.join("*")
            } else {
                format!("{}*{}", coef, mono.join("*"))
            };
            parts.push(s);
        }
        parts.join(" + ")
    }
}

/// All exponent vectors of total degree `d` in `n` variables, in lexicographically decreasing order.
pub fn monomials(n: usize, d: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u8; n];
    fn rec(i: usize, left: usize, cur: &mut Vec<u8>, out: &mut Vec<Monomial>) {
        let n = cur.len();
        if i == n - 1 {
            cur[i] = left as u8;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e as u8;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if n == 0 {
        if d == 0 {
            out.push(vec![]);
        }
        return out;
    }
    rec(0, d, &mut cur, &mut out);
    out
}
