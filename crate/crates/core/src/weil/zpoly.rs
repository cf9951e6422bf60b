//! Dense integer polynomials (`Vec<BigInt>`, lowest degree first).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type ZPoly = Vec<BigInt>;

pub fn trim(f: &mut ZPoly) {
    while f.last().is_some_and(|c| c.is_zero()) {
        f.pop();
    }
}

pub fn trimmed(mut f: ZPoly) -> ZPoly {
    trim(&mut f);
    f
}

pub fn degree(f: &[BigInt]) -> Option<usize> {
    f.iter().rposition(|c| !c.is_zero())
}

pub fn from_i64(c: &[i64]) -> ZPoly {
    trimmed(c.iter().map(|&x| BigInt::from(x)).collect())
}

pub fn add(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    trimmed((0..n).map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default()).collect())
}

pub fn sub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    trimmed((0..n).map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default()).collect())
}

pub fn mul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trimmed(out)
}

pub fn pow(a: &[BigInt], e: usize) -> ZPoly {
    let mut acc = vec![BigInt::one()];
    for _ in 0..e {
        acc = mul(&acc, a);
    }
    acc
}

pub fn scale(a: &[BigInt], c: &BigInt) -> ZPoly {
    trimmed(a.iter().map(|x| x * c).collect())
}

pub fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Primitive part with positive leading coefficient.
pub fn primitive(a: &[BigInt]) -> ZPoly {
    let mut f = a.to_vec();
    trim(&mut f);
    if f.is_empty() {
        return f;
    }
    let mut c = content(&f);
    if f.last().unwrap().is_negative() {
        c = -c;
    }
    f.iter().map(|x| x / &c).collect()
}

pub fn derivative(a: &[BigInt]) -> ZPoly {
    trimmed(a.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
}

pub fn eval(a: &[BigInt], x: &BigInt) -> BigInt {
    a.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Exact quotient `a / b`; `None` if `b` does not divide `a` in `Z[T]`.
pub fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    let db = degree(b)?;
    let mut r = a.to_vec();
    trim(&mut r);
    if r.is_empty() {
        return Some(vec![]);
    }
    if r.len() <= db {
        return None;
    }
    let lb = &b[db];
    let mut quo = vec![BigInt::zero(); r.len() - db];
    while r.len() > db {
        let top = r.len() - 1;
        let (c, rem) = r[top].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        let shift = top - db;
        for j in 0..=db {
            r[shift + j] -= &c * &b[j];
        }
        quo[shift] = c;
        r.pop();
        trim(&mut r);
    }
    r.is_empty().then(|| trimmed(quo))
}

/// Pseudo-remainder `|lc(b)|^{deg a - deg b + 1} a mod b` (sign-preserving multiplier).
pub fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let db = degree(b).expect("pseudo-division by zero");
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() <= db {
        return r;
    }
    let lb = b[db].abs();
    let sign_lb = if b[db].is_negative() { -BigInt::one() } else { BigInt::one() };
    while r.len() > db {
        let top = r.len() - 1;
        let c = &r[top] * &sign_lb;
        let shift = top - db;
        for x in r.iter_mut() {
            *x *= &lb;
        }
        for j in 0..=db {
            r[shift + j] -= &c * &b[j];
        }
        r.pop();
        trim(&mut r);
    }
    // the loop may have used fewer multiplications than deg a - deg b + 1; that only
    // changes r by a positive factor, which is all callers rely on
    r
}

/// Primitive gcd over `Z[T]` with positive leading coefficient.
pub fn gcd(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let mut a = primitive(a);
    let mut b = primitive(b);
    if a.is_empty() {
        return b;
    }
    if b.is_empty() {
        return a;
    }
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = pseudo_rem(&a, &b);
        a = b;
        b = primitive(&r);
    }
    primitive(&a)
}

/// Squarefree decomposition by repeated gcds: returns `(a_i, i)` with `f = c * prod a_i^i`,
/// each `a_i` primitive with positive leading coefficient and nonconstant.
pub fn squarefree_decomposition(f: &[BigInt]) -> Vec<(ZPoly, usize)> {
    let f = primitive(f);
    let mut out = Vec::new();
    if degree(&f).unwrap_or(0) == 0 {
        return out;
    }
    let fp = derivative(&f);
    let mut a = gcd(&f, &fp);
    let mut b = div_exact(&f, &a).expect("gcd divides");
    let mut i = 1;
    while degree(&b).unwrap_or(0) > 0 {
        let y = gcd(&a, &b);
        let z = div_exact(&b, &y).expect("gcd divides");
        if degree(&z).unwrap_or(0) > 0 {
            out.push((primitive(&z), i));
        }
        b = y.clone();
        a = div_exact(&a, &y).expect("gcd divides");
        i += 1;
    }
    out
}

/// Squarefree part (primitive).
pub fn squarefree_part(f: &[BigInt]) -> ZPoly {
    squarefree_decomposition(f).iter().fold(vec![BigInt::one()], |acc, (a, _)| mul(&acc, a))
}

/// `T^d f(1/T)` for `d = deg f`.
pub fn reverse(f: &[BigInt]) -> ZPoly {
    let mut g = f.to_vec();
    trim(&mut g);
    g.reverse();
    trimmed(g)
}

/// `f(c T)`.
pub fn scale_var(f: &[BigInt], c: &BigInt) -> ZPoly {
    let mut pw = BigInt::one();
    let mut out = Vec::with_capacity(f.len());
    for x in f {
        out.push(x * &pw);
        pw *= c;
    }
    trimmed(out)
}

/// Human-readable rendering in the variable `var`.
pub fn format(f: &[BigInt], var: &str) -> String {
    let mut s = String::new();
    for (i, c) in f.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let abs = c.abs();
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        if i == 0 || !abs.is_one() {
            s.push_str(&abs.to_string());
        }
        s.push_str(&mono);
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squarefree() {
        // (T-1)^2 (T+2)^3 (T^2+1)
        let f = mul(&mul(&pow(&from_i64(&[-1, 1]), 2), &pow(&from_i64(&[2, 1]), 3)), &from_i64(&[1, 0, 1]));
        let d = squarefree_decomposition(&f);
        assert_eq!(d, vec![(from_i64(&[1, 0, 1]), 1), (from_i64(&[-1, 1]), 2), (from_i64(&[2, 1]), 3)]);
        assert_eq!(format(&from_i64(&[1, -3, 0, 2]), "T"), "1 - 3T + 2T^3");
    }

    #[test]
    fn exact_division() {
        let a = mul(&from_i64(&[1, 2, 3]), &from_i64(&[-5, 7]));
        assert_eq!(div_exact(&a, &from_i64(&[-5, 7])), Some(from_i64(&[1, 2, 3])));
        assert_eq!(div_exact(&a, &from_i64(&[1, 1])), None);
    }
}
