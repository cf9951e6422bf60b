//! Point counting: full scan and last-coordinate elimination.

use super::{decode_normalized, par_ranges, proj_count, Compiled, CubicForm, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::gf::{FieldElem, SmallRootFinder};
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountMethod {
    /// Evaluate `F` at every point of `P^{n+1}(F_{q^r})`.
    FullScan,
    /// Fix all but the last coordinate and count roots of the cubic in the last one.
    Fibered,
}

/// `N_r(X) = #X(F_{q^r})` by the fibered method with the default budget.
pub fn count_points(x: &CubicForm, r: u32) -> Result<u64> {
    count_points_with(x, r, CountMethod::Fibered, DEFAULT_BUDGET)
}

pub fn count_points_with(x: &CubicForm, r: u32, method: CountMethod, budget: u64) -> Result<u64> {
    if r == 0 {
        return Err(Error::Precondition("extension degree must be positive".into()));
    }
    let big_q = (x.field().q() as u64).checked_pow(r).ok_or_else(|| Error::Budget("field too large".into()))?;
    let m = x.nvars();
    let work = match method {
        CountMethod::FullScan => proj_count(big_q, m),
        CountMethod::Fibered => proj_count(big_q, m - 1),
    };
    if work > budget {
        return Err(Error::Budget(format!("{work} evaluations needed, budget {budget}")));
    }
    let xk = x.over_extension(r)?;
    let c = Compiled::new(&xk);
    Ok(match method {
        CountMethod::FullScan => full_scan(&c, big_q),
        CountMethod::Fibered => fibered(&c, big_q),
    })
}

fn full_scan(c: &Compiled, big_q: u64) -> u64 {
    let total = proj_count(big_q, c.m);
    par_ranges(total, 4096)
        .map(|range| {
            let mut buf = vec![FieldElem::ZERO; c.m];
            let mut s = 0;
            for idx in range {
                decode_normalized(&c.k, idx, &mut buf);
                s += u64::from(c.eval(&buf).is_zero());
            }
            s
        })
        .sum()
}

/// Splits `F = sum_{a+b<=3} C_ab(x') w^a z^b` with `w = x_{m-1}`, `z = x_m`, evaluated at a prefix.
fn fiber_coeffs(c: &Compiled, prefix: &[FieldElem], out: &mut [[FieldElem; 4]; 4]) {
    let k = &c.k;
    let (wi, zi) = (c.m - 2, c.m - 1);
    for row in out.iter_mut() {
        *row = [FieldElem::ZERO; 4];
    }
    for &(coef, idx) in &c.terms {
        let mut a = 0;
        let mut b = 0;
        let mut v = coef;
        for &i in &idx {
            let i = i as usize;
            if i == wi {
                a += 1;
            } else if i == zi {
                b += 1;
            } else {
                v = k.mul(v, prefix[i]);
            }
        }
        if !v.is_zero() {
            out[a][b] = k.add(out[a][b], v);
        }
    }
}

/// Points over one prefix `x'`: sum over `w` of the number of `z` with `F(x', w, z) = 0`.
fn fiber_sum(c: &Compiled, finder: &SmallRootFinder, cab: &[[FieldElem; 4]; 4], big_q: u64) -> u64 {
    let k = &c.k;
    let mut total = 0u64;
    let mut zc = [FieldElem::ZERO; 4];
    for wi in 0..big_q {
        let w = k.element(wi as u32);
        let w2 = k.mul(w, w);
        let w3 = k.mul(w2, w);
        let pw = [FieldElem::ONE, w, w2, w3];
        for (b, zb) in zc.iter_mut().enumerate() {
            let mut s = FieldElem::ZERO;
            for a in 0..=(3 - b) {
                if !cab[a][b].is_zero() {
                    s = k.add(s, k.mul(cab[a][b], pw[a]));
                }
            }
            *zb = s;
        }
        total += match finder.count(&zc) {
            Some(n) => n as u64,
            None => big_q,
        };
    }
    total
}

fn fibered(c: &Compiled, big_q: u64) -> u64 {
    let m = c.m;
    let np = m - 2;
    let prefixes = proj_count(big_q, np);
    let finder = SmallRootFinder::new(&c.k);
    let chunk = (4096 / big_q).max(1);
    let main: u64 = par_ranges(prefixes, chunk)
        .map(|range| {
            let mut buf = vec![FieldElem::ZERO; m];
            let mut cab = [[FieldElem::ZERO; 4]; 4];
            let mut s = 0;
            for idx in range {
                decode_normalized(&c.k, idx, &mut buf[..np]);
                fiber_coeffs(c, &buf, &mut cab);
                s += fiber_sum(c, &finder, &cab, big_q);
            }
            s
        })
        .sum();
    // prefix zero: points (0, ..., 0, 1, z) and (0, ..., 0, 1)
    let mut cab = [[FieldElem::ZERO; 4]; 4];
    let zero = vec![FieldElem::ZERO; m];
    fiber_coeffs(c, &zero, &mut cab);
    let mut zc = [FieldElem::ZERO; 4];
    for (b, zb) in zc.iter_mut().enumerate() {
        *zb = cab[3 - b][b];
    }
    let on_w = match finder.count(&zc) {
        Some(n) => n as u64,
        None => big_q,
    };
    let last = u64::from(cab[0][3].is_zero());
    main + on_w + last
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldCtx;

    fn both(x: &CubicForm, r: u32) -> u64 {
        let a = count_points_with(x, r, CountMethod::FullScan, u64::MAX).unwrap();
        let b = count_points_with(x, r, CountMethod::Fibered, u64::MAX).unwrap();
        assert_eq!(a, b);
        a
    }

    #[test]
    fn fermat_counts() {
        let k2 = FieldCtx::new(2, 1).unwrap();
        let x = CubicForm::fermat(&k2, 3).unwrap();
        assert_eq!(both(&x, 1), 15);
        assert_eq!(both(&x, 2), 165);
        // surface over F_4: (2^7 + 8 - 1)/3
        let s = CubicForm::fermat(&k2, 2).unwrap();
        assert_eq!(both(&s, 2), 45);
    }

    #[test]
    fn lineless_cubic_counts() {
        let k = FieldCtx::new(2, 1).unwrap();
        let x = CubicForm::parse_expr(
            "x1^3+x2^3+x3^3+x1^2*x2+x2^2*x3+x3^2*x1+x1*x2*x3+x1*x4^2+x1^2*x4+x2*x5^2+x2^2*x5+x4^2*x5",
            &k,
            None,
        )
        .unwrap();
        assert_eq!(both(&x, 1), 9);
        assert_eq!(both(&x, 2), 81);
        assert_eq!(both(&x, 3), 657);
        assert_eq!(count_points(&x, 4).unwrap(), 4225);
        assert_eq!(count_points(&x, 5).unwrap(), 34049);
    }

    #[test]
    fn budget_is_enforced() {
        let k = FieldCtx::new(2, 1).unwrap();
        let x = CubicForm::fermat(&k, 3).unwrap();
        assert!(matches!(count_points_with(&x, 3, CountMethod::FullScan, 100), Err(Error::Budget(_))));
    }
}
