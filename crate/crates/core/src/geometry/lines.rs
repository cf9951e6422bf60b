//! Lines on a cubic: exhaustive enumeration and the Galkin-Shinder count.

use super::{decode_digits, Compiled, CubicForm, ProjLine, ProjPoint, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::gf::FieldElem;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use std::collections::{BTreeMap, HashSet};

/// All `F_{q^k}`-lines on `X`, with the default budget.
pub fn enumerate_lines(x: &CubicForm, k: u32) -> Result<Vec<ProjLine>> {
    enumerate_lines_with(x, k, DEFAULT_BUDGET)
}

struct Candidate {
    v: Vec<FieldElem>,
    grad: Vec<FieldElem>,
}

/// Iterates over reduced row-echelon bases `(u, v)` grouped by pivot columns `i < j`;
/// the line lies on `X` iff all four coefficients of `F(su + tv)` vanish, namely
/// `F(u)`, `<v, grad F(u)>`, `<u, grad F(v)>` and `F(v)`.
pub fn enumerate_lines_with(x: &CubicForm, k: u32, budget: u64) -> Result<Vec<ProjLine>> {
    let big_q = (x.field().q() as u64).checked_pow(k).ok_or_else(|| Error::Budget("field too large".into()))?;
    let m = x.nvars();
    // candidate u and v vectors over all pivot pairs
    let mut work: u64 = 0;
    for i in 0..m {
        for j in i + 1..m {
            let free_u = (m - 2 - i) as u32;
            let free_v = (m - 1 - j) as u32;
            work = work.saturating_add(big_q.saturating_pow(free_u)).saturating_add(big_q.saturating_pow(free_v));
        }
    }
    if work > budget {
        return Err(Error::Budget(format!("{work} candidate vectors, budget {budget}")));
    }
    let xk = x.over_extension(k)?;
    let c = Compiled::new(&xk);
    let kk = &c.k;
    // v-candidates depend only on the second pivot j
    let vlists: Vec<Vec<Candidate>> = (0..m)
        .map(|j| {
            let free = m - 1 - j;
            let count = big_q.pow(free as u32);
            (0..count)
                .into_par_iter()
                .filter_map(|idx| {
                    let mut v = vec![FieldElem::ZERO; m];
                    v[j] = FieldElem::ONE;
                    decode_digits(kk, idx, &mut v[j + 1..]);
                    if !c.eval(&v).is_zero() {
                        return None;
                    }
                    let mut grad = vec![FieldElem::ZERO; m];
                    c.gradient(&v, &mut grad);
                    Some(Candidate { v, grad })
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let vs = &vlists[j];
            if vs.is_empty() {
                continue;
            }
            // free coordinates of u: positions > i other than j
            let free_pos: Vec<usize> = (i + 1..m).filter(|&l| l != j).collect();
            let count = big_q.pow(free_pos.len() as u32);
            let found: Vec<ProjLine> = (0..count)
                .into_par_iter()
                .flat_map_iter(|idx| {
                    let mut u = vec![FieldElem::ZERO; m];
                    u[i] = FieldElem::ONE;
                    let mut digits = vec![FieldElem::ZERO; free_pos.len()];
                    decode_digits(kk, idx, &mut digits);
                    for (p, &d) in free_pos.iter().zip(&digits) {
                        u[*p] = d;
                    }
                    let mut hits = Vec::new();
                    if c.eval(&u).is_zero() {
                        let mut gu = vec![FieldElem::ZERO; m];
                        c.gradient(&u, &mut gu);
                        for cand in vs {
                            if dot(kk, &cand.v, &gu).is_zero() && dot(kk, &u, &cand.grad).is_zero() {
                                hits.push(ProjLine::from_rref(kk, u.clone(), cand.v.clone()));
                            }
                        }
                    }
                    hits.into_iter()
                })
                .collect();
            out.extend(found);
        }
    }
    Ok(out)
}

fn dot(k: &crate::gf::FieldCtx, a: &[FieldElem], b: &[FieldElem]) -> FieldElem {
    let mut s = FieldElem::ZERO;
    for (&x, &y) in a.iter().zip(b) {
        s = k.add(s, k.mul(x, y));
    }
    s
}

/// Independent enumeration through pairs of `F_{q^k}`-points of `X` (quadratic in the point
/// count, so only for small cases). Returned lines are sorted by their echelon matrices.
pub fn enumerate_lines_via_points(x: &CubicForm, k: u32, budget: u64) -> Result<Vec<ProjLine>> {
    let xk = x.over_extension(k)?;
    let big_q = xk.field().q() as u64;
    let m = xk.nvars();
    let total = super::proj_count(big_q, m);
    if total > budget {
        return Err(Error::Budget(format!("{total} points to scan")));
    }
    let c = Compiled::new(&xk);
    let kk = xk.field();
    // scan in reverse index order, unlike the echelon enumeration
    let mut pts = Vec::new();
    let mut buf = vec![FieldElem::ZERO; m];
    for idx in (0..total).rev() {
        super::decode_normalized(kk, idx, &mut buf);
        if c.eval(&buf).is_zero() {
            pts.push(buf.clone());
        }
    }
    let pairs = (pts.len() as u64).saturating_mul(pts.len() as u64) / 2;
    if pairs > budget {
        return Err(Error::Budget(format!("{pairs} point pairs")));
    }
    let mut seen = HashSet::new();
    for a in 0..pts.len() {
        for b in a + 1..pts.len() {
            let l = ProjLine::span(kk, &pts[a], &pts[b])?;
            if seen.contains(&l) {
                continue;
            }
            if l.lies_on(&xk) {
                seen.insert(l);
            }
        }
    }
    let mut out: Vec<ProjLine> = seen.into_iter().collect();
    out.sort_by_key(|l| l.rows().iter().flat_map(|r| r.iter().map(|&c| kk.sort_key(c))).collect::<Vec<_>>());
    Ok(out)
}

/// `N_r(F(X))` from point counts of `X` and of its singular locus:
/// `(N_r^2 - 2(1 + q^{nr}) N_r + N_{2r}) / (2 q^{2r}) + q^{(n-2) r} N_r(Sing X)`.
pub fn lines_via_gs(
    counts: &BTreeMap<u32, BigInt>,
    sing_counts: &BTreeMap<u32, BigInt>,
    n: usize,
    q: u64,
    r: u32,
) -> Result<BigInt> {
    let get = |map: &BTreeMap<u32, BigInt>, i: u32, what: &str| {
        map.get(&i).cloned().ok_or_else(|| Error::Precondition(format!("missing {what} for r = {i}")))
    };
    let nr = get(counts, r, "N_r(X)")?;
    let n2r = get(counts, 2 * r, "N_r(X)")?;
    let ns = get(sing_counts, r, "N_r(Sing X)")?;
    if n < 2 {
        return Err(Error::Precondition("need n >= 2".into()));
    }
    let qr = BigInt::from(q).pow(r);
    let num = &nr * &nr - BigInt::from(2) * (BigInt::one() + qr.pow(n as u32)) * &nr + n2r;
    let den = BigInt::from(2) * qr.pow(2);
    let (quot, rem) = num.div_rem(&den);
    if !rem.is_zero() {
        return Err(Error::NotExact(format!("{num} is not divisible by {den}")));
    }
    Ok(quot + qr.pow((n - 2) as u32) * ns)
}

/// The `Q + 1` points of a line.
pub fn points_on_line(l: &ProjLine) -> Vec<ProjPoint> {
    let k = l.field();
    let [u, v] = l.rows();
    let mut out = vec![ProjPoint::new(k, v.clone()).unwrap()];
    for t in k.elements() {
        let p: Vec<FieldElem> = u.iter().zip(v).map(|(&a, &b)| k.add(a, k.mul(t, b))).collect();
        out.push(ProjPoint::new(k, p).unwrap());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::count_points;
    use crate::gf::FieldCtx;

    fn klein(q: u64) -> CubicForm {
        let k = FieldCtx::new(q, 1).unwrap();
        CubicForm::klein(&k, 3).unwrap()
    }

    #[test]
    fn fermat_over_f2_has_15_lines() {
        let k = FieldCtx::new(2, 1).unwrap();
        let x = CubicForm::fermat(&k, 3).unwrap();
        let lines = enumerate_lines(&x, 1).unwrap();
        assert_eq!(lines.len(), 15);
        let alt = enumerate_lines_via_points(&x, 1, u64::MAX).unwrap();
        assert_eq!(alt.len(), 15);
        let set: HashSet<_> = lines.iter().cloned().collect();
        assert!(alt.iter().all(|l| set.contains(l)));
        // closed under swapping the first two coordinates
        for l in &lines {
            let [u, v] = l.rows();
            let mut u = u.clone();
            let mut v = v.clone();
            u.swap(0, 1);
            v.swap(0, 1);
            assert!(set.contains(&ProjLine::span(&k, &u, &v).unwrap()));
        }
    }

    #[test]
    fn klein_over_f2_has_5_lines() {
        let x = klein(2);
        let lines = enumerate_lines(&x, 1).unwrap();
        assert_eq!(lines.len(), 5);
        let k = x.field();
        let set: HashSet<_> = lines.iter().cloned().collect();
        for l in &lines {
            let [u, v] = l.rows();
            let mut u = u.clone();
            let mut v = v.clone();
            u.rotate_right(1);
            v.rotate_right(1);
            assert!(set.contains(&ProjLine::span(k, &u, &v).unwrap()));
        }
    }

    #[test]
    fn gs_matches_enumeration_on_fermat() {
        let k = FieldCtx::new(2, 1).unwrap();
        let x = CubicForm::fermat(&k, 3).unwrap();
        let counts: BTreeMap<u32, BigInt> = (1..=2).map(|r| (r, BigInt::from(count_points(&x, r).unwrap()))).collect();
        let sing: BTreeMap<u32, BigInt> = [(1, BigInt::zero())].into_iter().collect();
        assert_eq!(lines_via_gs(&counts, &sing, 3, 2, 1).unwrap(), BigInt::from(15));
        let mut bad = counts.clone();
        bad.insert(2, BigInt::from(166));
        assert!(matches!(lines_via_gs(&bad, &sing, 3, 2, 1), Err(Error::NotExact(_))));
    }

    #[test]
    fn lines_meet_the_points_they_contain() {
        let x = klein(2);
        for l in enumerate_lines(&x, 1).unwrap() {
            for p in points_on_line(&l) {
                assert!(x.eval(p.coords()).is_zero());
            }
        }
    }
}
