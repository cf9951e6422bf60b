//! Macaulay-matrix ranks for the ideal `J = (F, dF/dx_1, ..., dF/dx_m)`.
//!
//! `(S/J)_D = 0` for one `D` iff the singular locus is empty over the algebraic closure, and
//! by Lazard's bound it suffices to look at `D = m + 1` (partials only, `p != 3`, where Euler's
//! identity puts `F` in the ideal of partials) or `D = m + 2` (`F` and partials, `p = 3`).
//! Past the same degree the Hilbert function of a zero-dimensional `S/J` is constant and
//! equal to the length of the singular scheme.

use super::mpoly::{monomials, MPoly};
use super::CubicForm;
use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElem};
use std::collections::HashMap;

/// Entry budget for a single Macaulay matrix.
const MATRIX_BUDGET: u64 = 1 << 26;

fn generators(x: &CubicForm) -> (Vec<MPoly>, usize) {
    let m = x.nvars();
    let mut gens: Vec<MPoly> = x.partials().into_iter().filter(|p| !p.is_zero()).collect();
    if x.field().p() == 3 {
        gens.insert(0, x.poly().clone());
        (gens, m + 2)
    } else {
        (gens, m + 1)
    }
}

/// Sparse rows `mu * g` of the degree-`d` Macaulay matrix.
fn macaulay_rows(gens: &[MPoly], m: usize, d: usize) -> (Vec<Vec<(usize, FieldElem)>>, usize) {
    let cols = monomials(m, d);
    let index: HashMap<&[u8], usize> = cols.iter().enumerate().map(|(i, e)| (e.as_slice(), i)).collect();
    let mut rows = Vec::new();
    for g in gens {
        let dg = g.degree().unwrap_or(0);
        if dg > d {
            continue;
        }
        for mu in monomials(m, d - dg) {
            let row: Vec<(usize, FieldElem)> = g
                .terms()
                .iter()
                .map(|(e, &c)| {
                    let key: Vec<u8> = e.iter().zip(&mu).map(|(a, b)| a + b).collect();
                    (index[key.as_slice()], c)
                })
                .collect();
            rows.push(row);
        }
    }
    (rows, cols.len())
}

/// `dim_k (S/J)_D`.
pub fn hilbert_function(x: &CubicForm, d: usize) -> Result<u64> {
    let (gens, _) = generators(x);
    let m = x.nvars();
    let (rows, ncols) = macaulay_rows(&gens, m, d);
    let size = rows.len() as u64 * ncols as u64;
    if size > MATRIX_BUDGET {
        return Err(Error::Budget(format!("Macaulay matrix {} x {}", rows.len(), ncols)));
    }
    Ok((ncols - sparse_rank(x.field(), &rows, ncols)) as u64)
}

/// Geometric smoothness, decided exactly.
pub fn is_smooth(x: &CubicForm) -> Result<bool> {
    let (_, d0) = generators(x);
    Ok(hilbert_function(x, d0)? == 0)
}

/// Length of the singular scheme `V(J)` when it is zero-dimensional, `None` otherwise
/// (detected by the Hilbert function still moving past the regularity bound).
pub fn singular_scheme_length(x: &CubicForm) -> Result<Option<u64>> {
    let (_, d0) = generators(x);
    let a = hilbert_function(x, d0)?;
    if a == 0 {
        return Ok(Some(0));
    }
    let b = hilbert_function(x, d0 + 1)?;
    Ok((a == b).then_some(a))
}

/// Rank of a sparse matrix over `k`, dispatching to a packed kernel where possible.
pub(crate) fn sparse_rank(k: &FieldCtx, rows: &[Vec<(usize, FieldElem)>], ncols: usize) -> usize {
    if k.r() == 1 && k.p() == 2 {
        rank_f2(rows, ncols)
    } else if k.r() == 1 && k.p() < 256 {
        rank_fp(k, rows, ncols)
    } else {
        rank_generic(k, rows, ncols)
    }
}

fn rank_f2(rows: &[Vec<(usize, FieldElem)>], ncols: usize) -> usize {
    let words = ncols.div_ceil(64);
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| {
            let mut v = vec![0u64; words];
            for &(c, x) in r {
                if !x.is_zero() {
                    v[c / 64] ^= 1 << (c % 64);
                }
            }
            v
        })
        .collect();
    let mut rank = 0;
    for col in 0..ncols {
        let (w, bit) = (col / 64, 1u64 << (col % 64));
        let Some(p) = (rank..m.len()).find(|&i| m[i][w] & bit != 0) else {
            continue;
        };
        m.swap(rank, p);
        let (head, tail) = m.split_at_mut(rank + 1);
        let pivot = &head[rank];
        for row in tail.iter_mut() {
            if row[w] & bit != 0 {
                for (a, b) in row[w..].iter_mut().zip(&pivot[w..]) {
                    *a ^= b;
                }
            }
        }
        rank += 1;
        if rank == ncols {
            break;
        }
    }
    rank
}

fn rank_fp(k: &FieldCtx, rows: &[Vec<(usize, FieldElem)>], ncols: usize) -> usize {
    let p = k.p() as u16;
    let mut m: Vec<Vec<u8>> = rows
        .iter()
        .map(|r| {
            let mut v = vec![0u8; ncols];
            for &(c, x) in r {
                v[c] = k.to_coeffs(x)[0] as u8;
            }
            v
        })
        .collect();
    let inv: Vec<u16> = (0..p).map(|a| (1..p).find(|&b| a * b % p == 1).unwrap_or(0)).collect();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pi) = (rank..m.len()).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(rank, pi);
        let s = inv[m[rank][col] as usize];
        for a in m[rank][col..].iter_mut() {
            *a = ((*a as u16 * s) % p) as u8;
        }
        let (head, tail) = m.split_at_mut(rank + 1);
        let pivot = &head[rank][col..];
        for row in tail.iter_mut() {
            let f = row[col] as u16;
            if f == 0 {
                continue;
            }
            let negf = p - f;
            for (a, &b) in row[col..].iter_mut().zip(pivot) {
                *a = ((*a as u16 + negf * b as u16) % p) as u8;
            }
        }
        rank += 1;
        if rank == ncols {
            break;
        }
    }
    rank
}

fn rank_generic(k: &FieldCtx, rows: &[Vec<(usize, FieldElem)>], ncols: usize) -> usize {
    let mut m: Vec<Vec<FieldElem>> = rows
        .iter()
        .map(|r| {
            let mut v = vec![FieldElem::ZERO; ncols];
            for &(c, x) in r {
                v[c] = x;
            }
            v
        })
        .collect();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pi) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pi);
        let s = k.inv(m[rank][col]).unwrap();
        for a in m[rank][col..].iter_mut() {
            *a = k.mul(*a, s);
        }
        let (head, tail) = m.split_at_mut(rank + 1);
        let pivot = &head[rank][col..];
        for row in tail.iter_mut() {
            let f = row[col];
            if f.is_zero() {
                continue;
            }
            let negf = k.neg(f);
            for (a, &b) in row[col..].iter_mut().zip(pivot) {
                if !b.is_zero() {
                    *a = k.add(*a, k.mul(negf, b));
                }
            }
        }
        rank += 1;
        if rank == ncols {
            break;
        }
    }
    rank
}
