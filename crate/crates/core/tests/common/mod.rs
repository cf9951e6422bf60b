//! Oracles shared by the property suite and the acceptance run.
#![allow(dead_code)]

use cubiczeta::geometry::*;
use cubiczeta::gf::{prime_power, FieldCtx, FieldElem};
use cubiczeta::search::{candidate_rng, random_cubic, random_cubic_with_line};
use num_bigint::BigInt;
use std::collections::BTreeMap;

pub const FIELD_LIMIT: u64 = 1 << 16;

pub fn fixture(name: &str, field: Option<&FieldCtx>) -> CubicForm {
    let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    CubicForm::parse_text(&std::fs::read_to_string(path).unwrap(), field).unwrap()
}

pub fn field(q: u64) -> FieldCtx {
    let (p, r) = prime_power(q).unwrap();
    FieldCtx::new(p, r).unwrap()
}

pub fn prime_powers(limit: u64) -> Vec<u64> {
    (2..=limit).filter(|&q| prime_power(q).is_some()).collect()
}

pub fn ints(k: &FieldCtx, v: &[i64]) -> Vec<FieldElem> {
    v.iter().map(|&c| k.from_int(c)).collect()
}

pub fn line(k: &FieldCtx, a: &[i64], b: &[i64]) -> ProjLine {
    ProjLine::span(k, &ints(k, a), &ints(k, b)).unwrap()
}

/// Inverses, negatives, Frobenius and the order of the generator for every element; all
/// triples when `q <= 32`.
pub fn check_field(q: u64) -> Result<(), String> {
    let k = field(q);
    let elems: Vec<FieldElem> = k.elements().collect();
    if elems.len() as u64 != q || k.q() as u64 != q {
        return Err(format!("F_{q} has {} elements", elems.len()));
    }
    let (zero, one) = (k.zero(), k.one());
    if k.pow(k.generator(), q - 1) != one {
        return Err(format!("F_{q}: generator order"));
    }
    for &a in &elems {
        let inv_ok = a == zero || k.mul(a, k.inv(a).unwrap()) == one;
        if k.add(a, k.neg(a)) != zero || k.frobenius(a, k.r()) != a || !inv_ok {
            return Err(format!("F_{q}: element {}", k.format(a)));
        }
    }
    if q <= 32 {
        for &a in &elems {
            for &b in &elems {
                if k.add(a, b) != k.add(b, a) || k.mul(a, b) != k.mul(b, a) {
                    return Err(format!("F_{q}: commutativity"));
                }
                for &c in &elems {
                    let dist = k.mul(a, k.add(b, c)) == k.add(k.mul(a, b), k.mul(a, c));
                    let add = k.add(a, k.add(b, c)) == k.add(k.add(a, b), c);
                    let mul = k.mul(a, k.mul(b, c)) == k.mul(k.mul(a, b), c);
                    if !(dist && add && mul) {
                        return Err(format!("F_{q}: associativity or distributivity"));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Lines over `F_{q^r}` on a seeded random cubic, by Galkin-Shinder and by enumeration.
pub fn gs_versus_enumeration(n: usize, q: u64, index: u64, r: u32) -> Result<(), String> {
    let k = field(q);
    let x = random_cubic(n, &k, &mut candidate_rng(2024, index));
    let counts: BTreeMap<u32, BigInt> = (1..=2 * r).map(|i| (i, BigInt::from(count_points(&x, i).unwrap()))).collect();
    let sing: BTreeMap<u32, BigInt> =
        (1..=r).map(|i| (i, BigInt::from(singular_points(&x, i, DEFAULT_BUDGET).unwrap().len()))).collect();
    let gs = lines_via_gs(&counts, &sing, n, q, r).map_err(|e| e.to_string())?;
    let lines = enumerate_lines(&x, r).unwrap().len();
    if gs != BigInt::from(lines) {
        return Err(format!("n = {n}, q = {q}, index {index}, r = {r}: {gs} vs {lines}\n{x}"));
    }
    Ok(())
}

/// `M_r` from the point count of a threefold.
pub fn direct_m(x: &CubicForm, r: u32) -> i64 {
    let big_q = (x.field().q() as i64).pow(r);
    let n = count_points(x, r).unwrap() as i64;
    (n - (1 + big_q + big_q * big_q + big_q.pow(3))) / big_q
}

/// The first smooth threefold with a line at or after `start` in the seeded stream.
pub fn smooth_with_line(k: &FieldCtx, seed: u64, start: u64) -> (CubicForm, ProjLine) {
    (start..)
        .map(|i| random_cubic_with_line(k, &mut candidate_rng(seed, i)))
        .find(|(x, _)| is_smooth(x).unwrap())
        .unwrap()
}
