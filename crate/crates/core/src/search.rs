//! Seeded random cubics, the search for line-free cubics and line-count histograms.
//!
//! Randomness comes from `ChaCha8Rng`. Candidate `i` of a run draws from the generator seeded
//! with `seed` on stream `i`, so the output does not depend on the number of threads.

use crate::error::{Error, Result};
use crate::geometry::mpoly::monomials;
use crate::geometry::{
    enumerate_lines, enumerate_lines_via_points, is_smooth, rref, singular_points, CubicForm, ProjLine,
};
use crate::gf::{FieldCtx, FieldElem};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};
use std::collections::BTreeMap;

/// Candidates evaluated per parallel batch.
const BATCH: u64 = 1024;

/// Generator for candidate `index` of a run.
pub fn candidate_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn random_element(k: &FieldCtx, rng: &mut ChaCha8Rng) -> FieldElem {
    k.element(rng.gen_range(0..k.q()))
}

/// A cubic form in `n + 2` variables, uniform over nonzero coefficient vectors up to scalar
/// (the first nonzero coefficient is normalized to 1).
pub fn random_cubic(n: usize, k: &FieldCtx, rng: &mut ChaCha8Rng) -> CubicForm {
    random_cubic_on(n, k, rng, |_| true)
}

fn random_cubic_on(n: usize, k: &FieldCtx, rng: &mut ChaCha8Rng, allowed: impl Fn(&[u8]) -> bool) -> CubicForm {
    let mons: Vec<Vec<u8>> = monomials(n + 2, 3).into_iter().filter(|e| allowed(e)).collect();
    loop {
        let coeffs: Vec<FieldElem> = mons.iter().map(|_| random_element(k, rng)).collect();
        let Some(lead) = coeffs.iter().find(|c| !c.is_zero()) else {
            continue;
        };
        let s = k.inv(*lead).unwrap();
        let terms = mons.iter().cloned().zip(coeffs.iter().map(|&c| k.mul(c, s)));
        return CubicForm::new(k, n, terms).expect("cubic monomials");
    }
}

/// A uniformly random invertible `m x m` matrix.
pub fn random_invertible(k: &FieldCtx, m: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<FieldElem>> {
    loop {
        let a: Vec<Vec<FieldElem>> = (0..m).map(|_| (0..m).map(|_| random_element(k, rng)).collect()).collect();
        if crate::geometry::rank(k, a.clone()) == m {
            return a;
        }
    }
}

/// Inverse of an invertible square matrix.
pub fn invert(k: &FieldCtx, a: &[Vec<FieldElem>]) -> Result<Vec<Vec<FieldElem>>> {
    let m = a.len();
    let mut aug: Vec<Vec<FieldElem>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..m).map(|j| if i == j { FieldElem::ONE } else { FieldElem::ZERO }));
            r
        })
        .collect();
    let pivots = rref(k, &mut aug);
    if pivots.len() < m || pivots[m - 1] != m - 1 {
        return Err(Error::Precondition("matrix is singular".into()));
    }
    Ok(aug.into_iter().map(|r| r[m..].to_vec()).collect())
}

/// A random cubic threefold with a marked `F_q`-line: a random equation vanishing on
/// `x_1 = x_2 = x_3 = 0`, moved by a random element of `GL_5(F_q)`.
pub fn random_cubic_with_line(k: &FieldCtx, rng: &mut ChaCha8Rng) -> (CubicForm, ProjLine) {
    let g = random_cubic_on(3, k, rng, |e| e[3] + e[4] < 3);
    let b = random_invertible(k, 5, rng);
    // F(x) = G(Bx) vanishes on B^{-1} <e4, e5>
    let x = g.transform(&b).expect("invertible");
    let a = invert(k, &b).expect("invertible");
    let col = |j: usize| a.iter().map(|r| r[j]).collect::<Vec<_>>();
    let l = ProjLine::span(k, &col(3), &col(4)).expect("independent columns");
    (x, l)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchTarget {
    Lineless,
    Histogram,
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub n: usize,
    pub field: FieldCtx,
    /// Candidates to draw (line-free search) or samples to collect (histogram).
    pub budget: u64,
    pub seed: u64,
    pub smooth_only: bool,
    pub target: SearchTarget,
}

impl SearchConfig {
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "field": self.field.spec_string(),
            "budget": self.budget,
            "seed": self.seed,
            "smooth_only": self.smooth_only,
            "target": match self.target {
                SearchTarget::Lineless => "lineless",
                SearchTarget::Histogram => "histogram",
            },
            "rng": "ChaCha8, seed_from_u64(seed), stream = candidate index",
        })
    }
}

/// Staged smoothness test: rational and quadratic singular points first, then the exact
/// Macaulay computation.
pub fn is_smooth_staged(x: &CubicForm) -> Result<bool> {
    let q = x.field().q() as u64;
    let scan = |k: u32| q.pow(k * (x.nvars() as u32 - 1)) < 1 << 24;
    for k in 1..=2 {
        if scan(k) && !singular_points(x, k, u64::MAX)?.is_empty() {
            return Ok(false);
        }
    }
    is_smooth(x)
}

#[derive(Clone, Debug)]
pub struct LinelessHit {
    pub index: u64,
    pub cubic: CubicForm,
    pub smooth: bool,
}

impl LinelessHit {
    pub fn to_json(&self) -> Value {
        json!({"index": self.index, "smooth": self.smooth, "cubic": self.cubic.to_json()})
    }
}

fn evaluate_lineless(cfg: &SearchConfig, index: u64) -> Result<Option<LinelessHit>> {
    let mut rng = candidate_rng(cfg.seed, index);
    let x = random_cubic(cfg.n, &cfg.field, &mut rng);
    if !enumerate_lines(&x, 1)?.is_empty() {
        return Ok(None);
    }
    let smooth = is_smooth_staged(&x)?;
    if cfg.smooth_only && !smooth {
        return Ok(None);
    }
    Ok(Some(LinelessHit { index, cubic: x, smooth }))
}

/// Cubics with no `F_q`-line among `budget` seeded candidates, in candidate order. Each hit is
/// re-checked by enumerating lines through pairs of points.
pub fn find_lineless(cfg: &SearchConfig) -> Result<Vec<LinelessHit>> {
    let mut out = Vec::new();
    let mut start = 0;
    while start < cfg.budget {
        let end = (start + BATCH).min(cfg.budget);
        let batch: Vec<Result<Option<LinelessHit>>> =
            (start..end).into_par_iter().map(|i| evaluate_lineless(cfg, i)).collect();
        for h in batch {
            if let Some(h) = h? {
                if !enumerate_lines_via_points(&h.cubic, 1, 1 << 32)?.is_empty() {
                    return Err(Error::Verification(format!("candidate {} has a line", h.index)));
                }
                out.push(h);
            }
        }
        start = end;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct HistogramReport {
    pub counts: BTreeMap<usize, u64>,
    pub sample_size: u64,
    /// Candidates drawn (larger than the sample when only smooth cubics are kept).
    pub candidates: u64,
    pub mean: BigRational,
}

impl HistogramReport {
    pub fn from_counts(counts: BTreeMap<usize, u64>, candidates: u64) -> HistogramReport {
        let sample_size: u64 = counts.values().sum();
        let total: u64 = counts.iter().map(|(&l, &f)| l as u64 * f).sum();
        let mean = BigRational::new(BigInt::from(total), BigInt::from(sample_size.max(1)));
        HistogramReport { counts, sample_size, candidates, mean }
    }

    pub fn mean_f64(&self) -> f64 {
        self.mean.to_f64().unwrap_or(f64::NAN)
    }

    pub fn to_json(&self) -> Value {
        let counts: serde_json::Map<String, Value> =
            self.counts.iter().map(|(l, f)| (l.to_string(), json!(f))).collect();
        json!({
            "counts": counts,
            "sample_size": self.sample_size,
            "candidates": self.candidates,
            "mean": self.mean.to_string(),
            "mean_approx": self.mean_f64(),
        })
    }

    /// `lines,frequency` rows for plotting.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("lines,frequency\n");
        for (l, f) in &self.counts {
            s.push_str(&format!("{l},{f}\n"));
        }
        s
    }
}

/// Distribution of the number of `F_q`-lines over `budget` seeded random cubics (smooth ones
/// only if requested; candidates are then drawn until `budget` smooth ones are found).
pub fn histogram(cfg: &SearchConfig) -> Result<HistogramReport> {
    let mut counts = BTreeMap::new();
    let mut kept = 0;
    let mut candidates = 0;
    let mut next = 0u64;
    // rejection sampling gives up after this many candidates
    let cap = cfg.budget.saturating_mul(1000);
    while kept < cfg.budget {
        if next >= cap {
            return Err(Error::Budget(format!("{next} candidates drawn, {kept} smooth")));
        }
        let batch: Vec<Result<Option<usize>>> = (next..next + BATCH)
            .into_par_iter()
            .map(|i| {
                let mut rng = candidate_rng(cfg.seed, i);
                let x = random_cubic(cfg.n, &cfg.field, &mut rng);
                if cfg.smooth_only && !is_smooth_staged(&x)? {
                    return Ok(None);
                }
                Ok(Some(enumerate_lines(&x, 1)?.len()))
            })
            .collect();
        for (off, r) in batch.into_iter().enumerate() {
            if kept == cfg.budget {
                break;
            }
            candidates = next + off as u64 + 1;
            if let Some(l) = r? {
                *counts.entry(l).or_insert(0) += 1;
                kept += 1;
            }
        }
        next += BATCH;
    }
    Ok(HistogramReport::from_counts(counts, candidates))
}
