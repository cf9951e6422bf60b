//! Conic-bundle counting on cubic threefolds (the Bombieri–Swinnerton-Dyer method).
//!
//! Projecting from a line `L ⊂ X` fibers the blow-up of `X` along `L` in conics over `P^2`.
//! The discriminant quintic `Γ_L = {det M_L = 0}` carries a double cover `Γ̃_L` whose points
//! over `x` are the two lines of the degenerate conic `C_x`, and
//! `M_r(X) = N_r(Γ̃_L) - N_r(Γ_L)`.

use crate::error::{Error, Result};
use crate::geometry::{CubicForm, MPoly, ProjLine, DEFAULT_BUDGET};
use crate::gf::{Embedding, FieldCtx, FieldElem, SmallRootFinder};
use crate::weil::{
    complete_functional_equation, powersums_to_poly, verify_weil, PowerSums, SignConvention, WeilPolynomial,
};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Value};

/// The forms `f, q1, q2, l1, l2, l3` in `x_1, x_2, x_3` with
/// `F = f + 2 q1 x4 + 2 q2 x5 + l1 x4^2 + 2 l2 x4 x5 + l3 x5^2`, the symmetric matrix `M_L`,
/// its determinant and its principal 2x2 minors.
#[derive(Clone, Debug)]
pub struct ConicBundleData {
    pub f: MPoly,
    pub q1: MPoly,
    pub q2: MPoly,
    pub l1: MPoly,
    pub l2: MPoly,
    pub l3: MPoly,
    pub matrix: [[MPoly; 3]; 3],
    pub gamma: MPoly,
    /// `δ_i` omits row and column `i`: degrees 2, 4, 4.
    pub deltas: [MPoly; 3],
}

impl ConicBundleData {
    pub fn from_forms(f: MPoly, q1: MPoly, q2: MPoly, l1: MPoly, l2: MPoly, l3: MPoly) -> Result<ConicBundleData> {
        let shapes = [(&f, 3), (&q1, 2), (&q2, 2), (&l1, 1), (&l2, 1), (&l3, 1)];
        for (p, d) in shapes {
            if p.nvars() != 3 || !p.is_homogeneous_of(d) {
                return Err(Error::Precondition(format!("expected a form of degree {d} in 3 variables")));
            }
        }
        let matrix = [
            [f.clone(), q1.clone(), q2.clone()],
            [q1.clone(), l1.clone(), l2.clone()],
            [q2.clone(), l2.clone(), l3.clone()],
        ];
        let minor = |a: &MPoly, b: &MPoly, c: &MPoly| a.mul(b).sub(&c.mul(c));
        let deltas = [minor(&l1, &l3, &l2), minor(&f, &l3, &q2), minor(&f, &l1, &q1)];
        let gamma = det3(&matrix);
        Ok(ConicBundleData { f, q1, q2, l1, l2, l3, matrix, gamma, deltas })
    }

    pub fn field(&self) -> &FieldCtx {
        self.f.field()
    }

    /// The cubic `f + 2 q1 x4 + 2 q2 x5 + l1 x4^2 + 2 l2 x4 x5 + l3 x5^2` in five variables.
    pub fn assemble(&self) -> Result<CubicForm> {
        let k = self.field().clone();
        let two = k.from_int(2);
        let lift = |p: &MPoly| {
            let mut out = MPoly::zero(&k, 5);
            for (e, &c) in p.terms() {
                let mut e5 = e.clone();
                e5.extend([0, 0]);
                out.add_term(e5, c);
            }
            out
        };
        let x4 = MPoly::var(&k, 5, 3);
        let x5 = MPoly::var(&k, 5, 4);
        let g = lift(&self.f)
            .add(&lift(&self.q1).mul(&x4).scale(two))
            .add(&lift(&self.q2).mul(&x5).scale(two))
            .add(&lift(&self.l1).mul(&x4).mul(&x4))
            .add(&lift(&self.l2).mul(&x4).mul(&x5).scale(two))
            .add(&lift(&self.l3).mul(&x5).mul(&x5));
        CubicForm::from_poly(3, g)
    }

    fn embed(&self, emb: &Embedding) -> Result<ConicBundleData> {
        ConicBundleData::from_forms(
            self.f.embed(emb)?,
            self.q1.embed(emb)?,
            self.q2.embed(emb)?,
            self.l1.embed(emb)?,
            self.l2.embed(emb)?,
            self.l3.embed(emb)?,
        )
    }

    pub fn to_json(&self) -> Value {
        json!({
            "field": self.field().spec_string(),
            "f": self.f.format(),
            "q1": self.q1.format(),
            "q2": self.q2.format(),
            "l1": self.l1.format(),
            "l2": self.l2.format(),
            "l3": self.l3.format(),
            "gamma": self.gamma.format(),
            "deltas": self.deltas.iter().map(|d| d.format()).collect::<Vec<_>>(),
        })
    }
}

fn det3(m: &[[MPoly; 3]; 3]) -> MPoly {
    let c0 = m[1][1].mul(&m[2][2]).sub(&m[1][2].mul(&m[2][1]));
    let c1 = m[1][0].mul(&m[2][2]).sub(&m[1][2].mul(&m[2][0]));
    let c2 = m[1][0].mul(&m[2][1]).sub(&m[1][1].mul(&m[2][0]));
    m[0][0].mul(&c0).sub(&m[0][1].mul(&c1)).add(&m[0][2].mul(&c2))
}

fn check_input(x: &CubicForm, l: &ProjLine) -> Result<()> {
    if x.n() != 3 {
        return Err(Error::Precondition("the conic-bundle method needs a cubic threefold".into()));
    }
    if x.field().p() == 2 {
        return Err(Error::Precondition(
            "the conic-bundle method needs odd q; use direct point counting in characteristic 2".into(),
        ));
    }
    if l.field() != x.field() {
        return Err(Error::IncompatibleFields("line and cubic are over different fields".into()));
    }
    if !l.lies_on(x) {
        return Err(Error::Precondition(format!("{} does not lie on the cubic", l.format())));
    }
    Ok(())
}

/// Moves `L` to `{x_1 = x_2 = x_3 = 0}`. The returned matrix `A` has columns: the standard
/// vectors off the pivot positions of `L`, then the two echelon rows of `L`; the new equation
/// is `F(A y)`.
pub fn normalize_line(x: &CubicForm, l: &ProjLine) -> Result<(Vec<Vec<FieldElem>>, ConicBundleData)> {
    check_input(x, l)?;
    let k = x.field();
    let [u, v] = l.rows();
    let pivots: Vec<usize> = [u, v].iter().map(|r| r.iter().position(|c| !c.is_zero()).unwrap()).collect();
    let mut cols: Vec<Vec<FieldElem>> = (0..5)
        .filter(|i| !pivots.contains(i))
        .map(|i| {
            let mut e = vec![FieldElem::ZERO; 5];
            e[i] = FieldElem::ONE;
            e
        })
        .collect();
    cols.push(u.clone());
    cols.push(v.clone());
    let a: Vec<Vec<FieldElem>> = (0..5).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
    let g = x.transform(&a)?;
    let mut parts: [[Option<MPoly>; 3]; 3] = Default::default();
    for (d4, p4) in g.poly().coefficients_in(3) {
        for (d5, p) in p4.coefficients_in(3) {
            if p.is_zero() {
                continue;
            }
            let (d4, d5) = (d4 as usize, d5 as usize);
            if d4 + d5 > 2 {
                return Err(Error::Precondition("line is not contained in the cubic".into()));
            }
            parts[d4][d5] = Some(p);
        }
    }
    let half = k.inv(k.from_int(2)).unwrap();
    let mut take = |i: usize, j: usize, halve: bool| {
        let p = parts[i][j].take().unwrap_or_else(|| MPoly::zero(k, 3));
        if halve {
            p.scale(half)
        } else {
            p
        }
    };
    let f = take(0, 0, false);
    let q1 = take(1, 0, true);
    let q2 = take(0, 1, true);
    let l1 = take(2, 0, false);
    let l2 = take(1, 1, true);
    let l3 = take(0, 2, false);
    Ok((a, ConicBundleData::from_forms(f, q1, q2, l1, l2, l3)?))
}

/// `det M_L`, the equation of `Γ_L` (up to the scalar coming from the coordinates).
pub fn discriminant_quintic(data: &ConicBundleData) -> MPoly {
    data.gamma.clone()
}

/// Outcome of the point classification over `F_{q^r}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MrTally {
    /// Smooth points of `Γ_L` with two rational preimages.
    pub plus: u64,
    /// Smooth points of `Γ_L` with no rational preimage.
    pub minus: u64,
    /// Points with `δ_1 = δ_2 = δ_3 = 0`.
    pub singular: u64,
}

impl MrTally {
    pub fn m(&self) -> i64 {
        self.plus as i64 - self.minus as i64
    }
    pub fn curve_points(&self) -> u64 {
        self.plus + self.minus + self.singular
    }
    fn merge(self, o: MrTally) -> MrTally {
        MrTally { plus: self.plus + o.plus, minus: self.minus + o.minus, singular: self.singular + o.singular }
    }
}

/// Ternary form with precomputed exponents, for fast evaluation.
struct Ternary {
    terms: Vec<(FieldElem, [u8; 3])>,
}

impl Ternary {
    fn new(p: &MPoly) -> Ternary {
        Ternary { terms: p.terms().iter().map(|(e, &c)| (c, [e[0], e[1], e[2]])).collect() }
    }

    fn eval(&self, k: &FieldCtx, pw: &[[FieldElem; 6]; 3]) -> FieldElem {
        let mut acc = FieldElem::ZERO;
        for &(c, [a, b, d]) in &self.terms {
            let t = k.mul(k.mul(c, pw[0][a as usize]), k.mul(pw[1][b as usize], pw[2][d as usize]));
            acc = k.add(acc, t);
        }
        acc
    }
}

fn powers(k: &FieldCtx, x: FieldElem) -> [FieldElem; 6] {
    let mut out = [FieldElem::ONE; 6];
    for i in 1..6 {
        out[i] = k.mul(out[i - 1], x);
    }
    out
}

struct Classifier {
    k: FieldCtx,
    deltas: [Ternary; 3],
}

impl Classifier {
    fn is_nonzero_square(&self, a: FieldElem) -> bool {
        // q is odd, so the squares are the even powers of the primitive element
        matches!(a.log(), Some(l) if l % 2 == 0)
    }

    fn classify(&self, pt: [FieldElem; 3], tally: &mut MrTally) {
        let k = &self.k;
        let pw = [powers(k, pt[0]), powers(k, pt[1]), powers(k, pt[2])];
        let d: Vec<FieldElem> = self.deltas.iter().map(|t| k.neg(t.eval(k, &pw))).collect();
        if d.iter().all(|x| x.is_zero()) {
            tally.singular += 1;
            return;
        }
        let split = if !d[0].is_zero() {
            self.is_nonzero_square(d[0])
        } else {
            self.is_nonzero_square(d[1]) || self.is_nonzero_square(d[2])
        };
        if split {
            tally.plus += 1;
        } else {
            tally.minus += 1;
        }
    }
}

/// Classifies the `F_{Q}`-points of `Γ_L`, `Q = q^r`, by scanning the lines `x_2 = y x_1`
/// of the pencil through `(0,0,1)` and finding the roots of the quintic on each.
pub fn classify_gamma_points(data: &ConicBundleData, r: u32, budget: u64) -> Result<MrTally> {
    if r == 0 {
        return Err(Error::Precondition("extension degree must be positive".into()));
    }
    let base = data.field();
    let big_q = (base.q() as u64).checked_pow(r).ok_or_else(|| Error::Budget("field too large".into()))?;
    if big_q + 1 > budget {
        return Err(Error::Budget(format!("{} root finds, budget {budget}", big_q + 1)));
    }
    let big = base.extension(r)?;
    let data = data.embed(&Embedding::new(base, &big)?)?;
    let k = &big;
    // gamma(1, y, z) = sum_b (sum_a c[b][a] y^a) z^b
    let mut by_z = [[FieldElem::ZERO; 6]; 6];
    let mut line_inf = [FieldElem::ZERO; 6];
    for (e, &c) in data.gamma.terms() {
        by_z[e[2] as usize][e[1] as usize] = c;
        if e[0] == 0 {
            // gamma(0, 1, z)
            line_inf[e[2] as usize] = k.add(line_inf[e[2] as usize], c);
        }
    }
    let cls = Classifier { k: k.clone(), deltas: [0, 1, 2].map(|i| Ternary::new(&data.deltas[i])) };
    let finder = SmallRootFinder::new(k);
    let on_line =
        |x1: FieldElem, y: FieldElem, coeffs: &[FieldElem; 6], tally: &mut MrTally, roots: &mut Vec<FieldElem>| {
            roots.clear();
            if finder.roots(coeffs, roots) {
                for &z in roots.iter() {
                    cls.classify([x1, y, z], tally);
                }
            } else {
                for z in k.elements() {
                    cls.classify([x1, y, z], tally);
                }
            }
        };
    let chunk = (1 << 12) as u64;
    let affine = crate::geometry::par_ranges(big_q, chunk)
        .map(|range| {
            let mut tally = MrTally::default();
            let mut roots = Vec::with_capacity(5);
            let mut coeffs = [FieldElem::ZERO; 6];
            for idx in range {
                let y = k.element(idx as u32);
                let py = powers(k, y);
                for (b, cb) in coeffs.iter_mut().enumerate() {
                    let mut s = FieldElem::ZERO;
                    for (a, &c) in by_z[b].iter().enumerate() {
                        if !c.is_zero() {
                            s = k.add(s, k.mul(c, py[a]));
                        }
                    }
                    *cb = s;
                }
                on_line(FieldElem::ONE, y, &coeffs, &mut tally, &mut roots);
            }
            tally
        })
        .reduce(MrTally::default, MrTally::merge);
    let mut tally = affine;
    let mut roots = Vec::new();
    on_line(FieldElem::ZERO, FieldElem::ONE, &line_inf, &mut tally, &mut roots);
    if data.gamma.coeff(&[0, 0, 5]).is_zero() {
        cls.classify([FieldElem::ZERO, FieldElem::ZERO, FieldElem::ONE], &mut tally);
    }
    Ok(tally)
}

/// `M_r(X) = N_r(Γ̃_L) - N_r(Γ_L)` by classifying the smooth `F_{q^r}`-points of `Γ_L`.
pub fn compute_mr(x: &CubicForm, l: &ProjLine, r: u32) -> Result<i64> {
    let (_, data) = normalize_line(x, l)?;
    Ok(classify_gamma_points(&data, r, DEFAULT_BUDGET)?.m())
}

/// `P_1(F(X), T) = exp(sum M_r T^r / r)` from `M_1..M_5` and the functional equation.
pub fn p1_from_mr(m: &[i64], q: u64) -> Result<WeilPolynomial> {
    if m.len() < 5 {
        return Err(Error::Precondition("need M_1, ..., M_5".into()));
    }
    let ps = PowerSums::new(m.iter().map(|&v| BigInt::from(v)).collect(), SignConvention::Threefold, q)?;
    let head = powersums_to_poly(&ps, 5)?;
    let p = complete_functional_equation(&head, q, 1)?;
    let verdict = verify_weil(&p);
    if !verdict.passed {
        return Err(Error::Verification(format!("reconstructed P_1 fails the Weil checks: {:?}", verdict)));
    }
    Ok(p)
}

/// `M_1..M_5` and `P_1(F(X), T)` via the conic bundle.
pub fn p1_via_bsd(x: &CubicForm, l: &ProjLine) -> Result<(Vec<i64>, WeilPolynomial)> {
    let (_, data) = normalize_line(x, l)?;
    let m = (1..=5)
        .map(|r| classify_gamma_points(&data, r, DEFAULT_BUDGET).map(|t| t.m()))
        .collect::<Result<Vec<i64>>>()?;
    let p = p1_from_mr(&m, x.field().q() as u64)?;
    Ok((m, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{count_points, enumerate_lines};

    fn line(k: &FieldCtx, a: &[i64], b: &[i64]) -> ProjLine {
        let a: Vec<FieldElem> = a.iter().map(|&c| k.from_int(c)).collect();
        let b: Vec<FieldElem> = b.iter().map(|&c| k.from_int(c)).collect();
        ProjLine::span(k, &a, &b).unwrap()
    }

    fn direct_m(x: &CubicForm, r: u32) -> i64 {
        let big_q = (x.field().q() as i64).pow(r);
        let n = count_points(x, r).unwrap() as i64;
        let d = n - (1 + big_q + big_q * big_q + big_q.pow(3));
        assert_eq!(d % big_q, 0);
        d / big_q
    }

    fn same_up_to_scalar(a: &MPoly, b: &MPoly) -> bool {
        let k = a.field();
        let Some((e, &c)) = b.terms().iter().next() else {
            return a.is_zero();
        };
        let ca = a.coeff(e);
        if ca.is_zero() {
            return false;
        }
        let s = k.div(ca, c).unwrap();
        a.sub(&b.scale(s)).is_zero()
    }

    fn ternary(k: &FieldCtx, terms: &[(i64, [u8; 3])]) -> MPoly {
        let mut p = MPoly::zero(k, 3);
        for (c, e) in terms {
            p.add_term(e.to_vec(), k.from_int(*c));
        }
        p
    }

    #[test]
    fn normalization_reassembles() {
        let k = FieldCtx::new(5, 1).unwrap();
        let x = CubicForm::fermat(&k, 3).unwrap();
        let l = line(&k, &[1, -1, 0, 0, 0], &[0, 0, 1, -1, 0]);
        let (a, data) = normalize_line(&x, &l).unwrap();
        assert_eq!(data.assemble().unwrap(), x.transform(&a).unwrap());
        assert_eq!(data.gamma.degree(), Some(5));
        assert_eq!(data.deltas.iter().map(|d| d.degree()).collect::<Vec<_>>(), vec![Some(2), Some(4), Some(4)]);
    }

    #[test]
    fn fermat_and_klein_quintics() {
        for p in [5u64, 7, 13] {
            let k = FieldCtx::new(p, 1).unwrap();
            let x = CubicForm::fermat(&k, 3).unwrap();
            let (_, data) = normalize_line(&x, &line(&k, &[1, -1, 0, 0, 0], &[0, 0, 1, -1, 0])).unwrap();
            // coordinates (x2, x4, x5) on the plane x1 = x3 = 0
            let expected = ternary(&k, &[(1, [4, 1, 0]), (1, [1, 4, 0]), (4, [1, 1, 3])]);
            assert!(same_up_to_scalar(&discriminant_quintic(&data), &expected), "Fermat p = {p}");
            let x = CubicForm::klein(&k, 3).unwrap();
            let (_, data) = normalize_line(&x, &line(&k, &[1, 0, 0, 0, 0], &[0, 0, 1, 0, 0])).unwrap();
            let expected = ternary(&k, &[(1, [5, 0, 0]), (1, [0, 1, 4]), (-4, [1, 3, 1])]);
            assert!(same_up_to_scalar(&discriminant_quintic(&data), &expected), "Klein p = {p}");
        }
    }

    #[test]
    fn rejects_bad_input() {
        let k = FieldCtx::new(5, 1).unwrap();
        let x = CubicForm::fermat(&k, 3).unwrap();
        assert!(normalize_line(&x, &line(&k, &[1, 0, 0, 0, 0], &[0, 1, 0, 0, 0])).is_err());
        let k2 = FieldCtx::new(2, 1).unwrap();
        let x = CubicForm::fermat(&k2, 3).unwrap();
        let l = line(&k2, &[1, 1, 0, 0, 0], &[0, 0, 1, 1, 0]);
        assert!(matches!(normalize_line(&x, &l), Err(Error::Precondition(_))));
    }

    #[test]
    fn m1_matches_point_count() {
        for q in [3u64, 5, 7] {
            let k = FieldCtx::new(q, 1).unwrap();
            let mut cubics = vec![CubicForm::klein(&k, 3).unwrap()];
            if q != 3 {
                // Fermat is singular in characteristic 3
                cubics.push(CubicForm::fermat(&k, 3).unwrap());
            }
            for x in cubics {
                let lines = enumerate_lines(&x, 1).unwrap();
                for l in lines.iter().take(3) {
                    for r in 1..=2 {
                        assert_eq!(compute_mr(&x, l, r).unwrap(), direct_m(&x, r), "q = {q}, r = {r}, {l}");
                    }
                }
            }
        }
    }

    #[test]
    fn tally_covers_the_curve() {
        let k = FieldCtx::new(7, 1).unwrap();
        let x = CubicForm::klein(&k, 3).unwrap();
        let (_, data) = normalize_line(&x, &line(&k, &[1, 0, 0, 0, 0], &[0, 0, 1, 0, 0])).unwrap();
        let t = classify_gamma_points(&data, 1, u64::MAX).unwrap();
        let brute = k
            .elements()
            .flat_map(|a| k.elements().map(move |b| (a, b)))
            .filter(|&(a, b)| data.gamma.eval(&[FieldElem::ONE, a, b]).is_zero())
            .count() as u64
            + k.elements().filter(|&b| data.gamma.eval(&[FieldElem::ZERO, FieldElem::ONE, b]).is_zero()).count() as u64
            + u64::from(data.gamma.eval(&[FieldElem::ZERO, FieldElem::ZERO, FieldElem::ONE]).is_zero());
        assert_eq!(t.curve_points(), brute);
        // the node at (0,1,0)
        assert_eq!(t.singular, 1);
    }
}
