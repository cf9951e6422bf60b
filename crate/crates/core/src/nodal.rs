//! Cubic threefolds with one singular point of type A1 or A2.
//!
//! Lines through the singular point `x` are parametrized by the genus-4 curve
//! `C = T_{X,x} ∩ X`, cut out in `P^3` by the quadratic and cubic parts `Q`, `E` of the local
//! equation, and `Card F(X)(F_q)` is a function of `n_1`, `n_2` and the type of `Q`.

use crate::error::{Error, Result};
use crate::geometry::{
    classify_singular_point, decode_normalized, par_ranges, proj_count, quadric_data, singular_points, CubicForm,
    MPoly, ProjPoint, SingType,
};
use crate::gf::{Embedding, FieldCtx, FieldElem, SmallRootFinder};
use crate::weil::factor::factor_over_z;
use crate::weil::sturm::all_roots_real_in;
use crate::weil::{complete_functional_equation, newton_from_power_sums, verify_weil, zpoly, WeilPolynomial};
use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QuadricType {
    /// Smooth, both rulings defined over `F_q`: `(q+1)^2` points.
    Split,
    /// Smooth, rulings exchanged by Frobenius: `q^2 + 1` points.
    NonSplit,
    /// Rank 3: `q^2 + q + 1` points.
    Cone,
}

impl QuadricType {
    pub fn as_str(self) -> &'static str {
        match self {
            QuadricType::Split => "split",
            QuadricType::NonSplit => "nonsplit",
            QuadricType::Cone => "cone",
        }
    }
}

#[derive(Clone, Debug)]
pub struct NodalCurveData {
    pub point: ProjPoint,
    pub kind: SingType,
    /// Change of coordinates moving the singular point to `e_5`; the new equation is `F(A y)`.
    pub transform: Vec<Vec<FieldElem>>,
    /// `F(A y) = y_5 Q(y_1..y_4) + E(y_1..y_4)`.
    pub quadric: MPoly,
    pub cubic: MPoly,
    pub quadric_type: QuadricType,
    /// `n_r = Card C(F_{q^r})`.
    pub n: BTreeMap<u32, u64>,
}

impl NodalCurveData {
    pub fn q(&self) -> u64 {
        self.quadric.field().q() as u64
    }

    /// Computes the missing `n_r` for `r <= rmax`.
    pub fn extend_counts(&mut self, rmax: u32) -> Result<()> {
        for r in 1..=rmax {
            if !self.n.contains_key(&r) {
                let c = count_curve_points(&self.quadric, &self.cubic, r)?;
                self.n.insert(r, c);
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let n: serde_json::Map<String, Value> = self.n.iter().map(|(r, c)| (r.to_string(), json!(c))).collect();
        json!({
            "point": self.point.to_json(),
            "type": self.kind.as_str(),
            "quadric": self.quadric.format(),
            "cubic": self.cubic.format(),
            "quadric_type": self.quadric_type.as_str(),
            "n": n,
        })
    }
}

/// Extracts `C` at the singular point `x` and counts `C(F_q)`, `C(F_{q^2})`.
pub fn node_curve(x: &CubicForm, point: &ProjPoint) -> Result<NodalCurveData> {
    if x.n() != 3 {
        return Err(Error::Precondition("expected a cubic threefold".into()));
    }
    // fails unless the point is singular
    quadric_data(x, point)?;
    let q = x.field().q() as u64;
    for k in 1..=2u32 {
        if q.pow(4 * k) > 1 << 26 {
            break;
        }
        for other in singular_points(x, k, u64::MAX)? {
            if k == 1 && other == *point {
                continue;
            }
            if k == 2 && is_image(&other, point) {
                continue;
            }
            return Err(Error::Precondition(format!("another singular point {}", other.format())));
        }
    }
    let kind = classify_singular_point(x, point)?;
    let k = x.field();
    let chart = point.coords().iter().position(|c| !c.is_zero()).unwrap();
    let mut cols: Vec<Vec<FieldElem>> = (0..5)
        .filter(|&i| i != chart)
        .map(|i| {
            let mut e = vec![FieldElem::ZERO; 5];
            e[i] = FieldElem::ONE;
            e
        })
        .collect();
    cols.push(point.coords().to_vec());
    let a: Vec<Vec<FieldElem>> = (0..5).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
    let g = x.transform(&a)?;
    let parts = g.poly().coefficients_in(4);
    if parts.keys().any(|&d| d >= 2 && !parts[&d].is_zero()) {
        return Err(Error::Precondition("the point is not singular".into()));
    }
    let zero = MPoly::zero(k, 4);
    let quadric = parts.get(&1).cloned().unwrap_or_else(|| zero.clone());
    let cubic = parts.get(&0).cloned().unwrap_or(zero);
    let quadric_type = quadric_type(&quadric)?;
    let mut data =
        NodalCurveData { point: point.clone(), kind, transform: a, quadric, cubic, quadric_type, n: BTreeMap::new() };
    data.extend_counts(2)?;
    Ok(data)
}

/// Whether the `F_{q^2}`-point `p` is the image of the `F_q`-point `base`.
fn is_image(p: &ProjPoint, base: &ProjPoint) -> bool {
    let big = p.field();
    let Ok(emb) = Embedding::new(base.field(), big) else {
        return false;
    };
    let img: Vec<FieldElem> = base.coords().iter().map(|&c| emb.apply(c)).collect();
    ProjPoint::new(big, img).is_ok_and(|i| i == *p)
}

/// Locates the unique `F_q`-rational singular point and extracts its curve.
pub fn node_curve_auto(x: &CubicForm) -> Result<NodalCurveData> {
    let pts = singular_points(x, 1, u64::MAX)?;
    match pts.as_slice() {
        [p] => node_curve(x, p),
        [] => Err(Error::Precondition("no rational singular point".into())),
        _ => Err(Error::Precondition(format!("{} rational singular points", pts.len()))),
    }
}

/// Univariate restriction `f(p, z)`, coefficients lowest first, for each prefix `p`.
struct Restriction {
    /// `(z-degree, ternary exponent, coefficient)`.
    terms: Vec<(usize, [u8; 3], FieldElem)>,
}

impl Restriction {
    fn new(f: &MPoly) -> Restriction {
        Restriction { terms: f.terms().iter().map(|(e, &c)| (e[3] as usize, [e[0], e[1], e[2]], c)).collect() }
    }

    fn eval(&self, k: &FieldCtx, p: &[FieldElem], out: &mut [FieldElem; 4]) {
        *out = [FieldElem::ZERO; 4];
        for &(d, e, c) in &self.terms {
            let mut t = c;
            for (i, &ei) in e.iter().enumerate() {
                for _ in 0..ei {
                    t = k.mul(t, p[i]);
                }
            }
            out[d] = k.add(out[d], t);
        }
    }
}

/// Common zeros of `Q` and `E` in `P^3(F_{q^r})`: for each `(x_1 : x_2 : x_3)` the common roots
/// in `x_4`, plus the point `e_4`.
pub fn count_curve_points(quadric: &MPoly, cubic: &MPoly, r: u32) -> Result<u64> {
    let base = quadric.field();
    let big = base.extension(r)?;
    let emb = Embedding::new(base, &big)?;
    let (qf, ef) = (quadric.embed(&emb)?, cubic.embed(&emb)?);
    let k = &big;
    let big_q = k.q() as u64;
    let (rq, re) = (Restriction::new(&qf), Restriction::new(&ef));
    let finder = SmallRootFinder::new(k);
    let prefixes = proj_count(big_q, 3);
    let main: u64 = par_ranges(prefixes, 1024)
        .map(|range| {
            let mut p = [FieldElem::ZERO; 3];
            let (mut cq, mut ce) = ([FieldElem::ZERO; 4], [FieldElem::ZERO; 4]);
            let mut roots = Vec::with_capacity(3);
            let mut s = 0;
            for idx in range {
                decode_normalized(k, idx, &mut p);
                rq.eval(k, &p, &mut cq);
                re.eval(k, &p, &mut ce);
                roots.clear();
                let (a, b) = if cq.iter().any(|c| !c.is_zero()) { (&cq, &ce) } else { (&ce, &cq) };
                if !finder.roots(a, &mut roots) {
                    // both vanish identically on this line
                    s += big_q;
                    continue;
                }
                s += roots.iter().filter(|&&z| crate::gf::poly::eval(k, b, z).is_zero()).count() as u64;
            }
            s
        })
        .sum();
    let e4 = [FieldElem::ZERO, FieldElem::ZERO, FieldElem::ZERO, FieldElem::ONE];
    Ok(main + u64::from(qf.eval(&e4).is_zero() && ef.eval(&e4).is_zero()))
}

/// Type of a quadric surface of rank at least 3, read off its number of `F_q`-points.
pub fn quadric_type(quadric: &MPoly) -> Result<QuadricType> {
    if quadric.nvars() != 4 || !quadric.is_homogeneous_of(2) {
        return Err(Error::Precondition("expected a quadratic form in 4 variables".into()));
    }
    let k = quadric.field();
    let (_, vertex) = crate::geometry::radical_and_vertex(k, quadric);
    if vertex.len() >= 2 {
        return Err(Error::Precondition("quadric of rank at most 2".into()));
    }
    let zero = MPoly::zero(k, 4);
    let n = count_curve_points(quadric, &zero, 1)?;
    let q = k.q() as u64;
    match n {
        _ if n == (q + 1) * (q + 1) => Ok(QuadricType::Split),
        _ if n == q * q + 1 => Ok(QuadricType::NonSplit),
        _ if n == q * q + q + 1 => Ok(QuadricType::Cone),
        _ => Err(Error::Verification(format!("{n} points on a quadric over F_{q}"))),
    }
}

/// `Card F(X)(F_q)` from `n_1`, `n_2` and the quadric type.
pub fn nodal_fano_count(data: &NodalCurveData) -> Result<u64> {
    if !matches!(data.kind, SingType::A1 | SingType::A2) {
        return Err(Error::Precondition(format!("singularity of type {}", data.kind.as_str())));
    }
    let get = |r| data.n.get(&r).copied().ok_or_else(|| Error::Precondition(format!("n_{r} missing")));
    let (n1, n2) = (get(1)? as i128, get(2)? as i128);
    let num = match data.quadric_type {
        QuadricType::Split => n1 * n1 - 2 * n1 + n2,
        QuadricType::NonSplit => n1 * n1 + 2 * n1 + n2,
        QuadricType::Cone => n1 * n1 + n2,
    };
    if num % 2 != 0 || num < 0 {
        return Err(Error::NotExact(format!("{num} / 2")));
    }
    Ok((num / 2) as u64)
}

/// `P_1(C, T)` of a genus-4 curve from `n_1..n_4`.
pub fn curve_l_polynomial(n: &[u64], q: u64) -> Result<WeilPolynomial> {
    if n.len() < 4 {
        return Err(Error::Precondition("need n_1, ..., n_4".into()));
    }
    let s: Vec<BigInt> =
        n.iter().take(4).enumerate().map(|(i, &c)| BigInt::from(q).pow(i as u32 + 1) + 1 - BigInt::from(c)).collect();
    let head = newton_from_power_sums(&s, 4)?;
    let p = complete_functional_equation(&head, q, 1)?;
    if !verify_weil(&p).passed {
        return Err(Error::Verification(format!("{p} is not a Weil polynomial")));
    }
    Ok(p)
}

/// The monic quartic `H` with `Q_1(C, T) = T^4 H(T + q/T)` (lowest degree first).
pub fn h_polynomial(l: &WeilPolynomial) -> Result<Vec<BigInt>> {
    if l.degree() != 8 {
        return Err(Error::Precondition("expected a degree-8 polynomial".into()));
    }
    let q = l.q().clone();
    let mut rest = l.monic_reversal();
    let mut h = vec![BigInt::zero(); 5];
    // T^4 H(T + q/T) = sum_i h_i T^{4-i} (T^2 + q)^i
    for i in (0..=4usize).rev() {
        let hi = rest.get(4 + i).cloned().unwrap_or_default();
        let mut term = vec![BigInt::zero(); 4 - i];
        term.push(BigInt::one());
        let t2q = vec![q.clone(), BigInt::zero(), BigInt::one()];
        term = zpoly::mul(&term, &zpoly::pow(&t2q, i));
        rest = zpoly::sub(&rest, &zpoly::scale(&term, &hi));
        h[i] = hi;
    }
    if rest.iter().any(|c| !c.is_zero()) {
        return Err(Error::NotExact("Q_1 is not of the form T^4 H(T + q/T)".into()));
    }
    Ok(h)
}

/// `H(T)` for the curve of a one-node cubic (computes `n_3`, `n_4` if needed).
pub fn node_h_polynomial(data: &mut NodalCurveData) -> Result<Vec<BigInt>> {
    data.extend_counts(4)?;
    let n: Vec<u64> = (1..=4).map(|r| data.n[&r]).collect();
    h_polynomial(&curve_l_polynomial(&n, data.q())?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HQuarticCandidate {
    pub q: u64,
    pub a: i64,
    pub b: i64,
}

impl HQuarticCandidate {
    /// `T^4 - (q+1) T^3 - 3q T^2 + a T + b`, lowest degree first.
    pub fn coeffs(&self) -> Vec<BigInt> {
        let q = self.q as i64;
        zpoly::from_i64(&[self.b, self.a, -3 * q, -(q + 1), 1])
    }

    pub fn format(&self) -> String {
        zpoly::format(&self.coeffs(), "T")
    }

    pub fn is_irreducible(&self) -> bool {
        factor_over_z(&self.coeffs()).is_irreducible()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "q": self.q,
            "a": self.a,
            "b": self.b,
            "polynomial": self.format(),
            "irreducible": self.is_irreducible(),
            "status": "candidate",
        })
    }
}

/// All `H = T^4 - (q+1) T^3 - 3q T^2 + a T + b` with four real roots in `[-2 sqrt q, 2 sqrt q]`,
/// `|a| <= 32 q^{3/2}`, `|b| <= 16 q^2`. An `a` is kept only if `H'` (which does not involve
/// `b`) has all its roots in the interval, as Rolle's theorem requires.
pub fn h_poly_search(q: u64) -> Result<Vec<HQuarticCandidate>> {
    if q < 2 {
        return Err(Error::Precondition("q must be at least 2".into()));
    }
    let amax = (1024 * q.pow(3)).sqrt() as i64;
    let bmax = 16 * (q * q) as i64;
    let (two, qb) = (BigInt::from(2), BigInt::from(q));
    let qi = q as i64;
    let found: Vec<Vec<HQuarticCandidate>> = (-amax..=amax)
        .into_par_iter()
        .map(|a| {
            let dh = zpoly::from_i64(&[a, -6 * qi, -3 * (qi + 1), 4]);
            if !all_roots_real_in(&dh, &two, &qb) {
                return Vec::new();
            }
            (-bmax..=bmax)
                .map(|b| HQuarticCandidate { q, a, b })
                .filter(|c| all_roots_real_in(&c.coeffs(), &two, &qb))
                .collect()
        })
        .collect();
    let mut out: Vec<HQuarticCandidate> = found.into_iter().flatten().collect();
    // the paper lists by decreasing a
    out.sort_by(|x, y| y.a.cmp(&x.a).then(x.b.cmp(&y.b)));
    Ok(out)
}
