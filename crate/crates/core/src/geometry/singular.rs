//! Singular points and their A1/A2 classification.

use super::mpoly::MPoly;
use super::{decode_normalized, kernel, par_ranges, proj_count, Compiled, CubicForm, ProjPoint, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElem};
use rayon::prelude::*;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SingType {
    /// Tangent cone is a smooth quadric.
    A1,
    /// Tangent cone is a quadric cone with a single vertex not on the cubic term.
    A2,
    Other,
}

impl SingType {
    pub fn as_str(self) -> &'static str {
        match self {
            SingType::A1 => "A1",
            SingType::A2 => "A2",
            SingType::Other => "other",
        }
    }

    /// Length of the local Tjurina algebra where known (`A1` in any characteristic with an even
    /// number of local variables, `A2` away from characteristic 3).
    fn tjurina(self, local_vars: usize, p: u32) -> Option<u64> {
        match self {
            SingType::A1 if p != 2 || local_vars.is_multiple_of(2) => Some(1),
            SingType::A2 if p != 3 && p != 2 => Some(2),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SingularPoint {
    /// Extension degree `k` of the smallest field `F_{q^k}` containing the coordinates.
    pub degree: u32,
    pub point: ProjPoint,
    pub kind: SingType,
}

#[derive(Clone, Debug)]
pub struct SingularityReport {
    pub max_degree: u32,
    pub points: Vec<SingularPoint>,
    /// Length of the singular scheme when it is finite.
    pub scheme_length: Option<u64>,
    /// Whether the listed points (with their Galois conjugates) exhaust the singular scheme;
    /// `None` when a Tjurina number is unknown.
    pub complete: Option<bool>,
    /// Characteristic-2 tangent-cone classification was used.
    pub char2_convention: bool,
}

impl SingularityReport {
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let pts: Vec<Value> = self
            .points
            .iter()
            .map(|s| json!({"degree": s.degree, "point": s.point.to_json(), "type": s.kind.as_str()}))
            .collect();
        let mut v = json!({
            "max_degree": self.max_degree,
            "points": pts,
            "scheme_length": self.scheme_length,
            "complete": self.complete,
        });
        if self.char2_convention {
            v["note"] = json!("characteristic 2: A1/A2 decided by the tangent-cone criterion");
        }
        v
    }
}

/// All singular points of `X` over `F_{q^k}` (including those over subfields).
pub fn singular_points(x: &CubicForm, k: u32, budget: u64) -> Result<Vec<ProjPoint>> {
    let xk = x.over_extension(k)?;
    let big_q = xk.field().q() as u64;
    let m = xk.nvars();
    let total = proj_count(big_q, m);
    if total > budget {
        return Err(Error::Budget(format!("{total} points to scan")));
    }
    let c = Compiled::new(&xk);
    let kk = xk.field().clone();
    let found: Vec<Vec<Vec<FieldElem>>> = par_ranges(total, 4096)
        .map(|range| {
            let mut buf = vec![FieldElem::ZERO; m];
            let mut hits = Vec::new();
            for idx in range {
                decode_normalized(&kk, idx, &mut buf);
                if c.eval(&buf).is_zero() && (0..m).all(|l| c.partial(l, &buf).is_zero()) {
                    hits.push(buf.clone());
                }
            }
            hits
        })
        .collect();
    found.into_iter().flatten().map(|v| ProjPoint::new(&kk, v)).collect()
}

/// Singular points with minimal field `F_{q^k}`, `k <= max_degree`, classified, together with
/// the length of the singular scheme when the Macaulay computation is affordable.
pub fn singular_locus(x: &CubicForm, max_degree: u32) -> Result<SingularityReport> {
    let base_r = x.field().r();
    let mut points = Vec::new();
    for k in 1..=max_degree {
        for pt in singular_points(x, k, DEFAULT_BUDGET)? {
            let d = pt.field_degree();
            // degree over F_q of the field generated by the coordinates
            let deg = num_integer::lcm(d, base_r) / base_r;
            if deg != k {
                continue;
            }
            let xk = x.over_extension(k)?;
            let kind = classify_singular_point(&xk, &pt)?;
            points.push(SingularPoint { degree: k, point: pt, kind });
        }
    }
    let scheme_length = match super::singular_scheme_length(x) {
        Ok(l) => l,
        Err(Error::Budget(_)) => None,
        Err(e) => return Err(e),
    };
    let p = x.field().p();
    let local = x.nvars() - 1;
    let complete = scheme_length.and_then(|len| {
        let mut sum = 0;
        for s in &points {
            sum += s.kind.tjurina(local, p)? * s.degree as u64;
        }
        Some(sum == len)
    });
    Ok(SingularityReport { max_degree, points, scheme_length, complete, char2_convention: p == 2 })
}

/// Local data at a singular point: the quadratic and cubic parts of the affine equation in the
/// chart where the first nonzero coordinate is 1, the radical of the quadratic part and the
/// vertex of the tangent cone `{Q = 0}`.
#[derive(Clone, Debug)]
pub struct QuadricData {
    pub chart: usize,
    pub quadratic: MPoly,
    pub cubic: MPoly,
    pub radical: Vec<Vec<FieldElem>>,
    pub vertex: Vec<Vec<FieldElem>>,
}

impl QuadricData {
    pub fn vertex_dim(&self) -> usize {
        self.vertex.len()
    }
}

/// Quadric data at a singular point (the point and `X` must be over the same field).
pub fn quadric_data(x: &CubicForm, point: &ProjPoint) -> Result<QuadricData> {
    let k = x.field();
    if point.field() != k {
        return Err(Error::IncompatibleFields("point and cubic are over different fields".into()));
    }
    let chart = point.coords().iter().position(|c| !c.is_zero()).unwrap();
    let local = x.poly().translate(point.coords()).specialize(chart, FieldElem::ZERO);
    if !local.homogeneous_part(0).is_zero() || !local.homogeneous_part(1).is_zero() {
        return Err(Error::Precondition(format!("{} is not a singular point", point.format())));
    }
    let quadratic = local.homogeneous_part(2);
    let cubic = local.homogeneous_part(3);
    let (radical, vertex) = radical_and_vertex(k, &quadratic);
    Ok(QuadricData { chart, quadratic, cubic, radical, vertex })
}

/// Radical of the polar form of `Q`, and the subspace of the radical where `Q` vanishes.
pub fn radical_and_vertex(k: &FieldCtx, q: &MPoly) -> (Vec<Vec<FieldElem>>, Vec<Vec<FieldElem>>) {
    let n = q.nvars();
    let mut b = vec![vec![FieldElem::ZERO; n]; n];
    for (e, &c) in q.terms() {
        let idx: Vec<usize> = e.iter().enumerate().flat_map(|(i, &d)| std::iter::repeat_n(i, d as usize)).collect();
        let (i, j) = (idx[0], idx[1]);
        if i == j {
            b[i][i] = k.add(c, c);
        } else {
            b[i][j] = c;
            b[j][i] = c;
        }
    }
    let radical = kernel(k, b, n);
    if k.p() != 2 {
        return (radical.clone(), radical);
    }
    // on the radical Q is additive and Q(l w) = l^2 Q(w), so Q(sum l_i w_i) = (sum l_i sqrt(Q(w_i)))^2
    let vals: Vec<FieldElem> = radical.iter().map(|w| k.sqrt(q.eval(w)).unwrap()).collect();
    // kernel of lambda -> sum lambda_i vals_i on coordinates of the radical basis
    let coeffs = kernel(k, vec![vals], radical.len());
    let vertex = coeffs
        .iter()
        .map(|lam| {
            let mut w = vec![FieldElem::ZERO; n];
            for (l, r) in lam.iter().zip(&radical) {
                for (wi, &ri) in w.iter_mut().zip(r) {
                    *wi = k.add(*wi, k.mul(*l, ri));
                }
            }
            w
        })
        .collect();
    (radical, vertex)
}

/// A1 iff the tangent cone is a smooth quadric; A2 iff its vertex is a single point not on the
/// cubic term.
pub fn classify_singular_point(x: &CubicForm, point: &ProjPoint) -> Result<SingType> {
    let d = quadric_data(x, point)?;
    if d.quadratic.is_zero() {
        return Ok(SingType::Other);
    }
    Ok(match d.vertex_dim() {
        0 => SingType::A1,
        1 if !d.cubic.eval(&d.vertex[0]).is_zero() => SingType::A2,
        _ => SingType::Other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn klein_char_11_has_one_degenerate_point() {
        let k = FieldCtx::new(11, 1).unwrap();
        let x = CubicForm::klein(&k, 3).unwrap();
        let rep = singular_locus(&x, 1).unwrap();
        assert_eq!(rep.points.len(), 1);
        let expected = ProjPoint::from_ints(&k, &[1, 3, 9, 27, 81]).unwrap();
        assert_eq!(rep.points[0].point, expected);
        // corank 1 but the cubic term vanishes on the kernel: A_k with k >= 3
        assert_eq!(rep.points[0].kind, SingType::Other);
        assert_eq!(rep.scheme_length, Some(11));
        assert_eq!(rep.complete, None);
    }

    #[test]
    fn nodal_example_over_f2() {
        let k = FieldCtx::new(2, 1).unwrap();
        let x = CubicForm::parse_expr("x2^3+x2^2*x3+x3^3+x1*x2*x4+x3^2*x4+x4^3+x1^2*x5+x1*x3*x5+x2*x4*x5", &k, None)
            .unwrap();
        let rep = singular_locus(&x, 2).unwrap();
        assert_eq!(rep.points.len(), 1);
        // the equation as printed is singular at e5
        assert_eq!(rep.points[0].point, ProjPoint::from_ints(&k, &[0, 0, 0, 0, 1]).unwrap());
        assert_eq!(rep.points[0].kind, SingType::A1);
        assert_eq!(rep.scheme_length, Some(1));
        assert_eq!(rep.complete, Some(true));
    }

    #[test]
    fn fermat_is_smooth_in_report() {
        let k = FieldCtx::new(5, 1).unwrap();
        let rep = singular_locus(&CubicForm::fermat(&k, 3).unwrap(), 1).unwrap();
        assert!(rep.is_empty());
        assert_eq!(rep.scheme_length, Some(0));
    }

    #[test]
    fn ordinary_double_point_in_odd_characteristic() {
        // x1 x2 x5 + x3 x4 x5 + x1^3 + x2^3 + x3^3 + x4^3: node at e5
        let k = FieldCtx::new(7, 1).unwrap();
        let x = CubicForm::parse_expr("x1*x2*x5 + x3*x4*x5 + x1^3 + x2^3 + x3^3 + x4^3", &k, None).unwrap();
        let pt = ProjPoint::from_ints(&k, &[0, 0, 0, 0, 1]).unwrap();
        assert_eq!(classify_singular_point(&x, &pt).unwrap(), SingType::A1);
        // x1 x2 x5 + x3^2 x5 + x4^3 + x1^3 + x2^3: cone vertex along x4, cubic term x4^3
        let x = CubicForm::parse_expr("x1*x2*x5 + x3^2*x5 + x4^3 + x1^3 + x2^3", &k, None).unwrap();
        assert_eq!(classify_singular_point(&x, &pt).unwrap(), SingType::A2);
    }

    #[test]
    fn vertex_in_characteristic_two() {
        // (x1 + x2)(x1 + x3): a pair of planes meeting along a line
        let k = FieldCtx::new(2, 1).unwrap();
        let mut q = MPoly::zero(&k, 4);
        for e in [[2, 0, 0, 0], [1, 1, 0, 0], [1, 0, 1, 0], [0, 1, 1, 0]] {
            q.add_term(e.to_vec(), k.one());
        }
        let (radical, vertex) = radical_and_vertex(&k, &q);
        assert_eq!(radical.len(), 2);
        assert_eq!(vertex.len(), 2);
    }
}
