//! Zeta functions of cubic threefolds and fourfolds and of their varieties of lines,
//! together with the line-existence bounds, congruences and the average line count.

use crate::bsd::{p1_from_mr, p1_via_bsd};
use crate::error::{Error, Result};
use crate::geometry::{count_points, enumerate_lines, singular_scheme_length, CubicForm};
use crate::gf::prime_power;
use crate::json;
use crate::weil::{
    artin_tate, classify_abelian, extend_power_sums, pair_product_poly, picard_number, symmetric_square_poly,
    verify_weil, zpoly, AbelianClassification, PicardData, PowerSums, SignConvention, WeilPolynomial,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};
use std::collections::BTreeMap;

/// `P_i` of a zeta function; it sits in the numerator for odd `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaFactor {
    pub index: usize,
    pub poly: WeilPolynomial,
}

impl ZetaFactor {
    pub fn exponent(&self) -> i8 {
        if self.index % 2 == 1 {
            1
        } else {
            -1
        }
    }
}

/// A factored zeta function with the invariants that can be read off it.
#[derive(Clone, Debug, PartialEq)]
pub struct ZetaDescription {
    /// `"X"` or `"F(X)"`.
    pub variety: String,
    /// Dimension of the cubic.
    pub n: usize,
    pub q: u64,
    pub factors: Vec<ZetaFactor>,
    pub picard: Option<PicardData>,
    pub classification: Option<AbelianClassification>,
    pub d_q: Option<BigRational>,
    /// Multiplicity of `q` among the eigenvalues on `H^2(F(X))` of a fourfold; this is
    /// the Picard rank only if the Tate conjecture holds for `F(X)`.
    pub tate_rank: Option<usize>,
}

impl ZetaDescription {
    fn new(variety: &str, n: usize, q: u64, factors: Vec<ZetaFactor>) -> ZetaDescription {
        ZetaDescription {
            variety: variety.into(),
            n,
            q,
            factors,
            picard: None,
            classification: None,
            d_q: None,
            tate_rank: None,
        }
    }

    pub fn factor(&self, index: usize) -> Option<&WeilPolynomial> {
        self.factors.iter().find(|f| f.index == index).map(|f| &f.poly)
    }

    /// `N_1, ..., N_rmax` from `N_r = sum_i (-1)^i sum_j w_ij^r`.
    pub fn predicted_counts(&self, rmax: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); rmax];
        for f in &self.factors {
            let s = extend_power_sums(&f.poly, rmax);
            for (o, v) in out.iter_mut().zip(s) {
                if f.index % 2 == 0 {
                    *o += v;
                } else {
                    *o -= v;
                }
            }
        }
        out
    }

    /// Every factor passes [`verify_weil`].
    pub fn verify(&self) -> Result<()> {
        for f in &self.factors {
            if !verify_weil(&f.poly).passed {
                return Err(Error::Verification(format!("P_{} = {} is not a Weil polynomial", f.index, f.poly)));
            }
        }
        Ok(())
    }

    /// `Z(T)` as a quotient of products.
    pub fn display(&self) -> String {
        let side = |e: i8| {
            let parts: Vec<String> = self
                .factors
                .iter()
                .filter(|f| f.exponent() == e && f.poly.degree() > 0)
                .map(|f| format!("({})", f.poly))
                .collect();
            if parts.is_empty() {
                "1".to_string()
            } else {
                parts.join("")
            }
        };
        format!("Z({}, T) = {} / {}", self.variety, side(1), side(-1))
    }

    pub fn to_json(&self) -> Value {
        let factors: Vec<Value> = self
            .factors
            .iter()
            .map(|f| {
                json!({
                    "index": f.index,
                    "exponent": f.exponent(),
                    "degree": f.poly.degree(),
                    "poly": f.poly.to_json(),
                })
            })
            .collect();
        let counts: Vec<String> = self.predicted_counts(3).iter().map(|c| c.to_string()).collect();
        json!({
            "variety": self.variety,
            "n": self.n,
            "q": self.q,
            "factors": factors,
            "display": self.display(),
            "picard": self.picard.as_ref().map(|p| p.to_json()),
            "classification": self.classification.as_ref().map(|c| c.to_json()),
            "D_q": self.d_q.as_ref().map(json::rational),
            "tate_rank": self.tate_rank,
            "tate_rank_caveat": self.tate_rank.map(|_| "multiplicity of q; equals the Picard rank if the Tate conjecture holds"),
            "predicted_counts": counts,
        })
    }
}

fn linear(c: BigInt, weight: u32, q: u64) -> WeilPolynomial {
    WeilPolynomial::new(vec![BigInt::one(), -c], weight, q).expect("constant term 1")
}

/// `P(T / c)` for a polynomial whose `k`-th coefficient is divisible by `c^k`.
pub fn untwist(p: &WeilPolynomial, c: u64, weight_drop: u32) -> Result<WeilPolynomial> {
    let c = BigInt::from(c);
    let mut pw = BigInt::one();
    let mut out = Vec::with_capacity(p.coeffs().len());
    for a in p.coeffs() {
        let (quo, rem) = a.div_rem(&pw);
        if !rem.is_zero() {
            return Err(Error::NotExact(format!("{a} is not divisible by {pw}")));
        }
        out.push(quo);
        pw *= &c;
    }
    let w = p.weight().checked_sub(weight_drop).ok_or_else(|| Error::Precondition("weight below zero".into()))?;
    WeilPolynomial::new(out, w, p.q().clone())
}

/// `M_r = (N_r - sum_{i <= n} q^{ir}) / q^r` from `N_1, N_2, ...` of a cubic of dimension 3 or 4.
pub fn m_values(counts: &[BigInt], n: usize, q: u64) -> Result<PowerSums> {
    let convention = match n {
        3 => SignConvention::Threefold,
        4 => SignConvention::Fourfold,
        _ => return Err(Error::Precondition(format!("M_r is defined for n = 3, 4, not {n}"))),
    };
    let mut m = Vec::with_capacity(counts.len());
    for (i, nr) in counts.iter().enumerate() {
        let qr = BigInt::from(q).pow(i as u32 + 1);
        let base: BigInt = (0..=n as u32).map(|k| qr.pow(k)).sum();
        let (quo, rem) = (nr - base).div_rem(&qr);
        if !rem.is_zero() {
            return Err(Error::NotExact(format!("N_{} - ... is not divisible by q^{}", i + 1, i + 1)));
        }
        m.push(quo);
    }
    PowerSums::new(m, convention, q)
}

/// How to obtain `M_1, ..., M_5` of a threefold.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Via {
    /// Direct point counts over `F_{q^r}`, `r <= 5`.
    Count,
    /// Point counts on the discriminant quintic of an `F_q`-line.
    Bsd,
}

/// `M_1..M_5` and `P_1(F(X), T)` of a smooth cubic threefold.
pub fn threefold_p1(x: &CubicForm, via: Via) -> Result<(Vec<i64>, WeilPolynomial)> {
    if x.n() != 3 {
        return Err(Error::Precondition("expected a cubic threefold".into()));
    }
    let q = x.field().q() as u64;
    match via {
        Via::Count => {
            let counts = (1..=5).map(|r| count_points(x, r).map(BigInt::from)).collect::<Result<Vec<_>>>()?;
            let m = m_values(&counts, 3, q)?;
            let m: Vec<i64> = m.values.iter().map(|v| v.to_i64().expect("Weil bound")).collect();
            let p = p1_from_mr(&m, q)?;
            Ok((m, p))
        }
        Via::Bsd => {
            let lines = enumerate_lines(x, 1)?;
            let l = lines
                .first()
                .ok_or_else(|| Error::Precondition("no F_q-line to project from; count points instead".into()))?;
            p1_via_bsd(x, l)
        }
    }
}

/// `Z(X, T) = P_3(X, T) / ((1 - T)(1 - qT)(1 - q^2 T)(1 - q^3 T))` with `P_3(X, T) = P_1(qT)`.
pub fn zeta_threefold(p1: &WeilPolynomial) -> Result<ZetaDescription> {
    let q = check_p1(p1)?;
    let qb = BigInt::from(q);
    let mut factors: Vec<ZetaFactor> =
        (0..4u32).map(|i| ZetaFactor { index: 2 * i as usize, poly: linear(qb.pow(i), 2 * i, q) }).collect();
    factors.insert(2, ZetaFactor { index: 3, poly: p1.twist(&qb, 2) });
    Ok(ZetaDescription::new("X", 3, q, factors))
}

fn check_p1(p1: &WeilPolynomial) -> Result<u64> {
    if p1.degree() != 10 || p1.weight() != 1 {
        return Err(Error::Precondition("P_1(F(X)) has degree 10 and weight 1".into()));
    }
    if !verify_weil(p1).passed {
        return Err(Error::Verification(format!("{p1} is not a Weil polynomial")));
    }
    p1.q().to_u64().ok_or_else(|| Error::Precondition("q too large".into()))
}

/// The zeta function of the surface of lines of a smooth cubic threefold from `P_1(F(X), T)`.
pub fn zeta_fano_threefold(p1: &WeilPolynomial) -> Result<ZetaDescription> {
    let q = check_p1(p1)?;
    let qb = BigInt::from(q);
    let factors = vec![
        ZetaFactor { index: 0, poly: linear(BigInt::one(), 0, q) },
        ZetaFactor { index: 1, poly: p1.clone() },
        ZetaFactor { index: 2, poly: pair_product_poly(p1)? },
        ZetaFactor { index: 3, poly: p1.twist(&qb, 2) },
        ZetaFactor { index: 4, poly: linear(qb.pow(2), 4, q) },
    ];
    let mut z = ZetaDescription::new("F(X)", 3, q, factors);
    z.picard = Some(picard_number(p1)?);
    z.classification = Some(classify_abelian(p1)?);
    z.d_q = Some(artin_tate(p1)?.d_q);
    z.verify()?;
    Ok(z)
}

fn check_p40(p40: &WeilPolynomial) -> Result<u64> {
    if p40.degree() != 22 || p40.weight() != 2 {
        return Err(Error::Precondition("expected the 22 primitive eigenvalues w_j, weight 2".into()));
    }
    if !verify_weil(p40).passed {
        return Err(Error::Verification(format!("{p40} is not a Weil polynomial")));
    }
    p40.q().to_u64().ok_or_else(|| Error::Precondition("q too large".into()))
}

/// `Z(X, T)` of a smooth cubic fourfold from `prod_{j <= 22} (1 - w_j T)`, the primitive part
/// of `P_4(X, T / q)`.
pub fn zeta_fourfold(p40: &WeilPolynomial) -> Result<ZetaDescription> {
    let q = check_p40(p40)?;
    let qb = BigInt::from(q);
    let mut factors: Vec<ZetaFactor> = (0..5u32)
        .filter(|&i| i != 2)
        .map(|i| ZetaFactor { index: 2 * i as usize, poly: linear(qb.pow(i), 2 * i, q) })
        .collect();
    let p4 = p40.twist(&qb, 2).mul(&linear(qb.pow(2), 4, q));
    factors.insert(2, ZetaFactor { index: 4, poly: p4 });
    Ok(ZetaDescription::new("X", 4, q, factors))
}

/// The zeta function of the fourfold of lines: `P_2 = prod_{j <= 23} (1 - w_j T)` with
/// `w_23 = q`, `P_4 = prod_{j <= k} (1 - w_j w_k T)`, `P_6 = P_2(q^2 T)`, odd `P_i = 1`.
pub fn zeta_fano_fourfold(p40: &WeilPolynomial) -> Result<ZetaDescription> {
    let q = check_p40(p40)?;
    let qb = BigInt::from(q);
    let p2 = p40.mul(&linear(qb.clone(), 2, q));
    let p4 = symmetric_square_poly(&p2)?;
    let factors = vec![
        ZetaFactor { index: 0, poly: linear(BigInt::one(), 0, q) },
        ZetaFactor { index: 2, poly: p2.clone() },
        ZetaFactor { index: 4, poly: p4 },
        ZetaFactor { index: 6, poly: p2.twist(&qb.pow(2), 4) },
        ZetaFactor { index: 8, poly: linear(qb.pow(4), 8, q) },
    ];
    let mut z = ZetaDescription::new("F(X)", 4, q, factors);
    let mut f = p2.monic_reversal();
    let root = vec![-qb, BigInt::one()];
    let mut mult = 0;
    while let Some(quo) = zpoly::div_exact(&f, &root) {
        f = quo;
        mult += 1;
    }
    z.tate_rank = Some(mult);
    z.verify()?;
    Ok(z)
}

/// Outcome of a line-count congruence check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceVerdict {
    pub lines: u64,
    pub modulus: u64,
    pub residue: u64,
    pub passed: bool,
}

impl CongruenceVerdict {
    pub fn to_json(&self) -> Value {
        json!({"lines": self.lines, "modulus": self.modulus, "residue": self.residue, "passed": self.passed})
    }
}

/// For a cubic fourfold with finite singular locus over `F_q`, `q = 2 mod 3`: the number of
/// `F_q`-lines is prime to the characteristic.
pub fn katz_fourfold_check(x: &CubicForm) -> Result<CongruenceVerdict> {
    let k = x.field();
    if x.n() != 4 {
        return Err(Error::Precondition("expected a cubic fourfold".into()));
    }
    if k.q() % 3 != 2 {
        return Err(Error::Precondition(format!("q = {} is not 2 mod 3", k.q())));
    }
    if singular_scheme_length(x)?.is_none() {
        return Err(Error::Precondition("the singular locus is not finite".into()));
    }
    let lines = enumerate_lines(x, 1)?.len() as u64;
    let p = k.p() as u64;
    Ok(CongruenceVerdict { lines, modulus: p, residue: lines % p, passed: !lines.is_multiple_of(p) })
}

/// For a cubic of dimension at least 5: the number of `F_q`-lines is `1 mod q`.
pub fn highdim_congruence_check(x: &CubicForm) -> Result<CongruenceVerdict> {
    if x.n() < 5 {
        return Err(Error::Precondition("expected dimension at least 5".into()));
    }
    let lines = enumerate_lines(x, 1)?.len() as u64;
    let q = x.field().q() as u64;
    Ok(CongruenceVerdict { lines, modulus: q, residue: lines % q, passed: lines % q == 1 })
}

/// The real number `u + v sqrt(q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticSurd {
    pub u: BigInt,
    pub v: BigInt,
    pub q: BigInt,
}

impl QuadraticSurd {
    fn new(u: i128, v: i128, q: u64) -> QuadraticSurd {
        QuadraticSurd { u: BigInt::from(u), v: BigInt::from(v), q: BigInt::from(q) }
    }

    pub fn floor(&self) -> BigInt {
        let s2 = &self.v * &self.v * &self.q;
        let s = s2.sqrt();
        if !self.v.is_negative() {
            &self.u + s
        } else {
            let exact = &s * &s == s2;
            &self.u - s - if exact { BigInt::zero() } else { BigInt::one() }
        }
    }

    pub fn ceil(&self) -> BigInt {
        -QuadraticSurd { u: -&self.u, v: -&self.v, q: self.q.clone() }.floor()
    }

    pub fn to_f64(&self) -> f64 {
        self.u.to_f64().unwrap_or(f64::NAN)
            + self.v.to_f64().unwrap_or(f64::NAN) * self.q.to_f64().unwrap_or(f64::NAN).sqrt()
    }

    pub fn format(&self) -> String {
        match self.v.sign() {
            num_bigint::Sign::NoSign => self.u.to_string(),
            num_bigint::Sign::Minus => format!("{} - {}*sqrt({})", self.u, -&self.v, self.q),
            num_bigint::Sign::Plus => format!("{} + {}*sqrt({})", self.u, self.v, self.q),
        }
    }
}

/// Lower and upper bounds on the number of `F_q`-lines of a smooth cubic threefold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreefoldBounds {
    pub q: u64,
    pub lower: QuadraticSurd,
    /// `"q >= 64"`, `"16 <= q <= 61"` or `"q <= 13"`.
    pub branch: &'static str,
    /// Smallest line count allowed by the lower bound (never negative).
    pub min_lines: BigInt,
    pub upper: QuadraticSurd,
    pub max_lines: BigInt,
}

impl ThreefoldBounds {
    pub fn to_json(&self) -> Value {
        json!({
            "dim": 3,
            "q": self.q,
            "lower": self.lower.format(),
            "lower_approx": self.lower.to_f64(),
            "branch": self.branch,
            "min_lines": self.min_lines.to_string(),
            "upper": self.upper.format(),
            "upper_approx": self.upper.to_f64(),
            "max_lines": self.max_lines.to_string(),
        })
    }
}

/// `1 - 5q + q^2 + 2 q k^2 - 2k (q + 1) sqrt(q)`: the value of the line count at a corner of
/// the box of traces, `k = 2l - 5`.
pub fn threefold_corner(q: u64, k: i128) -> QuadraticSurd {
    let qi = q as i128;
    QuadraticSurd::new(1 - 5 * qi + qi * qi + 2 * qi * k * k, -2 * k * (qi + 1), q)
}

pub fn bound_threefold(q: u64) -> Result<ThreefoldBounds> {
    if prime_power(q).is_none() {
        return Err(Error::Precondition(format!("{q} is not a prime power")));
    }
    let (k, branch) = if q >= 64 {
        (5, "q >= 64")
    } else if q >= 16 {
        (3, "16 <= q <= 61")
    } else {
        (1, "q <= 13")
    };
    let lower = threefold_corner(q, k);
    let upper = threefold_corner(q, -5);
    let min_lines = lower.ceil().max(BigInt::zero());
    let max_lines = upper.floor();
    Ok(ThreefoldBounds { q, lower, branch, min_lines, upper, max_lines })
}

/// Lower bound on the number of `F_q`-lines of a smooth cubic fourfold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourfoldBound {
    pub q: u64,
    pub lower: BigInt,
    /// Number of traces at `+2q` and the sign `a - b` at the minimizing corner.
    pub l: u32,
    pub epsilon: i8,
    pub closed_form: bool,
}

impl FourfoldBound {
    pub fn to_json(&self) -> Value {
        json!({
            "dim": 4,
            "q": self.q,
            "lower": self.lower.to_string(),
            "l": self.l,
            "epsilon": self.epsilon,
            "closed_form": self.closed_form,
        })
    }
}

/// `G_q^e(r_l) = 1 + q^4 + 12q^2 + e q (1 + q^2) + 2q^2 ((2l - 11)^2 - 11) + 2 (2l - 11) q (1 + q^2 + e q)`.
pub fn fourfold_corner(q: u64, l: u32, epsilon: i8) -> BigInt {
    let q = BigInt::from(q);
    let e = BigInt::from(epsilon);
    let k = BigInt::from(2 * l as i64 - 11);
    let q2 = &q * &q;
    BigInt::one()
        + &q2 * &q2
        + 12 * &q2
        + &e * &q * (BigInt::one() + &q2)
        + 2 * &q2 * (&k * &k - 11)
        + 2 * &k * &q * (BigInt::one() + &q2 + &e * &q)
}

/// Minimum of [`fourfold_corner`] over `0 <= l <= 22`, `e = +-1`, with `e = 1` forced at `l = 0`;
/// for `q >= 23` this is `q^4 - 21 q^3 + 210 q^2 - 21 q + 1`.
pub fn bound_fourfold(q: u64) -> Result<FourfoldBound> {
    if q < 5 || prime_power(q).is_none() {
        return Err(Error::Precondition(format!("q = {q} must be a prime power >= 5")));
    }
    let mut best: Option<(BigInt, u32, i8)> = None;
    for l in 0..=22u32 {
        for e in [1i8, -1] {
            if l == 0 && e == -1 {
                continue;
            }
            let v = fourfold_corner(q, l, e);
            if best.as_ref().is_none_or(|(b, _, _)| v < *b) {
                best = Some((v, l, e));
            }
        }
    }
    let (lower, l, epsilon) = best.expect("nonempty range");
    if q >= 23 {
        let qb = BigInt::from(q);
        let closed = qb.pow(4) - 21 * qb.pow(3) + 210 * qb.pow(2) - 21 * &qb + 1;
        if closed != lower {
            return Err(Error::Verification(format!("closed form {closed} differs from the minimum {lower}")));
        }
    }
    Ok(FourfoldBound { q, lower, l, epsilon, closed_form: q >= 23 })
}

/// Average number of `F_q`-lines over all degree-`d` hypersurfaces in `P^{n+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AverageLines {
    pub n: usize,
    pub d: usize,
    pub q: u64,
    /// `#Gr(1, P^{n+1})(F_q)`.
    pub grassmannian: BigInt,
    /// Dimension of the space of hypersurfaces.
    pub dim_p: u64,
    pub exact: BigRational,
    /// `#G(F_q) q^{-d-1}`, the limit of `exact` up to `O(q^{-dim P})`.
    pub asymptotic: BigRational,
}

impl AverageLines {
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "d": self.d,
            "q": self.q,
            "grassmannian_points": self.grassmannian.to_string(),
            "dim_P": self.dim_p,
            "exact": json::rational(&self.exact),
            "exact_approx": self.exact.to_f64(),
            "asymptotic": json::rational(&self.asymptotic),
            "asymptotic_approx": self.asymptotic.to_f64(),
        })
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

pub fn average_lines(n: usize, d: usize, q: u64) -> Result<AverageLines> {
    if q < 2 || d == 0 {
        return Err(Error::Precondition("need q >= 2 and d >= 1".into()));
    }
    let qb = BigInt::from(q);
    let mut g = BigInt::zero();
    for j in 1..=(n + 1) as u32 {
        for i in 0..j {
            g += qb.pow(i + j - 1);
        }
    }
    let dim_p = binomial((n + 1 + d) as u64, d as u64) - 1;
    let num = &g * (qb.pow((dim_p - d as u64) as u32) - 1);
    let den = qb.pow(dim_p as u32 + 1) - 1;
    let exact = BigRational::new(num, den);
    let asymptotic = BigRational::new(g.clone(), qb.pow(d as u32 + 1));
    Ok(AverageLines { n, d, q, grassmannian: g, dim_p, exact, asymptotic })
}

/// `N_r(F(X))` for `r <= rmax` predicted by a zeta description, keyed by `r`.
pub fn predicted_line_counts(z: &ZetaDescription, rmax: usize) -> BTreeMap<u32, BigInt> {
    z.predicted_counts(rmax).into_iter().enumerate().map(|(i, v)| (i as u32 + 1, v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn m_values_of_the_line_free_f2_cubic() {
        let n = big(&[9, 81, 657, 4225, 34049]);
        let m = m_values(&n, 3, 2).unwrap();
        assert_eq!(m.values, big(&[-3, -1, 9, -9, 7]));
        let flat: Vec<BigInt> = (1..=5u32).map(|r| (0..4).map(|i| BigInt::from(3u64.pow(r * i))).sum()).collect();
        assert!(m_values(&flat, 3, 3).unwrap().values.iter().all(|v| v.is_zero()));
        assert!(matches!(m_values(&big(&[10]), 3, 2), Err(Error::NotExact(_))));
    }

    #[test]
    fn line_free_cubic_predicts_no_lines() {
        let m = [-3, -1, 9, -9, 7];
        let p1 = p1_from_mr(&m, 2).unwrap();
        let z = zeta_fano_threefold(&p1).unwrap();
        assert_eq!(z.predicted_counts(1)[0], BigInt::zero());
        assert_eq!(z.factor(2).unwrap().degree(), 45);
        let zx = zeta_threefold(&p1).unwrap();
        assert_eq!(zx.predicted_counts(5), big(&[9, 81, 657, 4225, 34049]));
    }

    #[test]
    fn klein_over_f2() {
        let p1 = WeilPolynomial::from_i64(&[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 32], 1, 2).unwrap();
        let z = zeta_fano_threefold(&p1).unwrap();
        assert_eq!(z.factor(1).unwrap().to_string(), "1 + 32T^10");
        assert_eq!(z.factor(3).unwrap().coeffs()[10], BigInt::from(2).pow(15));
    }

    #[test]
    fn degenerate_fourfold() {
        let p40 = WeilPolynomial::new(zpoly::pow(&big(&[1, -3]), 22), 2, 3).unwrap();
        let z = zeta_fano_fourfold(&p40).unwrap();
        assert_eq!(z.factor(2).unwrap().coeffs(), zpoly::pow(&big(&[1, -3]), 23).as_slice());
        assert_eq!(z.factor(4).unwrap().coeffs(), zpoly::pow(&big(&[1, -9]), 276).as_slice());
        assert_eq!(z.tate_rank, Some(23));
    }

    #[test]
    fn threefold_bounds() {
        let b = bound_threefold(11).unwrap();
        assert_eq!(b.lower, QuadraticSurd::new(89, -24, 11));
        assert_eq!(b.min_lines, BigInt::from(10));
        assert!(bound_threefold(2).unwrap().lower.to_f64() < 0.0);
        assert_eq!(bound_threefold(64).unwrap().branch, "q >= 64");
        assert_eq!(bound_threefold(61).unwrap().branch, "16 <= q <= 61");
        // the branches are the minima over the corners of the box
        for q in (2..=256u64).filter(|&q| prime_power(q).is_some()) {
            let b = bound_threefold(q).unwrap();
            for k in [-5, -3, -1, 1, 3, 5] {
                let c = threefold_corner(q, k);
                let diff = QuadraticSurd { u: &c.u - &b.lower.u, v: &c.v - &b.lower.v, q: c.q.clone() };
                assert!(!diff.floor().is_negative(), "q = {q}, k = {k}");
            }
        }
    }

    #[test]
    fn surd_rounding() {
        assert_eq!(QuadraticSurd::new(0, 2, 4).floor(), BigInt::from(4));
        assert_eq!(QuadraticSurd::new(0, -2, 4).ceil(), BigInt::from(-4));
        assert_eq!(QuadraticSurd::new(1, -1, 2).floor(), BigInt::from(-1));
        assert_eq!(QuadraticSurd::new(1, -1, 2).ceil(), BigInt::from(0));
    }

    #[test]
    fn fourfold_bounds() {
        let table =
            [(5, 26), (7, 638), (8, 1337), (9, 2350), (11, 5930), (13, 12338), (16, 29937), (17, 38438), (19, 61010)];
        for (q, v) in table {
            assert_eq!(bound_fourfold(q).unwrap().lower, BigInt::from(v), "q = {q}");
        }
        assert_eq!(bound_fourfold(23).unwrap().lower, BigInt::from(134942));
        assert!(bound_fourfold(4).is_err());
    }

    #[test]
    fn average_over_f2() {
        let a = average_lines(3, 3, 2).unwrap();
        assert_eq!(a.grassmannian, BigInt::from(155));
        let two = BigInt::from(2);
        assert_eq!(a.exact, BigRational::new(155 * (two.pow(31) - 1), two.pow(35) - 1));
        assert_eq!(a.asymptotic, BigRational::new(BigInt::from(155), BigInt::from(16)));
        assert!((a.exact.to_f64().unwrap() - 9.6875).abs() < 1e-3);
    }
}
