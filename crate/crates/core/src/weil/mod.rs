//! Weil polynomials: reconstruction from power sums, functional equations,
//! root-modulus verification, products over pairs of roots, Picard numbers,
//! classification of the associated abelian variety and Artin-Tate values.
//!
//! A [`WeilPolynomial`] is stored in reciprocal form `P(T) = prod (1 - w_j T)`
//! (constant term 1); its monic reversal has the `w_j` as roots.

pub mod factor;
pub mod numeric;
pub mod sturm;
pub mod zpoly;

use crate::error::{Error, Result};
use crate::json;
use factor::factor_over_z;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};
use std::fmt;
use zpoly::ZPoly;

/// Sign convention relating the normalized deviations `M_r` to power sums of roots.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignConvention {
    /// `M_r = -sum w_j^r` (cubic threefolds, ten roots of weight 1).
    Threefold,
    /// `M_r = +sum w_j^r` (cubic fourfolds, 22 roots of weight 2).
    Fourfold,
}

impl SignConvention {
    pub fn weight(self) -> u32 {
        match self {
            SignConvention::Threefold => 1,
            SignConvention::Fourfold => 2,
        }
    }
    pub fn num_roots(self) -> usize {
        match self {
            SignConvention::Threefold => 10,
            SignConvention::Fourfold => 22,
        }
    }
}

/// Normalized point-count deviations `M_1, ..., M_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSums {
    pub values: Vec<BigInt>,
    pub convention: SignConvention,
}

impl PowerSums {
    /// Checks the Weil bound `|M_r| <= b q^{r w / 2}` for every entry.
    pub fn new(values: Vec<BigInt>, convention: SignConvention, q: u64) -> Result<PowerSums> {
        let b = BigInt::from(convention.num_roots());
        let w = convention.weight();
        for (i, m) in values.iter().enumerate() {
            let r = i as u32 + 1;
            let lhs = m * m;
            let rhs = &b * &b * BigInt::from(q).pow(r * w);
            if lhs > rhs {
                return Err(Error::Verification(format!("M_{r} = {m} violates the Weil bound")));
            }
        }
        Ok(PowerSums { values, convention })
    }

    /// Power sums of the roots, `sum w_j^r`.
    pub fn root_power_sums(&self) -> Vec<BigInt> {
        match self.convention {
            SignConvention::Threefold => self.values.iter().map(|m| -m).collect(),
            SignConvention::Fourfold => self.values.clone(),
        }
    }
}

/// An integer polynomial `1 + c_1 T + ... + c_d T^d` with a weight and a field size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeilPolynomial {
    coeffs: ZPoly,
    weight: u32,
    q: BigInt,
}

impl WeilPolynomial {
    pub fn new(coeffs: ZPoly, weight: u32, q: impl Into<BigInt>) -> Result<WeilPolynomial> {
        let coeffs = zpoly::trimmed(coeffs);
        if coeffs.first().is_none_or(|c| !c.is_one()) {
            return Err(Error::Precondition("a Weil polynomial must have constant term 1".into()));
        }
        Ok(WeilPolynomial { coeffs, weight, q: q.into() })
    }

    pub fn from_i64(c: &[i64], weight: u32, q: u64) -> Result<WeilPolynomial> {
        WeilPolynomial::new(zpoly::from_i64(c), weight, q)
    }

    /// The constant polynomial 1.
    pub fn one(weight: u32, q: impl Into<BigInt>) -> WeilPolynomial {
        WeilPolynomial { coeffs: vec![BigInt::one()], weight, q: q.into() }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
    pub fn weight(&self) -> u32 {
        self.weight
    }
    pub fn q(&self) -> &BigInt {
        &self.q
    }

    /// Monic polynomial whose roots are the `w_j`.
    pub fn monic_reversal(&self) -> ZPoly {
        let mut r = self.coeffs.clone();
        r.reverse();
        r
    }

    pub fn mul(&self, other: &WeilPolynomial) -> WeilPolynomial {
        WeilPolynomial { coeffs: zpoly::mul(&self.coeffs, &other.coeffs), weight: self.weight, q: self.q.clone() }
    }

    pub fn pow(&self, e: usize) -> WeilPolynomial {
        WeilPolynomial { coeffs: zpoly::pow(&self.coeffs, e), weight: self.weight, q: self.q.clone() }
    }

    /// `P(c T)`, used for Tate twists.
    pub fn twist(&self, c: &BigInt, extra_weight: u32) -> WeilPolynomial {
        WeilPolynomial {
            coeffs: zpoly::scale_var(&self.coeffs, c),
            weight: self.weight + extra_weight,
            q: self.q.clone(),
        }
    }

    /// Power sums `p_1..p_up_to` of the roots `w_j`.
    pub fn power_sums(&self, up_to: usize) -> Vec<BigInt> {
        extend_power_sums(self, up_to)
    }

    /// Value at a rational point.
    pub fn eval_rational(&self, t: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * t + BigRational::from_integer(c.clone()))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "q": self.q.to_string(),
            "weight": self.weight,
            "coeffs": json::bigints(&self.coeffs),
            "display": self.to_string(),
        })
    }
}

impl fmt::Display for WeilPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", zpoly::format(&self.coeffs, "T"))
    }
}

/// Coefficients `c_0 = 1, ..., c_deg` of `prod (1 - w_j T)` from power sums `s_r = sum w_j^r`.
pub fn newton_from_power_sums(s: &[BigInt], deg: usize) -> Result<ZPoly> {
    if s.len() < deg {
        return Err(Error::Precondition(format!("need {deg} power sums, got {}", s.len())));
    }
    let mut c = vec![BigInt::one()];
    for k in 1..=deg {
        let mut acc = BigInt::zero();
        for i in 1..=k {
            acc += &s[i - 1] * &c[k - i];
        }
        let (quo, rem) = (-acc).div_rem(&BigInt::from(k));
        if !rem.is_zero() {
            return Err(Error::NotExact(format!("Newton identity at degree {k}")));
        }
        c.push(quo);
    }
    Ok(c)
}

/// First `m + 1` coefficients of `prod (1 - w_j T)` from the `M_r` (Newton's identities).
pub fn powersums_to_poly(m_values: &PowerSums, m: usize) -> Result<ZPoly> {
    let s = m_values.root_power_sums();
    newton_from_power_sums(&s, m)
}

/// Completes `c_0..c_m` to degree `2m` using `c_{m+j} = q^{w j} c_{m-j}`.
pub fn complete_functional_equation(head: &[BigInt], q: impl Into<BigInt>, weight: u32) -> Result<WeilPolynomial> {
    let q: BigInt = q.into();
    if head.is_empty() || !head[0].is_one() {
        return Err(Error::Precondition("head must start with 1".into()));
    }
    let m = head.len() - 1;
    let mut c = head.to_vec();
    c.resize(2 * m + 1, BigInt::zero());
    let qw = q.pow(weight);
    let mut pw = BigInt::one();
    for j in 1..=m {
        pw *= &qw;
        c[m + j] = &pw * &head[m - j];
    }
    WeilPolynomial::new(c, weight, q)
}

/// Power sums `p_1..p_up_to` of the roots of the monic reversal of `p`.
pub fn extend_power_sums(p: &WeilPolynomial, up_to: usize) -> Vec<BigInt> {
    let c = &p.coeffs;
    let d = p.degree();
    let mut out: Vec<BigInt> = Vec::with_capacity(up_to);
    for k in 1..=up_to {
        let mut v = if k <= d { -BigInt::from(k) * &c[k] } else { BigInt::zero() };
        for i in 1..k {
            if k - i <= d {
                v -= &c[k - i] * &out[i - 1];
            }
        }
        out.push(v);
    }
    out
}

/// The polynomial whose roots are the `d`-th powers of the roots of `p` (over `F_{q^d}`).
pub fn frobenius_power_charpoly(p: &WeilPolynomial, d: usize) -> WeilPolynomial {
    let deg = p.degree();
    let s = extend_power_sums(p, deg * d);
    let sd: Vec<BigInt> = (1..=deg).map(|k| s[k * d - 1].clone()).collect();
    let c = newton_from_power_sums(&sd, deg).expect("power sums of algebraic integers");
    WeilPolynomial { coeffs: c, weight: p.weight, q: p.q.pow(d as u32) }
}

/// `prod_{j<k} (1 - w_j w_k T)`.
pub fn pair_product_poly(p: &WeilPolynomial) -> Result<WeilPolynomial> {
    let n = p.degree();
    let deg = n * (n - 1) / 2;
    let s = extend_power_sums(p, 2 * deg);
    let pairs: Vec<BigInt> = (1..=deg)
        .map(|r| {
            let v = &s[r - 1] * &s[r - 1] - &s[2 * r - 1];
            v / 2
        })
        .collect();
    let c = newton_from_power_sums(&pairs, deg)?;
    WeilPolynomial::new(c, 2 * p.weight, p.q.clone())
}

/// `prod_{j<=k} (1 - w_j w_k T)`.
pub fn symmetric_square_poly(p: &WeilPolynomial) -> Result<WeilPolynomial> {
    let n = p.degree();
    let deg = n * (n + 1) / 2;
    let s = extend_power_sums(p, 2 * deg);
    let pairs: Vec<BigInt> = (1..=deg)
        .map(|r| {
            let v = &s[r - 1] * &s[r - 1] + &s[2 * r - 1];
            v / 2
        })
        .collect();
    let c = newton_from_power_sums(&pairs, deg)?;
    WeilPolynomial::new(c, 2 * p.weight, p.q.clone())
}

/// Outcome of [`verify_weil`].
#[derive(Clone, Debug, PartialEq)]
pub struct WeilVerdict {
    /// `c_{d-j} = e q^{w(d/2-j)} c_j` holds exactly for a sign `e`.
    pub reciprocity: bool,
    pub sign: i8,
    /// Every root has absolute value `q^{w/2}` (decided exactly).
    pub moduli: bool,
    /// Largest relative deviation of a numerically computed root modulus from `q^{w/2}`.
    pub max_deviation: Option<f64>,
    pub passed: bool,
}

impl WeilVerdict {
    pub fn to_json(&self) -> Value {
        json!({
            "reciprocity": self.reciprocity,
            "sign": self.sign,
            "root_moduli": self.moduli,
            "max_relative_deviation": self.max_deviation,
            "passed": self.passed,
        })
    }
}

fn is_perfect_square(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    (&s * &s == *n).then_some(s)
}

fn reciprocity_sign(c: &[BigInt], qw: &BigInt) -> Option<i8> {
    let d = c.len() - 1;
    if d == 0 {
        return Some(1);
    }
    if d % 2 == 1 {
        // q^{w d / 2} must be an integer power of qw^(1/2)
        let r = is_perfect_square(qw)?;
        return sign_with_root(c, &r);
    }
    let top = qw.pow(d as u32 / 2);
    let sign = if c[d] == top {
        1
    } else if c[d] == -&top {
        -1
    } else {
        return None;
    };
    for j in 0..=d / 2 {
        let expect = BigInt::from(sign) * qw.pow((d / 2 - j) as u32) * &c[j];
        if c[d - j] != expect {
            return None;
        }
    }
    Some(sign)
}

fn sign_with_root(c: &[BigInt], r: &BigInt) -> Option<i8> {
    // odd degree: c_{d-j} = e r^{d-2j} c_j
    let d = c.len() - 1;
    let top = r.pow(d as u32);
    let sign = if c[d] == top {
        1
    } else if c[d] == -&top {
        -1
    } else {
        return None;
    };
    for j in 0..=d / 2 {
        let expect = BigInt::from(sign) * r.pow((d - 2 * j) as u32) * &c[j];
        if c[d - j] != expect {
            return None;
        }
    }
    Some(sign)
}

/// Exact test that all roots of the monic `f` have absolute value `sqrt(qw)`.
fn roots_on_circle(f: &ZPoly, qw: &BigInt, weight: u32, q: &BigInt) -> bool {
    let mut f = f.clone();
    // strip real roots +-sqrt(qw)
    match is_perfect_square(qw) {
        Some(r) => {
            for lin in [vec![-r.clone(), BigInt::one()], vec![r.clone(), BigInt::one()]] {
                while let Some(quo) = zpoly::div_exact(&f, &lin) {
                    if zpoly::degree(&f).unwrap_or(0) == 0 {
                        break;
                    }
                    f = quo;
                }
            }
        }
        None => {
            let quad = vec![-qw.clone(), BigInt::zero(), BigInt::one()];
            while zpoly::degree(&f).unwrap_or(0) >= 2 {
                match zpoly::div_exact(&f, &quad) {
                    Some(quo) => f = quo,
                    None => break,
                }
            }
        }
    }
    let n = zpoly::degree(&f).unwrap_or(0);
    if n == 0 {
        return true;
    }
    if n % 2 == 1 {
        return false;
    }
    let k = n / 2;
    // f_{k-j} = qw^j f_{k+j}
    for j in 1..=k {
        if f[k - j] != qw.pow(j as u32) * &f[k + j] {
            return false;
        }
    }
    // trace polynomial H(y) with f(T) = T^k H(T + qw/T)
    let mut d_prev: ZPoly = vec![BigInt::from(2)];
    let mut d_cur: ZPoly = vec![BigInt::zero(), BigInt::one()];
    let mut h: ZPoly = vec![f[k].clone()];
    for j in 1..=k {
        h = zpoly::add(&h, &zpoly::scale(&d_cur, &f[k + j]));
        let next = zpoly::sub(&zpoly::mul(&[BigInt::zero(), BigInt::one()], &d_cur), &zpoly::scale(&d_prev, qw));
        d_prev = d_cur;
        d_cur = next;
    }
    // interval [-2 sqrt(qw), 2 sqrt(qw)] written as c sqrt(dd)
    let (c, dd) = if weight.is_multiple_of(2) {
        (BigInt::from(2) * q.pow(weight / 2), BigInt::one())
    } else {
        (BigInt::from(2) * q.pow((weight - 1) / 2), q.clone())
    };
    sturm::all_roots_real_in(&h, &c, &dd)
}

fn big_to_f64_scaled(a: &BigInt, log2_scale: f64) -> f64 {
    let bits = a.bits();
    let shift = bits.saturating_sub(60);
    let m = (a >> shift).to_f64().unwrap_or(0.0);
    m * (shift as f64 - log2_scale).exp2()
}

/// Largest relative deviation of numerically computed root moduli from `sqrt(qw)`.
fn numeric_deviation(f: &ZPoly, qw: &BigInt) -> Option<f64> {
    let sf = zpoly::squarefree_part(f);
    let d = zpoly::degree(&sf)?;
    if d == 0 || d > 64 {
        return None;
    }
    let log2_rho = qw.to_f64()?.log2() / 2.0;
    // g(x) = f(rho x) / rho^d has roots on the unit circle
    let coeffs: Vec<f64> =
        sf.iter().enumerate().map(|(j, a)| big_to_f64_scaled(a, (d - j) as f64 * log2_rho)).collect();
    let roots = numeric::roots(&coeffs);
    Some(roots.iter().map(|z| (z.norm() - 1.0).abs()).fold(0.0, f64::max))
}

/// Checks the functional equation exactly and that every root has modulus `q^{w/2}`.
pub fn verify_weil(p: &WeilPolynomial) -> WeilVerdict {
    let qw = p.q.pow(p.weight);
    let sign = reciprocity_sign(&p.coeffs, &qw);
    let mut reciprocity = sign.is_some();
    if p.weight % 2 == 1 && (p.degree() % 2 == 1 || sign == Some(-1)) {
        reciprocity = false;
    }
    let monic = p.monic_reversal();
    let moduli = roots_on_circle(&monic, &qw, p.weight, &p.q);
    let max_deviation = numeric_deviation(&monic, &qw);
    WeilVerdict { reciprocity, sign: sign.unwrap_or(0), moduli, max_deviation, passed: reciprocity && moduli }
}

/// Root-multiplicity data entering the Picard number formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PicardData {
    pub rho: usize,
    /// Half-multiplicities of the roots `+sqrt(q)` and `-sqrt(q)`.
    pub m_plus: usize,
    pub m_minus: usize,
    /// Multiplicities of the conjugate pairs `{w, q/w}` of non-real roots.
    pub pair_multiplicities: Vec<usize>,
}

impl PicardData {
    pub fn to_json(&self) -> Value {
        json!({
            "rho": self.rho,
            "m_plus": self.m_plus,
            "m_minus": self.m_minus,
            "pair_multiplicities": self.pair_multiplicities,
        })
    }
}

/// Picard number `m_+(2m_+ - 1) + m_-(2m_- - 1) + sum m_i^2` of a surface whose
/// `P_1` is `p` (weight 1), assuming the Tate conjecture.
pub fn picard_number(p: &WeilPolynomial) -> Result<PicardData> {
    if p.weight != 1 {
        return Err(Error::Precondition("Picard numbers need a weight-1 polynomial".into()));
    }
    let monic = p.monic_reversal();
    let fac = factor_over_z(&monic);
    let q = &p.q;
    let (mut two_m_plus, mut two_m_minus) = (0usize, 0usize);
    let mut pairs = Vec::new();
    let root = is_perfect_square(q);
    for (g, e) in &fac.factors {
        let deg = g.len() - 1;
        match &root {
            Some(s) if *g == vec![-s.clone(), BigInt::one()] => two_m_plus += e,
            Some(s) if *g == vec![s.clone(), BigInt::one()] => two_m_minus += e,
            None if *g == vec![-q.clone(), BigInt::zero(), BigInt::one()] => {
                two_m_plus += e;
                two_m_minus += e;
            }
            _ => {
                if deg % 2 == 1 {
                    return Err(Error::Verification(format!(
                        "factor {} has a real root other than +-sqrt(q)",
                        zpoly::format(g, "T")
                    )));
                }
                for _ in 0..deg / 2 {
                    pairs.push(*e);
                }
            }
        }
    }
    if two_m_plus % 2 == 1 || two_m_minus % 2 == 1 {
        return Err(Error::Verification("real roots +-sqrt(q) with odd multiplicity".into()));
    }
    let (mp, mm) = (two_m_plus / 2, two_m_minus / 2);
    let total = mp + mm + pairs.iter().sum::<usize>();
    if 2 * total != p.degree() {
        return Err(Error::Verification(format!("multiplicities sum to {total}, expected {}", p.degree() / 2)));
    }
    pairs.sort_unstable_by(|a, b| b.cmp(a));
    let rho =
        mp * (2 * mp).saturating_sub(1) + mm * (2 * mm).saturating_sub(1) + pairs.iter().map(|m| m * m).sum::<usize>();
    Ok(PicardData { rho, m_plus: mp, m_minus: mm, pair_multiplicities: pairs })
}

/// Artin-Tate special value of a surface with `P_1 = p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArtinTate {
    pub rho: usize,
    /// `P_2^*(1/q)` where `P_2^* = P_2 / (1 - qT)^rho`.
    pub d_q: BigRational,
    /// `q^{deg P_1} D_q`.
    pub scaled: BigRational,
}

impl ArtinTate {
    pub fn to_json(&self) -> Value {
        json!({
            "rho": self.rho,
            "D_q": json::rational(&self.d_q),
            "q_pow_D_q": json::rational(&self.scaled),
        })
    }
}

/// Divides by `(1 - qT)` exactly; `None` if it does not divide.
fn divide_by_one_minus_qt(c: &[BigInt], q: &BigInt) -> Option<ZPoly> {
    let n = c.len() - 1;
    if n == 0 {
        return None;
    }
    let mut s = Vec::with_capacity(n);
    s.push(c[0].clone());
    for k in 1..n {
        let v = &c[k] + q * &s[k - 1];
        s.push(v);
    }
    (c[n] == -(q * &s[n - 1])).then_some(s)
}

/// `D_q = P_2^*(1/q)` where `P_2` is the pair product of `p` with `(1 - qT)^rho` removed.
pub fn artin_tate(p: &WeilPolynomial) -> Result<ArtinTate> {
    let pic = picard_number(p)?;
    let p2 = pair_product_poly(p)?;
    let q = &p.q;
    let mut c = p2.coeffs.clone();
    for i in 0..pic.rho {
        c = divide_by_one_minus_qt(&c, q).ok_or_else(|| {
            Error::Verification(format!("(1 - qT) divides P_2 only {i} times, Picard number is {}", pic.rho))
        })?;
    }
    if c.len() > 1 && divide_by_one_minus_qt(&c, q).is_some() {
        return Err(Error::Verification("(1 - qT) divides P_2 more often than the Picard number".into()));
    }
    let n = c.len() - 1;
    let num: BigInt = c.iter().enumerate().map(|(k, a)| a * q.pow((n - k) as u32)).sum();
    let d_q = BigRational::new(num, q.pow(n as u32));
    let scaled = &d_q * BigRational::from_integer(q.pow(p.degree() as u32));
    Ok(ArtinTate { rho: pic.rho, d_q, scaled })
}

/// Isogeny-class invariants of an abelian variety with characteristic polynomial `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianClassification {
    pub ordinary: bool,
    pub supersingular: bool,
    /// `None` when the polynomial is a proper power of a non-ordinary irreducible.
    pub simple: Option<bool>,
    pub absolutely_simple: Option<bool>,
    pub irreducible: bool,
    pub picard: Option<PicardData>,
}

impl AbelianClassification {
    pub fn to_json(&self) -> Value {
        json!({
            "ordinary": self.ordinary,
            "supersingular": self.supersingular,
            "simple": self.simple,
            "absolutely_simple": self.absolutely_simple,
            "irreducible": self.irreducible,
            "picard": self.picard.as_ref().map(|x| x.to_json()),
        })
    }
}

fn prime_power_big(q: &BigInt) -> Result<(BigInt, u32)> {
    let qq = q.to_u64().ok_or_else(|| Error::Precondition("q too large".into()))?;
    let (p, r) = crate::gf::prime_power(qq).ok_or_else(|| Error::Precondition(format!("{q} is not a prime power")))?;
    Ok((BigInt::from(p), r))
}

fn valuation(a: &BigInt, p: &BigInt) -> Option<u32> {
    if a.is_zero() {
        return None;
    }
    let mut v = 0;
    let mut x = a.clone();
    while (&x % p).is_zero() {
        x /= p;
        v += 1;
    }
    Some(v)
}

/// Criterion (v): `p^{ceil(r j / 2)} | a_j` for all `j`.
fn supersingular_by_valuations(p: &WeilPolynomial, prime: &BigInt, r: u32) -> bool {
    p.coeffs.iter().enumerate().skip(1).all(|(j, a)| {
        let need = (r as usize * j).div_ceil(2) as u32;
        valuation(a, prime).is_none_or(|v| v >= need)
    })
}

/// Criterion (iv): every root is `sqrt(q)` times a root of unity.
fn supersingular_by_roots_of_unity(p: &WeilPolynomial) -> bool {
    let fac = factor_over_z(&p.monic_reversal());
    fac.factors.iter().all(|(g, _)| {
        let gp = WeilPolynomial { coeffs: zpoly::reverse(g), weight: p.weight, q: p.q.clone() };
        let e = gp.degree();
        (1..=66usize).any(|k| {
            let pw = frobenius_power_charpoly(&gp, 2 * k);
            let target = zpoly::pow(&[BigInt::one(), -p.q.pow(k as u32)], e);
            pw.coeffs == target
        })
    })
}

/// Ordinary/supersingular/simplicity classification of a weight-1 Weil polynomial.
pub fn classify_abelian(p: &WeilPolynomial) -> Result<AbelianClassification> {
    if p.weight != 1 {
        return Err(Error::Precondition("classification needs a weight-1 polynomial".into()));
    }
    let (prime, r) = prime_power_big(&p.q)?;
    let g = p.degree() / 2;
    let ordinary = !(&p.coeffs[g] % &prime).is_zero();
    let supersingular = supersingular_by_valuations(p, &prime, r);
    if supersingular != supersingular_by_roots_of_unity(p) {
        return Err(Error::Verification("supersingularity criteria disagree".into()));
    }
    let fac = factor_over_z(&p.monic_reversal());
    let irreducible = fac.is_irreducible();
    let simple = if fac.factors.len() > 1 {
        Some(false)
    } else if irreducible {
        Some(true)
    } else if ordinary {
        Some(false)
    } else {
        None
    };
    let absolutely_simple = match simple {
        Some(false) => Some(false),
        _ if supersingular && g >= 2 => Some(false),
        Some(true) if p.degree() == 10 => absolute_simplicity(p)?,
        _ => None,
    };
    let picard = picard_number(p).ok();
    Ok(AbelianClassification { ordinary, supersingular, simple, absolutely_simple, irreducible, picard })
}

/// Absolute simplicity of a simple abelian fivefold with irreducible characteristic polynomial.
///
/// Returns `Some(true)` when the Frobenius-power polynomials over `F_{q^d}` stay
/// irreducible for every `d` with `phi(d) | 10`, `Some(false)` when one of them
/// has two distinct irreducible factors (or the variety is supersingular), and
/// `None` otherwise.
pub fn absolute_simplicity(p: &WeilPolynomial) -> Result<Option<bool>> {
    if p.degree() != 10 || !factor_over_z(&p.monic_reversal()).is_irreducible() {
        return Err(Error::Precondition("absolute simplicity needs an irreducible polynomial of degree 10".into()));
    }
    let (prime, r) = prime_power_big(&p.q)?;
    if supersingular_by_valuations(p, &prime, r) {
        return Ok(Some(false));
    }
    let in_subring = |d: usize| p.coeffs.iter().enumerate().all(|(j, a)| j % d == 0 || a.is_zero());
    if (2..=10).any(in_subring) {
        return Ok(None);
    }
    for d in [2usize, 3, 4, 6, 11, 22] {
        let pw = frobenius_power_charpoly(p, d);
        let fac = factor_over_z(&pw.monic_reversal());
        if fac.factors.len() > 1 {
            return Ok(Some(false));
        }
        if !fac.is_irreducible() {
            return Ok(None);
        }
    }
    Ok(Some(true))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn newton_and_completion() {
        let m = PowerSums::new(big(&[-3, -1, 9, -9, 7]), SignConvention::Threefold, 2).unwrap();
        let head = powersums_to_poly(&m, 5).unwrap();
        assert_eq!(head, big(&[1, -3, 4, 0, -10, 20]));
        let p = complete_functional_equation(&head, 2, 1).unwrap();
        assert_eq!(p.coeffs(), &big(&[1, -3, 4, 0, -10, 20, -20, 0, 32, -48, 32])[..]);
        let klein = complete_functional_equation(&big(&[1, 0, 0, 0, 0, 0]), 2, 1).unwrap();
        assert_eq!(klein.to_string(), "1 + 32T^10");
        let m0 = PowerSums::new(big(&[0]), SignConvention::Threefold, 7).unwrap();
        let c = complete_functional_equation(&powersums_to_poly(&m0, 1).unwrap(), 7, 1).unwrap();
        assert_eq!(c.coeffs(), &big(&[1, 0, 7])[..]);
    }

    #[test]
    fn power_sums() {
        let p = WeilPolynomial::from_i64(&[1, 0, 5], 1, 5).unwrap();
        assert_eq!(extend_power_sums(&p, 2), big(&[0, -10]));
        let p = WeilPolynomial::from_i64(&[1, -4, 7], 1, 7).unwrap();
        assert_eq!(extend_power_sums(&p, 1), big(&[4]));
        let klein = WeilPolynomial::from_i64(&[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 32], 1, 2).unwrap();
        let s = extend_power_sums(&klein, 10);
        assert!(s[..9].iter().all(|x| x.is_zero()));
        assert_eq!(s[9], BigInt::from(-320));
    }

    #[test]
    fn verification() {
        let klein = WeilPolynomial::from_i64(&[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 32], 1, 2).unwrap();
        let v = verify_weil(&klein);
        assert!(v.passed, "{v:?}");
        assert!(v.max_deviation.unwrap() < 1e-9);
        let bad = WeilPolynomial::from_i64(&[1, -3, 2], 1, 2).unwrap();
        assert!(!verify_weil(&bad).passed);
        // reciprocal but with roots off the circle: 1 - 3T + 2T^2 over q = 2 fails reciprocity,
        // 1 + 3T + 2T^2 has roots -1, -2 of moduli 1 and 2
        let off = WeilPolynomial::from_i64(&[1, 3, 2], 1, 2).unwrap();
        let v = verify_weil(&off);
        assert!(v.reciprocity && !v.moduli);
        let x3 = WeilPolynomial::from_i64(&[1, -5, 10, -2, -36, 95, -108, -18, 270, -405, 243], 1, 3).unwrap();
        assert!(verify_weil(&x3).passed);
    }

    #[test]
    fn frobenius_powers() {
        let p = WeilPolynomial::from_i64(&[1, 0, 5], 1, 5).unwrap();
        assert_eq!(frobenius_power_charpoly(&p, 1), p);
        assert_eq!(frobenius_power_charpoly(&p, 2).coeffs(), &big(&[1, 10, 25])[..]);
        let klein = WeilPolynomial::from_i64(&[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 32], 1, 2).unwrap();
        let k10 = frobenius_power_charpoly(&klein, 10);
        assert_eq!(k10.coeffs(), &zpoly::pow(&big(&[1, 32]), 10)[..]);
        assert_eq!(picard_number(&k10).unwrap().rho, 45);
    }

    #[test]
    fn klein_over_f2() {
        let klein = WeilPolynomial::from_i64(&[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 32], 1, 2).unwrap();
        let p2 = pair_product_poly(&klein).unwrap();
        let expect =
            zpoly::mul(&big(&[1, 0, 0, 0, 0, -32]), &zpoly::pow(&big(&[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1024]), 4));
        assert_eq!(p2.coeffs(), &expect[..]);
        assert_eq!(picard_number(&klein).unwrap().rho, 5);
        let at = artin_tate(&klein).unwrap();
        assert_eq!(at.d_q, BigRational::from_integer(BigInt::from(50000)));
    }
}
