//! Closed forms for the Fermat cubic `x_1^3 + ... + x_{n+2}^3`.

use crate::error::{Error, Result};
use crate::gf::prime_power;
use crate::weil::{frobenius_power_charpoly, picard_number, zpoly, WeilPolynomial};
use crate::zeta::{untwist, zeta_fano_fourfold, zeta_fano_threefold, ZetaDescription};
use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Value};

/// `4p = a^2 + 27 b^2` with `a = 1 mod 3` and `b > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GaussPair {
    pub a: i64,
    pub b: i64,
    pub p: u64,
}

impl GaussPair {
    pub fn to_json(&self) -> Value {
        json!({"p": self.p, "a": self.a, "b": self.b})
    }
}

fn check_prime(p: u64) -> Result<()> {
    match prime_power(p) {
        Some((_, 1)) => Ok(()),
        _ => Err(Error::Precondition(format!("{p} is not prime"))),
    }
}

pub fn gauss_decomposition(p: u64) -> Result<GaussPair> {
    check_prime(p)?;
    if p % 3 != 1 {
        return Err(Error::Precondition(format!("{p} is not 1 mod 3")));
    }
    let four_p = 4 * p as i64;
    let mut found = Vec::new();
    let mut b = 1i64;
    while 27 * b * b <= four_p {
        let rest = four_p - 27 * b * b;
        let s = (rest as f64).sqrt().round() as i64;
        for a in [s - 1, s, s + 1] {
            if a >= 0 && a * a == rest {
                let a = if a.rem_euclid(3) == 1 { a } else { -a };
                if a.rem_euclid(3) == 1 {
                    found.push(GaussPair { a, b, p });
                }
            }
        }
        b += 1;
    }
    found.dedup();
    match found.as_slice() {
        [g] => Ok(*g),
        _ => Err(Error::Verification(format!("{} representations of 4 * {p}", found.len()))),
    }
}

/// Degree of the primitive middle cohomology of a smooth cubic `n`-fold, `1 <= n <= 5`.
pub fn betti0(n: usize) -> Result<usize> {
    match n {
        1 => Ok(2),
        2 => Ok(6),
        3 => Ok(10),
        4 => Ok(22),
        5 => Ok(42),
        _ => Err(Error::Precondition(format!("n = {n} is outside 1..=5"))),
    }
}

fn poly(c: Vec<BigInt>, n: usize, p: u64) -> WeilPolynomial {
    WeilPolynomial::new(c, n as u32, p).expect("constant term 1")
}

/// `1 + c_1 T + c_2 T^2`.
fn quad(c1: BigInt, c2: BigInt) -> Vec<BigInt> {
    vec![BigInt::one(), c1, c2]
}

/// Reciprocal characteristic polynomial of Frobenius on the primitive middle cohomology of
/// the Fermat cubic `n`-fold over `F_p`.
pub fn fermat_p0(n: usize, p: u64) -> Result<WeilPolynomial> {
    let b0 = betti0(n)?;
    check_prime(p)?;
    if p == 3 {
        return Err(Error::Precondition("p = 3 is the bad prime".into()));
    }
    let pb = BigInt::from(p);
    if p % 3 == 2 {
        // (1 - (-p)^n T^2)^{b0/2}
        let c = -BigInt::from(-(p as i64)).pow(n as u32);
        let f = vec![BigInt::one(), BigInt::from(0), c];
        return Ok(poly(zpoly::pow(&f, b0 / 2), n, p));
    }
    let g = gauss_decomposition(p)?;
    let a = BigInt::from(g.a);
    let c = match n {
        1 => quad(a, pb.clone()),
        2 => zpoly::pow(&[BigInt::one(), -&pb], 6),
        3 => zpoly::pow(&quad(&a * &pb, pb.pow(3)), 5),
        // eigenvalues p w^2, p wbar^2 and p^2 (20 times)
        4 => zpoly::mul(&quad(&pb * (2 * &pb - &a * &a), pb.pow(4)), &zpoly::pow(&[BigInt::one(), -pb.pow(2)], 20)),
        _ => zpoly::pow(&quad(&a * pb.pow(2), pb.pow(5)), 21),
    };
    Ok(poly(c, n, p))
}

/// `N_r` of the Fermat cubic `n`-fold over `F_{p^r}` from [`fermat_p0`].
pub fn fermat_point_count(n: usize, p: u64, r: u32) -> Result<BigInt> {
    let p0 = fermat_p0(n, p)?;
    let pr = BigInt::from(p).pow(r);
    let base: BigInt = (0..=n as u32).map(|i| pr.pow(i)).sum();
    let s = p0.power_sums(r as usize).pop().expect("r >= 1");
    Ok(if n.is_multiple_of(2) { base + s } else { base - s })
}

/// Zeta data of the surface of lines of the Fermat cubic threefold over `F_p`.
#[derive(Clone, Debug, PartialEq)]
pub struct FermatFano {
    pub p: u64,
    pub gauss: Option<GaussPair>,
    pub zeta: ZetaDescription,
    /// Picard number over `F_{p^2}`.
    pub picard_p2: usize,
}

impl FermatFano {
    pub fn to_json(&self) -> Value {
        json!({
            "p": self.p,
            "residue_mod_3": self.p % 3,
            "gauss": self.gauss.map(|g| g.to_json()),
            "zeta": self.zeta.to_json(),
            "picard_over_p2": self.picard_p2,
        })
    }
}

/// `P_1(F(X), T) = P_3(X, T / p)`, then the generic assembly.
pub fn fermat_fano_zeta(p: u64) -> Result<FermatFano> {
    let p1 = untwist(&fermat_p0(3, p)?, p, 2)?;
    let zeta = zeta_fano_threefold(&p1)?;
    let picard_p2 = picard_number(&frobenius_power_charpoly(&p1, 2))?.rho;
    let gauss = if p % 3 == 1 { Some(gauss_decomposition(p)?) } else { None };
    Ok(FermatFano { p, gauss, zeta, picard_p2 })
}

/// The fourfold of lines of the Fermat cubic fourfold over `F_p`.
pub fn fermat_fourfold_fano_zeta(p: u64) -> Result<ZetaDescription> {
    zeta_fano_fourfold(&untwist(&fermat_p0(4, p)?, p, 2)?)
}

/// Point counts of the Fermat `n`-fold over `F_2` and `F_4`, and its number of `F_2`-lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallCounts {
    pub n: usize,
    pub points_f2: BigInt,
    pub points_f4: BigInt,
    /// `None` for curves.
    pub lines_f2: Option<BigInt>,
}

impl SmallCounts {
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "points_f2": self.points_f2.to_string(),
            "points_f4": self.points_f4.to_string(),
            "lines_f2": self.lines_f2.as_ref().map(|l| l.to_string()),
        })
    }
}

pub fn fermat_small_counts(n: usize) -> Result<SmallCounts> {
    if n == 0 {
        return Err(Error::Precondition("n >= 1".into()));
    }
    let two = BigInt::from(2);
    let m2 = BigInt::from(-2);
    let e = n as u32;
    let points_f2 = two.pow(e + 1) - 1;
    let points_f4 = (two.pow(2 * e + 3) - m2.pow(e + 1) - 1) / 3;
    let lines_f2 = (n >= 2).then(|| {
        let sign = if n.is_multiple_of(2) { 1 } else { -1 };
        (two.pow(2 * e) + 1 + BigInt::from(sign - 9) * two.pow(e - 2)) / 3
    });
    Ok(SmallCounts { n, points_f2, points_f4, lines_f2 })
}
