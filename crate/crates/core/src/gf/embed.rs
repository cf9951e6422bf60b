use super::{poly, FieldCtx, FieldElem};
use crate::error::{Error, Result};

/// A field embedding `F_q -> F_{q^k}`.
///
/// The image of `t` is the lexicographically least root of the small field's
/// modulus in the big field; since the small field is cyclic with generator
/// `g`, the map is stored as the logarithm of the image of `g`.
#[derive(Clone, Debug)]
pub struct Embedding {
    small: FieldCtx,
    big: FieldCtx,
    log_image_gen: u64,
}

impl Embedding {
    pub fn new(small: &FieldCtx, big: &FieldCtx) -> Result<Embedding> {
        if small.p() != big.p() || !big.r().is_multiple_of(small.r()) {
            return Err(Error::IncompatibleFields(format!(
                "F_{} is not a subfield of F_{}",
                small.spec_string(),
                big.spec_string()
            )));
        }
        let m: Vec<FieldElem> = small.modulus().iter().map(|&c| big.from_int(c as i64)).collect();
        let roots = poly::distinct_roots(big, &m)?;
        let theta = *roots.first().ok_or_else(|| Error::IncompatibleFields("modulus has no root".into()))?;
        let coeffs = small.to_coeffs(small.generator());
        let mut image = FieldElem::ZERO;
        for &c in coeffs.iter().rev() {
            image = big.add(big.mul(image, theta), big.from_int(c as i64));
        }
        let log_image_gen = image.log().expect("generator maps to a unit") as u64;
        Ok(Embedding { small: small.clone(), big: big.clone(), log_image_gen })
    }

    pub fn small(&self) -> &FieldCtx {
        &self.small
    }
    pub fn big(&self) -> &FieldCtx {
        &self.big
    }

    #[inline]
    pub fn apply(&self, a: FieldElem) -> FieldElem {
        match a.log() {
            None => FieldElem::ZERO,
            Some(l) => FieldElem::from_log(((l as u64 * self.log_image_gen) % self.big.order() as u64) as u32),
        }
    }
}

/// Image of `a` under the canonical embedding of `small` into `big`.
pub fn subfield_embed(a: FieldElem, small: &FieldCtx, big: &FieldCtx) -> Result<FieldElem> {
    Ok(Embedding::new(small, big)?.apply(a))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn homomorphism_into_extensions() {
        for (p, r, k) in [(2u64, 1u32, 2u32), (2, 2, 3), (3, 2, 2), (5, 1, 3), (2, 3, 2)] {
            let small = FieldCtx::new(p, r).unwrap();
            let big = small.extension(k).unwrap();
            let e = Embedding::new(&small, &big).unwrap();
            assert_eq!(e.apply(small.one()), big.one());
            assert_eq!(e.apply(small.zero()), big.zero());
            let mut images = std::collections::HashSet::new();
            for a in small.elements() {
                let ea = e.apply(a);
                images.insert(ea);
                assert_eq!(big.pow(ea, small.q() as u64), ea);
                for b in small.elements() {
                    assert_eq!(e.apply(small.mul(a, b)), big.mul(ea, e.apply(b)));
                    assert_eq!(e.apply(small.add(a, b)), big.add(ea, e.apply(b)));
                }
            }
            assert_eq!(images.len(), small.q() as usize);
        }
        let f4 = FieldCtx::new(2, 2).unwrap();
        let f8 = FieldCtx::new(2, 3).unwrap();
        assert!(Embedding::new(&f4, &f8).is_err());
    }
}
