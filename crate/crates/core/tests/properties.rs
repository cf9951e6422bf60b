mod common;

use common::*;
use cubiczeta::bsd::{compute_mr, p1_via_bsd};
use cubiczeta::fermat::fermat_p0;
use cubiczeta::gf::{poly, poly_roots, FieldCtx, FieldElem};
use cubiczeta::weil::{
    frobenius_power_charpoly, pair_product_poly, symmetric_square_poly, verify_weil, WeilPolynomial,
};
use cubiczeta::zeta::{zeta_fano_threefold, zeta_threefold};
use proptest::prelude::*;

#[test]
fn every_small_field_is_a_field() {
    for q in prime_powers(FIELD_LIMIT) {
        check_field(q).unwrap();
    }
}

fn any_field() -> impl Strategy<Value = FieldCtx> {
    prop::sample::select(prime_powers(FIELD_LIMIT)).prop_map(field)
}

fn elem(k: &FieldCtx, i: u64) -> FieldElem {
    k.element((i % k.q() as u64) as u32)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn field_axioms(k in any_field(), a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let (a, b, c) = (elem(&k, a), elem(&k, b), elem(&k, c));
        prop_assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
        prop_assert_eq!(k.mul(a, k.mul(b, c)), k.mul(k.mul(a, b), c));
        prop_assert_eq!(k.add(a, k.add(b, c)), k.add(k.add(a, b), c));
        prop_assert_eq!(k.sub(k.add(a, b), b), a);
        prop_assert_eq!(k.parse(&k.format(a)).unwrap(), a);
        if b != k.zero() {
            prop_assert_eq!(k.mul(k.div(a, b).unwrap(), b), a);
        }
        // Frobenius is additive
        prop_assert_eq!(k.frobenius(k.add(a, b), 1), k.add(k.frobenius(a, 1), k.frobenius(b, 1)));
    }

    #[test]
    fn roots_of_products_of_linear_factors(
        k in any_field(),
        roots in prop::collection::vec(any::<u64>(), 0..6),
        extra in prop::collection::vec(any::<u64>(), 0..4),
    ) {
        let roots: Vec<FieldElem> = roots.iter().map(|&i| elem(&k, i)).collect();
        let mut f = vec![k.one()];
        for &r in &roots {
            f = poly::mul(&k, &f, &[k.neg(r), k.one()]);
        }
        let mut g: Vec<FieldElem> = extra.iter().map(|&i| elem(&k, i)).collect();
        g.push(k.one());
        f = poly::mul(&k, &f, &g);
        let mut expect: Vec<FieldElem> = k.elements().filter(|&x| poly::eval(&k, &f, x).is_zero()).collect();
        let mut got = poly_roots(&k, &f).unwrap();
        got.dedup();
        expect.sort();
        got.sort();
        prop_assert_eq!(got, expect);
    }
}

#[test]
fn galkin_shinder_on_random_cubics() {
    // 200 cubics, singular ones included
    let mut index = 0;
    for (n, q) in [(3usize, 2u64), (3, 3), (4, 2), (4, 3)] {
        for _ in 0..50 {
            gs_versus_enumeration(n, q, index, 1).unwrap();
            index += 1;
        }
    }
    for i in 0..10 {
        gs_versus_enumeration(3, 2, 1000 + i, 2).unwrap();
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn bsd_agrees_with_direct_counts(q in prop::sample::select(vec![3u64, 5, 7, 9]), start in 0u64..1 << 20) {
        let k = field(q);
        let (x, l) = smooth_with_line(&k, 31, start);
        prop_assert!(l.lies_on(&x));
        let rmax = if q <= 5 { 2 } else { 1 };
        for r in 1..=rmax {
            prop_assert_eq!(compute_mr(&x, &l, r).unwrap(), direct_m(&x, r), "q = {}, r = {}", q, r);
        }
    }
}

fn assert_weil(p: &WeilPolynomial, what: &str) {
    let v = verify_weil(p);
    assert!(v.passed, "{what}: {p} fails: {}", v.to_json());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn produced_polynomials_are_weil(q in prop::sample::select(vec![3u64, 5]), start in 0u64..1 << 20) {
        let k = field(q);
        let (x, l) = smooth_with_line(&k, 47, start);
        let (_, p1) = p1_via_bsd(&x, &l).unwrap();
        assert_weil(&p1, "P_1");
        assert_weil(&frobenius_power_charpoly(&p1, 2), "P_1 over F_{q^2}");
        assert_weil(&pair_product_poly(&p1).unwrap(), "wedge^2 P_1");
        assert_weil(&symmetric_square_poly(&p1).unwrap(), "Sym^2 P_1");
        for z in [zeta_fano_threefold(&p1).unwrap(), zeta_threefold(&p1).unwrap()] {
            z.verify().unwrap();
            for f in &z.factors {
                assert_weil(&f.poly, &format!("{} factor {}", z.variety, f.index));
            }
        }
    }

    #[test]
    fn fermat_factors_are_weil(n in 1usize..=5, i in 0usize..40) {
        let p = [2u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73][i % 20];
        let f = fermat_p0(n, p).unwrap();
        assert_weil(&f, "Fermat");
    }
}
