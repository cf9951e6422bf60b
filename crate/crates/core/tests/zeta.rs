use cubiczeta::bsd::p1_via_bsd;
use cubiczeta::geometry::*;
use cubiczeta::gf::FieldCtx;
use cubiczeta::search::{candidate_rng, random_cubic};
use cubiczeta::weil::WeilPolynomial;
use cubiczeta::zeta::*;
use num_bigint::BigInt;
use std::collections::BTreeMap;

fn fixture(name: &str, field: Option<&FieldCtx>) -> CubicForm {
    let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    CubicForm::parse_text(&std::fs::read_to_string(path).unwrap(), field).unwrap()
}

fn gs(x: &CubicForm, r: u32) -> BigInt {
    let counts: BTreeMap<u32, BigInt> = (1..=2 * r).map(|i| (i, BigInt::from(count_points(x, i).unwrap()))).collect();
    let none: BTreeMap<u32, BigInt> = (1..=r).map(|i| (i, BigInt::from(0))).collect();
    lines_via_gs(&counts, &none, x.n(), x.field().q() as u64, r).unwrap()
}

/// Smooth threefold fixtures with the method used for `P_1` and how many `r` to check.
fn smooth_threefolds() -> Vec<(&'static str, CubicForm, Via, u32)> {
    let k2 = FieldCtx::new(2, 1).unwrap();
    let k3 = FieldCtx::new(3, 1).unwrap();
    let k5 = FieldCtx::new(5, 1).unwrap();
    vec![
        ("lineless_f2", fixture("lineless_f2.txt", None), Via::Count, 2),
        ("lineless_f3", fixture("lineless_f3.txt", None), Via::Count, 2),
        ("klein_f2", fixture("klein_threefold.txt", Some(&k2)), Via::Count, 2),
        ("fermat_f2", fixture("fermat_threefold.txt", Some(&k2)), Via::Count, 2),
        ("klein_f3", fixture("klein_threefold.txt", Some(&k3)), Via::Bsd, 2),
        ("fermat_f5", fixture("fermat_threefold.txt", Some(&k5)), Via::Bsd, 1),
        ("conic_bundle_f5", fixture("conic_bundle_threefold.txt", Some(&k5)), Via::Bsd, 1),
    ]
}

#[test]
fn predicted_line_counts_match_galkin_shinder() {
    for (name, x, via, rmax) in smooth_threefolds() {
        let (_, p1) = threefold_p1(&x, via).unwrap();
        let z = zeta_fano_threefold(&p1).unwrap();
        let pred = z.predicted_counts(rmax as usize);
        for r in 1..=rmax {
            assert_eq!(pred[r as usize - 1], gs(&x, r), "{name}, r = {r}");
        }
        assert_eq!(pred[0], BigInt::from(enumerate_lines(&x, 1).unwrap().len()), "{name}");
        // Z(X) reproduces the point counts it was built from
        let zx = zeta_threefold(&p1).unwrap();
        assert_eq!(zx.predicted_counts(1)[0], BigInt::from(count_points(&x, 1).unwrap()), "{name}");
    }
}

#[test]
fn klein_over_f2_has_no_middle_terms() {
    let k = FieldCtx::new(2, 1).unwrap();
    let x = CubicForm::klein(&k, 3).unwrap();
    let (m, p1) = threefold_p1(&x, Via::Count).unwrap();
    assert_eq!(m, vec![0; 5]);
    assert_eq!(p1, WeilPolynomial::from_i64(&[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 32], 1, 2).unwrap());
    let z = zeta_fano_threefold(&p1).unwrap();
    let p3 = z.factor(3).unwrap();
    assert_eq!(p3.coeffs()[10], BigInt::from(2).pow(15));
    assert!(p3.coeffs()[1..10].iter().all(|c| *c == BigInt::from(0)));
    assert!(threefold_p1(&x, Via::Bsd).is_err());
}

#[test]
fn zeta_does_not_depend_on_the_line() {
    let k = FieldCtx::new(3, 1).unwrap();
    let x = CubicForm::klein(&k, 3).unwrap();
    let lines = enumerate_lines(&x, 1).unwrap();
    assert!(lines.len() >= 2);
    let first = zeta_fano_threefold(&p1_via_bsd(&x, &lines[0]).unwrap().1).unwrap();
    for l in lines.iter().skip(1).step_by(lines.len() / 8 + 1) {
        assert_eq!(zeta_fano_threefold(&p1_via_bsd(&x, l).unwrap().1).unwrap(), first, "{l}");
    }
}

#[test]
fn line_counts_respect_the_bounds() {
    for (name, x, _, _) in smooth_threefolds() {
        let b = bound_threefold(x.field().q() as u64).unwrap();
        let n = BigInt::from(enumerate_lines(&x, 1).unwrap().len());
        assert!(b.min_lines <= n && n <= b.max_lines, "{name}: {n}");
    }
}

#[test]
fn katz_congruence_on_fourfolds() {
    let v = katz_fourfold_check(&fixture("fourfold_one_line_f2.txt", None)).unwrap();
    assert_eq!((v.lines, v.residue, v.passed), (1, 1, true));
    let k2 = FieldCtx::new(2, 1).unwrap();
    let v = katz_fourfold_check(&fixture("fermat_fourfold.txt", Some(&k2))).unwrap();
    assert_eq!(v.lines, 75);
    assert!(v.passed);
    let mut checked = 0;
    for i in 0..100 {
        let x = random_cubic(4, &k2, &mut candidate_rng(5, i));
        match katz_fourfold_check(&x) {
            Ok(v) => {
                assert!(v.passed, "candidate {i}: {} lines", v.lines);
                checked += 1;
            }
            Err(cubiczeta::Error::Precondition(_)) => {}
            Err(e) => panic!("{e}"),
        }
    }
    assert!(checked >= 50);
    let k3 = FieldCtx::new(3, 1).unwrap();
    assert!(katz_fourfold_check(&random_cubic(4, &k3, &mut candidate_rng(5, 0))).is_err());
}

#[test]
fn lines_on_fivefolds_are_one_mod_q() {
    let k = FieldCtx::new(2, 1).unwrap();
    let v = highdim_congruence_check(&CubicForm::fermat(&k, 5).unwrap()).unwrap();
    assert!(v.passed, "{}", v.lines);
    for i in 0..20 {
        let x = random_cubic(5, &k, &mut candidate_rng(9, i));
        let v = highdim_congruence_check(&x).unwrap();
        assert!(v.passed, "candidate {i}: {}", v.lines);
        assert!(v.lines > 0);
    }
}
