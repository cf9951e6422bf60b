use cubiczeta::geometry::*;
use cubiczeta::gf::FieldCtx;
use num_bigint::BigInt;
use std::collections::BTreeMap;

fn fixture(name: &str, field: Option<&FieldCtx>) -> CubicForm {
    let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    CubicForm::parse_text(&std::fs::read_to_string(path).unwrap(), field).unwrap()
}

fn gs_lines(x: &CubicForm, r: u32) -> BigInt {
    let counts: BTreeMap<u32, BigInt> =
        [r, 2 * r].iter().map(|&i| (i, BigInt::from(count_points(x, i).unwrap()))).collect();
    let sing: BTreeMap<u32, BigInt> =
        [(r, BigInt::from(singular_points(x, r, u64::MAX).unwrap().len()))].into_iter().collect();
    lines_via_gs(&counts, &sing, x.n(), x.field().q() as u64, r).unwrap()
}

#[test]
fn line_free_threefolds() {
    for (name, points, smooth) in [
        ("lineless_f2.txt", 9, true),
        ("lineless_f3.txt", 25, true),
        ("lineless_f4.txt", 61, true),
        ("lineless_f5.txt", 126, false),
    ] {
        let x = fixture(name, None);
        assert_eq!(count_points(&x, 1).unwrap(), points, "{name}");
        assert!(enumerate_lines(&x, 1).unwrap().is_empty(), "{name}");
        assert_eq!(is_smooth(&x).unwrap(), smooth, "{name}");
    }
}

#[test]
fn lineless_f3_line_counts_by_gs() {
    let x = fixture("lineless_f3.txt", None);
    assert_eq!(gs_lines(&x, 1), BigInt::from(0));
    assert_eq!(gs_lines(&x, 2), BigInt::from(40));
    assert_eq!(enumerate_lines(&x, 2).unwrap().len(), 40);
}

#[test]
fn nodal_examples() {
    let x = fixture("nodal_f2.txt", None);
    let rep = singular_locus(&x, 2).unwrap();
    assert_eq!(rep.points.len(), 1);
    assert_eq!(rep.points[0].kind, SingType::A1);
    assert_eq!(rep.complete, Some(true));
    assert!(enumerate_lines(&x, 1).unwrap().is_empty());
    assert_eq!(gs_lines(&x, 1), BigInt::from(0));

    let x = fixture("nodal_f3.txt", None);
    let k = x.field().clone();
    let rep = singular_locus(&x, 1).unwrap();
    assert_eq!(rep.points.len(), 1);
    assert_eq!(rep.points[0].point, ProjPoint::from_ints(&k, &[1, 0, 0, 0, 1]).unwrap());
    assert_eq!(rep.points[0].kind, SingType::A1);
    assert_eq!(rep.scheme_length, Some(1));
    assert!(enumerate_lines(&x, 1).unwrap().is_empty());
}

#[test]
fn fourfold_with_one_line() {
    let x = fixture("fourfold_one_line_f2.txt", None);
    let k = x.field().clone();
    assert_eq!(count_points(&x, 1).unwrap(), 13);
    assert!(is_smooth(&x).unwrap());
    let lines = enumerate_lines(&x, 1).unwrap();
    assert_eq!(lines.len(), 1);
    let expected =
        ProjLine::span(&k, &[0, 0, 0, 0, 1, 1].map(|c| k.from_int(c)), &[0, 0, 0, 1, 0, 1].map(|c| k.from_int(c)))
            .unwrap();
    assert_eq!(lines[0], expected);
    assert_eq!(gs_lines(&x, 1), BigInt::from(1));
}

#[test]
fn integer_fixtures_over_several_fields() {
    let k2 = FieldCtx::new(2, 1).unwrap();
    assert_eq!(enumerate_lines(&fixture("klein_threefold.txt", Some(&k2)), 1).unwrap().len(), 5);
    assert_eq!(enumerate_lines(&fixture("fermat_threefold.txt", Some(&k2)), 1).unwrap().len(), 15);
    for p in [5u64, 7] {
        let k = FieldCtx::new(p, 1).unwrap();
        let x = fixture("conic_bundle_threefold.txt", Some(&k));
        assert!(is_smooth(&x).unwrap());
        let z = k.zero();
        let o = k.one();
        let l = ProjLine::span(&k, &[z, z, z, o, z], &[z, z, z, z, o]).unwrap();
        assert!(l.lies_on(&x));
    }
    // singular along a curve in characteristic 2, smooth in characteristic 3
    let x = fixture("conic_bundle_threefold.txt", Some(&k2));
    assert!(!is_smooth(&x).unwrap());
    assert_eq!(singular_scheme_length(&x).unwrap(), None);
    let k3 = FieldCtx::new(3, 1).unwrap();
    assert!(is_smooth(&fixture("conic_bundle_threefold.txt", Some(&k3))).unwrap());
}

#[test]
fn fermat_surface_lines_over_f4() {
    // 27 lines on the diagonal cubic surface, all defined over F_4
    let k = FieldCtx::new(2, 2).unwrap();
    let x = CubicForm::fermat(&k, 2).unwrap();
    assert_eq!(enumerate_lines(&x, 1).unwrap().len(), 27);
    let k2 = FieldCtx::new(2, 1).unwrap();
    assert_eq!(enumerate_lines(&CubicForm::fermat(&k2, 2).unwrap(), 2).unwrap().len(), 27);
}
