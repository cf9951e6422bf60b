use cubiczeta::bsd::*;
use cubiczeta::geometry::*;
use cubiczeta::gf::{FieldCtx, FieldElem};
use cubiczeta::search::{candidate_rng, invert, random_cubic_with_line, random_element};
use cubiczeta::weil::{frobenius_power_charpoly, verify_weil, WeilPolynomial};

fn fixture(name: &str, field: Option<&FieldCtx>) -> CubicForm {
    let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    CubicForm::parse_text(&std::fs::read_to_string(path).unwrap(), field).unwrap()
}

fn line(k: &FieldCtx, a: &[i64], b: &[i64]) -> ProjLine {
    let a: Vec<FieldElem> = a.iter().map(|&c| k.from_int(c)).collect();
    let b: Vec<FieldElem> = b.iter().map(|&c| k.from_int(c)).collect();
    ProjLine::span(k, &a, &b).unwrap()
}

fn direct_m(x: &CubicForm, r: u32) -> i64 {
    let big_q = (x.field().q() as i64).pow(r);
    let n = count_points(x, r).unwrap() as i64;
    (n - (1 + big_q + big_q * big_q + big_q.pow(3))) / big_q
}

fn coeffs(p: &WeilPolynomial) -> Vec<i64> {
    p.coeffs().iter().map(|c| i64::try_from(c).unwrap()).collect()
}

#[test]
fn klein_threefold() {
    let cases: [(u64, i64); 4] = [(3, 31), (5, -57), (7, 0), (13, 0)];
    for (q, c5) in cases {
        let k = FieldCtx::new(q, 1).unwrap();
        let x = CubicForm::klein(&k, 3).unwrap();
        let (m, p) = p1_via_bsd(&x, &line(&k, &[1, 0, 0, 0, 0], &[0, 0, 1, 0, 0])).unwrap();
        let mut expected = vec![0i64; 11];
        expected[0] = 1;
        expected[5] = c5;
        expected[10] = (q as i64).pow(5);
        assert_eq!(coeffs(&p), expected, "q = {q}");
        if q == 3 {
            assert_eq!(m, vec![0, 0, 0, 0, 155]);
        }
    }
}

#[test]
fn conic_bundle_cubic_over_f5_and_f7() {
    let k = FieldCtx::new(5, 1).unwrap();
    let x = fixture("conic_bundle_threefold.txt", Some(&k));
    let l = line(&k, &[0, 0, 0, 1, 0], &[0, 0, 0, 0, 1]);
    let (_, p) = p1_via_bsd(&x, &l).unwrap();
    let a = WeilPolynomial::from_i64(&[1, 0, 5], 1, 5).unwrap();
    let b = WeilPolynomial::from_i64(&[1, 0, 2, 8, -6, 40, 50, 0, 625], 1, 5).unwrap();
    assert_eq!(p, a.mul(&b));

    let k = FieldCtx::new(7, 1).unwrap();
    let x = fixture("conic_bundle_threefold.txt", Some(&k));
    let l = line(&k, &[0, 0, 0, 1, 0], &[0, 0, 0, 0, 1]);
    let (_, p) = p1_via_bsd(&x, &l).unwrap();
    assert_eq!(coeffs(&p), vec![1, 4, 15, 46, 159, 460, 1113, 2254, 5145, 9604, 16807]);
    assert!(verify_weil(&p).passed);
}

#[test]
fn conic_bundle_normal_form_is_recovered() {
    let k = FieldCtx::new(7, 1).unwrap();
    let x = fixture("conic_bundle_threefold.txt", Some(&k));
    let (a, data) = normalize_line(&x, &line(&k, &[0, 0, 0, 1, 0], &[0, 0, 0, 0, 1])).unwrap();
    assert_eq!(data.assemble().unwrap(), x.transform(&a).unwrap());
    // l1 = x1, l2 = x2, l3 = x3
    for (i, l) in [&data.l1, &data.l2, &data.l3].into_iter().enumerate() {
        let mut e = vec![0u8; 3];
        e[i] = 1;
        assert_eq!(l.terms().len(), 1);
        assert_eq!(l.coeff(&e), FieldElem::ONE);
    }
}

#[test]
fn lineless_f3_over_f9_matches_frobenius_square() {
    let x3 = fixture("lineless_f3.txt", None);
    let k9 = x3.field().extension(2).unwrap();
    let x9 = x3.base_change(&k9).unwrap();
    let lines = enumerate_lines(&x9, 1).unwrap();
    assert_eq!(lines.len(), 40);
    let (_, p9) = p1_via_bsd(&x9, &lines[0]).unwrap();
    assert_eq!(coeffs(&p9), vec![1, -5, 8, 10, -124, 515, -1116, 810, 5832, -32805, 59049]);
    let p3 = WeilPolynomial::from_i64(&[1, -5, 10, -2, -36, 95, -108, -18, 270, -405, 243], 1, 3).unwrap();
    assert_eq!(frobenius_power_charpoly(&p3, 2), p9);
}

#[test]
fn independent_of_the_line() {
    let k = FieldCtx::new(5, 1).unwrap();
    let x = CubicForm::fermat(&k, 3).unwrap();
    let lines = enumerate_lines(&x, 1).unwrap();
    assert!(lines.len() >= 2);
    for r in 1..=3 {
        let expected = direct_m(&x, r);
        for l in lines.iter().step_by(lines.len() / 5 + 1) {
            assert_eq!(compute_mr(&x, l, r).unwrap(), expected, "r = {r}, {l}");
        }
    }
}

#[test]
fn random_cubics_with_a_line_agree_with_point_counts() {
    for (seed, q) in [(1u64, 3u64), (2, 5), (3, 7), (4, 9)] {
        let k = FieldCtx::from_spec(&q.to_string()).unwrap();
        let mut done = 0;
        let mut i = 0;
        while done < 3 {
            let mut rng = candidate_rng(seed, i);
            i += 1;
            let (x, l) = random_cubic_with_line(&k, &mut rng);
            assert!(l.lies_on(&x));
            if !is_smooth(&x).unwrap() {
                continue;
            }
            let rmax = if q <= 5 { 2 } else { 1 };
            for r in 1..=rmax {
                assert_eq!(compute_mr(&x, &l, r).unwrap(), direct_m(&x, r), "q = {q}, r = {r}\n{x}");
            }
            done += 1;
        }
    }
}

#[test]
fn quintic_is_the_locus_of_singular_conics() {
    // C_x is cut out on the plane spanned by x and L; compare its rank with det M_L at random points
    let k = FieldCtx::new(13, 1).unwrap();
    let mut rng = candidate_rng(99, 0);
    let (x, l) = random_cubic_with_line(&k, &mut rng);
    let (a, data) = normalize_line(&x, &l).unwrap();
    let g = x.transform(&a).unwrap();
    let half = k.inv(k.from_int(2)).unwrap();
    let degenerate = |pt: &[FieldElem]| {
        // G(y1 x, y2, y3) = y1 * C_x(y)
        let sub: Vec<Vec<FieldElem>> = (0..5)
            .map(|i| match i {
                0..=2 => vec![pt[i], FieldElem::ZERO, FieldElem::ZERO],
                3 => vec![FieldElem::ZERO, FieldElem::ONE, FieldElem::ZERO],
                _ => vec![FieldElem::ZERO, FieldElem::ZERO, FieldElem::ONE],
            })
            .collect();
        let mut conic = vec![vec![FieldElem::ZERO; 3]; 3];
        for (e, &c) in g.poly().linear_substitute(&sub).terms() {
            assert!(e[0] >= 1);
            let mut e = e.clone();
            e[0] -= 1;
            let idx: Vec<usize> =
                e.iter().enumerate().flat_map(|(i, &d)| std::iter::repeat_n(i, d as usize)).collect();
            let (i, j) = (idx[0], idx[1]);
            if i == j {
                conic[i][i] = k.add(conic[i][i], c);
            } else {
                let h = k.mul(c, half);
                conic[i][j] = k.add(conic[i][j], h);
                conic[j][i] = k.add(conic[j][i], h);
            }
        }
        invert(&k, &conic).is_err()
    };
    let gamma = discriminant_quintic(&data);
    for _ in 0..100 {
        let pt: Vec<FieldElem> = (0..3).map(|_| random_element(&k, &mut rng)).collect();
        if pt.iter().all(|c| c.is_zero()) {
            continue;
        }
        assert_eq!(degenerate(&pt), gamma.eval(&pt).is_zero(), "{pt:?}");
    }
    // random points rarely hit the curve, so also check points of the curve
    let on_curve: Vec<[FieldElem; 3]> = k
        .elements()
        .flat_map(|y| k.elements().map(move |z| [FieldElem::ONE, y, z]))
        .filter(|pt| gamma.eval(pt).is_zero())
        .collect();
    assert!(!on_curve.is_empty());
    assert!(on_curve.iter().all(|pt| degenerate(pt)));
}
