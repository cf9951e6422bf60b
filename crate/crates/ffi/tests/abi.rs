use cubiczeta_ffi::*;
use std::ffi::{CStr, CString};
use std::ptr;

fn field(p: u64, r: u32) -> *mut CzField {
    let mut k = ptr::null_mut();
    assert_eq!(unsafe { cz_field_new(p, r, &mut k) }, CzStatus::Ok);
    k
}

fn last_error() -> String {
    let e = cz_last_error();
    assert!(!e.is_null());
    unsafe { CStr::from_ptr(e) }.to_string_lossy().into_owned()
}

#[test]
fn fermat_threefold_over_f2() {
    unsafe {
        let k = field(2, 1);
        assert_eq!(cz_field_order(k), 2);
        let mut x = ptr::null_mut();
        assert_eq!(cz_cubic_fermat(k, 3, &mut x), CzStatus::Ok);
        assert_eq!(cz_cubic_dimension(x), 3);
        let mut n = 0;
        assert_eq!(cz_count_points(x, 1, &mut n), CzStatus::Ok);
        assert_eq!(n, 15);
        assert_eq!(cz_count_lines(x, 1, &mut n), CzStatus::Ok);
        assert_eq!(n, 15);
        let mut smooth = -1;
        assert_eq!(cz_is_smooth(x, &mut smooth), CzStatus::Ok);
        assert_eq!(smooth, 1);
        let mut p1 = ptr::null_mut();
        assert_eq!(cz_threefold_p1(x, CzVia::Count, &mut p1), CzStatus::Ok);
        assert_eq!(cz_weil_degree(p1), 10);
        let mut c = 0;
        assert_eq!(cz_weil_coeff(p1, 10, &mut c), CzStatus::Ok);
        assert_eq!(c, 32);
        assert_eq!(cz_weil_coeff(p1, 11, &mut c), CzStatus::OutOfRange);
        let mut ok = 0;
        assert_eq!(cz_weil_verify(p1, &mut ok), CzStatus::Ok);
        assert_eq!(ok, 1);
        let mut s = ptr::null_mut();
        assert_eq!(cz_fano_zeta_json(p1, &mut s), CzStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(CStr::from_ptr(s).to_str().unwrap()).unwrap();
        assert_eq!(v["variety"], "F(X)");
        cz_string_free(s);
        cz_weil_free(p1);
        cz_cubic_free(x);
        cz_field_free(k);
    }
}

#[test]
fn parse_and_errors() {
    unsafe {
        let mut k = ptr::null_mut();
        assert_eq!(cz_field_new(6, 1, &mut k), CzStatus::InvalidField);
        assert!(last_error().contains("6"));
        let src = CString::new("field 2\n1 3 0 0 0 0\n1 0 3 0 0 0\n1 0 0 3 0 0\n1 0 0 0 3 0\n1 0 0 0 0 3\n").unwrap();
        let mut x = ptr::null_mut();
        assert_eq!(cz_cubic_parse(src.as_ptr(), ptr::null(), &mut x), CzStatus::Ok);
        assert!(cz_last_error().is_null());
        let mut s = ptr::null_mut();
        assert_eq!(cz_cubic_to_json(x, &mut s), CzStatus::Ok);
        cz_string_free(s);
        // characteristic 2 has no BSD route
        let mut p1 = ptr::null_mut();
        assert_eq!(cz_threefold_p1(x, CzVia::Bsd, &mut p1), CzStatus::Precondition);
        assert!(p1.is_null());
        cz_cubic_free(x);
        let bad = CString::new("1 2 3").unwrap();
        assert_eq!(cz_cubic_parse(bad.as_ptr(), ptr::null(), &mut x), CzStatus::Parse);
        assert_eq!(cz_count_points(ptr::null(), 1, ptr::null_mut()), CzStatus::NullArgument);
        let (mut lo, mut hi) = (0, 0);
        assert_eq!(cz_threefold_line_bounds(11, &mut lo, &mut hi), CzStatus::Ok);
        assert_eq!((lo, hi), (10, 1014));
        assert!(!CStr::from_ptr(cz_version()).to_bytes().is_empty());
    }
}

#[test]
fn header_is_valid_c_and_cpp() {
    let dir = env!("CARGO_MANIFEST_DIR");
    let header = std::fs::read_to_string(format!("{dir}/include/cubiczeta.h")).unwrap();
    for f in ["cz_field_new", "cz_threefold_p1", "cz_last_error", "CZ_STATUS_BUDGET"] {
        assert!(header.contains(f), "{f}");
    }
    for (cc, lang) in [("cc", "c"), ("c++", "c++")] {
        let status = std::process::Command::new(cc)
            .args(["-fsyntax-only", "-Wall", "-Werror", "-x", lang, "-I"])
            .arg(format!("{dir}/include"))
            .arg(format!("{dir}/tests/smoke.c"))
            .status();
        match status {
            Ok(s) => assert!(s.success(), "{cc} rejected the header"),
            Err(e) => eprintln!("skipping {cc}: {e}"),
        }
    }
}
