//! C ABI over `cubiczeta`.
//!
//! Objects are opaque heap handles released with the matching `*_free`. Every fallible call
//! returns a [`CzStatus`]; on failure [`cz_last_error`] describes what went wrong on the
//! calling thread. Strings handed out by the library are freed with [`cz_string_free`].

use cubiczeta::geometry::{count_points, enumerate_lines_with, is_smooth, CubicForm, DEFAULT_BUDGET};
use cubiczeta::gf::FieldCtx;
use cubiczeta::weil::{verify_weil, WeilPolynomial};
use cubiczeta::zeta::{bound_threefold, threefold_p1, zeta_fano_threefold, Via};
use cubiczeta::Error;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CzStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    InvalidField = 3,
    IncompatibleFields = 4,
    ZeroPolynomial = 5,
    ZeroElement = 6,
    Parse = 7,
    Budget = 8,
    NotExact = 9,
    Precondition = 10,
    Verification = 11,
    OutOfRange = 12,
    Panic = 13,
}

/// Point counts of a threefold or BSD on a line of it.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CzVia {
    Count = 0,
    Bsd = 1,
}

pub struct CzField(FieldCtx);
pub struct CzCubic(CubicForm);
pub struct CzWeil(WeilPolynomial);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> CzStatus {
    match e {
        Error::InvalidField(_) => CzStatus::InvalidField,
        Error::IncompatibleFields(_) => CzStatus::IncompatibleFields,
        Error::ZeroPolynomial => CzStatus::ZeroPolynomial,
        Error::ZeroElement => CzStatus::ZeroElement,
        Error::Parse(_) => CzStatus::Parse,
        Error::Budget(_) => CzStatus::Budget,
        Error::NotExact(_) => CzStatus::NotExact,
        Error::Precondition(_) => CzStatus::Precondition,
        Error::Verification(_) => CzStatus::Verification,
    }
}

struct Fail(CzStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> CzStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CzStatus::Ok,
        Ok(Err(Fail(s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic".into());
            CzStatus::Panic
        }
    }
}

fn null() -> Fail {
    Fail(CzStatus::NullArgument, "null pointer argument".into())
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(null)
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null());
    }
    out.write(v);
    Ok(())
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s).to_str().map_err(|e| Fail(CzStatus::InvalidUtf8, e.to_string()))
}

fn into_c(s: String) -> *mut c_char {
    CString::new(s).expect("no interior nul").into_raw()
}

/// Message for the last failed call on this thread, or null. Valid until the next call.
#[no_mangle]
pub extern "C" fn cz_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn cz_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn cz_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `F_{p^r}`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cz_field_new(p: u64, r: u32, out: *mut *mut CzField) -> CzStatus {
    guard(|| {
        let k = FieldCtx::new(p, r)?;
        put(out, Box::into_raw(Box::new(CzField(k))))
    })
}

/// # Safety
/// `k` must come from [`cz_field_new`] or be null.
#[no_mangle]
pub unsafe extern "C" fn cz_field_free(k: *mut CzField) {
    if !k.is_null() {
        drop(Box::from_raw(k));
    }
}

/// # Safety
/// `k` must be a live field handle.
#[no_mangle]
pub unsafe extern "C" fn cz_field_order(k: *const CzField) -> u64 {
    k.as_ref().map_or(0, |k| k.0.q() as u64)
}

/// Parses a cubic in any supported text format. `field` may be null when the text names one.
///
/// # Safety
/// `src` must be a nul-terminated string, `field` null or live, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cz_cubic_parse(src: *const c_char, field: *const CzField, out: *mut *mut CzCubic) -> CzStatus {
    guard(|| {
        let s = text(src)?;
        let x = CubicForm::parse_any(s, field.as_ref().map(|k| &k.0))?;
        put(out, Box::into_raw(Box::new(CzCubic(x))))
    })
}

/// The Fermat cubic in `n + 2` variables.
///
/// # Safety
/// `field` must be live, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cz_cubic_fermat(field: *const CzField, n: u32, out: *mut *mut CzCubic) -> CzStatus {
    guard(|| {
        let x = CubicForm::fermat(&deref(field)?.0, n as usize)?;
        put(out, Box::into_raw(Box::new(CzCubic(x))))
    })
}

/// # Safety
/// `x` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn cz_cubic_free(x: *mut CzCubic) {
    if !x.is_null() {
        drop(Box::from_raw(x));
    }
}

/// Dimension `n` of the hypersurface, or 0 for a null handle.
///
/// # Safety
/// `x` must be live or null.
#[no_mangle]
pub unsafe extern "C" fn cz_cubic_dimension(x: *const CzCubic) -> u32 {
    x.as_ref().map_or(0, |x| x.0.n() as u32)
}

/// The cubic as JSON.
///
/// # Safety
/// `x` must be live, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cz_cubic_to_json(x: *const CzCubic, out: *mut *mut c_char) -> CzStatus {
    guard(|| put(out, into_c(deref(x)?.0.to_json().to_string())))
}

/// `#X(F_{q^r})`.
///
/// # Safety
/// `x` must be live, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cz_count_points(x: *const CzCubic, r: u32, out: *mut u64) -> CzStatus {
    guard(|| put(out, count_points(&deref(x)?.0, r)?))
}

/// Number of lines defined over `F_{q^k}`.
///
/// # Safety
/// `x` must be live, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cz_count_lines(x: *const CzCubic, k: u32, out: *mut u64) -> CzStatus {
    guard(|| put(out, enumerate_lines_with(&deref(x)?.0, k, DEFAULT_BUDGET)?.len() as u64))
}

/// Writes 1 if smooth over the algebraic closure, else 0.
///
/// # Safety
/// `x` must be live, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cz_is_smooth(x: *const CzCubic, out: *mut i32) -> CzStatus {
    guard(|| put(out, is_smooth(&deref(x)?.0)? as i32))
}

/// `P_1(F(X), T)` of a smooth cubic threefold.
///
/// # Safety
/// `x` must be live, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cz_threefold_p1(x: *const CzCubic, via: CzVia, out: *mut *mut CzWeil) -> CzStatus {
    guard(|| {
        let via = match via {
            CzVia::Count => Via::Count,
            CzVia::Bsd => Via::Bsd,
        };
        let (_, p) = threefold_p1(&deref(x)?.0, via)?;
        put(out, Box::into_raw(Box::new(CzWeil(p))))
    })
}

/// # Safety
/// `p` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn cz_weil_free(p: *mut CzWeil) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `p` must be live or null.
#[no_mangle]
pub unsafe extern "C" fn cz_weil_degree(p: *const CzWeil) -> u32 {
    p.as_ref().map_or(0, |p| p.0.degree() as u32)
}

/// Coefficient of `T^i`; [`CzStatus::OutOfRange`] if it does not fit in 64 bits.
///
/// # Safety
/// `p` must be live, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cz_weil_coeff(p: *const CzWeil, i: u32, out: *mut i64) -> CzStatus {
    guard(|| {
        let c =
            deref(p)?.0.coeffs().get(i as usize).ok_or_else(|| Fail(CzStatus::OutOfRange, format!("no T^{i} term")))?;
        let v = i64::try_from(c).map_err(|_| Fail(CzStatus::OutOfRange, format!("{c} overflows i64")))?;
        put(out, v)
    })
}

/// Writes 1 if the functional equation and root moduli check out, else 0.
///
/// # Safety
/// `p` must be live, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cz_weil_verify(p: *const CzWeil, out: *mut i32) -> CzStatus {
    guard(|| put(out, verify_weil(&deref(p)?.0).passed as i32))
}

/// Factored zeta function of the surface of lines, with Picard number, classification and
/// `D_q`, as JSON.
///
/// # Safety
/// `p1` must be live, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cz_fano_zeta_json(p1: *const CzWeil, out: *mut *mut c_char) -> CzStatus {
    guard(|| {
        let z = zeta_fano_threefold(&deref(p1)?.0)?;
        put(out, into_c(z.to_json().to_string()))
    })
}

/// Smallest and largest possible numbers of `F_q`-lines on a smooth cubic threefold.
///
/// # Safety
/// `min_lines` and `max_lines` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cz_threefold_line_bounds(q: u64, min_lines: *mut u64, max_lines: *mut u64) -> CzStatus {
    guard(|| {
        let b = bound_threefold(q)?;
        let conv = |v: &num_bigint::BigInt| u64::try_from(v).map_err(|_| Fail(CzStatus::OutOfRange, format!("{v}")));
        put(min_lines, conv(&b.min_lines)?)?;
        put(max_lines, conv(&b.max_lines)?)
    })
}
