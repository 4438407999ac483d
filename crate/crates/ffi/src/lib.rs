//! C ABI over the band kernel.
//!
//! Every fallible call returns a [`BkStatus`]. On failure a message is kept
//! per thread and can be fetched with [`bk_last_error`]. Strings returned
//! through out-parameters are owned by the caller and released with
//! [`bk_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use band_kernel::algebra::Presentation;
use band_kernel::arith::NonNegRational;
use band_kernel::band::{Band, DEFAULT_SUM_LENGTH};
use band_kernel::spectra::{ExplicitSpec, IntegerSpec, SpecSpace};
use band_kernel::tropical::{bend_null, trop_curve_2d};
use band_kernel::zoo::{parse_field, FieldKind, PadicQ, TadicQt, TrivialQ, ValuedField, ZooBand};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BkStatus {
    Ok = 0,
    CheckFailed = 1,
    InvalidInput = 2,
    NullPointer = 3,
    Panic = 4,
    Unsupported = 5,
}

/// A band from the zoo, selected by id.
pub struct BkBand {
    band: ZooBand,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(BkStatus, String);

fn invalid(e: impl ToString) -> Failure {
    Failure(BkStatus::InvalidInput, e.to_string())
}

fn guard(f: impl FnOnce() -> Result<BkStatus, Failure>) -> BkStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            BkStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(BkStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| invalid(format!("{what} is not UTF-8")))
}

unsafe fn handle<'a>(p: *const BkBand) -> Result<&'a BkBand, Failure> {
    p.as_ref().ok_or_else(|| Failure(BkStatus::NullPointer, "band handle is null".into()))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(BkStatus::NullPointer, "output pointer is null".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(invalid)?;
    write(out, c.into_raw())
}

/// The message of the last failed call on this thread, or NULL. Free it with
/// [`bk_string_free`].
#[no_mangle]
pub extern "C" fn bk_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |m| m.clone().into_raw()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn bk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn bk_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses a band id such as `sign`, `trop`, `ring:Z/6` or `field:Q-padic:3`.
///
/// # Safety
/// `id` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bk_band_new(id: *const c_char, out: *mut *mut BkBand) -> BkStatus {
    guard(|| {
        let band = ZooBand::parse(text(id, "id")?).map_err(invalid)?;
        write(out, Box::into_raw(Box::new(BkBand { band })))?;
        Ok(BkStatus::Ok)
    })
}

/// # Safety
/// `band` must be NULL or a handle from [`bk_band_new`], freed once.
#[no_mangle]
pub unsafe extern "C" fn bk_band_free(band: *mut BkBand) {
    if !band.is_null() {
        drop(Box::from_raw(band));
    }
}

/// Whether the comma-separated formal sum is null.
///
/// # Safety
/// Pointers must be valid; `sum` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn bk_band_is_null(band: *const BkBand, sum: *const c_char, out: *mut bool) -> BkStatus {
    guard(|| {
        let b = &handle(band)?.band;
        let s = b.parse_sum(text(sum, "sum")?).map_err(invalid)?;
        write(out, b.is_null(&s))?;
        Ok(BkStatus::Ok)
    })
}

/// The additive inverse of `elem`, as a string.
///
/// # Safety
/// Pointers must be valid; `elem` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn bk_band_neg(band: *const BkBand, elem: *const c_char, out: *mut *mut c_char) -> BkStatus {
    guard(|| {
        let b = &handle(band)?.band;
        let a = b.parse_elem(text(elem, "elem")?).map_err(invalid)?;
        let n = b.neg(&a).map_err(invalid)?;
        write_string(out, n.to_string())?;
        Ok(BkStatus::Ok)
    })
}

/// Runs the axiom suite and writes the JSON report. Returns `CheckFailed`
/// with the report still written when an axiom fails. `max_len` 0 means the
/// default.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn bk_check_axioms_json(
    band: *const BkBand,
    samples: usize,
    max_len: usize,
    seed: u64,
    out: *mut *mut c_char,
) -> BkStatus {
    guard(|| {
        let b = &handle(band)?.band;
        let len = if max_len == 0 { DEFAULT_SUM_LENGTH } else { max_len };
        let report = b.check_axioms(samples, len, seed);
        write_string(out, report.to_json())?;
        Ok(if report.pass { BkStatus::Ok } else { BkStatus::CheckFailed })
    })
}

/// Spec of the band as JSON. `ring:Z` is truncated to primes at most
/// `prime_bound`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn bk_spec_json(band: *const BkBand, prime_bound: u64, out: *mut *mut c_char) -> BkStatus {
    guard(|| {
        let b = &handle(band)?.band;
        let space = match b {
            ZooBand::Integers => SpecSpace::build(&IntegerSpec { bound: prime_bound }),
            other => SpecSpace::build(&ExplicitSpec::new(other.clone())),
        }
        .map_err(|e| Failure(BkStatus::Unsupported, e.to_string()))?;
        write_string(out, serde_json::to_string_pretty(&space).map_err(invalid)?)?;
        Ok(BkStatus::Ok)
    })
}

fn field(id: &str) -> Result<FieldKind, Failure> {
    parse_field(id).map_err(invalid)
}

fn split(csv: &str) -> Vec<&str> {
    csv.split(',').map(str::trim).filter(|s| !s.is_empty()).collect()
}

fn bend_in<V: ValuedField>(vf: V, vars: &[&str], poly: &str, point: &[&str]) -> Result<bool, Failure> {
    let pres = Presentation::affine(vf.clone(), vars).map_err(invalid)?;
    let f = pres.poly(poly).map_err(invalid)?;
    if point.len() != vars.len() {
        return Err(invalid(format!("point has {} coordinates, expected {}", point.len(), vars.len())));
    }
    let w = point.iter().map(|s| s.parse::<NonNegRational>().map_err(invalid)).collect::<Result<Vec<_>, _>>()?;
    Ok(bend_null(&vf, &f, &w))
}

/// Bend condition of `poly` in the comma-separated `vars` at the nonnegative
/// point `point` (comma-separated rationals).
///
/// # Safety
/// Pointers must be valid and NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn bk_trop_is_point(
    field_id: *const c_char,
    vars: *const c_char,
    poly: *const c_char,
    point: *const c_char,
    out: *mut bool,
) -> BkStatus {
    guard(|| {
        let vars = split(text(vars, "vars")?);
        let poly = text(poly, "poly")?;
        let point = split(text(point, "point")?);
        let member = match field(text(field_id, "field")?)? {
            FieldKind::Trivial => bend_in(TrivialQ, &vars, poly, &point),
            FieldKind::Padic(p) => bend_in::<PadicQ>(p, &vars, poly, &point),
            FieldKind::Tadic => bend_in(TadicQt, &vars, poly, &point),
        }?;
        write(out, member)?;
        Ok(BkStatus::Ok)
    })
}

fn curve_in<V: ValuedField>(vf: V, poly: &str) -> Result<String, Failure> {
    let pres = Presentation::affine(vf.clone(), &["x", "y"]).map_err(invalid)?;
    let f = pres.poly(poly).map_err(invalid)?;
    let curve = trop_curve_2d(&vf, &f).map_err(invalid)?;
    serde_json::to_string_pretty(&curve).map_err(invalid)
}

/// Plane tropical curve of a polynomial in x and y, as JSON.
///
/// # Safety
/// Pointers must be valid and NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn bk_trop_curve_json(
    field_id: *const c_char,
    poly: *const c_char,
    out: *mut *mut c_char,
) -> BkStatus {
    guard(|| {
        let poly = text(poly, "poly")?;
        let json = match field(text(field_id, "field")?)? {
            FieldKind::Trivial => curve_in(TrivialQ, poly),
            FieldKind::Padic(p) => curve_in(p, poly),
            FieldKind::Tadic => curve_in(TadicQt, poly),
        }?;
        write_string(out, json)?;
        Ok(BkStatus::Ok)
    })
}
