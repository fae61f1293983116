//! C ABI for `crossratio`.
//!
//! Structures are opaque handles created by the `cr_structure_*`
//! constructors and released with [`cr_structure_free`]. Every fallible call
//! returns a [`CrStatus`]; on failure [`cr_last_error`] describes the error.
//! Strings returned through `char **` out-parameters are owned by the caller
//! and must be released with [`cr_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use crossratio::charfns::verify_symset_equals_r;
use crossratio::moebius::structure::default_point_names;
use crossratio::moebius::{random_submoebius, Structure};
use crossratio::perm::Permutation;
use crossratio::rep::{eta, V5_DIM};
use crossratio::report::{charfns_report, decompose_report};

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CrStatus {
    Ok = 0,
    /// A verification ran and did not pass.
    VerificationFailed = 1,
    NullPointer = 2,
    InvalidUtf8 = 3,
    InvalidInput = 4,
    Internal = 5,
}

/// Opaque handle to a sub-Möbius structure.
pub struct CrStructure {
    inner: Structure,
}

/// Entries of `η_5(π)`, row-major.
pub const CR_ETA5_LEN: usize = 225;

const _: () = assert!(CR_ETA5_LEN == V5_DIM * V5_DIM);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn fail(status: CrStatus, msg: impl Into<String>) -> CrStatus {
    set_error(msg);
    status
}

/// Runs `f`, turning panics into `Internal`.
fn guard(f: impl FnOnce() -> CrStatus) -> CrStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(CrStatus::Internal, "internal panic"))
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, CrStatus> {
    if s.is_null() {
        return Err(fail(CrStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(CrStatus::InvalidUtf8, "argument is not valid UTF-8"))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> CrStatus {
    if out.is_null() {
        return CrStatus::Ok;
    }
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            CrStatus::Ok
        }
        Err(_) => fail(CrStatus::Internal, "string contains NUL"),
    }
}

unsafe fn write_handle(out: *mut *mut CrStructure, inner: Structure) -> CrStatus {
    if out.is_null() {
        return fail(CrStatus::NullPointer, "null handle out-parameter");
    }
    *out = Box::into_raw(Box::new(CrStructure { inner }));
    CrStatus::Ok
}

unsafe fn json_out<T: serde::Serialize>(value: &T, out: *mut *mut c_char) -> CrStatus {
    match serde_json::to_string(value) {
        Ok(s) => write_string(out, s),
        Err(e) => fail(CrStatus::Internal, e.to_string()),
    }
}

/// Message for the last failed call on this thread, or NULL. The pointer
/// stays valid until the next `cr_*` call on the same thread.
#[no_mangle]
pub extern "C" fn cr_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn cr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a structure file (`"kind": "semi-metric"` or `"sub-moebius"`).
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cr_structure_from_json(json: *const c_char, out: *mut *mut CrStructure) -> CrStatus {
    guard(|| {
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match Structure::from_json(text) {
            Ok(s) => write_handle(out, s),
            Err(e) => fail(CrStatus::InvalidInput, e.to_string()),
        }
    })
}

/// The Möbius structure of the extended real line.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cr_structure_extended_line(out: *mut *mut CrStructure) -> CrStatus {
    guard(|| write_handle(out, Structure::ExtendedLine))
}

/// A random sub-Möbius structure on five points `p1..p5`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cr_structure_random(seed: u64, out: *mut *mut CrStructure) -> CrStatus {
    guard(|| match random_submoebius(default_point_names(5), seed) {
        Ok(s) => write_handle(out, Structure::Free(s)),
        Err(e) => fail(CrStatus::Internal, e.to_string()),
    })
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// `s` must come from a `cr_structure_*` constructor and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn cr_structure_free(s: *mut CrStructure) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Number of points, or 0 for the extended line.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cr_structure_point_count(s: *const CrStructure, out: *mut usize) -> CrStatus {
    guard(|| {
        if s.is_null() || out.is_null() {
            return fail(CrStatus::NullPointer, "null argument");
        }
        *out = (*s).inner.point_count().unwrap_or(0);
        CrStatus::Ok
    })
}

/// The structure as a JSON structure file. Fails for the extended line.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cr_structure_to_json(s: *const CrStructure, out: *mut *mut c_char) -> CrStatus {
    guard(|| {
        if s.is_null() || out.is_null() {
            return fail(CrStatus::NullPointer, "null argument");
        }
        match (*s).inner.to_file() {
            Some(file) => json_out(&file, out),
            None => fail(CrStatus::InvalidInput, "the extended line has no finite description"),
        }
    })
}

/// Checks the sub-Möbius axioms. `pass` and `report_json` may be NULL.
///
/// # Safety
/// `s` must be a live handle; non-NULL out-parameters must be writable.
#[no_mangle]
pub unsafe extern "C" fn cr_check_axioms(
    s: *const CrStructure,
    pass: *mut bool,
    report_json: *mut *mut c_char,
) -> CrStatus {
    guard(|| {
        if s.is_null() {
            return fail(CrStatus::NullPointer, "null handle");
        }
        let report = match (*s).inner.check_axioms() {
            Ok(r) => r,
            Err(e) => return fail(CrStatus::InvalidInput, e.to_string()),
        };
        if !pass.is_null() {
            *pass = report.pass;
        }
        json_out(&report, report_json)
    })
}

/// Runs the Möbius criterion: exhaustive on at most seven points, otherwise
/// `samples` seeded tuples. Returns `VerificationFailed` when the structure
/// is not Möbius; the report is written either way.
///
/// # Safety
/// `s` must be a live handle; non-NULL out-parameters must be writable.
#[no_mangle]
pub unsafe extern "C" fn cr_verify(
    s: *const CrStructure,
    samples: usize,
    seed: u64,
    tolerance: f64,
    is_moebius: *mut bool,
    report_json: *mut *mut c_char,
) -> CrStatus {
    guard(|| {
        if s.is_null() {
            return fail(CrStatus::NullPointer, "null handle");
        }
        let report = match (*s).inner.verify(samples, seed, tolerance) {
            Ok(r) => r,
            Err(e) => return fail(CrStatus::InvalidInput, e.to_string()),
        };
        if !is_moebius.is_null() {
            *is_moebius = report.is_moebius;
        }
        match json_out(&report, report_json) {
            CrStatus::Ok if !report.is_moebius => fail(CrStatus::VerificationFailed, "structure is not Möbius"),
            status => status,
        }
    })
}

fn report_status(pass: bool, status: CrStatus) -> CrStatus {
    match status {
        CrStatus::Ok if !pass => fail(CrStatus::VerificationFailed, "report did not pass"),
        s => s,
    }
}

/// Character of `η_5` and its decomposition, as JSON.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cr_decompose_report(out: *mut *mut c_char) -> CrStatus {
    guard(|| match decompose_report() {
        Ok(r) => report_status(r.pass, json_out(&r, out)),
        Err(e) => fail(CrStatus::Internal, e.to_string()),
    })
}

/// The ten characteristic functions and their orbit, as JSON.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cr_charfns_report(out: *mut *mut c_char) -> CrStatus {
    guard(|| match charfns_report() {
        Ok(r) => report_status(r.pass, json_out(&r, out)),
        Err(e) => fail(CrStatus::Internal, e.to_string()),
    })
}

/// Symmetry set versus the `χ^32` component, as JSON.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cr_symset_report(out: *mut *mut c_char) -> CrStatus {
    guard(|| match verify_symset_equals_r() {
        Ok(r) => report_status(r.pass, json_out(&r, out)),
        Err(e) => fail(CrStatus::Internal, e.to_string()),
    })
}

unsafe fn parse_perm(one_line: *const c_char) -> Result<Permutation, CrStatus> {
    let text = read_str(one_line)?;
    text.parse()
        .map_err(|e: crossratio::perm::PermError| fail(CrStatus::InvalidInput, e.to_string()))
}

/// Sign of a permutation in one-line notation, e.g. `"15342"`.
///
/// # Safety
/// `one_line` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cr_permutation_sign(one_line: *const c_char, out: *mut i8) -> CrStatus {
    guard(|| {
        if out.is_null() {
            return fail(CrStatus::NullPointer, "null out-parameter");
        }
        match parse_perm(one_line) {
            Ok(p) => {
                *out = p.sign();
                CrStatus::Ok
            }
            Err(s) => s,
        }
    })
}

/// Writes the `15 × 15` matrix `η_5(π)` row-major into `out`, which must
/// hold [`CR_ETA5_LEN`] entries.
///
/// # Safety
/// `one_line` must be a NUL-terminated string; `out` must point to
/// `CR_ETA5_LEN` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn cr_eta5(one_line: *const c_char, out: *mut i8) -> CrStatus {
    guard(|| {
        if out.is_null() {
            return fail(CrStatus::NullPointer, "null out-parameter");
        }
        let p = match parse_perm(one_line) {
            Ok(p) => p,
            Err(s) => return s,
        };
        if p.degree() != 5 {
            return fail(
                CrStatus::InvalidInput,
                format!("expected a permutation of degree 5, got {}", p.degree()),
            );
        }
        let m = match eta(&p) {
            Ok(m) => m,
            Err(e) => return fail(CrStatus::Internal, e.to_string()),
        };
        let entries = std::slice::from_raw_parts_mut(out, CR_ETA5_LEN);
        entries.fill(0);
        for j in 0..V5_DIM {
            let (row, sign) = m.column(j);
            entries[row * V5_DIM + j] = sign;
        }
        CrStatus::Ok
    })
}
