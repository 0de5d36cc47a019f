//! C ABI over `braidforge`.
//!
//! Every fallible function returns a [`BfStatus`]; on failure the message is
//! available from [`bf_last_error_message`]. Handles are opaque and must be
//! released with their `_free` function. Strings handed out by this library
//! are released with [`bf_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use braidforge::algebra::basis_change::hat;
use braidforge::algebra::relations::change_basis_deg2;
use braidforge::algebra::BasisLabel;
use braidforge::braid::{check_constant_ybe, SignCase};
use braidforge::dual::{check_identity_str, minus_plus_context, DualContext};
use braidforge::rtt::{derive_case, RttDerivation};
use braidforge::Error;

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    Degree = 4,
    Internal = 5,
}

/// Derived RTT relations for one sign case.
pub struct BfDerivation {
    inner: RttDerivation,
}

/// Truncated dual of the (-,+,-) bialgebra.
pub struct BfDualContext {
    inner: DualContext,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(s));
}

fn status_of(e: &Error) -> BfStatus {
    match e {
        Error::Parse { .. } | Error::SignCase(_) | Error::Generator(_) => BfStatus::Parse,
        Error::Degree { .. } | Error::TruncationTooLarge(_) => BfStatus::Degree,
        Error::Basis { .. } => BfStatus::InvalidArgument,
        _ => BfStatus::Internal,
    }
}

fn fail(e: Error) -> BfStatus {
    let s = status_of(&e);
    set_error(e.to_string());
    s
}

/// Runs `f`, turning panics into `Internal`.
fn guard(f: impl FnOnce() -> BfStatus) -> BfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            BfStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, BfStatus> {
    if p.is_null() {
        set_error("null string argument");
        return Err(BfStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        BfStatus::InvalidArgument
    })
}

fn parse_case(s: &str) -> Result<SignCase, BfStatus> {
    s.parse().map_err(fail)
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s)
        .map(CString::into_raw)
        .unwrap_or(ptr::null_mut())
}

/// Message for the most recent failure on this thread, or NULL. The caller
/// owns the returned string.
#[no_mangle]
pub extern "C" fn bf_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| {
        e.borrow()
            .as_ref()
            .map_or(ptr::null_mut(), |s| s.clone().into_raw())
    })
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn bf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version; static storage, do not free.
#[no_mangle]
pub extern "C" fn bf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Exact constant Yang-Baxter check for a case such as `"+-+"`.
///
/// # Safety
/// `sign_case` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bf_constant_ybe_holds(
    sign_case: *const c_char,
    out: *mut bool,
) -> BfStatus {
    guard(|| {
        if out.is_null() {
            return BfStatus::NullPointer;
        }
        let case = match read_str(sign_case).and_then(parse_case) {
            Ok(c) => c,
            Err(s) => return s,
        };
        *out = check_constant_ybe(case);
        BfStatus::Ok
    })
}

/// Derives the RTT relations of one sign case.
///
/// # Safety
/// `sign_case` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bf_derivation_new(
    sign_case: *const c_char,
    out: *mut *mut BfDerivation,
) -> BfStatus {
    guard(|| {
        if out.is_null() {
            return BfStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let case = match read_str(sign_case).and_then(parse_case) {
            Ok(c) => c,
            Err(s) => return s,
        };
        *out = Box::into_raw(Box::new(BfDerivation {
            inner: derive_case(case),
        }));
        BfStatus::Ok
    })
}

/// Dimension of the degree-2 relation space.
///
/// # Safety
/// `d` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bf_derivation_dimension(
    d: *const BfDerivation,
    out: *mut usize,
) -> BfStatus {
    guard(|| {
        if d.is_null() || out.is_null() {
            return BfStatus::NullPointer;
        }
        *out = (*d).inner.dimension;
        BfStatus::Ok
    })
}

/// Relations as JSON in `"original"`, `"tilde"` or `"hat"` generators. The
/// caller owns `*out`.
///
/// # Safety
/// `d` must be a live handle, `basis` NUL-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bf_derivation_relations_json(
    d: *const BfDerivation,
    basis: *const c_char,
    out: *mut *mut c_char,
) -> BfStatus {
    guard(|| {
        if d.is_null() || out.is_null() {
            return BfStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let label: BasisLabel = match read_str(basis).map(str::parse) {
            Ok(Ok(b)) => b,
            Ok(Err(e)) => return fail(e),
            Err(s) => return s,
        };
        let inner = &(*d).inner;
        let json = match label {
            BasisLabel::Original => inner.relations_original.to_json(),
            BasisLabel::Tilde => inner.relations_tilde.to_json(),
            BasisLabel::Hat => {
                change_basis_deg2(&inner.relations_tilde, &hat(), BasisLabel::Hat).to_json()
            }
        };
        *out = into_c_string(json.to_string());
        BfStatus::Ok
    })
}

/// Releases a derivation. NULL is ignored.
///
/// # Safety
/// `d` must come from [`bf_derivation_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn bf_derivation_free(d: *mut BfDerivation) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Builds the dual context truncated at `max_degree` (at most 5).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bf_dual_context_new(
    max_degree: usize,
    out: *mut *mut BfDualContext,
) -> BfStatus {
    guard(|| {
        if out.is_null() {
            return BfStatus::NullPointer;
        }
        *out = ptr::null_mut();
        match minus_plus_context(max_degree) {
            Ok(c) => {
                *out = Box::into_raw(Box::new(BfDualContext { inner: c }));
                BfStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Number of normal words of degree `degree`.
///
/// # Safety
/// `ctx` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bf_dual_basis_size(
    ctx: *const BfDualContext,
    degree: usize,
    out: *mut usize,
) -> BfStatus {
    guard(|| {
        if ctx.is_null() || out.is_null() {
            return BfStatus::NullPointer;
        }
        let q = (*ctx).inner.quotient();
        if degree > q.max_degree() {
            set_error(format!(
                "degree {degree} exceeds truncation {}",
                q.max_degree()
            ));
            return BfStatus::Degree;
        }
        *out = q.basis(degree).len();
        BfStatus::Ok
    })
}

/// Checks an identity such as `"[K,P] = 2P"` on every normal word of the
/// truncation; `*holds` is true when all instances hold.
///
/// # Safety
/// `ctx` must be a live handle, `identity` NUL-terminated and `holds`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn bf_dual_check_identity(
    ctx: *const BfDualContext,
    identity: *const c_char,
    holds: *mut bool,
) -> BfStatus {
    guard(|| {
        if ctx.is_null() || holds.is_null() {
            return BfStatus::NullPointer;
        }
        let s = match read_str(identity) {
            Ok(s) => s,
            Err(st) => return st,
        };
        match check_identity_str(&(*ctx).inner, s) {
            Ok(records) => {
                *holds = records.iter().all(|r| r.holds);
                BfStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Releases a dual context. NULL is ignored.
///
/// # Safety
/// `ctx` must come from [`bf_dual_context_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn bf_dual_context_free(ctx: *mut BfDualContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}
