//! C interface.
//!
//! Handles are opaque and owned by the caller: every `*_free` must be called
//! exactly once. Strings returned through `char **` out-parameters are
//! allocated here and released with [`mz_string_free`]. Every function returns
//! an [`MzStatus`]; on failure [`mz_last_error`] describes what went wrong.
//!
//! An oracle handle counts calls and must not be used from two threads at
//! once.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use maxzx::engine::{maxzx, unbounded_search};
use maxzx::evidence::{deserialize_certificate, serialize_certificate, verify_certificate, Outcome, Verdict};
use maxzx::oracle::Oracle;
use maxzx::parser::{parse_oracle_spec, parse_poly, OverrideLine};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MzStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    EngineError = 4,
    CertificateError = 5,
    /// No prime: the outcome is evidence, or the search hit its limit.
    NotFound = 6,
    Panic = 7,
}

pub struct MzOracle {
    inner: Oracle,
}

pub struct MzOutcome {
    inner: Outcome,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn fail(status: MzStatus, msg: impl Into<String>) -> MzStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> MzStatus) -> MzStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(MzStatus::Panic, "internal panic"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, MzStatus> {
    if p.is_null() {
        return Err(fail(MzStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(MzStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> MzStatus {
    if out.is_null() {
        return fail(MzStatus::NullPointer, "output pointer is null");
    }
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            MzStatus::Ok
        }
        Err(_) => fail(MzStatus::InvalidUtf8, "string contains NUL"),
    }
}

macro_rules! try_ffi {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(status) => return status,
        }
    };
}

/// Parse an oracle specification (the text of an oracle file).
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mz_oracle_from_spec(text: *const c_char, out: *mut *mut MzOracle) -> MzStatus {
    guard(|| {
        let text = try_ffi!(read_str(text, "text"));
        if out.is_null() {
            return fail(MzStatus::NullPointer, "out is null");
        }
        match parse_oracle_spec(text) {
            Ok(spec) => {
                *out = Box::into_raw(Box::new(MzOracle { inner: Oracle::from_spec(&spec) }));
                MzStatus::Ok
            }
            Err(e) => fail(MzStatus::ParseError, e.to_string()),
        }
    })
}

/// # Safety
/// `oracle` must come from [`mz_oracle_from_spec`] and not be freed yet, or be null.
#[no_mangle]
pub unsafe extern "C" fn mz_oracle_free(oracle: *mut MzOracle) {
    if !oracle.is_null() {
        drop(Box::from_raw(oracle));
    }
}

unsafe fn set_override(oracle: *mut MzOracle, line: impl FnOnce() -> Result<OverrideLine, MzStatus>) -> MzStatus {
    guard(|| {
        if oracle.is_null() {
            return fail(MzStatus::NullPointer, "oracle is null");
        }
        let line = try_ffi!(line());
        let o = &mut *oracle;
        o.inner = o.inner.with_override(line);
        MzStatus::Ok
    })
}

/// Force `M(key)` to `value`.
///
/// # Safety
/// `oracle` must be a live handle and `key` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn mz_oracle_set_member(oracle: *mut MzOracle, key: *const c_char, value: bool) -> MzStatus {
    set_override(oracle, || {
        let key = read_str(key, "key")?;
        let key = parse_poly(key).map_err(|e| fail(MzStatus::ParseError, format!("key: {e}")))?;
        Ok(OverrideLine::Member(key, value))
    })
}

/// Force `nu(key)` to `value`.
///
/// # Safety
/// `oracle` must be a live handle; `key` and `value` NUL-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn mz_oracle_set_nu(oracle: *mut MzOracle, key: *const c_char, value: *const c_char) -> MzStatus {
    set_override(oracle, || {
        let key = parse_poly(read_str(key, "key")?).map_err(|e| fail(MzStatus::ParseError, format!("key: {e}")))?;
        let value =
            parse_poly(read_str(value, "value")?).map_err(|e| fail(MzStatus::ParseError, format!("value: {e}")))?;
        Ok(OverrideLine::Nu(key, value))
    })
}

/// Membership calls made through this handle; 0 for null.
///
/// # Safety
/// `oracle` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn mz_oracle_m_calls(oracle: *const MzOracle) -> u64 {
    oracle.as_ref().map_or(0, |o| o.inner.m_calls())
}

/// Run the engine.
///
/// # Safety
/// `oracle` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mz_run(oracle: *const MzOracle, out: *mut *mut MzOutcome) -> MzStatus {
    guard(|| {
        let (Some(o), false) = (oracle.as_ref(), out.is_null()) else {
            return fail(MzStatus::NullPointer, "oracle or out is null");
        };
        match maxzx(&o.inner) {
            Ok(outcome) => {
                *out = Box::into_raw(Box::new(MzOutcome { inner: outcome }));
                MzStatus::Ok
            }
            Err(e) => fail(MzStatus::EngineError, e.to_string()),
        }
    })
}

/// # Safety
/// `outcome` must come from [`mz_run`] and not be freed yet, or be null.
#[no_mangle]
pub unsafe extern "C" fn mz_outcome_free(outcome: *mut MzOutcome) {
    if !outcome.is_null() {
        drop(Box::from_raw(outcome));
    }
}

/// 0 for a prime, otherwise the evidence case 1 to 5; 255 for null.
///
/// # Safety
/// `outcome` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn mz_outcome_case(outcome: *const MzOutcome) -> u8 {
    match outcome.as_ref().map(|o| &o.inner.verdict) {
        Some(Verdict::Prime(_)) => 0,
        Some(Verdict::NotMaximal(e)) => e.case_number(),
        None => u8::MAX,
    }
}

/// The prime found, in decimal. `MZ_STATUS_NOT_FOUND` if the outcome is evidence.
///
/// # Safety
/// `outcome` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mz_outcome_prime(outcome: *const MzOutcome, out: *mut *mut c_char) -> MzStatus {
    guard(|| match outcome.as_ref().map(|o| &o.inner.verdict) {
        None => fail(MzStatus::NullPointer, "outcome is null"),
        Some(Verdict::Prime(p)) => write_string(out, p.to_string()),
        Some(Verdict::NotMaximal(e)) => fail(MzStatus::NotFound, format!("outcome is evidence: {e}")),
    })
}

/// The verdict line, e.g. `prime: 1019` or `not-maximal: case5 a = x`.
///
/// # Safety
/// `outcome` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mz_outcome_verdict(outcome: *const MzOutcome, out: *mut *mut c_char) -> MzStatus {
    guard(|| match outcome.as_ref() {
        None => fail(MzStatus::NullPointer, "outcome is null"),
        Some(o) => write_string(out, o.inner.verdict.to_string()),
    })
}

/// The certificate of the run as JSON.
///
/// # Safety
/// `outcome` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mz_outcome_certificate(outcome: *const MzOutcome, out: *mut *mut c_char) -> MzStatus {
    guard(|| match outcome.as_ref() {
        None => fail(MzStatus::NullPointer, "outcome is null"),
        Some(o) => write_string(out, serialize_certificate(&o.inner.certificate)),
    })
}

/// Check a JSON certificate against the oracle. `pass` receives the overall
/// result; `report`, if not null, receives the report as JSON. A certificate
/// that does not parse gives `MZ_STATUS_CERTIFICATE_ERROR`.
///
/// # Safety
/// `oracle` must be a live handle, `cert_json` a NUL-terminated string,
/// `pass` a valid pointer and `report` valid or null.
#[no_mangle]
pub unsafe extern "C" fn mz_verify(
    oracle: *const MzOracle,
    cert_json: *const c_char,
    pass: *mut bool,
    report: *mut *mut c_char,
) -> MzStatus {
    guard(|| {
        let text = try_ffi!(read_str(cert_json, "cert_json"));
        let (Some(o), false) = (oracle.as_ref(), pass.is_null()) else {
            return fail(MzStatus::NullPointer, "oracle or pass is null");
        };
        let cert = match deserialize_certificate(text) {
            Ok(c) => c,
            Err(e) => return fail(MzStatus::CertificateError, e.to_string()),
        };
        let r = verify_certificate(&o.inner, &cert);
        *pass = r.overall();
        if report.is_null() {
            MzStatus::Ok
        } else {
            write_string(report, r.to_json().to_string())
        }
    })
}

/// Test primes in increasing order; `limit` 0 means no bound.
/// `MZ_STATUS_NOT_FOUND` when the limit is reached.
///
/// # Safety
/// `oracle` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mz_search(oracle: *const MzOracle, limit: u64, out: *mut *mut c_char) -> MzStatus {
    guard(|| {
        let Some(o) = oracle.as_ref() else {
            return fail(MzStatus::NullPointer, "oracle is null");
        };
        match unbounded_search(&o.inner, limit) {
            Some(p) => write_string(out, p.to_string()),
            None => fail(MzStatus::NotFound, format!("none within {limit}")),
        }
    })
}

/// # Safety
/// `s` must be a string returned by this library and not freed yet, or null.
#[no_mangle]
pub unsafe extern "C" fn mz_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failing call on this thread, or null. Valid until
/// the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn mz_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
