//! C ABI over `endotriv`. Groups are opaque handles; every call returns an
//! [`EtStatus`] and leaves a message for [`et_last_error`] on failure.
//! Strings handed out by the library must be released with [`et_string_free`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use endotriv::analysis::{k_g_circle, reproduce_3m10, theorem_a_report, ReportOptions};
use endotriv::grouptheory::sylow_2;
use endotriv::modrep::INDUCTION_CAP;
use endotriv::permgroup::{parse_grp, PermGroup, Permutation};
use endotriv::Error;

/// Result codes. Zero is success.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EtStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    Scale = 5,
    NotSemidihedral = 6,
    RouteDisagreement = 7,
    Undecided = 8,
    Internal = 9,
    Panic = 10,
}

/// Opaque permutation group.
pub struct EtGroup {
    inner: PermGroup,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(s).ok());
}

fn status_of(e: &Error) -> EtStatus {
    match e {
        Error::Parse { .. } => EtStatus::Parse,
        Error::Scale { .. } => EtStatus::Scale,
        Error::NotSemidihedral(_) => EtStatus::NotSemidihedral,
        Error::RouteDisagreement(_) => EtStatus::RouteDisagreement,
        Error::Undecided(_) => EtStatus::Undecided,
        Error::DegreeMismatch { .. }
        | Error::NotBijective { .. }
        | Error::InvalidArgument(_)
        | Error::UnsupportedField { .. }
        | Error::FieldTooSmall { .. }
        | Error::NotSubgroup(_)
        | Error::NotNormal(_)
        | Error::NotAMember => EtStatus::InvalidArgument,
        _ => EtStatus::Internal,
    }
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (EtStatus, String)>) -> EtStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            EtStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            EtStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (EtStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (EtStatus, String) {
    (EtStatus::NullPointer, format!("{what} is null"))
}

unsafe fn group_ref<'a>(g: *const EtGroup) -> Result<&'a PermGroup, (EtStatus, String)> {
    g.as_ref().map(|g| &g.inner).ok_or_else(|| null("group"))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), (EtStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    let c = CString::new(s).map_err(|_| (EtStatus::Internal, "string contains NUL".to_string()))?;
    *out = c.into_raw();
    Ok(())
}

/// Message for the most recent failure on this thread, or NULL. Valid until
/// the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn et_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn et_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Frees a string returned by this library. NULL is ignored.
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn et_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `.grp` text into a new group handle.
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn et_group_from_grp_text(text: *const c_char, out: *mut *mut EtGroup) -> EtStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| (EtStatus::InvalidUtf8, "text is not UTF-8".to_string()))?;
        let g = parse_grp(s).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(EtGroup { inner: g }));
        Ok(())
    })
}

/// Builds a group from `n_gens` image arrays of length `degree`, stored
/// consecutively in `images` (0-based points).
/// `images` must point to `degree * n_gens` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn et_group_from_images(
    degree: usize,
    images: *const u32,
    n_gens: usize,
    out: *mut *mut EtGroup,
) -> EtStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("output pointer"));
        }
        if images.is_null() && degree * n_gens > 0 {
            return Err(null("images"));
        }
        let all: &[u32] = if degree * n_gens == 0 { &[] } else { std::slice::from_raw_parts(images, degree * n_gens) };
        let gens = all
            .chunks(degree.max(1))
            .take(n_gens)
            .map(|c| Permutation::from_images(c.to_vec()))
            .collect::<Result<Vec<_>, _>>()
            .map_err(lib_err)?;
        let g = PermGroup::new(degree, gens).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(EtGroup { inner: g }));
        Ok(())
    })
}

/// Releases a group handle. NULL is ignored.
/// `g` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn et_group_free(g: *mut EtGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of points acted on, or 0 for NULL.
/// `g` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn et_group_degree(g: *const EtGroup) -> usize {
    g.as_ref().map_or(0, |g| g.inner.degree())
}

/// Group order as a decimal string.
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn et_group_order(g: *const EtGroup, out: *mut *mut c_char) -> EtStatus {
    guard(|| {
        let g = group_ref(g)?;
        write_string(out, g.order().to_string())
    })
}

/// Runs the full analysis and returns the JSON report. `green_cap` of 0
/// selects the default induction cap.
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn et_analyze_json(
    g: *const EtGroup,
    field_exp: u32,
    skip_green: bool,
    green_cap: usize,
    out: *mut *mut c_char,
) -> EtStatus {
    guard(|| {
        let g = group_ref(g)?;
        let opts = ReportOptions {
            field_exp,
            skip_green,
            green_cap: if green_cap == 0 { INDUCTION_CAP } else { green_cap },
        };
        let r = theorem_a_report(g, &opts).map_err(lib_err)?;
        write_string(out, r.to_json())
    })
}

/// `K_G°` data for a Sylow 2-subgroup, as JSON.
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn et_kgc_json(g: *const EtGroup, out: *mut *mut c_char) -> EtStatus {
    guard(|| {
        let g = group_ref(g)?;
        let p = sylow_2(g).map_err(lib_err)?;
        let r = k_g_circle(g, &p).map_err(lib_err)?;
        write_string(out, serde_json::to_string_pretty(&r).expect("serializable"))
    })
}

/// Runs the 3.M10 reproduction. `all_pass` receives whether every check
/// agreed; `out` (optional) receives the JSON record.
/// `all_pass` must be writable; `out` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn et_reproduce_3m10_json(all_pass: *mut bool, out: *mut *mut c_char) -> EtStatus {
    guard(|| {
        if all_pass.is_null() {
            return Err(null("all_pass"));
        }
        let r = reproduce_3m10().map_err(lib_err)?;
        *all_pass = r.all_pass();
        if !out.is_null() {
            write_string(out, serde_json::to_string_pretty(&r).expect("serializable"))?;
        }
        Ok(())
    })
}
