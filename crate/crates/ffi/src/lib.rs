//! C interface to the sncx engine.
//!
//! Complexes cross the boundary as opaque [`SncxComplex`] handles. Every
//! function returns an [`SncxStatus`]; on failure a message is available
//! from [`sncx_last_error`] on the same thread until the next call. Strings
//! returned through out-parameters are owned by the caller and released
//! with [`sncx_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sncx::complex::Complex;
use sncx::homology::{homology, wedge_certificate};
use sncx::newton::{newton_polyhedron, parse_support, torus_hypersurface_boundary_complex_weighted, w0_report, PolytopeInput};
use sncx::snc::{dual_complex, toric_link, Fan, StrataDescription};
use sncx::transforms::{run_blowup_script, BlowupScript};

/// Result of every call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SncxStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The input could not be parsed or violates its format.
    InvalidInput = 3,
    /// The input was well formed but the computation was rejected.
    Failed = 4,
    /// A caller-provided buffer is too small; the needed length is reported.
    BufferTooSmall = 5,
    /// An internal error was caught at the boundary.
    Panic = 6,
}

/// Opaque handle to a complex.
pub struct SncxComplex {
    inner: Complex,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let text = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

struct Failure(SncxStatus, String);

impl Failure {
    fn input(e: impl std::fmt::Display) -> Self {
        Failure(SncxStatus::InvalidInput, e.to_string())
    }

    fn failed(e: impl std::fmt::Display) -> Self {
        Failure(SncxStatus::Failed, e.to_string())
    }
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> SncxStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => SncxStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(&message);
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "internal error".into());
            set_error(&message);
            SncxStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(SncxStatus::NullArgument, format!("{name} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(SncxStatus::InvalidUtf8, format!("{name} is not UTF-8")))
}

unsafe fn complex<'a>(p: *const SncxComplex) -> Result<&'a Complex, Failure> {
    p.as_ref()
        .map(|c| &c.inner)
        .ok_or_else(|| Failure(SncxStatus::NullArgument, "complex is null".into()))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(SncxStatus::NullArgument, "output pointer is null".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_complex(out: *mut *mut SncxComplex, c: Complex) -> Result<(), Failure> {
    put(out, Box::into_raw(Box::new(SncxComplex { inner: c })))
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let s = CString::new(s).map_err(Failure::failed)?;
    put(out, s.into_raw())
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(value).map_err(Failure::failed)
}

/// Version of the library as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn sncx_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread; empty after success.
/// Valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn sncx_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn sncx_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Releases a complex. Null is ignored.
///
/// # Safety
/// `c` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn sncx_complex_free(c: *mut SncxComplex) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Parses a complex document.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sncx_complex_from_json(json: *const c_char, out: *mut *mut SncxComplex) -> SncxStatus {
    guard(|| {
        let c = Complex::from_json(text(json, "json")?).map_err(Failure::input)?;
        put_complex(out, c)
    })
}

/// Dual complex of a strata description.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sncx_dual_complex(json: *const c_char, out: *mut *mut SncxComplex) -> SncxStatus {
    guard(|| {
        let s = StrataDescription::from_json(text(json, "json")?).map_err(Failure::input)?;
        put_complex(out, dual_complex(&s).map_err(Failure::input)?)
    })
}

/// Link of the origin in a fan given as `{"rays", "cones"}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sncx_toric_link(json: *const c_char, out: *mut *mut SncxComplex) -> SncxStatus {
    guard(|| {
        let f = Fan::from_json(text(json, "json")?).map_err(Failure::input)?;
        put_complex(out, toric_link(&f).map_err(Failure::input)?)
    })
}

/// Boundary complex of a nondegenerate hypersurface in a torus with the
/// given Newton polytope.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sncx_torus_boundary(json: *const c_char, out: *mut *mut SncxComplex) -> SncxStatus {
    guard(|| {
        let p = PolytopeInput::from_json(text(json, "json")?).map_err(Failure::input)?;
        let c = torus_hypersurface_boundary_complex_weighted(&p.points, &p.weights).map_err(Failure::input)?;
        put_complex(out, c)
    })
}

/// Runs a blowup script on `c`, writing the resulting complex to `out` and,
/// when `log` is not null, the per-step log as JSON.
///
/// # Safety
/// `c` must be a live handle, `script` a NUL-terminated string and `out`
/// writable; `log` may be null.
#[no_mangle]
pub unsafe extern "C" fn sncx_complex_blowup(
    c: *const SncxComplex,
    script: *const c_char,
    out: *mut *mut SncxComplex,
    log: *mut *mut c_char,
) -> SncxStatus {
    guard(|| {
        let c = complex(c)?;
        let s = BlowupScript::from_json(text(script, "script")?).map_err(Failure::input)?;
        let run = run_blowup_script(c, &s).map_err(Failure::failed)?;
        if !log.is_null() {
            put_string(log, to_json(&run.log)?)?;
        }
        put_complex(out, run.complex)
    })
}

/// Number of faces.
///
/// # Safety
/// `c` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sncx_complex_face_count(c: *const SncxComplex, out: *mut usize) -> SncxStatus {
    guard(|| put(out, complex(c)?.len()))
}

/// Dimension, or -1 for the empty complex.
///
/// # Safety
/// `c` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sncx_complex_dim(c: *const SncxComplex, out: *mut i64) -> SncxStatus {
    guard(|| put(out, complex(c)?.dim().map_or(-1, |d| d as i64)))
}

/// Copies the face counts by dimension into `buf`. `len` receives the
/// number of entries; when it exceeds `cap` nothing is copied and
/// `SNCX_STATUS_BUFFER_TOO_SMALL` is returned.
///
/// # Safety
/// `c` must be a live handle, `len` writable and `buf` valid for `cap`
/// entries (it may be null when `cap` is 0).
#[no_mangle]
pub unsafe extern "C" fn sncx_complex_f_vector(
    c: *const SncxComplex,
    buf: *mut usize,
    cap: usize,
    len: *mut usize,
) -> SncxStatus {
    guard(|| {
        let f = complex(c)?.f_vector();
        put(len, f.len())?;
        if f.len() > cap {
            return Err(Failure(
                SncxStatus::BufferTooSmall,
                format!("{} entries needed", f.len()),
            ));
        }
        if !f.is_empty() {
            if buf.is_null() {
                return Err(Failure(SncxStatus::NullArgument, "buffer is null".into()));
            }
            ptr::copy_nonoverlapping(f.as_ptr(), buf, f.len());
        }
        Ok(())
    })
}

/// Betti number in `degree` (reduced when `reduced` is true).
///
/// # Safety
/// `c` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sncx_complex_betti(
    c: *const SncxComplex,
    reduced: bool,
    degree: i64,
    out: *mut usize,
) -> SncxStatus {
    guard(|| {
        let h = homology(complex(c)?, reduced).map_err(Failure::failed)?;
        put(out, h.betti(degree))
    })
}

/// Integral homology as JSON.
///
/// # Safety
/// `c` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sncx_complex_homology_json(
    c: *const SncxComplex,
    reduced: bool,
    out: *mut *mut c_char,
) -> SncxStatus {
    guard(|| {
        let h = homology(complex(c)?, reduced).map_err(Failure::failed)?;
        put_string(out, to_json(&h)?)
    })
}

/// Canonical complex document.
///
/// # Safety
/// `c` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sncx_complex_to_json(c: *const SncxComplex, out: *mut *mut c_char) -> SncxStatus {
    guard(|| put_string(out, complex(c)?.to_json()))
}

/// Wedge-of-spheres certificate for spheres of dimension `sphere_dim`, as
/// JSON with a `verdict` field.
///
/// # Safety
/// `c` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sncx_complex_certify_json(
    c: *const SncxComplex,
    sphere_dim: usize,
    out: *mut *mut c_char,
) -> SncxStatus {
    guard(|| put_string(out, to_json(&wedge_certificate(complex(c)?, sphere_dim))?))
}

/// Weight-zero report of the singularity with the given monomial support.
/// When `resolution` is not null it receives the resolution complex.
///
/// # Safety
/// `support` must be a NUL-terminated string and `out` writable;
/// `resolution` may be null.
#[no_mangle]
pub unsafe extern "C" fn sncx_newton_report_json(
    support: *const c_char,
    out: *mut *mut c_char,
    resolution: *mut *mut SncxComplex,
) -> SncxStatus {
    guard(|| {
        let points = parse_support(text(support, "support")?).map_err(Failure::input)?;
        let np = newton_polyhedron(&points).map_err(Failure::input)?;
        let report = w0_report(&np).map_err(Failure::failed)?;
        if !resolution.is_null() {
            let c = sncx::newton::resolution_complex(&np).map_err(Failure::failed)?;
            put_complex(resolution, c)?;
        }
        put_string(out, to_json(&report)?)
    })
}
