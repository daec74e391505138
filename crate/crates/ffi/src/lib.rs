//! C ABI over the `genus2-scrolls` engine.
//!
//! Instances are opaque handles. Every call returns a [`G2Status`]; on
//! failure [`g2_last_error`] describes what went wrong on the calling
//! thread. Strings handed out by the library must be released with
//! [`g2_string_free`].

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use libc::{c_char, size_t};

use genus2_scrolls::instance::{build_instance, Instance, InstanceSpec};
use genus2_scrolls::scroll::scroll_type;
use genus2_scrolls::verify::{canonical_series, classify_s, classify_v, trisecant_scan, verify_ideal_sum};
use genus2_scrolls::Error;

/// Result codes. `Ok`, `Mismatch` and `InputError` line up with the CLI
/// exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum G2Status {
    Ok = 0,
    Mismatch = 1,
    InputError = 2,
    NullPointer = 3,
    InvalidUtf8 = 4,
    Internal = 5,
}

/// A built instance: curve, embedding and `g^1_3`.
pub struct G2Instance(Instance);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: G2Status, msg: impl Into<String>) -> G2Status {
    set_error(msg);
    status
}

fn from_error(e: Error) -> G2Status {
    let status = if e.is_input_error() || e == Error::PreconditionViolated {
        G2Status::InputError
    } else {
        G2Status::Internal
    };
    fail(status, e.to_string())
}

/// Runs `f`, mapping panics to `Internal`.
fn guard<F: FnOnce() -> G2Status>(f: F) -> G2Status {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(G2Status::Internal, "panic in genus2-scrolls"))
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, G2Status> {
    if s.is_null() {
        return Err(fail(G2Status::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(G2Status::InvalidUtf8, "argument is not UTF-8"))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> G2Status {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            G2Status::Ok
        }
        Err(_) => fail(G2Status::Internal, "output contained a NUL byte"),
    }
}

unsafe fn store_instance(spec: &InstanceSpec, out: *mut *mut G2Instance) -> G2Status {
    match build_instance(spec) {
        Ok(inst) => {
            *out = Box::into_raw(Box::new(G2Instance(inst)));
            G2Status::Ok
        }
        Err(e) => from_error(e),
    }
}

/// Builds a random instance of degree `d` over `F_p` from `seed`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn g2_instance_new(p: u64, d: u32, seed: u64, out: *mut *mut G2Instance) -> G2Status {
    guard(|| {
        if out.is_null() {
            return fail(G2Status::NullPointer, "out is null");
        }
        store_instance(&InstanceSpec::new(p, d as usize, seed), out)
    })
}

/// Builds an instance from a JSON spec such as
/// `{"p":10007,"d":7,"H":"3*K+inf","D":"random","seed":1}`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn g2_instance_from_json(json: *const c_char, out: *mut *mut G2Instance) -> G2Status {
    guard(|| {
        if out.is_null() {
            return fail(G2Status::NullPointer, "out is null");
        }
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match serde_json::from_str::<InstanceSpec>(text) {
            Ok(spec) => store_instance(&spec, out),
            Err(e) => fail(G2Status::InputError, format!("instance JSON: {e}")),
        }
    })
}

/// # Safety
/// `inst` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn g2_instance_free(inst: *mut G2Instance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Embedding degree, or 0 for a null handle.
///
/// # Safety
/// `inst` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn g2_instance_degree(inst: *const G2Instance) -> u32 {
    inst.as_ref().map_or(0, |i| i.0.d() as u32)
}

/// The replayable spec of an instance, as JSON.
///
/// # Safety
/// `inst` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn g2_instance_spec_json(inst: *const G2Instance, out: *mut *mut c_char) -> G2Status {
    guard(|| {
        let Some(i) = inst.as_ref() else {
            return fail(G2Status::NullPointer, "null instance");
        };
        if out.is_null() {
            return fail(G2Status::NullPointer, "out is null");
        }
        let json = serde_json::to_string(&i.0.resolved_spec()).expect("spec serializes");
        write_string(out, json)
    })
}

/// Writes the `g^1_2`-scroll type into `s_out[0..2]` and the `g^1_3`-scroll
/// type into `v_out[0..3]`, both nonincreasing.
///
/// # Safety
/// `inst` must be a live handle; `s_out` must have room for 2 values and
/// `v_out` for 3.
#[no_mangle]
pub unsafe extern "C" fn g2_scroll_types(inst: *const G2Instance, s_out: *mut i64, v_out: *mut i64) -> G2Status {
    guard(|| {
        let Some(i) = inst.as_ref() else {
            return fail(G2Status::NullPointer, "null instance");
        };
        if s_out.is_null() || v_out.is_null() {
            return fail(G2Status::NullPointer, "null output array");
        }
        let k = match canonical_series(&i.0.curve) {
            Ok(k) => k,
            Err(e) => return from_error(e),
        };
        let s = scroll_type(&i.0.emb, &k);
        let v = scroll_type(&i.0.emb, &i.0.pencil);
        if s.es().len() != 2 || v.es().len() != 3 {
            return fail(G2Status::Internal, "unexpected scroll dimension");
        }
        ptr::copy_nonoverlapping(s.es().as_ptr(), s_out, 2);
        ptr::copy_nonoverlapping(v.es().as_ptr(), v_out, 3);
        G2Status::Ok
    })
}

/// Verifies `I_S + I_V = I_C` in degree 2 and returns the report as JSON.
/// Returns `Mismatch` (with the report still written) if the identity fails.
///
/// # Safety
/// `inst` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn g2_verify(inst: *const G2Instance, out: *mut *mut c_char) -> G2Status {
    guard(|| {
        let Some(i) = inst.as_ref() else {
            return fail(G2Status::NullPointer, "null instance");
        };
        if out.is_null() {
            return fail(G2Status::NullPointer, "out is null");
        }
        let report = match verify_ideal_sum(&i.0) {
            Ok(r) => r,
            Err(e) => return from_error(e),
        };
        let status = write_string(out, serde_json::to_string(&report).expect("report serializes"));
        if status == G2Status::Ok && !report.theorem_holds {
            return fail(G2Status::Mismatch, "span of Q_S and Q_V differs from Q_C");
        }
        status
    })
}

/// Predicted and computed types for both scrolls, as JSON
/// `{"S": {...}, "V": {...}}`. Returns `Mismatch` if either disagrees.
///
/// # Safety
/// `inst` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn g2_classify(inst: *const G2Instance, out: *mut *mut c_char) -> G2Status {
    guard(|| {
        let Some(i) = inst.as_ref() else {
            return fail(G2Status::NullPointer, "null instance");
        };
        if out.is_null() {
            return fail(G2Status::NullPointer, "out is null");
        }
        let s = classify_s(&i.0);
        let v = match classify_v(&i.0) {
            Ok(v) => v,
            Err(e) => return from_error(e),
        };
        let ok = s.matched && v.matched;
        let json = serde_json::json!({ "S": s, "V": v }).to_string();
        let status = write_string(out, json);
        if status == G2Status::Ok && !ok {
            return fail(G2Status::Mismatch, "classification mismatch");
        }
        status
    })
}

/// Counts collinear triples among `trials` random triples of curve points.
///
/// # Safety
/// `inst` must be a live handle and `violations` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn g2_trisecant_scan(inst: *const G2Instance, trials: size_t, violations: *mut size_t) -> G2Status {
    guard(|| {
        let Some(i) = inst.as_ref() else {
            return fail(G2Status::NullPointer, "null instance");
        };
        if violations.is_null() {
            return fail(G2Status::NullPointer, "violations is null");
        }
        if trials == 0 {
            return fail(G2Status::InputError, "trials must be at least 1");
        }
        let mut rng = i.0.spec.rng(2);
        match trisecant_scan(&i.0, trials, &mut rng) {
            Ok(n) => {
                *violations = n;
                G2Status::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Message for the last failure on this thread, or null. Valid until the
/// next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn g2_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn g2_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn null_handles_are_rejected() {
        let mut out = ptr::null_mut();
        let st = unsafe { g2_verify(ptr::null(), &mut out) };
        assert_eq!(st, G2Status::NullPointer);
        assert!(!g2_last_error().is_null());
        assert_eq!(unsafe { g2_instance_degree(ptr::null()) }, 0);
        unsafe { g2_instance_free(ptr::null_mut()) };
        unsafe { g2_string_free(ptr::null_mut()) };
    }

    #[test]
    fn input_errors_map_to_two() {
        let mut inst = ptr::null_mut();
        let st = unsafe { g2_instance_new(10007, 5, 0, &mut inst) };
        assert_eq!(st as i32, 2);
        assert!(inst.is_null());
        let msg = unsafe { CStr::from_ptr(g2_last_error()) }.to_str().unwrap();
        assert!(msg.contains("below 6"), "{msg}");
    }
}
