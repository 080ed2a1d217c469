//! C ABI for the homq library.
//!
//! All objects are opaque handles created by the `*_parse` functions and
//! released by the matching `*_free`. Every fallible call returns a
//! [`HomqStatus`]; on failure a thread-local message is readable through
//! [`homq_last_error`]. The status codes mirror the CLI exit codes.
//!
//! Safety contract for every `unsafe extern "C"` function: string arguments
//! must be valid NUL-terminated pointers, handle arguments must come from
//! the matching `*_parse` call and not have been freed, and out-pointers
//! must be writable or null.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_complex::Complex64;

use homq::hom::{approx_hom_restricted, hom_restricted_exact, ApproxOptions, RestrictedHomInstance};
use homq::io;
use homq::iqp::{psi_statevector, psi_via_ising, psi_via_ising_approx_detailed, GraphXProgram, IsingMode};
use homq::ising::{z_ising_approx, z_ising_exact, IsingInstance};
use homq::regimes::zero_free_radius;
use homq::HomqError;

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: &str) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.to_string());
}

/// Status codes; aligned with the CLI exit-code contract.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomqStatus {
    Ok = 0,
    OutsideZeroFreeRegion = 2,
    InvalidInstance = 3,
    InstanceTooLarge = 4,
    NullArgument = 5,
    Panic = 6,
}

fn status_of(err: &HomqError) -> HomqStatus {
    match err {
        HomqError::OutsideZeroFreeRegion { .. } => HomqStatus::OutsideZeroFreeRegion,
        HomqError::InstanceTooLarge { .. } => HomqStatus::InstanceTooLarge,
        _ => HomqStatus::InvalidInstance,
    }
}

/// Complex number as a plain pair.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct HomqComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for HomqComplex {
    fn from(z: Complex64) -> Self {
        HomqComplex { re: z.re, im: z.im }
    }
}

/// Opaque restricted homomorphism instance.
pub struct HomqHomInstance(RestrictedHomInstance);
/// Opaque Ising instance.
pub struct HomqIsingInstance(IsingInstance);
/// Opaque graph-induced X-program.
pub struct HomqXProgram(GraphXProgram);

unsafe fn read_json<'a>(json: *const c_char) -> Result<&'a str, HomqStatus> {
    if json.is_null() {
        set_error("null json argument");
        return Err(HomqStatus::NullArgument);
    }
    CStr::from_ptr(json).to_str().map_err(|_| {
        set_error("json argument is not valid UTF-8");
        HomqStatus::InvalidInstance
    })
}

fn guarded<F: FnOnce() -> HomqStatus>(f: F) -> HomqStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            HomqStatus::Panic
        }
    }
}

unsafe fn parse_into<T>(
    json: *const c_char,
    out: *mut *mut T,
    parser: impl Fn(&str) -> homq::Result<T> + std::panic::RefUnwindSafe,
) -> HomqStatus {
    guarded(|| {
        if out.is_null() {
            set_error("null out argument");
            return HomqStatus::NullArgument;
        }
        let text = match read_json(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parser(text) {
            Ok(inst) => {
                *out = Box::into_raw(Box::new(inst));
                HomqStatus::Ok
            }
            Err(e) => {
                set_error(&e.to_string());
                status_of(&e)
            }
        }
    })
}

/// Parses a restricted homomorphism instance; stores a new handle in `out`.
#[no_mangle]
pub unsafe extern "C" fn homq_hom_parse(
    json: *const c_char,
    out: *mut *mut HomqHomInstance,
) -> HomqStatus {
    parse_into(json, out, |t| io::parse_hom(t).map(HomqHomInstance))
}

/// Parses an Ising instance; stores a new handle in `out`.
#[no_mangle]
pub unsafe extern "C" fn homq_ising_parse(
    json: *const c_char,
    out: *mut *mut HomqIsingInstance,
) -> HomqStatus {
    parse_into(json, out, |t| io::parse_ising(t).map(HomqIsingInstance))
}

/// Parses a graph-induced X-program; stores a new handle in `out`.
#[no_mangle]
pub unsafe extern "C" fn homq_iqp_parse(
    json: *const c_char,
    out: *mut *mut HomqXProgram,
) -> HomqStatus {
    parse_into(json, out, |t| io::parse_iqp(t).map(HomqXProgram))
}

/// Releases a hom handle; accepts null.
#[no_mangle]
pub unsafe extern "C" fn homq_hom_free(ptr: *mut HomqHomInstance) {
    if !ptr.is_null() {
        drop(Box::from_raw(ptr));
    }
}

/// Releases an Ising handle; accepts null.
#[no_mangle]
pub unsafe extern "C" fn homq_ising_free(ptr: *mut HomqIsingInstance) {
    if !ptr.is_null() {
        drop(Box::from_raw(ptr));
    }
}

/// Releases an X-program handle; accepts null.
#[no_mangle]
pub unsafe extern "C" fn homq_iqp_free(ptr: *mut HomqXProgram) {
    if !ptr.is_null() {
        drop(Box::from_raw(ptr));
    }
}

unsafe fn finish(
    result: Result<(Complex64, usize), HomqError>,
    out_value: *mut HomqComplex,
    out_order: *mut usize,
) -> HomqStatus {
    match result {
        Ok((value, order)) => {
            if !out_value.is_null() {
                *out_value = value.into();
            }
            if !out_order.is_null() {
                *out_order = order;
            }
            HomqStatus::Ok
        }
        Err(e) => {
            set_error(&e.to_string());
            status_of(&e)
        }
    }
}

/// Exact restricted homomorphism partition function.
#[no_mangle]
pub unsafe extern "C" fn homq_hom_exact(
    inst: *const HomqHomInstance,
    out_value: *mut HomqComplex,
) -> HomqStatus {
    guarded(|| {
        let Some(h) = inst.as_ref() else {
            set_error("null instance");
            return HomqStatus::NullArgument;
        };
        finish(hom_restricted_exact(&h.0).map(|v| (v, 0)), out_value, std::ptr::null_mut())
    })
}

/// Multiplicative epsilon-approximation; `out_order` (nullable) receives
/// the truncation order. `force != 0` skips the regime check.
#[no_mangle]
pub unsafe extern "C" fn homq_hom_approx(
    inst: *const HomqHomInstance,
    epsilon: f64,
    force: i32,
    out_value: *mut HomqComplex,
    out_order: *mut usize,
) -> HomqStatus {
    guarded(|| {
        let Some(h) = inst.as_ref() else {
            set_error("null instance");
            return HomqStatus::NullArgument;
        };
        let opts = ApproxOptions {
            force: force != 0,
            ..ApproxOptions::default()
        };
        finish(
            approx_hom_restricted(&h.0, epsilon, None, &opts).map(|r| (r.value, r.order)),
            out_value,
            out_order,
        )
    })
}

/// Exact complex Ising partition function.
#[no_mangle]
pub unsafe extern "C" fn homq_ising_exact(
    inst: *const HomqIsingInstance,
    out_value: *mut HomqComplex,
) -> HomqStatus {
    guarded(|| {
        let Some(h) = inst.as_ref() else {
            set_error("null instance");
            return HomqStatus::NullArgument;
        };
        finish(z_ising_exact(&h.0).map(|v| (v, 0)), out_value, std::ptr::null_mut())
    })
}

/// Approximate Ising partition function through the gadget reduction.
#[no_mangle]
pub unsafe extern "C" fn homq_ising_approx(
    inst: *const HomqIsingInstance,
    epsilon: f64,
    force: i32,
    out_value: *mut HomqComplex,
    out_order: *mut usize,
) -> HomqStatus {
    guarded(|| {
        let Some(h) = inst.as_ref() else {
            set_error("null instance");
            return HomqStatus::NullArgument;
        };
        let opts = ApproxOptions {
            force: force != 0,
            ..ApproxOptions::default()
        };
        finish(
            z_ising_approx(&h.0, epsilon, &opts).map(|r| (r.value, r.order)),
            out_value,
            out_order,
        )
    })
}

/// Amplitude at the all-zeros string via the exact Ising identity.
#[no_mangle]
pub unsafe extern "C" fn homq_iqp_amplitude_exact(
    inst: *const HomqXProgram,
    out_value: *mut HomqComplex,
) -> HomqStatus {
    guarded(|| {
        let Some(h) = inst.as_ref() else {
            set_error("null instance");
            return HomqStatus::NullArgument;
        };
        finish(
            psi_via_ising(&h.0, IsingMode::Exact, None, &ApproxOptions::default())
                .map(|a| (a.value, 0)),
            out_value,
            std::ptr::null_mut(),
        )
    })
}

/// Amplitude via the interpolation pipeline.
#[no_mangle]
pub unsafe extern "C" fn homq_iqp_amplitude_approx(
    inst: *const HomqXProgram,
    epsilon: f64,
    force: i32,
    out_value: *mut HomqComplex,
    out_order: *mut usize,
) -> HomqStatus {
    guarded(|| {
        let Some(h) = inst.as_ref() else {
            set_error("null instance");
            return HomqStatus::NullArgument;
        };
        let opts = ApproxOptions {
            force: force != 0,
            ..ApproxOptions::default()
        };
        finish(
            psi_via_ising_approx_detailed(&h.0, epsilon, &opts)
                .map(|(a, r)| (a.value, r.order)),
            out_value,
            out_order,
        )
    })
}

/// Amplitude via the brute-force statevector oracle.
#[no_mangle]
pub unsafe extern "C" fn homq_iqp_amplitude_statevector(
    inst: *const HomqXProgram,
    out_value: *mut HomqComplex,
) -> HomqStatus {
    guarded(|| {
        let Some(h) = inst.as_ref() else {
            set_error("null instance");
            return HomqStatus::NullArgument;
        };
        finish(
            psi_statevector(&h.0).map(|a| (a.value, 0)),
            out_value,
            std::ptr::null_mut(),
        )
    })
}

/// Zero-free disc radius for graphs of the given maximum degree.
/// Returns NaN for degree 0.
#[no_mangle]
pub extern "C" fn homq_zero_free_radius(max_degree: usize) -> f64 {
    if max_degree == 0 {
        return f64::NAN;
    }
    zero_free_radius(max_degree)
}

/// Copies the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `cap`). Returns the full message length in bytes.
#[no_mangle]
pub unsafe extern "C" fn homq_last_error(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        let bytes = msg.as_bytes();
        if !buf.is_null() && cap > 0 {
            let n = bytes.len().min(cap - 1);
            std::ptr::copy_nonoverlapping(bytes.as_ptr(), buf.cast(), n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}
