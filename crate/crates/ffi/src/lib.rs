//! C ABI for `sconvex-quad`.
//!
//! Every function returns an [`SqStatus`]; results go through out-pointers.
//! Bounds and fuzz reports are returned as opaque handles that must be
//! released with the matching `*_free` function. The message of the most
//! recent failure on the calling thread is available from
//! [`sq_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sconvex_quad::bounds::{self, Bound, Method};
use sconvex_quad::verify::{fuzz_verify, FuzzConfig, VerificationReport};
use sconvex_quad::zoo;
use sconvex_quad::{ConvexityClass, ConvexityMode, DerivativeData, Error, Interval, RuleParams};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SqStatus {
    Ok = 0,
    NullPointer = 1,
    Domain = 2,
    MissingData = 3,
    Unsupported = 4,
    NoApplicableMethod = 5,
    NonConvergence = 6,
    Config = 7,
    UnknownFunction = 8,
    Internal = 9,
    InvalidString = 10,
    Panic = 11,
    IndexOutOfRange = 12,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SqMethod {
    PowerMean = 0,
    HolderConvex = 1,
    HolderConcave = 2,
    PriorMidpointPowerMean = 3,
    PriorMidpointHolder = 4,
    PriorSimpsonHolder = 5,
    PriorTrapezoidHolder = 6,
    ConvexPowerMean = 7,
}

impl From<SqMethod> for Method {
    fn from(m: SqMethod) -> Method {
        match m {
            SqMethod::PowerMean => Method::PowerMean,
            SqMethod::HolderConvex => Method::HolderConvex,
            SqMethod::HolderConcave => Method::HolderConcave,
            SqMethod::PriorMidpointPowerMean => Method::PriorMidpointPowerMean,
            SqMethod::PriorMidpointHolder => Method::PriorMidpointHolder,
            SqMethod::PriorSimpsonHolder => Method::PriorSimpsonHolder,
            SqMethod::PriorTrapezoidHolder => Method::PriorTrapezoidHolder,
            SqMethod::ConvexPowerMean => Method::ConvexPowerMean,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SqMode {
    SConvex = 0,
    SConcave = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SqMomentSet {
    pub gamma1: f64,
    pub gamma2: f64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SqHolderMoments {
    pub eps1: f64,
    pub eps2: f64,
}

/// `|f'|` at the nodes. Optional entries are ignored when their `has_*`
/// flag is zero.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SqDerivativeData {
    pub d_a: f64,
    pub d_b: f64,
    pub has_mix: u8,
    pub d_mix: f64,
    pub has_quarters: u8,
    pub d_lo: f64,
    pub d_hi: f64,
}

/// Opaque computed bound.
pub struct SqBound(Bound);

/// Opaque fuzz report.
pub struct SqReport(VerificationReport);

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_last_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> SqStatus {
    match e {
        Error::Domain(_) => SqStatus::Domain,
        Error::MissingData(_) => SqStatus::MissingData,
        Error::NegativeMoment { .. } => SqStatus::Internal,
        Error::Unsupported(_) => SqStatus::Unsupported,
        Error::NoApplicableMethod(_) => SqStatus::NoApplicableMethod,
        Error::NonConvergence(_) => SqStatus::NonConvergence,
        Error::Config(_) => SqStatus::Config,
        Error::UnknownFunction(_) => SqStatus::UnknownFunction,
    }
}

/// Runs `body`, converting library errors and panics to status codes.
fn guard<F>(body: F) -> SqStatus
where
    F: FnOnce() -> Result<(), (SqStatus, String)>,
{
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => SqStatus::Ok,
        Ok(Err((status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("panic inside sconvex-quad".into());
            SqStatus::Panic
        }
    }
}

fn lib<T>(r: sconvex_quad::Result<T>) -> Result<T, (SqStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (SqStatus, String) {
    (SqStatus::NullPointer, format!("{what} is null"))
}

/// Copies the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `len - 1` bytes) and returns the full message length.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn sq_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            ptr::copy_nonoverlapping(msg.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

fn case_number(c: bounds::CaseId) -> i32 {
    match c {
        bounds::CaseId::I => 1,
        bounds::CaseId::II => 2,
        bounds::CaseId::III => 3,
    }
}

/// Case of the rule `(alpha, lambda)`: 1, 2 or 3.
///
/// # Safety
/// `out_case` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sq_classify_case(alpha: f64, lambda: f64, out_case: *mut i32) -> SqStatus {
    guard(|| {
        let out = out_case.as_mut().ok_or_else(|| null("out_case"))?;
        let p = lib(RuleParams::new(alpha, lambda))?;
        *out = case_number(bounds::classify_case(&p).case);
        Ok(())
    })
}

/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sq_kernel_moments(alpha: f64, lambda: f64, s: f64, out: *mut SqMomentSet) -> SqStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let p = lib(RuleParams::new(alpha, lambda))?;
        let m = lib(bounds::kernel_moments(&p, s))?;
        *out = SqMomentSet { gamma1: m.gamma1, gamma2: m.gamma2, c1: m.c1, c2: m.c2, c3: m.c3, c4: m.c4 };
        Ok(())
    })
}

/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sq_holder_moments(alpha: f64, lambda: f64, p: f64, out: *mut SqHolderMoments) -> SqStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let params = lib(RuleParams::new(alpha, lambda))?;
        let h = lib(bounds::holder_moments(&params, p))?;
        *out = SqHolderMoments { eps1: h.eps1, eps2: h.eps2 };
        Ok(())
    })
}

fn derivative_data(d: &SqDerivativeData) -> sconvex_quad::Result<DerivativeData> {
    let mut out = DerivativeData::new(d.d_a, d.d_b)?;
    if d.has_mix != 0 {
        out = out.with_mix(d.d_mix)?;
    }
    if d.has_quarters != 0 {
        out = out.with_quarters(d.d_lo, d.d_hi)?;
    }
    Ok(out)
}

/// Computes one bound on `[a, b]`. On success `*out` owns a new handle.
///
/// # Safety
/// `data` must be null or point to a valid [`SqDerivativeData`]; `out` must
/// be null or valid for writes.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn sq_bound_compute(
    method: SqMethod,
    alpha: f64,
    lambda: f64,
    s: f64,
    q: f64,
    mode: SqMode,
    data: *const SqDerivativeData,
    a: f64,
    b: f64,
    out: *mut *mut SqBound,
) -> SqStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = ptr::null_mut();
        let data = data.as_ref().ok_or_else(|| null("data"))?;
        let params = lib(RuleParams::new(alpha, lambda))?;
        let mode = match mode {
            SqMode::SConvex => ConvexityMode::SConvex,
            SqMode::SConcave => ConvexityMode::SConcave,
        };
        let cls = lib(ConvexityClass::new(s, q, mode))?;
        let iv = lib(Interval::nonneg(a, b))?;
        let d = lib(derivative_data(data))?;
        let bound = lib(bounds::method_bound(method.into(), &params, &cls, &d, &iv))?;
        *out = Box::into_raw(Box::new(SqBound(bound)));
        Ok(())
    })
}

/// # Safety
/// `bound` must be a live handle from [`sq_bound_compute`] or null.
#[no_mangle]
pub unsafe extern "C" fn sq_bound_value(bound: *const SqBound, out: *mut f64) -> SqStatus {
    guard(|| {
        let b = bound.as_ref().ok_or_else(|| null("bound"))?;
        *out.as_mut().ok_or_else(|| null("out"))? = b.0.value;
        Ok(())
    })
}

/// Case (1, 2 or 3) the returned value was computed in.
///
/// # Safety
/// `bound` must be a live handle or null; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn sq_bound_case(bound: *const SqBound, out: *mut i32) -> SqStatus {
    guard(|| {
        let b = bound.as_ref().ok_or_else(|| null("bound"))?;
        *out.as_mut().ok_or_else(|| null("out"))? = case_number(b.0.case_id);
        Ok(())
    })
}

/// Number of labelled components of the bound.
///
/// # Safety
/// `bound` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn sq_bound_component_count(bound: *const SqBound, out: *mut usize) -> SqStatus {
    guard(|| {
        let b = bound.as_ref().ok_or_else(|| null("bound"))?;
        *out.as_mut().ok_or_else(|| null("out"))? = b.0.components.len();
        Ok(())
    })
}

/// Component `index`: its value, and its label copied into `label`
/// (NUL-terminated, truncated to `label_len - 1` bytes; may be null).
///
/// # Safety
/// `bound` must be a live handle; `label` null or `label_len` writable bytes;
/// `value` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sq_bound_component(
    bound: *const SqBound,
    index: usize,
    label: *mut c_char,
    label_len: usize,
    value: *mut f64,
) -> SqStatus {
    guard(|| {
        let b = bound.as_ref().ok_or_else(|| null("bound"))?;
        let (name, v) = b
            .0
            .components
            .get(index)
            .ok_or_else(|| (SqStatus::IndexOutOfRange, format!("component {index} out of range")))?;
        if let Some(out) = value.as_mut() {
            *out = *v;
        }
        if !label.is_null() && label_len > 0 {
            let n = name.len().min(label_len - 1);
            ptr::copy_nonoverlapping(name.as_ptr().cast::<c_char>(), label, n);
            *label.add(n) = 0;
        }
        Ok(())
    })
}

/// # Safety
/// `bound` must be a handle from [`sq_bound_compute`] not yet freed, or null.
#[no_mangle]
pub unsafe extern "C" fn sq_bound_free(bound: *mut SqBound) {
    if !bound.is_null() {
        drop(Box::from_raw(bound));
    }
}

/// Signed rule error of the default member of the test family `fn_id`.
///
/// # Safety
/// `fn_id` must be null or a NUL-terminated string; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn sq_rule_error(
    fn_id: *const c_char,
    alpha: f64,
    lambda: f64,
    a: f64,
    b: f64,
    out: *mut f64,
) -> SqStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        if fn_id.is_null() {
            return Err(null("fn_id"));
        }
        let id = CStr::from_ptr(fn_id)
            .to_str()
            .map_err(|e| (SqStatus::InvalidString, format!("fn_id is not UTF-8: {e}")))?;
        let f = lib(zoo::by_id(id))?;
        let p = lib(RuleParams::new(alpha, lambda))?;
        let iv = lib(Interval::new(a, b))?;
        *out = lib(bounds::rule_error(&f, &p, &iv))?;
        Ok(())
    })
}

/// Runs a fuzz campaign with default ranges over all certified pairings.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sq_fuzz_run(trials: usize, seed: u64, tol: f64, out: *mut *mut SqReport) -> SqStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = ptr::null_mut();
        let cfg = FuzzConfig { trials, seed, tol, ..Default::default() };
        let r = lib(fuzz_verify(&cfg))?;
        *out = Box::into_raw(Box::new(SqReport(r)));
        Ok(())
    })
}

/// Trials run, violations and per-trial errors of a report.
///
/// # Safety
/// `report` must be a live handle; the out-pointers null or writable.
#[no_mangle]
pub unsafe extern "C" fn sq_report_counts(
    report: *const SqReport,
    trials: *mut usize,
    violations: *mut usize,
    errors: *mut usize,
) -> SqStatus {
    guard(|| {
        let r = &report.as_ref().ok_or_else(|| null("report"))?.0;
        if let Some(t) = trials.as_mut() {
            *t = r.trials_run;
        }
        if let Some(v) = violations.as_mut() {
            *v = r.violations.len();
        }
        if let Some(e) = errors.as_mut() {
            *e = r.errors.len();
        }
        Ok(())
    })
}

/// Largest `|I_f| / bound` seen in the campaign.
///
/// # Safety
/// `report` must be a live handle; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn sq_report_max_ratio(report: *const SqReport, out: *mut f64) -> SqStatus {
    guard(|| {
        let r = &report.as_ref().ok_or_else(|| null("report"))?.0;
        *out.as_mut().ok_or_else(|| null("out"))? = r.tightness.map_or(0.0, |t| t.max);
        Ok(())
    })
}

/// # Safety
/// `report` must be a handle from [`sq_fuzz_run`] not yet freed, or null.
#[no_mangle]
pub unsafe extern "C" fn sq_report_free(report: *mut SqReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}
