//! C ABI for the `mollifier` library.
//!
//! Configurations and reports are opaque handles created and destroyed through this
//! interface. Every fallible call returns a [`MollifierStatus`]; on failure a
//! description is available from [`mollifier_last_error`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use mollifier::cli::{load_preset, run_optimize, verify, RunConfig, Suite};
use mollifier::functional::{eval_bound, FunctionalReport, TermKey};
use mollifier::Error;

/// Result of every fallible call. The numeric values of the first five match the
/// command-line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MollifierStatus {
    Ok = 0,
    Parse = 2,
    Validation = 3,
    Evaluation = 4,
    Verification = 5,
    NullArgument = 10,
    InvalidUtf8 = 11,
    Panic = 99,
}

/// Which identity suite [`mollifier_verify`] runs.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MollifierSuite {
    Combinatorics = 0,
    Vonmangoldt = 1,
    ArithFactor = 2,
    Summation = 3,
    Residue = 4,
    All = 5,
}

/// Kind of one breakdown entry.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MollifierTermKind {
    C11 = 0,
    C12 = 1,
    C22 = 2,
}

/// Opaque parsed configuration.
pub struct MollifierConfig {
    inner: RunConfig,
}

/// Opaque evaluation result.
pub struct MollifierReport {
    inner: FunctionalReport,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct MollifierValues {
    pub c11: f64,
    pub c12: f64,
    pub c22: f64,
    pub c_total: f64,
    /// `κ`, or `κ*` for a simple-zero configuration.
    pub kappa: f64,
    pub is_kappa_star: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MollifierTerm {
    pub kind: MollifierTermKind,
    pub l1: usize,
    pub l2: usize,
    pub k: usize,
    pub value: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> MollifierStatus {
    match e.exit_code() {
        2 => MollifierStatus::Parse,
        3 => MollifierStatus::Validation,
        5 => MollifierStatus::Verification,
        _ => MollifierStatus::Evaluation,
    }
}

fn guard(f: impl FnOnce() -> Result<(), MollifierStatus>) -> MollifierStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MollifierStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            MollifierStatus::Panic
        }
    }
}

fn lib<T>(r: mollifier::Result<T>) -> Result<T, MollifierStatus> {
    r.map_err(|e| {
        set_error(e.to_string());
        status_of(&e)
    })
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, MollifierStatus> {
    if s.is_null() {
        set_error("null string argument");
        return Err(MollifierStatus::NullArgument);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8");
        MollifierStatus::InvalidUtf8
    })
}

unsafe fn out_ptr<'a, T>(p: *mut T) -> Result<&'a mut T, MollifierStatus> {
    p.as_mut().ok_or_else(|| {
        set_error("null output argument");
        MollifierStatus::NullArgument
    })
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, MollifierStatus> {
    p.as_ref().ok_or_else(|| {
        set_error("null handle");
        MollifierStatus::NullArgument
    })
}

fn boxed_config(inner: RunConfig) -> *mut MollifierConfig {
    Box::into_raw(Box::new(MollifierConfig { inner }))
}

/// Message for the most recent failure on this thread, or NULL after a success.
/// The pointer stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn mollifier_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn mollifier_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parse a TOML configuration.
///
/// # Safety
/// `toml` must be a NUL-terminated string and `out` a valid pointer to write to.
#[no_mangle]
pub unsafe extern "C" fn mollifier_config_from_toml(
    toml: *const c_char,
    out: *mut *mut MollifierConfig,
) -> MollifierStatus {
    guard(|| {
        let out = out_ptr(out)?;
        *out = ptr::null_mut();
        let cfg = lib(RunConfig::from_toml(text(toml)?))?;
        *out = boxed_config(cfg);
        Ok(())
    })
}

/// Load a bundled configuration: `thm1`, `thm1_star`, `thm2` or `thm2_star`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer to write to.
#[no_mangle]
pub unsafe extern "C" fn mollifier_config_from_preset(
    name: *const c_char,
    out: *mut *mut MollifierConfig,
) -> MollifierStatus {
    guard(|| {
        let out = out_ptr(out)?;
        *out = ptr::null_mut();
        let cfg = lib(load_preset(text(name)?))?;
        *out = boxed_config(cfg);
        Ok(())
    })
}

/// Serialize a configuration as TOML. Free the result with [`mollifier_string_free`].
///
/// # Safety
/// `config` must be a live handle and `out` a valid pointer to write to.
#[no_mangle]
pub unsafe extern "C" fn mollifier_config_to_toml(
    config: *const MollifierConfig,
    out: *mut *mut c_char,
) -> MollifierStatus {
    guard(|| {
        let out = out_ptr(out)?;
        *out = ptr::null_mut();
        let toml = lib(handle(config)?.inner.to_toml())?;
        *out = CString::new(toml)
            .map_err(|_| MollifierStatus::Panic)?
            .into_raw();
        Ok(())
    })
}

/// Replace `R`, re-validating the configuration.
///
/// # Safety
/// `config` must be a live handle not shared with another thread during the call.
#[no_mangle]
pub unsafe extern "C" fn mollifier_config_set_r(
    config: *mut MollifierConfig,
    r: f64,
) -> MollifierStatus {
    guard(|| {
        let cfg = out_ptr(config)?;
        let mut next = cfg.inner.mollifier.clone();
        next.r = r;
        lib(next.validate())?;
        cfg.inner.mollifier = next;
        Ok(())
    })
}

/// Multiply every `P_ℓ`, `ℓ ≥ 2`, by `t`.
///
/// # Safety
/// `config` must be a live handle not shared with another thread during the call.
#[no_mangle]
pub unsafe extern "C" fn mollifier_config_scale_second_piece(
    config: *mut MollifierConfig,
    t: f64,
) -> MollifierStatus {
    guard(|| {
        let cfg = out_ptr(config)?;
        if !t.is_finite() {
            set_error("scale factor must be finite");
            return Err(MollifierStatus::Validation);
        }
        cfg.inner.mollifier = cfg.inner.mollifier.with_pl_scaled(t);
        Ok(())
    })
}

/// # Safety
/// `config` must be NULL or a handle returned by this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn mollifier_config_free(config: *mut MollifierConfig) {
    if !config.is_null() {
        drop(Box::from_raw(config));
    }
}

/// Evaluate `c₁₁`, `c₁₂`, `c₂₂`, `c` and the bound.
///
/// # Safety
/// `config` must be a live handle and `out` a valid pointer to write to.
#[no_mangle]
pub unsafe extern "C" fn mollifier_eval(
    config: *const MollifierConfig,
    out: *mut *mut MollifierReport,
) -> MollifierStatus {
    guard(|| {
        let out = out_ptr(out)?;
        *out = ptr::null_mut();
        let cfg = &handle(config)?.inner;
        let report = lib(eval_bound(&cfg.mollifier, cfg.bound))?;
        *out = Box::into_raw(Box::new(MollifierReport { inner: report }));
        Ok(())
    })
}

/// # Safety
/// `report` must be a live handle and `out` a valid pointer to write to.
#[no_mangle]
pub unsafe extern "C" fn mollifier_report_values(
    report: *const MollifierReport,
    out: *mut MollifierValues,
) -> MollifierStatus {
    guard(|| {
        let r = &handle(report)?.inner;
        *out_ptr(out)? = MollifierValues {
            c11: r.c11,
            c12: r.c12,
            c22: r.c22,
            c_total: r.c_total,
            kappa: r.kappa,
            is_kappa_star: r.bound == mollifier::functional::BoundKind::KappaStar,
        };
        Ok(())
    })
}

/// Number of breakdown entries, or 0 for a NULL handle.
///
/// # Safety
/// `report` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mollifier_report_term_count(report: *const MollifierReport) -> usize {
    report.as_ref().map_or(0, |r| r.inner.term_breakdown.len())
}

/// # Safety
/// `report` must be a live handle and `out` a valid pointer to write to.
#[no_mangle]
pub unsafe extern "C" fn mollifier_report_term(
    report: *const MollifierReport,
    index: usize,
    out: *mut MollifierTerm,
) -> MollifierStatus {
    guard(|| {
        let r = &handle(report)?.inner;
        let Some(t) = r.term_breakdown.get(index) else {
            set_error(format!(
                "term index {index} out of range ({} terms)",
                r.term_breakdown.len()
            ));
            return Err(MollifierStatus::Validation);
        };
        let (kind, l1, l2, k) = match t.key {
            TermKey::C11 => (MollifierTermKind::C11, 1, 1, 0),
            TermKey::C12 { ell } => (MollifierTermKind::C12, 1, ell, 0),
            TermKey::C22 { l1, l2, k } => (MollifierTermKind::C22, l1, l2, k),
        };
        *out_ptr(out)? = MollifierTerm {
            kind,
            l1,
            l2,
            k,
            value: t.value,
        };
        Ok(())
    })
}

/// # Safety
/// `report` must be NULL or a handle returned by this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn mollifier_report_free(report: *mut MollifierReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Maximize the bound starting from `config`. `iters` is the number of objective
/// evaluations per restart. On success `*best` receives a new handle.
///
/// # Safety
/// `config` must be a live handle; `best` and `kappa` valid pointers to write to.
#[no_mangle]
pub unsafe extern "C" fn mollifier_optimize(
    config: *const MollifierConfig,
    iters: usize,
    restarts: usize,
    seed: u64,
    best: *mut *mut MollifierConfig,
    kappa: *mut f64,
) -> MollifierStatus {
    guard(|| {
        let best = out_ptr(best)?;
        *best = ptr::null_mut();
        let kappa = out_ptr(kappa)?;
        if iters == 0 || restarts == 0 {
            set_error("iters and restarts must be at least 1");
            return Err(MollifierStatus::Validation);
        }
        let mut cfg = handle(config)?.inner.clone();
        cfg.optimize.iters = iters;
        cfg.optimize.restarts = restarts;
        cfg.optimize.seed = seed;
        let res = lib(run_optimize(&cfg))?;
        *kappa = res.best_kappa;
        *best = boxed_config(cfg.with_mollifier(res.best_config));
        Ok(())
    })
}

/// Run an identity suite. `limit = 0` selects the default sieve size. Returns
/// `Verification` when any check fails; `*passed` and `*total` count the checks.
///
/// # Safety
/// `passed` and `total` must be valid pointers to write to.
#[no_mangle]
pub unsafe extern "C" fn mollifier_verify(
    suite: MollifierSuite,
    limit: usize,
    passed: *mut usize,
    total: *mut usize,
) -> MollifierStatus {
    guard(|| {
        let passed = out_ptr(passed)?;
        let total = out_ptr(total)?;
        let suite = match suite {
            MollifierSuite::Combinatorics => Suite::Combinatorics,
            MollifierSuite::Vonmangoldt => Suite::Vonmangoldt,
            MollifierSuite::ArithFactor => Suite::ArithFactor,
            MollifierSuite::Summation => Suite::Summation,
            MollifierSuite::Residue => Suite::Residue,
            MollifierSuite::All => Suite::All,
        };
        let rows = lib(verify::run_suite(suite, (limit > 0).then_some(limit)))?;
        *total = rows.len();
        *passed = rows.iter().filter(|r| r.pass).count();
        if let Some(bad) = rows.iter().find(|r| !r.pass) {
            set_error(format!("{}: {}", bad.suite, bad.check));
            return Err(MollifierStatus::Verification);
        }
        Ok(())
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn mollifier_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
