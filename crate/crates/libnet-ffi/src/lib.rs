//! C ABI for the libnet interference analysis library.
//!
//! Conventions:
//! - Every fallible call returns a [`LibnetStatus`]; results come back
//!   through out-pointers that are written only on `Ok`.
//! - Scenarios are opaque handles created by `libnet_scenario_load` /
//!   `libnet_scenario_parse` and released with `libnet_scenario_free`.
//! - The most recent error message per thread is available through
//!   `libnet_last_error_message`.
//!
//! The generated header lands in `include/libnet_ffi.h`.

use libnet::analytic::{
    hyp2f1, interference_support, laplace_functional, mean_interference_1d, mean_interference_2d,
    AnalyticError, Hyp2F1Params, MeanInterferenceInputs, QuadTol,
};
use libnet::channel::{lambertian_order, LambertianChannel};
use libnet::commands::{cmd_validate, Overrides};
use libnet::config::{parse_config, ScenarioConfig};
use libnet::montecarlo::{empirical_mean_interference, McConfig};
use libnet::sampler::Dim;
use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LibnetStatus {
    /// Success.
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The config file could not be read.
    Io = 3,
    /// The config failed to parse or violated an invariant.
    InvalidConfig = 4,
    /// A numeric argument was outside its domain.
    Domain = 5,
    /// An iterative evaluation failed to converge.
    NonConvergence = 6,
    /// The requested computation panicked; this is a bug in the library.
    Internal = 7,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(message: impl Into<String>) {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = message.into());
}

fn analytic_status(err: &AnalyticError) -> LibnetStatus {
    match err {
        AnalyticError::Domain(_) | AnalyticError::UnsupportedSupport(_) => LibnetStatus::Domain,
        AnalyticError::SeriesNonConvergence { .. }
        | AnalyticError::QuadratureNonConvergence { .. } => LibnetStatus::NonConvergence,
    }
}

/// Copy the most recent error message for this thread into `buffer`
/// (NUL-terminated, truncated to `capacity`). Returns the full message
/// length in bytes, excluding the terminator.
///
/// # Safety
/// `buffer` must point to at least `capacity` writable bytes, or be null
/// (in which case only the length is returned).
#[no_mangle]
pub unsafe extern "C" fn libnet_last_error_message(
    buffer: *mut c_char,
    capacity: usize,
) -> usize {
    LAST_ERROR.with(|slot| {
        let message = slot.borrow();
        let bytes = message.as_bytes();
        if !buffer.is_null() && capacity > 0 {
            let n = bytes.len().min(capacity - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr(), buffer.cast::<u8>(), n);
            *buffer.add(n) = 0;
        }
        bytes.len()
    })
}

/// Opaque scenario handle wrapping a parsed, validated configuration.
pub struct LibnetScenario {
    config: ScenarioConfig,
}

/// Monte Carlo estimate with a 95% confidence interval.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct LibnetEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub trials: u64,
}

/// Result of the three-way validation run.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct LibnetValidation {
    pub closed_form: f64,
    pub quadrature: f64,
    pub empirical: LibnetEstimate,
    /// Relative difference between the closed form and quadrature.
    pub rel_cf_quad: f64,
    pub z_score: f64,
    /// 1 when closed form and quadrature agree to 1e-8 relative.
    pub math_pass: i32,
    /// 1 when the Monte Carlo mean lies within three standard errors.
    pub stat_pass: i32,
}

fn run_guarded<F: FnOnce() -> LibnetStatus>(f: F) -> LibnetStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            LibnetStatus::Internal
        }
    }
}

unsafe fn read_utf8<'a>(ptr: *const c_char) -> Result<&'a str, LibnetStatus> {
    if ptr.is_null() {
        set_error("null string argument");
        return Err(LibnetStatus::NullArgument);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8");
        LibnetStatus::InvalidUtf8
    })
}

fn new_scenario(config: ScenarioConfig, out: *mut *mut LibnetScenario) -> LibnetStatus {
    let handle = Box::new(LibnetScenario { config });
    unsafe { *out = Box::into_raw(handle) };
    LibnetStatus::Ok
}

/// Parse a scenario from config-file text.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be a valid pointer.
/// The returned handle must be released with `libnet_scenario_free`.
#[no_mangle]
pub unsafe extern "C" fn libnet_scenario_parse(
    text: *const c_char,
    out: *mut *mut LibnetScenario,
) -> LibnetStatus {
    run_guarded(|| {
        if out.is_null() {
            set_error("null output pointer");
            return LibnetStatus::NullArgument;
        }
        let text = match read_utf8(text) {
            Ok(t) => t,
            Err(status) => return status,
        };
        match parse_config(text) {
            Ok(config) => new_scenario(config, out),
            Err(e) => {
                set_error(e.to_string());
                LibnetStatus::InvalidConfig
            }
        }
    })
}

/// Load a scenario from a config file on disk.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be a valid pointer.
/// The returned handle must be released with `libnet_scenario_free`.
#[no_mangle]
pub unsafe extern "C" fn libnet_scenario_load(
    path: *const c_char,
    out: *mut *mut LibnetScenario,
) -> LibnetStatus {
    run_guarded(|| {
        if out.is_null() {
            set_error("null output pointer");
            return LibnetStatus::NullArgument;
        }
        let path = match read_utf8(path) {
            Ok(p) => p,
            Err(status) => return status,
        };
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => {
                set_error(format!("cannot read {path}: {e}"));
                return LibnetStatus::Io;
            }
        };
        match parse_config(&text) {
            Ok(config) => new_scenario(config, out),
            Err(e) => {
                set_error(e.to_string());
                LibnetStatus::InvalidConfig
            }
        }
    })
}

/// Release a scenario handle. Null is accepted and ignored.
///
/// # Safety
/// `scenario` must be a handle produced by this library that has not
/// already been freed.
#[no_mangle]
pub unsafe extern "C" fn libnet_scenario_free(scenario: *mut LibnetScenario) {
    if !scenario.is_null() {
        drop(Box::from_raw(scenario));
    }
}

unsafe fn scenario_ref<'a>(
    scenario: *const LibnetScenario,
) -> Result<&'a ScenarioConfig, LibnetStatus> {
    if scenario.is_null() {
        set_error("null scenario handle");
        return Err(LibnetStatus::NullArgument);
    }
    Ok(&(*scenario).config)
}

/// Lambertian emission order and combined exponent derived from the
/// scenario's half-power semi-angle.
///
/// # Safety
/// `scenario` must be a live handle; `m_out` and `beta_out` must each be
/// valid or null (null outputs are skipped).
#[no_mangle]
pub unsafe extern "C" fn libnet_scenario_order(
    scenario: *const LibnetScenario,
    m_out: *mut f64,
    beta_out: *mut f64,
) -> LibnetStatus {
    run_guarded(|| {
        let config = match scenario_ref(scenario) {
            Ok(c) => c,
            Err(s) => return s,
        };
        match config.channel() {
            Ok(channel) => {
                if !m_out.is_null() {
                    *m_out = channel.order();
                }
                if !beta_out.is_null() {
                    *beta_out = channel.beta();
                }
                LibnetStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                LibnetStatus::InvalidConfig
            }
        }
    })
}

/// Lambertian emission order `m = -ln 2 / ln cos(theta_h)` for a
/// half-power semi-angle in radians.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn libnet_lambertian_order(theta_h: f64, out: *mut f64) -> LibnetStatus {
    run_guarded(|| {
        if out.is_null() {
            set_error("null output pointer");
            return LibnetStatus::NullArgument;
        }
        match lambertian_order(theta_h) {
            Ok(m) => {
                *out = m;
                LibnetStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                LibnetStatus::Domain
            }
        }
    })
}

/// Gauss hypergeometric function 2F1(a, b; c; z) for z <= 0, evaluated
/// to relative tolerance `tol` in [1e-15, 1e-6].
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn libnet_hyp2f1(
    a: f64,
    b: f64,
    c: f64,
    z: f64,
    tol: f64,
    out: *mut f64,
) -> LibnetStatus {
    run_guarded(|| {
        if out.is_null() {
            set_error("null output pointer");
            return LibnetStatus::NullArgument;
        }
        let params = match Hyp2F1Params::new(a, b, c, z) {
            Ok(p) => p,
            Err(e) => {
                set_error(e.to_string());
                return LibnetStatus::Domain;
            }
        };
        match hyp2f1(&params, tol) {
            Ok(v) => {
                *out = v;
                LibnetStatus::Ok
            }
            Err(e) => {
                let status = analytic_status(&e);
                set_error(e.to_string());
                status
            }
        }
    })
}

fn mean_inputs(
    lambda: f64,
    h: f64,
    z: f64,
    theta_f: f64,
    beta: f64,
) -> Result<MeanInterferenceInputs, LibnetStatus> {
    MeanInterferenceInputs::new(lambda, h, z, theta_f, beta).map_err(|e| {
        set_error(e.to_string());
        LibnetStatus::Domain
    })
}

/// Closed-form mean co-channel interference of a 1D Poisson field over
/// the one-sided visible support. `clamped_out` (optional) is set to 1
/// when the support was empty and the value clamped to zero.
///
/// # Safety
/// `out` must be a valid pointer; `clamped_out` may be null.
#[no_mangle]
pub unsafe extern "C" fn libnet_mean_interference_1d(
    lambda: f64,
    h: f64,
    z: f64,
    theta_f: f64,
    beta: f64,
    out: *mut f64,
    clamped_out: *mut i32,
) -> LibnetStatus {
    run_guarded(|| {
        if out.is_null() {
            set_error("null output pointer");
            return LibnetStatus::NullArgument;
        }
        let inputs = match mean_inputs(lambda, h, z, theta_f, beta) {
            Ok(i) => i,
            Err(s) => return s,
        };
        match mean_interference_1d(&inputs) {
            Ok(result) => {
                *out = result.value;
                if !clamped_out.is_null() {
                    *clamped_out = i32::from(result.clamped_empty_support);
                }
                LibnetStatus::Ok
            }
            Err(e) => {
                let status = analytic_status(&e);
                set_error(e.to_string());
                status
            }
        }
    })
}

/// Closed-form mean co-channel interference of a 2D Poisson field over
/// the annular visible support.
///
/// # Safety
/// `out` must be a valid pointer; `clamped_out` may be null.
#[no_mangle]
pub unsafe extern "C" fn libnet_mean_interference_2d(
    lambda: f64,
    h: f64,
    z: f64,
    theta_f: f64,
    beta: f64,
    out: *mut f64,
    clamped_out: *mut i32,
) -> LibnetStatus {
    run_guarded(|| {
        if out.is_null() {
            set_error("null output pointer");
            return LibnetStatus::NullArgument;
        }
        let inputs = match mean_inputs(lambda, h, z, theta_f, beta) {
            Ok(i) => i,
            Err(s) => return s,
        };
        match mean_interference_2d(&inputs) {
            Ok(result) => {
                *out = result.value;
                if !clamped_out.is_null() {
                    *clamped_out = i32::from(result.clamped_empty_support);
                }
                LibnetStatus::Ok
            }
            Err(e) => {
                let status = analytic_status(&e);
                set_error(e.to_string());
                status
            }
        }
    })
}

/// Laplace functional of the interference, `E[exp(-s I)]`, over the
/// visible support of the given dimension (1 or 2). The half-power
/// semi-angle `theta_h` (radians) fixes the exponent `beta = m + 3`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn libnet_laplace_functional(
    s: f64,
    lambda: f64,
    h: f64,
    z: f64,
    theta_h: f64,
    theta_f: f64,
    dimension: u32,
    out: *mut f64,
) -> LibnetStatus {
    run_guarded(|| {
        if out.is_null() {
            set_error("null output pointer");
            return LibnetStatus::NullArgument;
        }
        let channel = match LambertianChannel::new(theta_h, h) {
            Ok(c) => c,
            Err(e) => {
                set_error(e.to_string());
                return LibnetStatus::Domain;
            }
        };
        let dim = match dimension {
            1 => Dim::One,
            2 => Dim::Two,
            other => {
                set_error(format!("dimension must be 1 or 2, got {other}"));
                return LibnetStatus::Domain;
            }
        };
        let inputs = match mean_inputs(lambda, h, z, theta_f, channel.beta()) {
            Ok(i) => i,
            Err(s) => return s,
        };
        let Some(support) = interference_support(&inputs, dim) else {
            *out = 1.0; // empty support carries no interference
            return LibnetStatus::Ok;
        };
        match laplace_functional(s, lambda, &channel, &support, QuadTol::default()) {
            Ok(v) => {
                *out = v;
                LibnetStatus::Ok
            }
            Err(e) => {
                let status = analytic_status(&e);
                set_error(e.to_string());
                status
            }
        }
    })
}

/// Monte Carlo estimate of the mean co-channel interference for a
/// scenario. `seed_override < 0` and `trials_override <= 0` keep the
/// config values.
///
/// # Safety
/// `scenario` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn libnet_monte_carlo_mean(
    scenario: *const LibnetScenario,
    seed_override: i64,
    trials_override: i64,
    out: *mut LibnetEstimate,
) -> LibnetStatus {
    run_guarded(|| {
        if out.is_null() {
            set_error("null output pointer");
            return LibnetStatus::NullArgument;
        }
        let config = match scenario_ref(scenario) {
            Ok(c) => c,
            Err(s) => return s,
        };
        let mut mc = McConfig::from_scenario(config);
        if seed_override >= 0 {
            mc.seed = seed_override as u64;
        }
        if trials_override > 0 {
            mc.trials = trials_override as u64;
        }
        match empirical_mean_interference(&mc) {
            Ok(result) => {
                *out = LibnetEstimate {
                    mean: result.mean,
                    std_error: result.std_error,
                    ci_lo: result.ci95.0,
                    ci_hi: result.ci95.1,
                    trials: result.trials,
                };
                LibnetStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                LibnetStatus::InvalidConfig
            }
        }
    })
}

/// Run the full three-way validation (closed form, quadrature oracle,
/// Monte Carlo) for a scenario.
///
/// # Safety
/// `scenario` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn libnet_validate(
    scenario: *const LibnetScenario,
    seed_override: i64,
    trials_override: i64,
    out: *mut LibnetValidation,
) -> LibnetStatus {
    run_guarded(|| {
        if out.is_null() {
            set_error("null output pointer");
            return LibnetStatus::NullArgument;
        }
        let config = match scenario_ref(scenario) {
            Ok(c) => c,
            Err(s) => return s,
        };
        let overrides = Overrides {
            seed: (seed_override >= 0).then_some(seed_override as u64),
            trials: (trials_override > 0).then_some(trials_override as u64),
            max_points: None,
        };
        match cmd_validate(config, &overrides) {
            Ok(report) => {
                *out = LibnetValidation {
                    closed_form: report.closed_form.value,
                    quadrature: report.quadrature,
                    empirical: LibnetEstimate {
                        mean: report.empirical.mean,
                        std_error: report.empirical.std_error,
                        ci_lo: report.empirical.ci95.0,
                        ci_hi: report.empirical.ci95.1,
                        trials: report.empirical.trials,
                    },
                    rel_cf_quad: report.rel_cf_quad,
                    z_score: report.comparison.z_score,
                    math_pass: i32::from(report.math_pass),
                    stat_pass: i32::from(report.stat_pass),
                };
                LibnetStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                LibnetStatus::InvalidConfig
            }
        }
    })
}
