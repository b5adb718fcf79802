//! C interface for the beamforming core: opaque handles, integer status
//! codes, caller-owned buffers. Every constructor has a matching `_free`;
//! handles are not thread-safe to mutate concurrently, but distinct handles
//! are independent. On any failure the thread-local message retrieved by
//! [`svabeam_last_error_message`] describes the cause.
//!
//! The companion header is generated into `include/svabeam.h` at build time.

#![allow(non_camel_case_types)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use svabeam::beamform::{angle_grid, beampattern, Method};
use svabeam::{synthesize_snapshot, ArrayGeometry, Beampattern, RunConfig, Scenario, SourceSpec};

/// Status code returned by every fallible call. `OK` is zero; config-shaped
/// failures and numerical-constraint failures use the same split as the CLI
/// exit codes (2 and 3).
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum svabeam_status {
    Ok = 0,
    NullArgument = 1,
    InvalidConfig = 2,
    NumericalConstraint = 3,
    BufferTooSmall = 4,
    NoAlphaTrace = 5,
    Internal = 6,
}

/// Beampattern methods exposed across the ABI. The parameterized
/// raised-cosine shading has its own entry point taking alpha explicitly.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum svabeam_method {
    Rect = 0,
    Hanning = 1,
    SvaJointly = 2,
    SvaSeparately = 3,
}

/// Array geometry, sources, and noise settings. Opaque.
pub struct svabeam_scenario {
    inner: Scenario,
}

/// A computed beampattern: angle grid, normalized levels, optional per-angle
/// coefficient trace. Opaque.
pub struct svabeam_pattern {
    inner: Beampattern,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg).unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn status_for(err: &svabeam::Error) -> svabeam_status {
    set_last_error(err.to_string());
    if err.is_config() {
        svabeam_status::InvalidConfig
    } else {
        svabeam_status::NumericalConstraint
    }
}

/// Copy the most recent error message for this thread into `buf` (always
/// NUL-terminated, truncated if needed) and return the full length the
/// message requires including the terminator. `buf` may be null (with
/// `cap` 0) to query the required size. Returns 0 when no error is stored.
#[no_mangle]
pub extern "C" fn svabeam_last_error_message(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|slot| {
        let slot = slot.borrow();
        let Some(msg) = slot.as_ref() else { return 0 };
        let bytes = msg.as_bytes_with_nul();
        if !buf.is_null() && cap > 0 {
            let n = cap.min(bytes.len());
            unsafe {
                std::ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
                // ensure termination even when truncating
                *buf.add(n - 1) = 0;
            }
        }
        bytes.len()
    })
}

/// Create a scenario for a uniform line array. Returns null (with the error
/// retrievable via [`svabeam_last_error_message`]) when the geometry is
/// rejected. Free with [`svabeam_scenario_free`].
#[no_mangle]
pub extern "C" fn svabeam_scenario_new(
    sensor_count: usize,
    spacing_ratio: f64,
) -> *mut svabeam_scenario {
    match ArrayGeometry::new(sensor_count, spacing_ratio) {
        Ok(geometry) => Box::into_raw(Box::new(svabeam_scenario {
            inner: Scenario {
                geometry,
                sources: Vec::new(),
                snr_db: f64::INFINITY,
                seed: 0,
            },
        })),
        Err(e) => {
            set_last_error(e.to_string());
            std::ptr::null_mut()
        }
    }
}

/// Load the scenario section of a TOML config file. Returns null on any
/// parse or validation failure. Free with [`svabeam_scenario_free`].
#[no_mangle]
pub extern "C" fn svabeam_scenario_load_config(path: *const c_char) -> *mut svabeam_scenario {
    if path.is_null() {
        set_last_error("null path".into());
        return std::ptr::null_mut();
    }
    let path = match unsafe { CStr::from_ptr(path) }.to_str() {
        Ok(s) => s,
        Err(_) => {
            set_last_error("path is not valid UTF-8".into());
            return std::ptr::null_mut();
        }
    };
    match RunConfig::from_file(std::path::Path::new(path)) {
        Ok(config) => Box::into_raw(Box::new(svabeam_scenario {
            inner: config.scenario,
        })),
        Err(e) => {
            set_last_error(e.to_string());
            std::ptr::null_mut()
        }
    }
}

/// Append a point source (azimuth in degrees, level in dB relative to the
/// strongest source, carrier phase in radians). Validated when a pattern is
/// computed.
#[no_mangle]
pub extern "C" fn svabeam_scenario_add_source(
    scenario: *mut svabeam_scenario,
    azimuth_deg: f64,
    power_db: f64,
    phase_rad: f64,
) -> svabeam_status {
    let Some(s) = (unsafe { scenario.as_mut() }) else {
        return svabeam_status::NullArgument;
    };
    s.inner.sources.push(SourceSpec {
        azimuth_deg,
        power_db,
        phase_rad,
    });
    svabeam_status::Ok
}

/// Set sensor-noise level (SNR in dB relative to the strongest source;
/// +infinity disables noise) and the generator seed.
#[no_mangle]
pub extern "C" fn svabeam_scenario_set_noise(
    scenario: *mut svabeam_scenario,
    snr_db: f64,
    seed: u64,
) -> svabeam_status {
    let Some(s) = (unsafe { scenario.as_mut() }) else {
        return svabeam_status::NullArgument;
    };
    s.inner.snr_db = snr_db;
    s.inner.seed = seed;
    svabeam_status::Ok
}

#[no_mangle]
pub extern "C" fn svabeam_scenario_free(scenario: *mut svabeam_scenario) {
    if !scenario.is_null() {
        drop(unsafe { Box::from_raw(scenario) });
    }
}

fn compute_impl(
    scenario: &svabeam_scenario,
    method: Method,
    dft_size: usize,
    angle_step_deg: f64,
    out: *mut *mut svabeam_pattern,
) -> svabeam_status {
    if out.is_null() {
        return svabeam_status::NullArgument;
    }
    if !(angle_step_deg.is_finite() && angle_step_deg > 0.0 && angle_step_deg <= 180.0) {
        set_last_error(format!("angle step {angle_step_deg} out of (0, 180]"));
        return svabeam_status::InvalidConfig;
    }
    let result = catch_unwind(AssertUnwindSafe(|| {
        let x = synthesize_snapshot(&scenario.inner)?;
        beampattern(
            &x,
            &scenario.inner.geometry,
            &angle_grid(angle_step_deg),
            dft_size,
            method,
            svabeam::DEFAULT_DENOM_EPSILON,
        )
    }));
    match result {
        Ok(Ok(pattern)) => {
            unsafe { *out = Box::into_raw(Box::new(svabeam_pattern { inner: pattern })) };
            svabeam_status::Ok
        }
        Ok(Err(e)) => status_for(&e),
        Err(_) => {
            set_last_error("internal panic".into());
            svabeam_status::Internal
        }
    }
}

/// Compute a beampattern over the closed [0, 180] degree grid with the given
/// step. On success `*out` owns the pattern; free it with
/// [`svabeam_pattern_free`].
#[no_mangle]
pub extern "C" fn svabeam_compute(
    scenario: *const svabeam_scenario,
    method: svabeam_method,
    dft_size: usize,
    angle_step_deg: f64,
    out: *mut *mut svabeam_pattern,
) -> svabeam_status {
    let Some(s) = (unsafe { scenario.as_ref() }) else {
        return svabeam_status::NullArgument;
    };
    let method = match method {
        svabeam_method::Rect => Method::Rect,
        svabeam_method::Hanning => Method::Hanning,
        svabeam_method::SvaJointly => Method::SvaJointly,
        svabeam_method::SvaSeparately => Method::SvaSeparately,
    };
    compute_impl(s, method, dft_size, angle_step_deg, out)
}

/// Compute a fixed raised-cosine-shaded pattern with pedestal parameter
/// `alpha` in [0, 1/2].
#[no_mangle]
pub extern "C" fn svabeam_compute_shaded(
    scenario: *const svabeam_scenario,
    alpha: f64,
    dft_size: usize,
    angle_step_deg: f64,
    out: *mut *mut svabeam_pattern,
) -> svabeam_status {
    let Some(s) = (unsafe { scenario.as_ref() }) else {
        return svabeam_status::NullArgument;
    };
    compute_impl(s, Method::RaisedCosine(alpha), dft_size, angle_step_deg, out)
}

/// Number of grid angles in the pattern (buffer size for the accessors).
#[no_mangle]
pub extern "C" fn svabeam_pattern_len(pattern: *const svabeam_pattern) -> usize {
    unsafe { pattern.as_ref() }.map_or(0, |p| p.inner.len())
}

fn fill(buf: *mut f64, cap: usize, data: &[f64]) -> svabeam_status {
    if buf.is_null() {
        return svabeam_status::NullArgument;
    }
    if cap < data.len() {
        set_last_error(format!("buffer holds {cap}, need {}", data.len()));
        return svabeam_status::BufferTooSmall;
    }
    unsafe { std::slice::from_raw_parts_mut(buf, data.len()) }.copy_from_slice(data);
    svabeam_status::Ok
}

/// Copy the angle grid (degrees) into `buf` (capacity `cap` doubles).
#[no_mangle]
pub extern "C" fn svabeam_pattern_angles(
    pattern: *const svabeam_pattern,
    buf: *mut f64,
    cap: usize,
) -> svabeam_status {
    let Some(p) = (unsafe { pattern.as_ref() }) else {
        return svabeam_status::NullArgument;
    };
    fill(buf, cap, &p.inner.angles_deg)
}

/// Copy the normalized levels (dB, max = 0) into `buf`.
#[no_mangle]
pub extern "C" fn svabeam_pattern_levels(
    pattern: *const svabeam_pattern,
    buf: *mut f64,
    cap: usize,
) -> svabeam_status {
    let Some(p) = (unsafe { pattern.as_ref() }) else {
        return svabeam_status::NullArgument;
    };
    fill(buf, cap, &p.inner.power_db)
}

/// Whether the pattern carries a per-angle coefficient trace (true for the
/// per-bin-optimized methods).
#[no_mangle]
pub extern "C" fn svabeam_pattern_has_alphas(pattern: *const svabeam_pattern) -> bool {
    unsafe { pattern.as_ref() }.is_some_and(|p| p.inner.alpha_trace.is_some())
}

/// Copy the per-angle coefficient trace into `buf`; fails with
/// `NO_ALPHA_TRACE` for methods that do not produce one.
#[no_mangle]
pub extern "C" fn svabeam_pattern_alphas(
    pattern: *const svabeam_pattern,
    buf: *mut f64,
    cap: usize,
) -> svabeam_status {
    let Some(p) = (unsafe { pattern.as_ref() }) else {
        return svabeam_status::NullArgument;
    };
    let Some(trace) = &p.inner.alpha_trace else {
        set_last_error("pattern has no coefficient trace".into());
        return svabeam_status::NoAlphaTrace;
    };
    fill(buf, cap, trace)
}

/// Unnormalized peak level in dB (20 log10 of the largest response
/// magnitude); comparable across methods on the same snapshot.
#[no_mangle]
pub extern "C" fn svabeam_pattern_peak_raw_db(
    pattern: *const svabeam_pattern,
    out: *mut f64,
) -> svabeam_status {
    let (Some(p), Some(out)) = (unsafe { pattern.as_ref() }, unsafe { out.as_mut() }) else {
        return svabeam_status::NullArgument;
    };
    *out = p.inner.peak_raw_db();
    svabeam_status::Ok
}

#[no_mangle]
pub extern "C" fn svabeam_pattern_free(pattern: *mut svabeam_pattern) {
    if !pattern.is_null() {
        drop(unsafe { Box::from_raw(pattern) });
    }
}
