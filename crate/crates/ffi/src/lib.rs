//! C ABI for the unimorph toolkit.
//!
//! Stacks are built through an opaque [`UnimorphStack`] handle; every other
//! entry point takes plain arrays and fills a caller-owned output struct.
//! Functions return a [`UnimorphStatus`]; on failure the message is
//! available from [`unimorph_last_error_message`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use unimorph::characterize::{
    cycle_metrics, estimate_q, frf_from_chirp, CharacterizeOptions, Trace, TraceKind, TraceMeta,
};
use unimorph::laminate::{
    evaluate, feasibility_check, DriveCondition, LaminateStack, Layer, LayerRole, Material,
};
use unimorph::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnimorphStatus {
    Ok = 0,
    Io = 1,
    Parse = 2,
    Validation = 3,
    Computation = 4,
    EmptyFeasibleSet = 5,
    NullPointer = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnimorphRole {
    Substrate = 0,
    Adhesive = 1,
    Active = 2,
}

/// Material properties in SI units. A limit of zero means "no limit".
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct UnimorphMaterial {
    pub youngs_modulus: f64,
    pub density: f64,
    pub d31: f64,
    pub dielectric_strength: f64,
    pub max_strain: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct UnimorphMetrics {
    pub neutral_axis: f64,
    pub flexural_stiffness: f64,
    pub free_strain: f64,
    pub actuation_moment: f64,
    pub blocked_force: f64,
    pub free_deflection: f64,
    pub tip_stiffness: f64,
    pub resonance_frequency: f64,
    pub mass_per_length: f64,
    pub actuator_mass: f64,
    pub feasible: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct UnimorphTraceInfo {
    pub load_mass: f64,
    pub actuator_mass: f64,
    pub drive_frequency: f64,
}

/// Means over the retained cycles, plus the sample standard deviation of
/// the power density.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct UnimorphCycleSummary {
    pub cycles: usize,
    pub discarded: usize,
    pub work_net: f64,
    pub work_positive: f64,
    pub power: f64,
    pub energy_density: f64,
    pub power_density: f64,
    pub power_density_std: f64,
}

/// `quality_factor` is NaN when `q_available` is false.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct UnimorphResonance {
    pub resonance_frequency: f64,
    pub quality_factor: f64,
    pub boundary_limited: bool,
    pub q_available: bool,
}

/// Opaque stack builder.
pub struct UnimorphStack {
    width: f64,
    length: f64,
    layers: Vec<Layer>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(err: Error) -> UnimorphStatus {
    let status = match err.exit_code() {
        1 => UnimorphStatus::Io,
        2 => UnimorphStatus::Parse,
        3 => UnimorphStatus::Validation,
        4 => UnimorphStatus::Computation,
        _ => UnimorphStatus::EmptyFeasibleSet,
    };
    set_error(err.to_string());
    status
}

fn null(what: &str) -> UnimorphStatus {
    set_error(format!("{what} is null"));
    UnimorphStatus::NullPointer
}

fn guard(f: impl FnOnce() -> UnimorphStatus) -> UnimorphStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| {
        set_error("internal panic".into());
        UnimorphStatus::Panic
    })
}

fn limit(v: f64) -> Option<f64> {
    (v != 0.0).then_some(v)
}

/// Message for the most recent failure on this thread, or null. The
/// pointer stays valid until the next call into this library.
#[no_mangle]
pub extern "C" fn unimorph_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn unimorph_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// New empty stack of the given planform (m). Layers are added bottom to
/// top. Free with [`unimorph_stack_free`].
#[no_mangle]
pub extern "C" fn unimorph_stack_new(width: f64, length: f64) -> *mut UnimorphStack {
    Box::into_raw(Box::new(UnimorphStack {
        width,
        length,
        layers: Vec::new(),
    }))
}

/// # Safety
/// `stack` must come from [`unimorph_stack_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn unimorph_stack_free(stack: *mut UnimorphStack) {
    if !stack.is_null() {
        drop(unsafe { Box::from_raw(stack) });
    }
}

/// Appends a layer on top of the stack. Values are checked when the stack
/// is evaluated.
///
/// # Safety
/// `stack` must be a live handle; `material` must point to a valid struct.
#[no_mangle]
pub unsafe extern "C" fn unimorph_stack_add_layer(
    stack: *mut UnimorphStack,
    role: UnimorphRole,
    thickness: f64,
    material: *const UnimorphMaterial,
) -> UnimorphStatus {
    guard(|| {
        let (Some(stack), Some(m)) = (unsafe { stack.as_mut() }, unsafe { material.as_ref() })
        else {
            return null("stack or material");
        };
        let role = match role {
            UnimorphRole::Substrate => LayerRole::Substrate,
            UnimorphRole::Adhesive => LayerRole::Adhesive,
            UnimorphRole::Active => LayerRole::Active,
        };
        let material = Material {
            name: format!("layer{}", stack.layers.len()),
            youngs_modulus: m.youngs_modulus,
            density: m.density,
            d31: m.d31,
            dielectric_strength: limit(m.dielectric_strength),
            max_strain: limit(m.max_strain),
        };
        stack.layers.push(Layer::new(role, thickness, material));
        UnimorphStatus::Ok
    })
}

/// Number of layers added so far.
///
/// # Safety
/// `stack` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn unimorph_stack_layer_count(stack: *const UnimorphStack) -> usize {
    unsafe { stack.as_ref() }.map_or(0, |s| s.layers.len())
}

/// Quasi-static model of the stack at `voltage` (V).
///
/// # Safety
/// `stack` must be a live handle; `out` must point to writable memory.
#[no_mangle]
pub unsafe extern "C" fn unimorph_evaluate(
    stack: *const UnimorphStack,
    voltage: f64,
    out: *mut UnimorphMetrics,
) -> UnimorphStatus {
    guard(|| {
        let (Some(s), Some(out)) = (unsafe { stack.as_ref() }, unsafe { out.as_mut() }) else {
            return null("stack or out");
        };
        let built = match LaminateStack::new(s.layers.clone(), s.width, s.length) {
            Ok(b) => b,
            Err(e) => return fail(e),
        };
        let drive = match DriveCondition::quasi_static(voltage) {
            Ok(d) => d,
            Err(e) => return fail(e),
        };
        let m = evaluate(&built, &drive);
        *out = UnimorphMetrics {
            neutral_axis: m.neutral_axis,
            flexural_stiffness: m.flexural_stiffness,
            free_strain: m.free_strain,
            actuation_moment: m.actuation_moment,
            blocked_force: m.blocked_force,
            free_deflection: m.free_deflection,
            tip_stiffness: m.tip_stiffness,
            resonance_frequency: m.resonance_frequency,
            mass_per_length: m.mass_per_length,
            actuator_mass: m.actuator_mass,
            feasible: feasibility_check(&built, &drive).feasible(),
        };
        UnimorphStatus::Ok
    })
}

unsafe fn series(
    time: *const f64,
    displacement: *const f64,
    len: usize,
) -> Option<(Vec<f64>, Vec<f64>)> {
    if time.is_null() || displacement.is_null() {
        return None;
    }
    let t = unsafe { std::slice::from_raw_parts(time, len) };
    let x = unsafe { std::slice::from_raw_parts(displacement, len) };
    Some((t.to_vec(), x.to_vec()))
}

/// Per-cycle work and power of a constant-frequency displacement trace
/// (s, m). `smoothing_window` is an odd sample count; 1 disables smoothing.
///
/// # Safety
/// `time` and `displacement` must each hold `len` values; `info` and `out`
/// must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn unimorph_cycle_metrics(
    time: *const f64,
    displacement: *const f64,
    len: usize,
    info: *const UnimorphTraceInfo,
    smoothing_window: usize,
    out: *mut UnimorphCycleSummary,
) -> UnimorphStatus {
    guard(|| {
        let (Some((t, x)), Some(info), Some(out)) = (
            unsafe { series(time, displacement, len) },
            unsafe { info.as_ref() },
            unsafe { out.as_mut() },
        ) else {
            return null("time, displacement, info or out");
        };
        let meta = TraceMeta {
            load_mass: info.load_mass,
            actuator_mass: info.actuator_mass,
            drive_frequency: Some(info.drive_frequency),
            ..TraceMeta::default()
        };
        let options = CharacterizeOptions {
            smoothing_window,
            ..CharacterizeOptions::default()
        };
        let metrics = match Trace::new(t, x, meta).and_then(|tr| cycle_metrics(&tr, &options)) {
            Ok(m) => m,
            Err(e) => return fail(e),
        };
        *out = UnimorphCycleSummary {
            cycles: metrics.cycles.len(),
            discarded: metrics.discarded,
            work_net: metrics.mean.work_net,
            work_positive: metrics.mean.work_positive,
            power: metrics.mean.power,
            energy_density: metrics.mean.energy_density,
            power_density: metrics.mean.power_density,
            power_density_std: metrics.std_dev.power_density,
        };
        UnimorphStatus::Ok
    })
}

/// Resonance and Q from a linear chirp from `f_lo` to `f_hi` (Hz) spanning
/// the trace, binned into `bins` frequency bins. A missing Q is not an
/// error: `q_available` is false and the reason is left in the last-error
/// message.
///
/// # Safety
/// `time` and `displacement` must each hold `len` values; `out` must be
/// valid.
#[no_mangle]
pub unsafe extern "C" fn unimorph_chirp_resonance(
    time: *const f64,
    displacement: *const f64,
    len: usize,
    f_lo: f64,
    f_hi: f64,
    bins: usize,
    out: *mut UnimorphResonance,
) -> UnimorphStatus {
    guard(|| {
        let (Some((t, x)), Some(out)) = (unsafe { series(time, displacement, len) }, unsafe {
            out.as_mut()
        }) else {
            return null("time, displacement or out");
        };
        let meta = TraceMeta {
            kind: TraceKind::Chirp,
            f_lo: Some(f_lo),
            f_hi: Some(f_hi),
            ..TraceMeta::default()
        };
        let frf = match Trace::new(t, x, meta).and_then(|tr| frf_from_chirp(&tr, f_lo, f_hi, bins))
        {
            Ok(f) => f,
            Err(e) => return fail(e),
        };
        let q = estimate_q(&frf);
        if let Err(reason) = &q {
            set_error(reason.to_string());
        }
        *out = UnimorphResonance {
            resonance_frequency: frf.resonance_frequency,
            quality_factor: q.as_ref().copied().unwrap_or(f64::NAN),
            boundary_limited: frf.boundary_limited,
            q_available: q.is_ok(),
        };
        UnimorphStatus::Ok
    })
}
