//! Fixtures and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use unimorph::characterize::{Trace, TraceKind, TraceMeta};
use unimorph::laminate::{LaminateStack, Material};

pub fn rel_err(actual: f64, expected: f64) -> f64 {
    ((actual - expected) / expected).abs()
}

/// Polyimide-like substrate with E = 2.0 GPa.
pub fn kapton_like() -> Material {
    Material {
        name: "kapton-like".into(),
        youngs_modulus: 2.0e9,
        ..Material::kapton()
    }
}

/// N films of PVDF (E = 2.5 GPa, d31 = −25 pm/V) on 50 µm of a 2.0 GPa
/// substrate, 10 mm × 10 mm.
pub fn reference_stack(n: u32, layer_thickness: f64) -> LaminateStack {
    LaminateStack::unimorph(
        (&kapton_like(), 50e-6),
        (&Material::pvdf(), layer_thickness),
        n,
        None,
        0.01,
        0.01,
    )
    .unwrap()
}

/// x(t) = A·sin(2πft + φ), `per_cycle` samples per period, `cycles` periods.
pub fn sine_trace(
    amplitude: f64,
    frequency: f64,
    per_cycle: usize,
    cycles: usize,
    load_mass: f64,
    actuator_mass: f64,
    phase: f64,
) -> Trace {
    let n = per_cycle * cycles + 1;
    let dt = 1.0 / (frequency * per_cycle as f64);
    let t: Vec<f64> = (0..n).map(|i| i as f64 * dt).collect();
    let x = t
        .iter()
        .map(|&t| amplitude * (2.0 * PI * frequency * t + phase).sin())
        .collect();
    let meta = TraceMeta {
        load_mass,
        actuator_mass,
        drive_voltage: 300.0,
        drive_frequency: Some(frequency),
        kind: TraceKind::Constant,
        f_lo: None,
        f_hi: None,
    };
    Trace::new(t, x, meta).unwrap()
}

/// Displacement transfer magnitude and phase of a single-mode damped
/// oscillator normalised to unit static gain.
pub fn oscillator_response(f: f64, f0: f64, q: f64) -> (f64, f64) {
    let r = f / f0;
    let re = 1.0 - r * r;
    let im = r / q;
    (1.0 / (re * re + im * im).sqrt(), -im.atan2(re))
}

/// Quasi-steady response of a resonator to a linear chirp from `f_lo` to
/// `f_hi` over `duration` seconds.
pub fn chirp_trace(
    f0: f64,
    q: f64,
    f_lo: f64,
    f_hi: f64,
    duration: f64,
    sample_rate: f64,
) -> Trace {
    let n = (duration * sample_rate) as usize + 1;
    let k = (f_hi - f_lo) / duration;
    let mut t = Vec::with_capacity(n);
    let mut x = Vec::with_capacity(n);
    for i in 0..n {
        let ti = i as f64 / sample_rate;
        let f_inst = f_lo + k * ti;
        let phase = 2.0 * PI * (f_lo * ti + 0.5 * k * ti * ti);
        let (gain, lag) = oscillator_response(f_inst, f0, q);
        t.push(ti);
        x.push(1e-4 * gain * (phase + lag).sin());
    }
    let meta = TraceMeta {
        load_mass: 0.0,
        actuator_mass: 15e-6,
        drive_voltage: 300.0,
        drive_frequency: None,
        kind: TraceKind::Chirp,
        f_lo: Some(f_lo),
        f_hi: Some(f_hi),
    };
    Trace::new(t, x, meta).unwrap()
}

/// O(n²) dominance check for maximisation of both coordinates.
pub fn brute_force_front(points: &[(f64, f64)]) -> Vec<bool> {
    points
        .iter()
        .map(|&(f, d)| {
            !points
                .iter()
                .any(|&(g, e)| g >= f && e >= d && (g > f || e > d))
        })
        .collect()
}
