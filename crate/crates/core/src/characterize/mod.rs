//! Bench trace processing: tip displacement in, work/power and resonance out.
//!
//! The pipeline for loaded-displacement traces is
//! [`differentiate`] → [`segment_cycles`] → [`cycle_work`], wrapped by
//! [`cycle_metrics`]. Chirp traces go through [`frf_from_chirp`] and
//! [`estimate_q`].

mod cycles;
mod frf;
mod kinematics;
mod trace;

pub use cycles::{
    cycle_metrics, cycle_work, segment_cycles, CharacterizeOptions, CycleMetrics, CycleRecord,
    CycleSummary, CycleWindow, CycleWork, Segmentation, CROSSING_HYSTERESIS,
    CYCLE_DURATION_TOLERANCE,
};
pub use frf::{estimate_q, frf_from_chirp, FrequencyResponse, FrfPoint, QUnavailable};
pub use kinematics::{differentiate, Kinematics, DEFAULT_SMOOTHING_WINDOW};
pub use trace::{Trace, TraceKind, TraceMeta, MIN_TRACE_SAMPLES};
