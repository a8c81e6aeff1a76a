use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub const MIN_TRACE_SAMPLES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TraceKind {
    /// Fixed-frequency sinusoidal drive.
    #[default]
    Constant,
    /// Linear frequency sweep between `f_lo` and `f_hi`.
    Chirp,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceMeta {
    /// kg
    pub load_mass: f64,
    /// kg
    pub actuator_mass: f64,
    /// V
    pub drive_voltage: f64,
    /// Hz
    pub drive_frequency: Option<f64>,
    pub kind: TraceKind,
    /// Chirp start frequency (Hz).
    pub f_lo: Option<f64>,
    /// Chirp end frequency (Hz).
    pub f_hi: Option<f64>,
}

impl Default for TraceMeta {
    fn default() -> Self {
        TraceMeta {
            load_mass: 0.0,
            actuator_mass: 1.0,
            drive_voltage: 0.0,
            drive_frequency: None,
            kind: TraceKind::Constant,
            f_lo: None,
            f_hi: None,
        }
    }
}

/// Sampled tip displacement.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trace {
    time: Vec<f64>,
    displacement: Vec<f64>,
    pub meta: TraceMeta,
}

impl Trace {
    pub fn new(time: Vec<f64>, displacement: Vec<f64>, meta: TraceMeta) -> Result<Self> {
        if time.len() != displacement.len() {
            return Err(Error::validation(
                "trace",
                format!(
                    "{} timestamps but {} displacements",
                    time.len(),
                    displacement.len()
                ),
            ));
        }
        if time.len() < MIN_TRACE_SAMPLES {
            return Err(Error::validation(
                "trace",
                format!(
                    "needs at least {MIN_TRACE_SAMPLES} samples, got {}",
                    time.len()
                ),
            ));
        }
        if let Some(i) = time
            .iter()
            .chain(&displacement)
            .position(|v| !v.is_finite())
        {
            return Err(Error::validation(
                "trace",
                format!("non-finite value at sample {}", i % time.len()),
            ));
        }
        if let Some(i) = time.windows(2).position(|w| w[1] <= w[0]) {
            return Err(Error::validation(
                "trace",
                format!("timestamps not strictly increasing at sample {}", i + 1),
            ));
        }
        if meta.load_mass.is_nan() || meta.load_mass < 0.0 {
            return Err(Error::validation(
                "load_mass",
                format!("must be >= 0, got {}", meta.load_mass),
            ));
        }
        if !(meta.actuator_mass > 0.0 && meta.actuator_mass.is_finite()) {
            return Err(Error::validation(
                "actuator_mass",
                format!("must be > 0, got {}", meta.actuator_mass),
            ));
        }
        if let Some(f) = meta.drive_frequency {
            if !(f > 0.0 && f.is_finite()) {
                return Err(Error::validation(
                    "drive_frequency",
                    format!("must be > 0, got {f}"),
                ));
            }
        }
        Ok(Trace {
            time,
            displacement,
            meta,
        })
    }

    /// Sample times (s).
    pub fn time(&self) -> &[f64] {
        &self.time
    }

    /// Tip displacement (m).
    pub fn displacement(&self) -> &[f64] {
        &self.displacement
    }

    pub fn len(&self) -> usize {
        self.time.len()
    }

    pub fn is_empty(&self) -> bool {
        self.time.is_empty()
    }

    pub fn duration(&self) -> f64 {
        self.time[self.time.len() - 1] - self.time[0]
    }
}
