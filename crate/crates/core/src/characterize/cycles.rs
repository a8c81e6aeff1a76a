use serde::{Deserialize, Serialize};

use super::{differentiate, Kinematics, Trace, DEFAULT_SMOOTHING_WINDOW};
use crate::{Error, Result, STANDARD_GRAVITY};

/// Windows whose duration deviates from 1/f by more than this fraction are
/// discarded.
pub const CYCLE_DURATION_TOLERANCE: f64 = 0.25;

/// Re-arm band for mean crossings as a fraction of the RMS excursion.
pub const CROSSING_HYSTERESIS: f64 = 0.5;

/// Inclusive sample range `[start, end]` into a [`Kinematics`] series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleWindow {
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Segmentation {
    pub windows: Vec<CycleWindow>,
    /// Windows dropped by the duration tolerance.
    pub discarded: usize,
}

/// Splits the series at successive upward crossings of the mean position.
/// A crossing must be preceded by an excursion below the mean by at least
/// [`CROSSING_HYSTERESIS`] × RMS, which rejects noise chatter.
pub fn segment_cycles(kin: &Kinematics, drive_frequency: f64) -> Result<Segmentation> {
    if !(drive_frequency.is_finite() && drive_frequency > 0.0) {
        return Err(Error::validation(
            "drive_frequency",
            format!("must be > 0, got {drive_frequency}"),
        ));
    }
    let period = 1.0 / drive_frequency;
    let n = kin.len();
    if n < 2 {
        return Err(Error::Computation("kinematic series is empty".into()));
    }
    let duration = kin.time[n - 1] - kin.time[0];
    if duration < 2.0 * period {
        return Err(Error::Computation(format!(
            "trace spans {:.3} cycles at {drive_frequency} Hz; at least 2 are required",
            duration / period
        )));
    }

    let mean = kin.position.iter().sum::<f64>() / n as f64;
    let rms = (kin.position.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n as f64).sqrt();
    let band = CROSSING_HYSTERESIS * rms;
    // An upward crossing counts only once the signal has been below
    // mean − band since the previous one, so noise at the mean cannot split a cycle.
    let mut armed = false;
    let mut crossings = Vec::new();
    for i in 1..n {
        let (prev, cur) = (kin.position[i - 1] - mean, kin.position[i] - mean);
        if prev < -band {
            armed = true;
        }
        if armed && prev < 0.0 && cur >= 0.0 {
            crossings.push(i);
            armed = false;
        }
    }

    let mut windows = Vec::new();
    let mut discarded = 0;
    for pair in crossings.windows(2) {
        let w = CycleWindow {
            start: pair[0],
            end: pair[1],
        };
        let dur = kin.time[w.end] - kin.time[w.start];
        if ((dur - period) / period).abs() <= CYCLE_DURATION_TOLERANCE {
            windows.push(w);
        } else {
            discarded += 1;
        }
    }
    if windows.is_empty() {
        return Err(Error::Computation(format!(
            "no complete cycle found ({} mean crossings, {discarded} windows outside ±{:.0}% of the drive period)",
            crossings.len(),
            CYCLE_DURATION_TOLERANCE * 100.0
        )));
    }
    Ok(Segmentation { windows, discarded })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CycleWork {
    /// ∫ F·v dt over the whole window (J).
    pub net: f64,
    /// ∫ F·v dt over the lifting phase (v > 0) only (J).
    pub positive: f64,
    /// ∫ max(F·v, 0) dt (J). Includes inertial work that is returned later in
    /// the cycle.
    pub gross: f64,
}

/// Work done on a tip load F = m_load·(g + a), trapezoidal rule.
///
/// The lifting-phase integral spans the rising strokes, whose endpoints are
/// at zero velocity, so the inertial contribution cancels and it measures the
/// gravitational stroke work.
pub fn cycle_work(
    kin: &Kinematics,
    window: CycleWindow,
    load_mass: f64,
    gravity: f64,
) -> CycleWork {
    let mut work = CycleWork {
        net: 0.0,
        positive: 0.0,
        gross: 0.0,
    };
    if load_mass == 0.0 {
        return work;
    }
    let power = |i: usize| load_mass * (gravity + kin.acceleration[i]) * kin.velocity[i];
    let lifting = |i: usize| if kin.velocity[i] > 0.0 { power(i) } else { 0.0 };
    for i in window.start..window.end {
        let dt = kin.time[i + 1] - kin.time[i];
        let (p0, p1) = (power(i), power(i + 1));
        work.net += 0.5 * dt * (p0 + p1);
        work.positive += 0.5 * dt * (lifting(i) + lifting(i + 1));
        work.gross += 0.5 * dt * (p0.max(0.0) + p1.max(0.0));
    }
    work
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CharacterizeOptions {
    /// Moving-average window (odd sample count, 1 = none).
    pub smoothing_window: usize,
    /// m/s²
    pub gravity: f64,
}

impl Default for CharacterizeOptions {
    fn default() -> Self {
        CharacterizeOptions {
            smoothing_window: DEFAULT_SMOOTHING_WINDOW,
            gravity: STANDARD_GRAVITY,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CycleRecord {
    pub start_time: f64,
    pub end_time: f64,
    /// t_f − t_0 (s).
    pub duration: f64,
    /// J
    pub work_net: f64,
    /// Lifting-phase work (J); the headline energy metric.
    pub work_positive: f64,
    /// J
    pub work_gross: f64,
    /// work_positive / duration (W).
    pub power: f64,
    /// work_positive / m_act (J/kg).
    pub energy_density: f64,
    /// power / m_act (W/kg).
    pub power_density: f64,
}

/// Mean or standard deviation of each per-cycle quantity.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct CycleSummary {
    pub duration: f64,
    pub work_net: f64,
    pub work_positive: f64,
    pub work_gross: f64,
    pub power: f64,
    pub energy_density: f64,
    pub power_density: f64,
}

impl CycleSummary {
    fn of(record: &CycleRecord) -> Self {
        CycleSummary {
            duration: record.duration,
            work_net: record.work_net,
            work_positive: record.work_positive,
            work_gross: record.work_gross,
            power: record.power,
            energy_density: record.energy_density,
            power_density: record.power_density,
        }
    }

    fn map(self, f: impl Fn(f64) -> f64) -> Self {
        CycleSummary {
            duration: f(self.duration),
            work_net: f(self.work_net),
            work_positive: f(self.work_positive),
            work_gross: f(self.work_gross),
            power: f(self.power),
            energy_density: f(self.energy_density),
            power_density: f(self.power_density),
        }
    }

    fn zip(self, o: Self, f: impl Fn(f64, f64) -> f64) -> Self {
        CycleSummary {
            duration: f(self.duration, o.duration),
            work_net: f(self.work_net, o.work_net),
            work_positive: f(self.work_positive, o.work_positive),
            work_gross: f(self.work_gross, o.work_gross),
            power: f(self.power, o.power),
            energy_density: f(self.energy_density, o.energy_density),
            power_density: f(self.power_density, o.power_density),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CycleMetrics {
    pub cycles: Vec<CycleRecord>,
    pub discarded: usize,
    pub mean: CycleSummary,
    /// Sample standard deviation (zero for a single cycle).
    pub std_dev: CycleSummary,
}

pub fn cycle_metrics(trace: &Trace, options: &CharacterizeOptions) -> Result<CycleMetrics> {
    let f_drive = trace.meta.drive_frequency.ok_or_else(|| {
        Error::validation("drive_frequency", "trace metadata has no drive frequency")
    })?;
    let kin = differentiate(trace, options.smoothing_window)?;
    let seg = segment_cycles(&kin, f_drive)?;
    let m_act = trace.meta.actuator_mass;

    let cycles: Vec<CycleRecord> = seg
        .windows
        .iter()
        .map(|&w| {
            let work = cycle_work(&kin, w, trace.meta.load_mass, options.gravity);
            let (t0, tf) = (kin.time[w.start], kin.time[w.end]);
            let power = work.positive / (tf - t0);
            CycleRecord {
                start_time: t0,
                end_time: tf,
                duration: tf - t0,
                work_net: work.net,
                work_positive: work.positive,
                work_gross: work.gross,
                power,
                energy_density: work.positive / m_act,
                power_density: power / m_act,
            }
        })
        .collect();

    let n = cycles.len() as f64;
    let mean = cycles
        .iter()
        .map(CycleSummary::of)
        .fold(CycleSummary::default(), |acc, c| acc.zip(c, |a, b| a + b))
        .map(|s| s / n);
    let std_dev = if cycles.len() > 1 {
        cycles
            .iter()
            .map(CycleSummary::of)
            .fold(CycleSummary::default(), |acc, c| {
                acc.zip(c.zip(mean, |x, m| (x - m) * (x - m)), |a, b| a + b)
            })
            .map(|s| (s / (n - 1.0)).sqrt())
    } else {
        CycleSummary::default()
    };

    Ok(CycleMetrics {
        cycles,
        discarded: seg.discarded,
        mean,
        std_dev,
    })
}
