use serde::{Deserialize, Serialize};

use super::{Trace, TraceKind};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrfPoint {
    /// Bin centre (Hz).
    pub frequency: f64,
    /// Displacement amplitude, half peak-to-peak (m).
    pub amplitude: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QUnavailable {
    /// The maximum sits in the first or last bin.
    BoundaryPeak,
    /// The amplitude never drops below peak/√2 below the peak.
    NoLowerCrossing,
    /// The amplitude never drops below peak/√2 above the peak.
    NoUpperCrossing,
    /// Fewer than three bins.
    TooFewPoints,
}

impl std::fmt::Display for QUnavailable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            QUnavailable::BoundaryPeak => "peak lies at the edge of the measured band",
            QUnavailable::NoLowerCrossing => {
                "lower half-power point lies outside the measured band"
            }
            QUnavailable::NoUpperCrossing => {
                "upper half-power point lies outside the measured band"
            }
            QUnavailable::TooFewPoints => "fewer than three frequency points",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrequencyResponse {
    pub points: Vec<FrfPoint>,
    /// Peak frequency, parabolically refined when the peak is interior (Hz).
    pub resonance_frequency: f64,
    /// Index of the largest-amplitude bin.
    pub peak_index: usize,
    /// True when the maximum is in the first or last bin.
    pub boundary_limited: bool,
}

impl FrequencyResponse {
    /// Builds a response from ordered points, locating the peak.
    pub fn from_points(points: Vec<FrfPoint>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::validation("frequency response", "no points"));
        }
        if let Some(i) = points
            .windows(2)
            .position(|w| w[1].frequency <= w[0].frequency)
        {
            return Err(Error::validation(
                "frequency response",
                format!("frequencies not strictly increasing at point {}", i + 1),
            ));
        }
        if let Some(p) = points
            .iter()
            .find(|p| !p.amplitude.is_finite() || p.amplitude < 0.0)
        {
            return Err(Error::validation(
                "frequency response",
                format!("amplitude must be finite and >= 0, got {}", p.amplitude),
            ));
        }
        // first occurrence of the maximum
        let peak_index = points.iter().enumerate().fold(0, |best, (i, p)| {
            if p.amplitude > points[best].amplitude {
                i
            } else {
                best
            }
        });
        let boundary_limited = peak_index == 0 || peak_index == points.len() - 1;
        let resonance_frequency = if boundary_limited {
            points[peak_index].frequency
        } else {
            let (l, c, r) = (
                points[peak_index - 1],
                points[peak_index],
                points[peak_index + 1],
            );
            let curvature = l.amplitude - 2.0 * c.amplitude + r.amplitude;
            if curvature == 0.0 {
                c.frequency
            } else {
                let offset = 0.5 * (l.amplitude - r.amplitude) / curvature;
                let step = if offset >= 0.0 {
                    r.frequency - c.frequency
                } else {
                    c.frequency - l.frequency
                };
                c.frequency + offset * step
            }
        };
        Ok(FrequencyResponse {
            points,
            resonance_frequency,
            peak_index,
            boundary_limited,
        })
    }

    pub fn quality_factor(&self) -> std::result::Result<f64, QUnavailable> {
        estimate_q(self)
    }
}

/// Bins a linear-chirp displacement trace by instantaneous frequency.
///
/// The sweep is assumed to run linearly from `f_lo` at the first sample to
/// `f_hi` at the last. Each bin's amplitude is half the peak-to-peak
/// displacement over the samples whose instantaneous frequency falls in it.
pub fn frf_from_chirp(
    trace: &Trace,
    f_lo: f64,
    f_hi: f64,
    bins: usize,
) -> Result<FrequencyResponse> {
    if trace.meta.kind != TraceKind::Chirp {
        return Err(Error::validation(
            "trace kind",
            "resonance analysis needs a chirp trace",
        ));
    }
    if !(f_lo.is_finite() && f_hi.is_finite() && f_lo > 0.0 && f_lo < f_hi) {
        return Err(Error::validation(
            "chirp band",
            format!("need 0 < f_lo < f_hi, got f_lo = {f_lo}, f_hi = {f_hi}"),
        ));
    }
    if bins < 3 {
        return Err(Error::validation(
            "bins",
            format!("need at least 3, got {bins}"),
        ));
    }

    let t = trace.time();
    let x = trace.displacement();
    let (t0, span) = (t[0], trace.duration());
    let bin_width = (f_hi - f_lo) / bins as f64;

    let mut lo = vec![f64::INFINITY; bins];
    let mut hi = vec![f64::NEG_INFINITY; bins];
    let mut count = vec![0usize; bins];
    for (&ti, &xi) in t.iter().zip(x) {
        let frac = (ti - t0) / span;
        let k = ((frac * bins as f64) as usize).min(bins - 1);
        lo[k] = lo[k].min(xi);
        hi[k] = hi[k].max(xi);
        count[k] += 1;
    }
    if let Some(k) = count.iter().position(|&c| c < 2) {
        return Err(Error::Computation(format!(
            "frequency bin {k} holds {} samples; use fewer bins (at most {})",
            count[k],
            trace.len() / 2
        )));
    }

    let points = (0..bins)
        .map(|k| FrfPoint {
            frequency: f_lo + (k as f64 + 0.5) * bin_width,
            amplitude: 0.5 * (hi[k] - lo[k]),
        })
        .collect();
    FrequencyResponse::from_points(points)
}

/// Half-power bandwidth estimate Q = f_res/Δf, with the two peak/√2
/// crossings located by linear interpolation between neighbouring points.
pub fn estimate_q(frf: &FrequencyResponse) -> std::result::Result<f64, QUnavailable> {
    let pts = &frf.points;
    if pts.len() < 3 {
        return Err(QUnavailable::TooFewPoints);
    }
    if frf.boundary_limited {
        return Err(QUnavailable::BoundaryPeak);
    }
    let k = frf.peak_index;
    let threshold = pts[k].amplitude * std::f64::consts::FRAC_1_SQRT_2;
    let crossing = |below: FrfPoint, above: FrfPoint| {
        below.frequency
            + (threshold - below.amplitude) / (above.amplitude - below.amplitude)
                * (above.frequency - below.frequency)
    };

    let lower = (0..k)
        .rev()
        .find(|&j| pts[j].amplitude < threshold)
        .map(|j| crossing(pts[j], pts[j + 1]))
        .ok_or(QUnavailable::NoLowerCrossing)?;
    let upper = (k + 1..pts.len())
        .find(|&j| pts[j].amplitude < threshold)
        .map(|j| crossing(pts[j], pts[j - 1]))
        .ok_or(QUnavailable::NoUpperCrossing)?;
    Ok(frf.resonance_frequency / (upper - lower))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frf(amps: &[f64]) -> FrequencyResponse {
        FrequencyResponse::from_points(
            amps.iter()
                .enumerate()
                .map(|(i, &a)| FrfPoint {
                    frequency: 100.0 + i as f64,
                    amplitude: a,
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn monotone_curve_has_no_q() {
        let r = frf(&[1.0, 2.0, 3.0, 4.0, 5.0]);
        assert!(r.boundary_limited);
        assert_eq!(r.resonance_frequency, 104.0);
        assert_eq!(estimate_q(&r), Err(QUnavailable::BoundaryPeak));
    }

    #[test]
    fn flat_curve_reports_first_bin() {
        let r = frf(&[1.0; 6]);
        assert_eq!(r.peak_index, 0);
        assert!(estimate_q(&r).is_err());
    }

    #[test]
    fn symmetric_triangle() {
        // peak 1 at 103, half-power 0.7071 crossed symmetrically.
        let r = frf(&[0.0, 0.25, 0.5, 1.0, 0.5, 0.25, 0.0]);
        assert_eq!(r.resonance_frequency, 103.0);
        let t = std::f64::consts::FRAC_1_SQRT_2;
        let half_width = 1.0 - (t - 0.5) / 0.5;
        let q = estimate_q(&r).unwrap();
        assert!((q - 103.0 / (2.0 * half_width)).abs() < 1e-12, "{q}");
    }

    #[test]
    fn missing_crossing() {
        let r = frf(&[0.9, 0.95, 1.0, 0.5, 0.1]);
        assert_eq!(estimate_q(&r), Err(QUnavailable::NoLowerCrossing));
        let r = frf(&[0.1, 0.5, 1.0, 0.95, 0.9]);
        assert_eq!(estimate_q(&r), Err(QUnavailable::NoUpperCrossing));
    }

    #[test]
    fn rejects_unsorted_or_negative() {
        let p = |f, a| FrfPoint {
            frequency: f,
            amplitude: a,
        };
        assert!(FrequencyResponse::from_points(vec![p(2.0, 1.0), p(1.0, 1.0)]).is_err());
        assert!(FrequencyResponse::from_points(vec![p(1.0, -1.0), p(2.0, 1.0)]).is_err());
    }
}
