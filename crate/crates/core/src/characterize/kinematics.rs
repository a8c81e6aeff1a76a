use serde::{Deserialize, Serialize};

use super::Trace;
use crate::{Error, Result};

pub const DEFAULT_SMOOTHING_WINDOW: usize = 5;

/// Position, velocity and acceleration on a common time base.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Kinematics {
    pub time: Vec<f64>,
    pub position: Vec<f64>,
    pub velocity: Vec<f64>,
    pub acceleration: Vec<f64>,
}

impl Kinematics {
    pub fn len(&self) -> usize {
        self.time.len()
    }

    pub fn is_empty(&self) -> bool {
        self.time.is_empty()
    }
}

/// Centered moving average followed by three-point central differences.
///
/// A window of `w` samples trims `(w − 1)/2` samples from each end, and the
/// difference stencil trims one more, so the result is aligned with
/// `trace.time()[(w + 1)/2 .. n − (w + 1)/2]`. The stencils are written for
/// non-uniform spacing and are exact for quadratics.
pub fn differentiate(trace: &Trace, smoothing_window: usize) -> Result<Kinematics> {
    if smoothing_window == 0 || smoothing_window.is_multiple_of(2) {
        return Err(Error::validation(
            "smoothing_window",
            format!("must be odd and >= 1, got {smoothing_window}"),
        ));
    }
    let half = smoothing_window / 2;
    let n = trace.len();
    if n < 2 * half + 3 {
        return Err(Error::validation(
            "trace",
            format!(
                "{n} samples leave fewer than 3 after trimming for a window of {smoothing_window}"
            ),
        ));
    }

    let t = trace.time();
    let x = trace.displacement();
    let smoothed: Vec<f64> = if half == 0 {
        x.to_vec()
    } else {
        x.windows(smoothing_window)
            .map(|w| w.iter().sum::<f64>() / smoothing_window as f64)
            .collect()
    };
    let ts = &t[half..n - half];

    let m = smoothed.len();
    let mut kin = Kinematics {
        time: Vec::with_capacity(m - 2),
        position: Vec::with_capacity(m - 2),
        velocity: Vec::with_capacity(m - 2),
        acceleration: Vec::with_capacity(m - 2),
    };
    for i in 1..m - 1 {
        let h0 = ts[i] - ts[i - 1];
        let h1 = ts[i + 1] - ts[i];
        let (x0, x1, x2) = (smoothed[i - 1], smoothed[i], smoothed[i + 1]);
        // Lagrange derivative of the parabola through the three points.
        let v = (x2 - x1) * h0 / (h1 * (h0 + h1)) + (x1 - x0) * h1 / (h0 * (h0 + h1));
        let a = 2.0 * ((x2 - x1) / h1 - (x1 - x0) / h0) / (h0 + h1);
        kin.time.push(ts[i]);
        kin.position.push(x1);
        kin.velocity.push(v);
        kin.acceleration.push(a);
    }
    Ok(kin)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characterize::TraceMeta;

    fn trace(t: Vec<f64>, f: impl Fn(f64) -> f64) -> Trace {
        let x = t.iter().map(|&t| f(t)).collect();
        Trace::new(t, x, TraceMeta::default()).unwrap()
    }

    fn uniform(n: usize, dt: f64) -> Vec<f64> {
        (0..n).map(|i| i as f64 * dt).collect()
    }

    #[test]
    fn constant_signal_has_no_motion() {
        let k = differentiate(&trace(uniform(50, 1e-3), |_| 3.0e-3), 5).unwrap();
        assert!(k.velocity.iter().all(|&v| v.abs() < 1e-12));
        assert!(k.acceleration.iter().all(|&a| a.abs() < 1e-9));
    }

    #[test]
    fn quadratic_acceleration_is_exact() {
        let k = differentiate(&trace(uniform(40, 0.5), |t| t * t), 1).unwrap();
        for (t, (v, a)) in k.time.iter().zip(k.velocity.iter().zip(&k.acceleration)) {
            assert!((a - 2.0).abs() < 1e-9, "a = {a}");
            assert!((v - 2.0 * t).abs() < 1e-9);
        }
    }

    #[test]
    fn non_uniform_quadratic() {
        let t: Vec<f64> = (0..30).map(|i| (i as f64).powf(1.3) * 1e-2).collect();
        let k = differentiate(&trace(t, |t| 3.0 * t * t - t + 1.0), 1).unwrap();
        assert!(k.acceleration.iter().all(|a| (a - 6.0).abs() < 1e-8));
        assert!(k
            .time
            .iter()
            .zip(&k.velocity)
            .all(|(t, v)| (v - (6.0 * t - 1.0)).abs() < 1e-9));
    }

    #[test]
    fn trimming_alignment() {
        let tr = trace(uniform(20, 1.0), |t| t);
        let k = differentiate(&tr, 5).unwrap();
        assert_eq!(k.len(), 20 - 6);
        assert_eq!(k.time[0], tr.time()[3]);
        assert_eq!(*k.time.last().unwrap(), tr.time()[16]);
    }

    #[test]
    fn rejects_even_window_and_overlong_window() {
        let tr = trace(uniform(20, 1.0), |t| t);
        assert!(differentiate(&tr, 4).is_err());
        assert!(differentiate(&tr, 0).is_err());
        assert!(differentiate(&tr, 19).is_err());
        assert!(differentiate(&tr, 17).is_ok());
    }
}
