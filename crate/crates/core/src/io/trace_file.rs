//! Two-column trace CSV:
//!
//! ```text
//! # load_mass_kg=1e-4
//! # actuator_mass_kg=1.5e-5
//! # drive_frequency_hz=100
//! # drive_voltage_v=300
//! # kind=constant
//! t_s,x_m
//! 0,0
//! 1e-5,6.283e-6
//! ```
//!
//! Chirp traces set `kind=chirp` and the sweep band with `f_lo_hz` and
//! `f_hi_hz`. Lines starting with `#` that contain no `=` are comments.

use std::fmt::Write as _;
use std::path::Path;

use crate::characterize::{Trace, TraceKind, TraceMeta};
use crate::{Error, Result};

/// Command-line values that take precedence over file metadata.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct MetaOverrides {
    pub load_mass: Option<f64>,
    pub actuator_mass: Option<f64>,
    pub drive_frequency: Option<f64>,
    pub drive_voltage: Option<f64>,
    pub f_lo: Option<f64>,
    pub f_hi: Option<f64>,
}

#[derive(Default)]
struct RawMeta {
    load_mass: Option<f64>,
    actuator_mass: Option<f64>,
    drive_frequency: Option<f64>,
    drive_voltage: Option<f64>,
    kind: Option<TraceKind>,
    f_lo: Option<f64>,
    f_hi: Option<f64>,
}

pub fn read_trace(path: &Path, overrides: &MetaOverrides) -> Result<Trace> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_trace(&text, path, overrides)
}

pub fn parse_trace(text: &str, path: &Path, overrides: &MetaOverrides) -> Result<Trace> {
    let perr = |line: usize, message: String| Error::Parse {
        path: path.to_path_buf(),
        line: Some(line),
        message,
    };

    let mut raw = RawMeta::default();
    let mut data = String::new();
    // first line of `data` in the original file
    let mut data_start = None;
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let trimmed = line.trim();
        if let Some(comment) = trimmed.strip_prefix('#') {
            let Some((key, value)) = comment.split_once('=') else {
                continue;
            };
            let (key, value) = (key.trim(), value.trim());
            let num = || {
                value
                    .parse::<f64>()
                    .map_err(|_| perr(lineno, format!("metadata {key}: {value:?} is not a number")))
            };
            match key {
                "load_mass_kg" => raw.load_mass = Some(num()?),
                "actuator_mass_kg" => raw.actuator_mass = Some(num()?),
                "drive_frequency_hz" => raw.drive_frequency = Some(num()?),
                "drive_voltage_v" => raw.drive_voltage = Some(num()?),
                "f_lo_hz" => raw.f_lo = Some(num()?),
                "f_hi_hz" => raw.f_hi = Some(num()?),
                "kind" => {
                    raw.kind = Some(match value {
                        "constant" => TraceKind::Constant,
                        "chirp" => TraceKind::Chirp,
                        _ => {
                            return Err(perr(
                                lineno,
                                format!("kind must be constant or chirp, got {value:?}"),
                            ))
                        }
                    })
                }
                _ => return Err(perr(lineno, format!("unknown metadata key {key:?}"))),
            }
            continue;
        }
        if trimmed.is_empty() {
            continue;
        }
        data_start.get_or_insert(lineno);
        data.push_str(line);
        data.push('\n');
    }

    let Some(first) = data_start else {
        return Err(perr(1, "no header or data rows".into()));
    };
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(data.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| perr(first, e.to_string()))?
        .clone();
    if headers.len() != 2 || &headers[0] != "t_s" || &headers[1] != "x_m" {
        return Err(perr(
            first,
            format!(
                "expected header `t_s,x_m`, got `{}`",
                headers.iter().collect::<Vec<_>>().join(",")
            ),
        ));
    }

    // Non-data lines were dropped, so map record lines back through a table.
    let data_lines: Vec<usize> = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim().starts_with('#'))
        .map(|(i, _)| i + 1)
        .collect();
    let mut time = Vec::new();
    let mut disp = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e
                .position()
                .and_then(|p| data_lines.get(p.line() as usize - 1).copied())
                .unwrap_or(first);
            perr(line, e.to_string())
        })?;
        let line = record
            .position()
            .and_then(|p| data_lines.get(p.line() as usize - 1).copied())
            .unwrap_or(first);
        if record.len() != 2 {
            return Err(perr(
                line,
                format!("expected 2 columns, found {}", record.len()),
            ));
        }
        let parse = |s: &str, what: &str| {
            s.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| perr(line, format!("{what} {s:?} is not a finite number")))
        };
        time.push(parse(&record[0], "t_s")?);
        disp.push(parse(&record[1], "x_m")?);
    }

    let meta = TraceMeta {
        load_mass: overrides.load_mass.or(raw.load_mass).unwrap_or(0.0),
        actuator_mass: overrides
            .actuator_mass
            .or(raw.actuator_mass)
            .unwrap_or(f64::NAN),
        drive_voltage: overrides.drive_voltage.or(raw.drive_voltage).unwrap_or(0.0),
        drive_frequency: overrides.drive_frequency.or(raw.drive_frequency),
        kind: raw.kind.unwrap_or_default(),
        f_lo: overrides.f_lo.or(raw.f_lo),
        f_hi: overrides.f_hi.or(raw.f_hi),
    };
    if meta.actuator_mass.is_nan() {
        // allow resonance analysis without a mass
        if meta.kind == TraceKind::Chirp {
            return Trace::new(
                time,
                disp,
                TraceMeta {
                    actuator_mass: 1.0,
                    ..meta
                },
            );
        }
        return Err(Error::validation(
            "actuator_mass",
            "missing: set `# actuator_mass_kg=` in the trace or pass --actuator-mass",
        ));
    }
    Trace::new(time, disp, meta)
}

/// Serializes a trace in the format [`parse_trace`] reads.
pub fn write_trace(trace: &Trace) -> String {
    let m = &trace.meta;
    let mut out = String::new();
    let _ = writeln!(out, "# load_mass_kg={}", m.load_mass);
    let _ = writeln!(out, "# actuator_mass_kg={}", m.actuator_mass);
    let _ = writeln!(out, "# drive_voltage_v={}", m.drive_voltage);
    if let Some(f) = m.drive_frequency {
        let _ = writeln!(out, "# drive_frequency_hz={f}");
    }
    let kind = match m.kind {
        TraceKind::Constant => "constant",
        TraceKind::Chirp => "chirp",
    };
    let _ = writeln!(out, "# kind={kind}");
    if let Some(f) = m.f_lo {
        let _ = writeln!(out, "# f_lo_hz={f}");
    }
    if let Some(f) = m.f_hi {
        let _ = writeln!(out, "# f_hi_hz={f}");
    }
    out.push_str("t_s,x_m\n");
    for (t, x) in trace.time().iter().zip(trace.displacement()) {
        let _ = writeln!(out, "{t},{x}");
    }
    out
}
