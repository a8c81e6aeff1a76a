//! One function per CLI verb. Each writes its artifacts under `out_dir` and
//! returns the report plus the list of written files.

use std::path::{Path, PathBuf};

use super::report::{front_csv, sweep_csv};
use super::{
    read_trace, write_file, CharacterizeReport, MetaOverrides, ModelReport, ParetoReport,
    ProjectConfig, ResonanceReport,
};
use crate::characterize::{cycle_metrics, estimate_q, frf_from_chirp, CharacterizeOptions};
use crate::explorer::{mark_pareto, pareto_front, rank_by_density, sweep, DesignPoint};
use crate::laminate::{evaluate, feasibility_check, Material};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug)]
pub struct Outcome<R> {
    pub report: R,
    pub files: Vec<PathBuf>,
}

fn json<T: serde::Serialize>(value: &T) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s.into_bytes()
}

fn emit(out_dir: &Path, name: &str, bytes: &[u8], files: &mut Vec<PathBuf>) -> Result<()> {
    let path = out_dir.join(name);
    write_file(&path, bytes)?;
    files.push(path);
    Ok(())
}

pub fn model(
    config: &ProjectConfig,
    out_dir: &Path,
    format: OutputFormat,
) -> Result<Outcome<ModelReport>> {
    let stack = config.laminate_stack()?;
    let drive = config.drive_condition()?;
    let quality_factor = config.quality_factor()?;
    let metrics = evaluate(&stack, &drive);
    let feasibility = feasibility_check(&stack, &drive);
    let report = ModelReport {
        resonant_deflection: quality_factor * metrics.free_deflection,
        feasible: feasibility.feasible(),
        stack,
        drive,
        metrics,
        quality_factor,
        feasibility,
    };
    let mut files = Vec::new();
    match format {
        OutputFormat::Csv => emit(out_dir, "model.csv", &report.to_csv(), &mut files)?,
        OutputFormat::Json => emit(out_dir, "model.json", &json(&report), &mut files)?,
    }
    Ok(Outcome { report, files })
}

fn evaluate_sweep(config: &ProjectConfig) -> Result<Vec<DesignPoint>> {
    let space = config.design_space()?;
    let mut points = sweep(&space)?;
    mark_pareto(&mut points);
    Ok(points)
}

pub fn sweep_cmd(
    config: &ProjectConfig,
    out_dir: &Path,
    format: OutputFormat,
) -> Result<Outcome<Vec<DesignPoint>>> {
    let points = evaluate_sweep(config)?;
    let mut files = Vec::new();
    match format {
        OutputFormat::Csv => emit(out_dir, "sweep.csv", &sweep_csv(&points), &mut files)?,
        OutputFormat::Json => emit(out_dir, "sweep.json", &json(&points), &mut files)?,
    }
    Ok(Outcome {
        report: points,
        files,
    })
}

/// Writes `sweep.csv`, `pareto.json` and `front.csv`. An empty feasible set
/// still writes the files, then returns [`Error::EmptyFeasibleSet`].
pub fn pareto(config: &ProjectConfig, out_dir: &Path) -> Result<Outcome<ParetoReport>> {
    let rank_mode = config.rank_mode()?;
    let points = evaluate_sweep(config)?;
    let front = pareto_front(&points);
    let report = ParetoReport {
        total_points: points.len(),
        feasible_points: points.iter().filter(|p| p.feasible).count(),
        ranking: rank_by_density(&points, rank_mode),
        rank_mode,
        front,
    };
    let mut files = Vec::new();
    emit(out_dir, "sweep.csv", &sweep_csv(&points), &mut files)?;
    emit(out_dir, "pareto.json", &json(&report), &mut files)?;
    emit(out_dir, "front.csv", &front_csv(&report.front), &mut files)?;
    if report.feasible_points == 0 {
        return Err(Error::EmptyFeasibleSet {
            total: report.total_points,
        });
    }
    Ok(Outcome { report, files })
}

pub fn characterize(
    trace_path: &Path,
    overrides: &MetaOverrides,
    options: &CharacterizeOptions,
    out_dir: &Path,
) -> Result<Outcome<CharacterizeReport>> {
    let trace = read_trace(trace_path, overrides)?;
    if trace.meta.drive_frequency.is_none() {
        return Err(Error::validation(
            "drive_frequency",
            "missing: set `# drive_frequency_hz=` in the trace or pass --drive-frequency",
        ));
    }
    let metrics = cycle_metrics(&trace, options)?;
    let report = CharacterizeReport {
        meta: trace.meta.clone(),
        samples: trace.len(),
        options: *options,
        metrics,
    };
    let mut files = Vec::new();
    emit(out_dir, "cycles.csv", &report.cycles_csv(), &mut files)?;
    emit(out_dir, "characterize.json", &json(&report), &mut files)?;
    Ok(Outcome { report, files })
}

pub fn resonance(
    trace_path: &Path,
    overrides: &MetaOverrides,
    bins: usize,
    out_dir: &Path,
) -> Result<Outcome<ResonanceReport>> {
    let trace = read_trace(trace_path, overrides)?;
    let f_lo = trace
        .meta
        .f_lo
        .ok_or_else(|| Error::validation("f_lo", "missing: set `# f_lo_hz=` or pass --f-lo"))?;
    let f_hi = trace
        .meta
        .f_hi
        .ok_or_else(|| Error::validation("f_hi", "missing: set `# f_hi_hz=` or pass --f-hi"))?;
    let frf = frf_from_chirp(&trace, f_lo, f_hi, bins)?;
    let q = estimate_q(&frf);
    let report = ResonanceReport {
        f_lo,
        f_hi,
        bins,
        resonance_frequency: frf.resonance_frequency,
        boundary_limited: frf.boundary_limited,
        quality_factor: q.ok(),
        q_unavailable: q.err(),
        points: frf.points,
    };
    let mut files = Vec::new();
    emit(out_dir, "frf.csv", &report.frf_csv(), &mut files)?;
    emit(out_dir, "resonance.json", &json(&report), &mut files)?;
    Ok(Outcome { report, files })
}

pub fn materials(config: &ProjectConfig) -> Result<Vec<Material>> {
    Ok(config.material_table()?.iter().cloned().collect())
}
