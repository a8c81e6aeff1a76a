//! Files and commands behind the `unimorph` binary: project configuration,
//! trace ingestion and report emission.
//!
//! All files use SI base units. CSV output uses `.` as decimal separator and
//! the shortest round-trip float representation, so repeated runs are
//! byte-identical.

pub mod commands;
mod config;
mod report;
mod trace_file;

pub use config::{
    DriveConfig, LayerConfig, MaterialTable, ProjectConfig, RankConfig, StackConfig, SweepConfig,
};
pub use report::{
    front_csv, sweep_csv, CharacterizeReport, ModelReport, ParetoReport, ResonanceReport,
    CYCLES_CSV_HEADER, FRONT_CSV_HEADER, SWEEP_CSV_HEADER,
};
pub use trace_file::{parse_trace, read_trace, write_trace, MetaOverrides};

use std::path::Path;

use crate::{Error, Result};

pub(crate) fn write_file(path: &Path, contents: &[u8]) -> Result<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        }
    }
    std::fs::write(path, contents).map_err(|e| Error::io(path, e))
}
