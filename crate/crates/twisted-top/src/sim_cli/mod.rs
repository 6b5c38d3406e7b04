//! Run configuration, trajectory runs, export and the invariant check table behind the binary.

mod check;
mod config;
mod export;
mod run;

pub use check::{check_suite, suite_eta, CheckRow, FALLBACK_ETA};
pub use config::{parse_config, Integrator, OutputFormat, RunConfig};
pub use export::{
    export, plotdata_path, write_csv, write_json, write_plotdata, FlatRecord, Written, CSV_HEADER, PLOT_HEADER,
};
pub use run::{conservation_report, run_trajectory, run_with_stepper, ConservationReport, TrajectoryRecord};

use std::path::Path;

use crate::error::{Error, Result};

/// Reads and parses a config file.
pub fn load_config(path: &Path) -> Result<RunConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io { path: path.to_path_buf(), source: e })?;
    parse_config(&text)
}
