use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::config::{OutputFormat, RunConfig};
use super::run::TrajectoryRecord;
use crate::error::{Error, Result};
use crate::top_dynamics::Integrals3;

pub const CSV_HEADER: &str = "step,y1,y2,y3,x1,x2,x3,z1,z2,z3,xm1,xm2,xm3,H1,H2,H3,C1,C2,C3";
pub const PLOT_HEADER: &str = "series,step,x,y,z";

/// One trajectory row with the CSV column names.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct FlatRecord {
    pub step: usize,
    pub y1: f64,
    pub y2: f64,
    pub y3: f64,
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
    pub z1: f64,
    pub z2: f64,
    pub z3: f64,
    pub xm1: f64,
    pub xm2: f64,
    pub xm3: f64,
    pub H1: f64,
    pub H2: f64,
    pub H3: f64,
    pub C1: f64,
    pub C2: f64,
    pub C3: f64,
}

impl From<&TrajectoryRecord> for FlatRecord {
    fn from(r: &TrajectoryRecord) -> Self {
        let Integrals3 { H1, H2, H3, C1, C2, C3 } = r.integrals;
        Self {
            step: r.step,
            y1: r.y[0],
            y2: r.y[1],
            y3: r.y[2],
            x1: r.x[0],
            x2: r.x[1],
            x3: r.x[2],
            z1: r.z[0],
            z2: r.z[1],
            z3: r.z[2],
            xm1: r.xm[0],
            xm2: r.xm[1],
            xm3: r.xm[2],
            H1,
            H2,
            H3,
            C1,
            C2,
            C3,
        }
    }
}

impl FlatRecord {
    pub fn values(&self) -> [f64; 18] {
        [
            self.y1, self.y2, self.y3, self.x1, self.x2, self.x3, self.z1, self.z2, self.z3, self.xm1, self.xm2,
            self.xm3, self.H1, self.H2, self.H3, self.C1, self.C2, self.C3,
        ]
    }
}

// 17 significant digits, enough to round-trip any f64.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_csv<W: Write>(records: &[TrajectoryRecord], mut w: W) -> std::io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for r in records {
        let f = FlatRecord::from(r);
        let cols: Vec<String> = f.values().iter().map(|&v| num(v)).collect();
        writeln!(w, "{},{}", f.step, cols.join(","))?;
    }
    w.flush()
}

pub fn write_json<W: Write>(records: &[TrajectoryRecord], mut w: W) -> Result<()> {
    let flat: Vec<FlatRecord> = records.iter().map(FlatRecord::from).collect();
    serde_json::to_writer_pretty(&mut w, &flat)?;
    writeln!(w).and_then(|_| w.flush()).map_err(|e| Error::Io { path: PathBuf::new(), source: e })
}

/// Long-form plot data: one `material` row (x - z) and one `top` row (z) per step.
pub fn write_plotdata<W: Write>(records: &[TrajectoryRecord], mut w: W) -> std::io::Result<()> {
    writeln!(w, "{PLOT_HEADER}")?;
    for (series, pick) in [("material", 0), ("top", 1)] {
        for r in records {
            let v = if pick == 0 { r.xm } else { r.z };
            writeln!(w, "{series},{},{},{},{}", r.step, num(v[0]), num(v[1]), num(v[2]))?;
        }
    }
    w.flush()
}

/// `<dir>/<stem>_plotdata.csv` next to `data`.
pub fn plotdata_path(data: &Path) -> PathBuf {
    let stem = data.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "trajectory".into());
    data.with_file_name(format!("{stem}_plotdata.csv"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Written {
    pub data: PathBuf,
    pub plot: PathBuf,
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| Error::Io { path: dir.to_path_buf(), source: e })?;
    }
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::Io { path: path.to_path_buf(), source: e })
}

/// Writes the trajectory in the configured format, plus the plot-data companion.
pub fn export(records: &[TrajectoryRecord], cfg: &RunConfig) -> Result<Written> {
    let data = cfg.output_path.clone();
    let plot = plotdata_path(&data);
    let io = |path: &Path| {
        let path = path.to_path_buf();
        move |e: std::io::Error| Error::Io { path, source: e }
    };
    match cfg.output_format {
        OutputFormat::Csv => write_csv(records, create(&data)?).map_err(io(&data))?,
        OutputFormat::Json => write_json(records, create(&data)?).map_err(|e| match e {
            Error::Io { source, .. } => Error::Io { path: data.clone(), source },
            other => other,
        })?,
    }
    write_plotdata(records, create(&plot)?).map_err(io(&plot))?;
    Ok(Written { data, plot })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet_algebra::Vec3;
    use crate::top_dynamics::State3;

    fn rec() -> TrajectoryRecord {
        let s = State3::new(Vec3::new(0.1, 1.0 / 3.0, -2.0), Vec3::new(1e-300, 0.5, 7.0), Vec3::new(0.6, 0.0, 0.8), 1.0);
        TrajectoryRecord::new(4, &s)
    }

    #[test]
    fn csv_round_trips_bitwise() {
        let mut buf = Vec::new();
        write_csv(&[rec()], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[0], CSV_HEADER);
        let cols: Vec<f64> = lines[1].split(',').skip(1).map(|c| c.parse().unwrap()).collect();
        assert_eq!(cols, FlatRecord::from(&rec()).values().to_vec());
    }

    #[test]
    fn plot_path_and_rows() {
        assert_eq!(plotdata_path(Path::new("out/run.csv")), PathBuf::from("out/run_plotdata.csv"));
        let mut buf = Vec::new();
        write_plotdata(&[rec(), rec()], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 5);
        assert!(text.lines().nth(3).unwrap().starts_with("top,4,"));
    }
}
