use std::collections::BTreeMap;
use std::path::PathBuf;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::jet_algebra::Vec3;
use crate::lax_spectral::Sign;
use crate::top_dynamics::State3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Integrator {
    Bt2,
    Rk4,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::config("output_format", format!("expected csv or json, got `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub b: f64,
    /// Zero when absent from an rk4 config.
    pub eta_re: f64,
    pub eta_im: f64,
    pub steps: usize,
    pub initial: State3,
    pub integrator: Integrator,
    pub rk4_h: Option<f64>,
    pub branch: Sign,
    pub output_path: PathBuf,
    pub output_format: OutputFormat,
}

impl RunConfig {
    pub fn eta(&self) -> Complex64 {
        Complex64::new(self.eta_re, self.eta_im)
    }
}

const KEYS: [&str; 12] = [
    "b",
    "eta_re",
    "eta_im",
    "steps",
    "y",
    "x",
    "z",
    "integrator",
    "rk4_h",
    "branch",
    "output_path",
    "output_format",
];

/// Parses flat `key = value` lines. `#` starts a comment, vectors are comma-separated triples.
///
/// Required: b, steps, y, x, z, plus eta_re and eta_im for bt2 and rk4_h for rk4. Defaults:
/// integrator = bt2, branch = +, output_path = trajectory.csv (or .json), output_format = csv.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let mut kv: BTreeMap<&str, &str> = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::config(line, format!("line {}: expected `key = value`", lineno + 1)))?;
        let (key, value) = (key.trim(), value.trim());
        if !KEYS.contains(&key) {
            return Err(Error::config(key, "unknown key"));
        }
        if kv.insert(key, value).is_some() {
            return Err(Error::config(key, "given more than once"));
        }
    }

    let required = |key: &str| kv.get(key).copied().ok_or_else(|| Error::config(key, "missing"));
    let real = |key: &str| -> Result<f64> {
        let v = required(key)?;
        let x: f64 = v.parse().map_err(|_| Error::config(key, format!("cannot parse `{v}` as a number")))?;
        if !x.is_finite() {
            return Err(Error::config(key, "must be finite"));
        }
        Ok(x)
    };
    let triple = |key: &str| -> Result<Vec3> {
        let v = required(key)?;
        let parts: Vec<&str> = v.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::config(key, format!("expected three comma-separated numbers, got `{v}`")));
        }
        let mut out = Vec3::zeros();
        for (slot, p) in out.iter_mut().zip(parts) {
            *slot = p.parse().map_err(|_| Error::config(key, format!("cannot parse `{p}` as a number")))?;
            if !slot.is_finite() {
                return Err(Error::config(key, "must be finite"));
            }
        }
        Ok(out)
    };

    let integrator = match kv.get("integrator").copied().unwrap_or("bt2") {
        "bt2" => Integrator::Bt2,
        "rk4" => Integrator::Rk4,
        other => return Err(Error::config("integrator", format!("expected bt2 or rk4, got `{other}`"))),
    };
    let branch = match kv.get("branch").copied().unwrap_or("+") {
        "+" => Sign::Plus,
        "-" => Sign::Minus,
        other => return Err(Error::config("branch", format!("expected + or -, got `{other}`"))),
    };
    let output_format: OutputFormat = kv.get("output_format").copied().unwrap_or("csv").parse()?;

    let b = real("b")?;
    let steps_text = required("steps")?;
    let steps: i64 = steps_text
        .parse()
        .map_err(|_| Error::config("steps", format!("cannot parse `{steps_text}` as an integer")))?;
    if steps < 1 {
        return Err(Error::config("steps", "steps must be ≥ 1"));
    }

    let (eta_re, eta_im, rk4_h) = match integrator {
        Integrator::Bt2 => {
            let (re, im) = (real("eta_re")?, real("eta_im")?);
            if im == 0.0 {
                return Err(Error::config("eta_im", "must be nonzero for bt2 (Im η = 0 is the identity map)"));
            }
            (re, im, None)
        }
        Integrator::Rk4 => {
            let h = real("rk4_h")?;
            if h <= 0.0 {
                return Err(Error::config("rk4_h", "must be > 0"));
            }
            let opt = |key: &str| if kv.contains_key(key) { real(key) } else { Ok(0.0) };
            (opt("eta_re")?, opt("eta_im")?, Some(h))
        }
    };

    let output_path = match kv.get("output_path") {
        Some(p) if p.is_empty() => return Err(Error::config("output_path", "empty path")),
        Some(p) => PathBuf::from(p),
        None => PathBuf::from(match output_format {
            OutputFormat::Csv => "trajectory.csv",
            OutputFormat::Json => "trajectory.json",
        }),
    };

    Ok(RunConfig {
        b,
        eta_re,
        eta_im,
        steps: steps as usize,
        initial: State3::new(triple("y")?, triple("x")?, triple("z")?, b),
        integrator,
        rk4_h,
        branch,
        output_path,
        output_format,
    })
}
