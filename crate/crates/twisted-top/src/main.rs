use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use twisted_top::batch;
use twisted_top::sim_cli::{check_suite, conservation_report, export, load_config, run_trajectory, suite_eta, OutputFormat};
use twisted_top::top_dynamics::Integrals3;
use twisted_top::{Error, Result};

#[derive(Parser)]
#[command(name = "twisted-top", version, about = "Bäcklund-map and RK4 trajectories of the twisted top")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run each config and write its trajectory and plot data. Several configs run concurrently.
    Simulate {
        #[arg(required = true)]
        configs: Vec<PathBuf>,
        /// Output path, overriding `output_path` (single config only).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Output format, overriding `output_format`.
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Evaluate the invariant suite at each configured initial state.
    Check {
        #[arg(required = true)]
        configs: Vec<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

enum Failure {
    Validation(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_validation() {
            Failure::Validation(e.to_string())
        } else {
            Failure::Runtime(e.to_string())
        }
    }
}

fn load(path: &PathBuf) -> std::result::Result<twisted_top::sim_cli::RunConfig, Failure> {
    // An unreadable config is a bad input, not a failed computation.
    load_config(path).map_err(|e| match e {
        Error::Io { .. } => Failure::Validation(e.to_string()),
        other => Failure::Validation(format!("{}: {other}", path.display())),
    })
}

fn simulate(path: &PathBuf, out: Option<&PathBuf>, format: Option<Format>) -> std::result::Result<String, Failure> {
    let mut cfg = load(path)?;
    if let Some(f) = format {
        cfg.output_format = match f {
            Format::Csv => OutputFormat::Csv,
            Format::Json => OutputFormat::Json,
        };
    }
    if let Some(o) = out {
        cfg.output_path = o.clone();
    }
    let run = || -> Result<String> {
        let records = run_trajectory(&cfg)?;
        let report = conservation_report(&records)?;
        let written = export(&records, &cfg)?;
        let mut msg = format!(
            "{}: {} records -> {} (+ {})\n  max relative drift:",
            path.display(),
            records.len(),
            written.data.display(),
            written.plot.display()
        );
        for (name, (d, n)) in Integrals3::NAMES.iter().zip(report.drift.iter().zip(report.worst_step)) {
            msg.push_str(&format!(" {name} {d:.2e}@{n}"));
        }
        Ok(msg)
    };
    run().map_err(|e| Failure::Runtime(format!("{}: {e}", path.display())))
}

fn check(path: &PathBuf) -> std::result::Result<String, Failure> {
    let cfg = load(path)?;
    let rows = check_suite(&cfg);
    let mut table = format!("{} (η = {})\n", path.display(), suite_eta(&cfg));
    for r in &rows {
        table.push_str(&format!("  {r}\n"));
    }
    let failed = rows.iter().filter(|r| !r.passed).count();
    table.push_str(&format!("  {}/{} passed", rows.len() - failed, rows.len()));
    if failed == 0 {
        Ok(table)
    } else {
        println!("{table}");
        Err(Failure::Validation(format!("{}: {failed} check(s) failed", path.display())))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let results = match &cli.command {
        Command::Simulate { configs, out, format } => {
            if out.is_some() && configs.len() > 1 {
                eprintln!("error: --out needs exactly one config");
                return ExitCode::from(1);
            }
            batch::map(configs, |p| simulate(p, out.as_ref(), *format))
        }
        Command::Check { configs } => batch::map(configs, check),
    };
    let mut code = 0u8;
    for r in results {
        match r {
            Ok(msg) => println!("{msg}"),
            Err(Failure::Validation(m)) => {
                eprintln!("error: {m}");
                code = code.max(1);
            }
            Err(Failure::Runtime(m)) => {
                eprintln!("error: {m}");
                code = 2;
            }
        }
    }
    ExitCode::from(code)
}
