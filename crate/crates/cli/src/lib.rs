//! Command-line runner for the moment-spectra experiments.

pub mod artifacts;
pub mod config;
pub mod error;
pub mod run;
mod svg;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use moment_spectra::experiments::{ExperimentReport, Verdict};

pub use artifacts::emit_artifacts;
pub use config::{parse_args, Command, RunConfig};
pub use error::CliError;
use error::{EXIT_IO, EXIT_NUMERICAL, EXIT_OK, EXIT_VIOLATED};

/// Outcome of one experiment: the report and where it was written.
pub struct Outcome {
    pub report: ExperimentReport,
    pub dir: PathBuf,
}

/// Runs one experiment and writes its artifacts.
pub fn execute(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let mut report = run::run_experiment(cfg)?;
    let dir = emit_artifacts(&mut report, cfg)?;
    Ok(Outcome { report, dir })
}

fn print_outcome(out: &mut impl Write, o: &Outcome) {
    let _ = writeln!(out, "{}: {}", o.report.name, o.dir.display());
    for (key, check) in &o.report.checks {
        let status = match &check.verdict {
            Verdict::Holds => "holds".to_string(),
            Verdict::Untrusted => "untrusted".to_string(),
            Verdict::Violated { at } => format!("VIOLATED at {at}"),
        };
        let _ = writeln!(
            out,
            "  {key}: {status} ({} holds, {} violated, {} untrusted)",
            check.holds, check.violated, check.untrusted
        );
    }
    for n in &o.report.notices {
        let _ = writeln!(out, "  note: {n}");
    }
}

fn outcome_code(o: &Outcome) -> u8 {
    if !o.report.converged {
        EXIT_NUMERICAL
    } else if o.report.has_violation() {
        EXIT_VIOLATED
    } else {
        EXIT_OK
    }
}

/// Full command-line entry point; returns the process exit code.
pub fn main_with<I, T>(argv: I, out: &mut impl Write, err: &mut impl Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match parse_args(argv) {
        Ok(c) => c,
        Err(CliError::Clap(e)) => {
            let rendered = e.render().to_string();
            if !e.use_stderr() {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return CliError::Clap(e).exit_code();
        }
        Err(e) => {
            let _ = writeln!(err, "{e}");
            return e.exit_code();
        }
    };
    if let Err(e) = cfg.ensure_out_dir() {
        let _ = writeln!(err, "{e}");
        return e.exit_code();
    }
    if cfg.command != Command::All {
        return match execute(&cfg) {
            Ok(o) => {
                print_outcome(out, &o);
                outcome_code(&o)
            }
            Err(e) => {
                let _ = writeln!(err, "{}: {e}", cfg.command.name());
                e.exit_code()
            }
        };
    }

    let configs: Vec<RunConfig> = Command::EXPERIMENTS
        .iter()
        .map(|c| RunConfig::for_command(*c, cfg.out_dir.clone(), cfg.emit_svg))
        .collect();
    let results: Vec<Result<Outcome, CliError>> = std::thread::scope(|s| {
        let handles: Vec<_> = configs.iter().map(|c| s.spawn(move || execute(c))).collect();
        handles.into_iter().map(|h| h.join().expect("experiment thread panicked")).collect()
    });
    let mut codes = Vec::new();
    for (c, r) in configs.iter().zip(results) {
        match r {
            Ok(o) => {
                print_outcome(out, &o);
                codes.push(outcome_code(&o));
            }
            Err(e) => {
                let _ = writeln!(err, "{}: {e}", c.command.name());
                codes.push(e.exit_code());
            }
        }
    }
    [EXIT_IO, EXIT_NUMERICAL, error::EXIT_USAGE, EXIT_VIOLATED]
        .into_iter()
        .find(|c| codes.contains(c))
        .unwrap_or(EXIT_OK)
}
