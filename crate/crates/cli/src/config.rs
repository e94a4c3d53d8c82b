use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use moment_spectra::discretize::DiscretizationScheme;

use crate::error::CliError;

/// Smallest `n` of the norm-difference curve.
pub const NORM_DIFF_MIN_N: usize = 1000;
pub const MIN_DIGITS: u32 = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Table1,
    SingularFunctions,
    GramianDecay,
    DiscretizedDecay,
    NormDiff,
    Beckermann,
    HilbertAsymptotics,
    KernelProbe,
    ProductBound,
    All,
}

impl Command {
    pub const EXPERIMENTS: [Command; 9] = [
        Command::Table1,
        Command::SingularFunctions,
        Command::GramianDecay,
        Command::DiscretizedDecay,
        Command::NormDiff,
        Command::Beckermann,
        Command::HilbertAsymptotics,
        Command::KernelProbe,
        Command::ProductBound,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Table1 => "table1",
            Command::SingularFunctions => "singular-functions",
            Command::GramianDecay => "gramian-decay",
            Command::DiscretizedDecay => "discretized-decay",
            Command::NormDiff => "norm-diff",
            Command::Beckermann => "beckermann",
            Command::HilbertAsymptotics => "hilbert-asymptotics",
            Command::KernelProbe => "kernel-probe",
            Command::ProductBound => "product-bound",
            Command::All => "all",
        }
    }
}

/// Per-command defaults and size limits.
#[derive(Clone, Copy, Debug)]
pub struct Defaults {
    pub n: usize,
    pub long_n: usize,
    pub i_max: usize,
    pub digits: u32,
    /// Largest `n` accepted without `--long-running`.
    pub desk_ceiling: usize,
}

pub fn defaults(command: Command) -> Defaults {
    let d = |n, long_n, i_max, digits, desk_ceiling| Defaults { n, long_n, i_max, digits, desk_ceiling };
    match command {
        Command::Table1 | Command::All => d(1, 1, 1, 15, usize::MAX),
        Command::SingularFunctions => d(1000, 1000, 10, 15, 2000),
        Command::GramianDecay => d(100, 100, 20, 60, 200),
        Command::DiscretizedDecay => d(2000, 10_000, 1, 15, 2000),
        Command::NormDiff => d(4000, 12_000, 1, 15, 4000),
        Command::Beckermann => d(100, 100, 40, 150, 1000),
        Command::HilbertAsymptotics => d(40, 40, 1, 200, 60),
        Command::KernelProbe => d(21, 21, 1, 15, 201),
        Command::ProductBound => d(50, 50, 1, 100, 200),
    }
}

#[derive(Parser, Debug)]
#[command(name = "moment-lab", version, about = "Singular-value experiments for the Hausdorff moment operator")]
pub struct Args {
    #[arg(value_enum)]
    pub command: Command,
    /// Problem size (grid cells, matrix order, largest n, or kernel grid resolution).
    #[arg(long)]
    pub n: Option<usize>,
    /// Number of singular values examined; the function index for singular-functions.
    #[arg(long = "i-max", visible_alias = "i")]
    pub i_max: Option<usize>,
    /// Decimal digits of working precision; up to 15 runs in hardware doubles.
    #[arg(long)]
    pub digits: Option<u32>,
    #[arg(long, value_parser = parse_scheme)]
    pub scheme: Option<DiscretizationScheme>,
    /// Order of the subtracted leading block for norm-diff.
    #[arg(long)]
    pub base: Option<usize>,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    /// Also write a semilog plot.svg per experiment.
    #[arg(long)]
    pub svg: bool,
    /// Allow sizes beyond the desk ceiling.
    #[arg(long)]
    pub long_running: bool,
}

fn parse_scheme(s: &str) -> Result<DiscretizationScheme, String> {
    match s {
        "exact-gramian" | "product" => s.parse().map_err(|e: moment_spectra::Error| e.to_string()),
        other => Err(format!("expected `exact-gramian` or `product`, got `{other}`")),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub n: usize,
    pub i_max: usize,
    pub digits: u32,
    pub scheme: DiscretizationScheme,
    pub base: usize,
    pub out_dir: PathBuf,
    pub emit_svg: bool,
    pub long_running: bool,
}

impl RunConfig {
    /// Desk-scale defaults for `command`.
    pub fn for_command(command: Command, out_dir: PathBuf, emit_svg: bool) -> Self {
        let d = defaults(command);
        RunConfig {
            command,
            n: d.n,
            i_max: d.i_max,
            digits: d.digits,
            scheme: DiscretizationScheme::ExactGramian,
            base: 100,
            out_dir,
            emit_svg,
            long_running: false,
        }
    }

    fn from_args(args: Args) -> Self {
        let d = defaults(args.command);
        let default_n = if args.long_running { d.long_n } else { d.n };
        RunConfig {
            command: args.command,
            n: args.n.unwrap_or(default_n),
            i_max: args.i_max.unwrap_or(d.i_max),
            digits: args.digits.unwrap_or(d.digits),
            scheme: args.scheme.unwrap_or_default(),
            base: args.base.unwrap_or(100),
            out_dir: args.out,
            emit_svg: args.svg,
            long_running: args.long_running,
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let usage = |m: String| Err(CliError::Usage(m));
        if self.digits < MIN_DIGITS {
            return usage(format!("--digits must be at least {MIN_DIGITS}, got {}", self.digits));
        }
        if self.n == 0 {
            return usage("--n must be at least 1".into());
        }
        let d = defaults(self.command);
        if self.n > d.desk_ceiling && !self.long_running {
            return usage(format!(
                "{} with n = {} exceeds the desk ceiling {}; pass --long-running",
                self.command.name(),
                self.n,
                d.desk_ceiling
            ));
        }
        match self.command {
            Command::NormDiff => {
                if self.n < NORM_DIFF_MIN_N {
                    return usage(format!("norm-diff needs --n >= {NORM_DIFF_MIN_N}, got {}", self.n));
                }
                if self.base == 0 || self.base > self.n {
                    return usage(format!("--base must lie in 1..={}, got {}", self.n, self.base));
                }
            }
            Command::SingularFunctions | Command::GramianDecay | Command::Beckermann => {
                if self.i_max == 0 || self.i_max > self.n {
                    return usage(format!("--i-max must lie in 1..={}, got {}", self.n, self.i_max));
                }
            }
            Command::ProductBound if self.n < 2 => return usage("product-bound needs --n >= 2".into()),
            _ => {}
        }
        Ok(())
    }

    /// Creates the output directory and probes that it accepts files.
    pub fn ensure_out_dir(&self) -> Result<(), CliError> {
        let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", self.out_dir.display()));
        fs::create_dir_all(&self.out_dir).map_err(io)?;
        let probe = self.out_dir.join(".moment-lab-probe");
        fs::write(&probe, b"").map_err(io)?;
        fs::remove_file(&probe).map_err(io)
    }
}

/// Parses and validates a command line (program name first).
pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = Args::try_parse_from(argv).map_err(CliError::Clap)?;
    let cfg = RunConfig::from_args(args);
    cfg.validate()?;
    Ok(cfg)
}
