//! Command-line front end: argument parsing, dispatch and exit codes.

mod commands;
pub mod output;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};

pub use output::{Format, OutputFormat};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "heunwell",
    version,
    about = "Bound states of the V1/sqrt(x) + 21/(32x^2) well"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Physical parameters; defaults m = ħ = 1, V0 = 0, V1 = −1.
#[derive(Debug, Clone, Copy, Args)]
struct SystemArgs {
    #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
    v1: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    v0: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    m: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    hbar: f64,
}

#[derive(Debug, Clone, Copy, Args)]
struct TableArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Significant digits, 6..=17.
    #[arg(long, default_value_t = output::DEFAULT_PRECISION)]
    precision: usize,
}

#[derive(Debug, Clone, Copy, Args)]
struct JsonArgs {
    /// Significant digits, 6..=17.
    #[arg(long, default_value_t = output::DEFAULT_PRECISION)]
    precision: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SpectrumMethod {
    Exact,
    Transcendental,
    ClosedForm,
    EnergySeries,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum B2Choice {
    Analytic,
    OneTwentieth,
    LeastSquares,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Energy levels from the exact condition and its approximations.
    Spectrum {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, default_value_t = 5)]
        levels: usize,
        #[arg(long, value_enum, default_value_t = SpectrumMethod::Exact)]
        method: SpectrumMethod,
        /// b2 constant of the closed-form root and energy series.
        #[arg(long, value_enum, default_value_t = B2Choice::LeastSquares)]
        b2: B2Choice,
        #[command(flatten)]
        out: TableArgs,
    },
    /// Normalized bound state sampled on a grid uniform in sqrt(x).
    Wavefunction {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, default_value_t = 1)]
        level: usize,
        /// Right end of the grid; chosen from the turning point when absent.
        #[arg(long)]
        xmax: Option<f64>,
        #[arg(long, default_value_t = 400)]
        samples: usize,
        /// Add the Numerov eigenfunction interpolated onto the same grid.
        #[arg(long)]
        compare_numerov: bool,
        #[command(flatten)]
        out: TableArgs,
    },
    /// The potential on a uniform grid.
    Potential {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, default_value_t = 0.05)]
        xmin: f64,
        #[arg(long, default_value_t = 20.0)]
        xmax: f64,
        #[arg(long, default_value_t = 400)]
        samples: usize,
        #[command(flatten)]
        out: TableArgs,
    },
    /// Closed-form root and three-term energy against the exact levels.
    ApproxError {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, default_value_t = 20)]
        levels: usize,
        #[arg(long, value_enum, default_value_t = B2Choice::LeastSquares)]
        b2: B2Choice,
        #[command(flatten)]
        out: TableArgs,
    },
    /// Cross-check exact, Numerov and approximate results; exit 3 on any failure.
    Verify {
        #[arg(long, default_value_t = 5)]
        levels: usize,
        #[command(flatten)]
        out: JsonArgs,
    },
    /// Hermite function H_nu(z) with its error estimate.
    Hermite {
        #[arg(long, allow_hyphen_values = true)]
        nu: f64,
        #[arg(long, allow_hyphen_values = true)]
        z: f64,
        #[command(flatten)]
        out: JsonArgs,
    },
    /// Termination polynomial of order N and the matching V4.
    Derive {
        #[arg(long)]
        n: usize,
        /// Energy for the termination check; defaults to the level with a = 2.
        #[arg(long, allow_hyphen_values = true)]
        energy: Option<f64>,
        #[command(flatten)]
        sys: SystemArgs,
        #[command(flatten)]
        out: JsonArgs,
    },
    /// Whether the Hermite series of a potential terminates at order N.
    CheckTermination {
        /// JSON object {v0, v1, v2, v3, v4}, or @path to a file holding one.
        #[arg(long)]
        potential: String,
        #[arg(long, allow_hyphen_values = true)]
        energy: f64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        m: f64,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        hbar: f64,
        #[command(flatten)]
        out: JsonArgs,
    },
}

/// Failure of a command after parsing.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(heunwell::Error),
    Io(std::io::Error),
}

impl From<heunwell::Error> for CliError {
    fn from(e: heunwell::Error) -> Self {
        CliError::Domain(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

/// Parse `argv` (program name first), run the command and return the exit status.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let mut rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(rendered.as_bytes());
                    EXIT_OK
                }
                _ => {
                    if !rendered.contains("Usage:") {
                        rendered.push_str(&format!("\n{}\n", Cli::command().render_usage()));
                    }
                    let _ = err.write_all(rendered.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    match commands::dispatch(cli.command, out) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}\n\nUsage: heunwell <COMMAND> [OPTIONS]\n\nFor more information, try '--help'.");
            EXIT_USAGE
        }
        Err(CliError::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_DOMAIN
        }
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_DOMAIN
        }
    }
}
