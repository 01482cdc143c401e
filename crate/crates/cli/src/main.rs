//! `blade-angles`: principal angles, products and angle bivectors of two
//! blades from the command line.
//!
//! Exit codes: 0 success, 1 an identity failed in `verify`, 2 bad usage or
//! input, 3 a numerical failure such as a rank-deficient frame.

mod commands;
mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::commands::VerifyArgs;
use crate::input::InputDocument;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numeric(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(s) => write!(f, "usage error: {s}"),
            CliError::Numeric(s) => write!(f, "numerical error: {s}"),
        }
    }
}

impl From<blade_angles::Error> for CliError {
    fn from(e: blade_angles::Error) -> Self {
        use blade_angles::Error as E;
        match e {
            E::UnsupportedDimension(_)
            | E::DimensionMismatch { .. }
            | E::GradeOutOfRange { .. }
            | E::IndexOutOfRange { .. }
            | E::InvalidTolerance(_)
            | E::ParameterOutOfRange(_) => CliError::Usage(e.to_string()),
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "blade-angles", version, about = "Principal angles, products and angle bivectors of two blades")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Print the report as JSON (17 significant digits).
    #[arg(long, global = true)]
    json: bool,

    /// Identity tolerance; overrides the input document and BLADE_ANGLES_EPS.
    #[arg(long, global = true, value_name = "X")]
    eps: Option<f64>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Source {
    /// TOML or JSON input document.
    #[arg(long, value_name = "PATH")]
    input: Option<PathBuf>,

    /// Two CSV files with one vector per row, for A and B.
    #[arg(long, num_args = 2, value_names = ["A.csv", "B.csv"])]
    csv: Option<Vec<PathBuf>>,
}

impl Source {
    fn load(&self) -> Result<InputDocument, CliError> {
        match (&self.input, &self.csv) {
            (Some(path), _) => InputDocument::from_file(path),
            (None, Some(files)) => InputDocument::from_csv(&files[0], &files[1]),
            (None, None) => Err(CliError::Usage("one of --input or --csv is required".into())),
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Principal angles and the scalar angles derived from them.
    Angles(#[command(flatten)] Source),
    /// reverse(A) B and its subproducts, with Pluecker coordinates.
    Product(#[command(flatten)] Source),
    /// Angle bivectors and the split of their exponentials.
    Bivector(#[command(flatten)] Source),
    /// Points along the geodesic from [A] towards [B].
    Geodesic {
        #[command(flatten)]
        source: Source,
        /// Number of points, endpoints included.
        #[arg(long, default_value_t = 5)]
        steps: usize,
    },
    /// Principal angles read back from the product of the unit blades.
    Hitzer(#[command(flatten)] Source),
    /// Runs every identity over seeded random blade pairs.
    Verify {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        /// Largest ambient dimension drawn.
        #[arg(long, default_value_t = 6)]
        nmax: usize,
        /// Negate one side of the product identity so every trial fails.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

fn run(cli: &Cli) -> Result<(report::Report, bool), CliError> {
    let eps = cli.eps;
    let ok = |r: report::Report| Ok((r, true));
    match &cli.command {
        Command::Angles(s) => ok(commands::angles_cmd(s.load()?, eps)?),
        Command::Product(s) => ok(commands::product_cmd(s.load()?, eps)?),
        Command::Bivector(s) => ok(commands::bivector_cmd(s.load()?, eps)?),
        Command::Geodesic { source, steps } => ok(commands::geodesic_cmd(source.load()?, eps, *steps)?),
        Command::Hitzer(s) => ok(commands::hitzer_cmd(s.load()?, eps)?),
        Command::Verify { seed, trials, nmax, inject_fault } => commands::verify_cmd(&VerifyArgs {
            seed: *seed,
            trials: *trials as usize,
            nmax: *nmax,
            eps,
            inject_fault: *inject_fault,
        }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((report, passed)) => {
            print!("{}", if cli.json { report.to_json() } else { report.to_human() });
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("blade-angles: {e}");
            ExitCode::from(e.code())
        }
    }
}
