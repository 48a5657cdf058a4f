//! Batch front end for `biortho-core`: every subcommand produces a
//! [`RunReport`] rendered as JSON (schema 1) or CSV.
//!
//! Exit codes: 0 when everything computed and every certification passed,
//! 1 when a certification failed or the report could not be written,
//! 2 for usage errors, 3 when some point raised a domain error.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub mod args;
pub mod commands;
pub mod report;

use args::{AngleArg, ComplexArg, ComplexList};
pub use report::{Record, RunReport};

/// Environment variable overriding quadrature node counts.
pub const QUAD_NODES_ENV: &str = "BIORTHO_QUAD_NODES";

#[derive(Debug, Parser)]
#[command(name = "biortho", version, about = "Bi-orthogonal polynomials on the unit circle")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Fill in `timing_ms`; without it the field is 0 so repeated runs are byte-identical.
    #[arg(long, global = true)]
    pub timing: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    #[value(name = "P", alias = "p")]
    P,
    #[value(name = "Q", alias = "q")]
    Q,
}

impl Which {
    fn as_str(self) -> &'static str {
        match self {
            Which::P => "P",
            Which::Q => "Q",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate Pₙ or Qₙ at one or more points.
    Eval(EvalArgs),
    /// Check the large-n expansion against exact values over a grid.
    CertifyExpansion(CertifyArgs),
    /// Expansion of Pₙ(e^{iθ/n}) in powers of iθ/n, with its error bound.
    Askey(AskeyArgs),
    /// Compare the zeros of Bₙ with minimizers of the circle energy.
    Electro(ElectroArgs),
    /// Inner-product matrix of P_n against Q_m.
    Biorth(BiorthArgs),
}

/// Parameter flags shared by several commands. Without either flag, grid
/// commands run over both default pairs.
#[derive(Clone, Copy, Debug, Args)]
pub struct ParamArgs {
    /// α as "re,im".
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<ComplexArg>,
    /// β as "re,im".
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<ComplexArg>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long)]
    pub n: usize,
    /// Evaluation point "re,im"; repeat for several points.
    #[arg(long, default_value = "0,0", allow_hyphen_values = true)]
    pub z: Vec<ComplexArg>,
    #[arg(long, value_enum, default_value_t = Which::P)]
    pub which: Which,
    #[command(flatten)]
    pub params: ParamArgs,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[arg(long, value_delimiter = ',', default_value = "5,10,20,40")]
    pub n_list: Vec<usize>,
    /// Points separated by ';', each "re,im".
    #[arg(long, default_value = "-2,0;-0.5,0.5;3,0;0.2,1.5;-1.5,2", allow_hyphen_values = true)]
    pub z_list: ComplexList,
    /// Truncation orders used for both series when --p1/--p2 are absent.
    #[arg(long, value_delimiter = ',', default_value = "0,1,3,6")]
    pub p_list: Vec<usize>,
    #[arg(long)]
    pub p1: Option<usize>,
    #[arg(long)]
    pub p2: Option<usize>,
    #[arg(long, value_enum, default_value_t = Which::P)]
    pub which: Which,
    #[command(flatten)]
    pub params: ParamArgs,
}

#[derive(Debug, Args)]
pub struct AskeyArgs {
    #[arg(long, value_delimiter = ',', default_value = "5,20,100,1000")]
    pub n: Vec<usize>,
    /// Angles in [−π, π); accepts forms such as "pi/4" or "-3pi/4".
    #[arg(long, value_delimiter = ',', default_value = "-pi/4,pi/4,-pi/2,pi/2,-3,3", allow_hyphen_values = true)]
    pub theta: Vec<AngleArg>,
    #[arg(long, value_delimiter = ',', default_value = "0,1,2,3,4")]
    pub k: Vec<usize>,
    #[command(flatten)]
    pub params: ParamArgs,
}

#[derive(Debug, Args)]
pub struct ElectroArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1.0)]
    pub p: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub q: f64,
    /// Number of random starting configurations for the minimizer.
    #[arg(long, default_value_t = 5)]
    pub starts: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, default_value_t = 50_000)]
    pub maxiter: usize,
}

#[derive(Debug, Args)]
pub struct BiorthArgs {
    #[arg(long, default_value_t = 8)]
    pub nmax: usize,
    #[command(flatten)]
    pub params: ParamArgs,
}

/// Settings taken from the environment.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Settings {
    pub quad_nodes: Option<usize>,
}

impl Settings {
    pub fn from_env() -> Result<Self, String> {
        match std::env::var(QUAD_NODES_ENV) {
            Ok(v) => match v.trim().parse::<usize>() {
                Ok(n) if n >= 3 => Ok(Self { quad_nodes: Some(n) }),
                _ => Err(format!("{QUAD_NODES_ENV} must be an integer ≥ 3, got {v:?}")),
            },
            Err(_) => Ok(Self::default()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Failed,
    Usage,
    Domain,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Failed => 1,
            Status::Usage => 2,
            Status::Domain => 3,
        }
    }

    pub fn of(report: &RunReport) -> Self {
        if report.has_errors() {
            Status::Domain
        } else if report.pass == Some(false) {
            Status::Failed
        } else {
            Status::Ok
        }
    }
}

/// Runs one subcommand and returns its report.
pub fn execute(command: &Command, settings: Settings) -> RunReport {
    match command {
        Command::Eval(a) => commands::eval(a),
        Command::CertifyExpansion(a) => commands::certify_expansion(a, settings),
        Command::Askey(a) => commands::askey(a),
        Command::Electro(a) => commands::electro(a),
        Command::Biorth(a) => commands::biorth(a, settings),
    }
}

/// Parses `argv`, runs the command, writes the report and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let settings = match Settings::from_env() {
        Ok(s) => s,
        Err(msg) => {
            eprintln!("error: {msg}");
            return Status::Usage.exit_code();
        }
    };
    let started = Instant::now();
    let mut report = execute(&cli.command, settings);
    if cli.timing {
        report.timing_ms = started.elapsed().as_millis() as u64;
    }
    let text = match cli.format {
        Format::Json => report.to_json(),
        Format::Csv => match report.to_csv() {
            Ok(s) => s,
            Err(e) => {
                eprintln!("error: {e}");
                return Status::Failed.exit_code();
            }
        },
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, text.as_bytes()),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return Status::Failed.exit_code();
    }
    Status::of(&report).exit_code()
}
