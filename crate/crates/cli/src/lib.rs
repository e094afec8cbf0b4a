//! Command-line front end for `zolo-core`: matrix file formats and the
//! `sqrtm`, `coeffs`, `contour` and `bench` subcommands.

pub mod commands;
pub mod io;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub use io::{read_matrix, write_matrix, Format};

/// Exit code for usage and parse errors.
pub const EXIT_USAGE: i32 = 1;
/// Exit code for numerical failure or non-convergence.
pub const EXIT_NUMERICAL: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("{0} exists; pass --force to overwrite")]
    Exists(String),
    #[error("{0}: {1}")]
    Io(String, #[source] std::io::Error),
    #[error(transparent)]
    Core(#[from] zolo_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(zolo_core::Error::InvalidParameter(_)) => EXIT_USAGE,
            CliError::Core(_) => EXIT_NUMERICAL,
            _ => EXIT_USAGE,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "zolo", version, about = "Matrix square roots by Zolotarev iterations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute A^{1/2} of a matrix file.
    Sqrtm(SqrtmArgs),
    /// Print the partial-fraction coefficients of a Zolotarev approximant.
    Coeffs(CoeffsArgs),
    /// Tabulate the predicted iteration count kappa over the slit annulus.
    Contour(ContourArgs),
    /// Run the benchmark suite and write a CSV table.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Zolotarev,
    Pade,
    Db,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    Alt,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Zolotarev,
    Pade,
}

#[derive(Debug, Args)]
pub struct SqrtmArgs {
    /// Input matrix.
    pub input: PathBuf,
    /// Output file for A^{1/2}.
    pub output: PathBuf,
    #[arg(long, value_enum, default_value = "zolotarev")]
    pub method: MethodArg,
    #[arg(long, default_value_t = 8)]
    pub m: u32,
    /// Defaults to `m`.
    #[arg(long)]
    pub ell: Option<u32>,
    /// Starting modulus; estimated from the spectrum when omitted.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Relative tolerance; `u sqrt(n)` when omitted.
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long, default_value_t = 20)]
    pub max_iter: usize,
    #[arg(long, value_enum, default_value = "alt")]
    pub form: FormArg,
    /// File format of input and outputs; inferred from the extension when omitted.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Also write A^{-1/2} to this file.
    #[arg(long)]
    pub inverse: Option<PathBuf>,
    /// Overwrite existing output files.
    #[arg(long)]
    pub force: bool,
}

#[derive(Debug, Args)]
pub struct CoeffsArgs {
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub ell: u32,
    #[arg(long)]
    pub alpha: f64,
}

#[derive(Debug, Args)]
pub struct ContourArgs {
    #[arg(long, default_value_t = 8)]
    pub m: u32,
    /// Defaults to `m`.
    #[arg(long)]
    pub ell: Option<u32>,
    #[arg(long)]
    pub alpha: f64,
    /// Grid size `N_RxN_THETA` (radii x angles).
    #[arg(long, default_value = "400x400", value_parser = parse_grid)]
    pub grid: (usize, usize),
    #[arg(long, value_enum, default_value = "zolotarev")]
    pub mode: ModeArg,
    #[arg(long)]
    pub delta: Option<f64>,
    /// Write the table here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub force: bool,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Directory of matrix files (`.mtx`, `.csv`) to use instead of the built-in corpus.
    pub dir: Option<PathBuf>,
    /// Comma-separated method labels, e.g. `Z-8-8,P-1-0,DB`.
    #[arg(long, value_delimiter = ',')]
    pub methods: Option<Vec<String>>,
    /// Write the table here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub force: bool,
}

fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(['x', 'X']).ok_or_else(|| format!("grid {s:?} is not N_RxN_THETA"))?;
    let a: usize = a.trim().parse().map_err(|_| format!("bad radius count {a:?}"))?;
    let b: usize = b.trim().parse().map_err(|_| format!("bad angle count {b:?}"))?;
    if a < 2 || b < 1 {
        return Err("grid needs at least 2 radii and 1 angle".into());
    }
    Ok((a, b))
}

/// Caps the rayon pool at `ZOLO_THREADS` when set.
fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("ZOLO_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("ZOLO_THREADS must be a positive integer, got {v:?}")))?;
    // a pool may already exist when called twice in one process
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { 0 };
        }
    };
    let result = configure_threads().and_then(|()| match &cli.command {
        Command::Sqrtm(a) => commands::cmd_sqrtm(a),
        Command::Coeffs(a) => commands::cmd_coeffs(a),
        Command::Contour(a) => commands::cmd_contour(a),
        Command::Bench(a) => commands::cmd_bench(a),
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
