//! Command-line front end for `ginv-core`.
//!
//! [`run`] parses arguments, executes one subcommand and writes a report to
//! standard output. Exit status is 0 on success, 1 when the mathematics
//! refuses the input (wrong index, not CEPD, inconsistent system, ...) and 2
//! for usage, I/O and parse errors.

mod matrix_file;
mod report;

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use ginv_core::classify::{cepd_equivalences, check_pi_theorems, classify};
use ginv_core::decomp::{core_nilpotent, hs_decompose, svd};
use ginv_core::geninv::{defining_equations, verify_identities, InverseKind};
use ginv_core::randgen::{
    gen_block_two_ep, gen_cepd, gen_gaussian, gen_isometric_powers, gen_partial_isometry,
    gen_with_index, GenSpec, DEFAULT_SPECTRUM_FLOOR,
};
use ginv_core::solvers;
use ginv_core::{normalized_residual, ComplexMatrix, Tolerance};
use serde_json::{json, Value};
use thiserror::Error;

pub use matrix_file::{parse_matrix, serialize_matrix, Format};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("non-finite entry at line {line}, column {column}")]
    NonFiniteEntry { line: usize, column: usize },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Core(#[from] ginv_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use ginv_core::Error as E;
        match self {
            Self::Core(
                E::NonSquare { .. }
                | E::DimensionMismatch { .. }
                | E::NonFinite { .. }
                | E::BadShape { .. }
                | E::InvalidTolerance(_)
                | E::InfeasibleSpec(_),
            ) => 2,
            Self::Core(_) => 1,
            _ => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "ginv",
    version,
    about = "Generalized inverses, CEPD classification and solvers"
)]
pub struct Cli {
    /// Relative singular-value cutoff for rank decisions.
    #[arg(long, global = true, default_value_t = Tolerance::DEFAULT_RANK_RTOL)]
    pub tol_rank: f64,
    /// Bound on normalized residuals for equality decisions.
    #[arg(long, global = true, default_value_t = Tolerance::DEFAULT_EQ_ATOL)]
    pub tol_eq: f64,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Seed for `gen`.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute a generalized inverse and its defining-equation residuals.
    Inv {
        #[arg(long, value_enum)]
        kind: InvKind,
        /// Matrix file, `-` for standard input.
        file: PathBuf,
    },
    /// Report structural flags (EP, k-EP, CEPD, partial isometry, ...).
    Classify { file: PathBuf },
    /// Print a decomposition.
    Decompose {
        #[arg(long, value_enum)]
        kind: DecompKind,
        file: PathBuf,
    },
    /// Solve `A x = b` with one of the generalized-inverse solvers.
    Solve {
        #[arg(long, value_enum)]
        method: SolveMethod,
        /// Right-hand side as an n x 1 matrix file.
        #[arg(long)]
        rhs: PathBuf,
        file: PathBuf,
    },
    /// Identity table, CEPD equivalence report and partial-isometry rows.
    Check { file: PathBuf },
    /// Print a generated matrix as a matrix file.
    Gen {
        #[arg(long, value_enum, default_value_t = GenKind::Index)]
        kind: GenKind,
        #[arg(long)]
        n: usize,
        /// Size of the invertible core block (partial isometries: the rank).
        #[arg(long, default_value_t = 0)]
        r: usize,
        /// Index (length of the nilpotent chain).
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_SPECTRUM_FLOOR)]
        spectrum_floor: f64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum InvKind {
    Mp,
    Group,
    Drazin,
    Cep,
    Dmp,
    Mpd,
    Cmp,
    Dstar,
}

impl From<InvKind> for InverseKind {
    fn from(k: InvKind) -> Self {
        match k {
            InvKind::Mp => Self::MoorePenrose,
            InvKind::Group => Self::Group,
            InvKind::Drazin => Self::Drazin,
            InvKind::Cep => Self::CoreEp,
            InvKind::Dmp => Self::Dmp,
            InvKind::Mpd => Self::Mpd,
            InvKind::Cmp => Self::Cmp,
            InvKind::Dstar => Self::DrazinStar,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum DecompKind {
    Svd,
    Hs,
    Corenil,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SolveMethod {
    Cmp,
    Drazin,
    Corange,
    Pi,
    Dstar,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum GenKind {
    /// `S (M ⊕ N) S⁻¹` with prescribed index.
    Index,
    /// Partial isometry of rank `r`.
    Pi,
    /// Unitarily similar to `M ⊕ N`, hence CEPD.
    Cepd,
    /// Partial isometry whose powers are all partial isometries.
    Isopow,
    /// Unitary similarity of the block 2-EP example.
    Block2ep,
    /// `n x n` complex Gaussian.
    Gaussian,
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
}

impl Io<'_> {
    fn read_matrix(&mut self, path: &PathBuf) -> Result<ComplexMatrix, CliError> {
        let io_err = |e: std::io::Error| CliError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        };
        let source = if path.as_os_str() == "-" {
            let mut s = String::new();
            self.stdin.read_to_string(&mut s).map_err(io_err)?;
            s
        } else {
            std::fs::read_to_string(path).map_err(io_err)?
        };
        parse_matrix(&source, None)
    }
}

/// Output of a successful subcommand.
enum Outcome {
    Report(Value),
    Matrix(ComplexMatrix),
}

fn execute(cli: &Cli, tol: &Tolerance, io: &mut Io) -> Result<Outcome, CliError> {
    let report = match &cli.command {
        Command::Inv { kind, file } => {
            let a = io.read_matrix(file)?;
            let kind = InverseKind::from(*kind);
            let x = kind.compute(&a, tol)?;
            let equations = defining_equations(kind, &a, &x, tol)?;
            let all_pass = equations.iter().all(|e| e.pass);
            json!({ "kind": kind, "inverse": x, "equations": equations, "all_pass": all_pass })
        }
        Command::Classify { file } => {
            let a = io.read_matrix(file)?;
            serde_json::to_value(classify(&a, tol)?).expect("report serializes")
        }
        Command::Decompose { kind, file } => {
            let a = io.read_matrix(file)?;
            match kind {
                DecompKind::Svd => {
                    let s = svd(&a)?;
                    let residual = normalized_residual(&s.reconstruct(), &a);
                    json!({ "svd": s, "reconstruction_residual": residual })
                }
                DecompKind::Hs => {
                    let hs = hs_decompose(&a, tol)?;
                    let residual = normalized_residual(&hs.reconstruct(), &a);
                    let gram =
                        normalized_residual(&hs.kl_gram(), &ComplexMatrix::identity(hs.rank));
                    json!({ "hs": hs, "reconstruction_residual": residual, "kl_gram_residual": gram })
                }
                DecompKind::Corenil => {
                    let parts = core_nilpotent(&a, tol)?;
                    let residual = normalized_residual(&(&parts.core + &parts.nilpotent), &a);
                    json!({ "core_nilpotent": parts, "reconstruction_residual": residual })
                }
            }
        }
        Command::Solve { method, rhs, file } => {
            let a = io.read_matrix(file)?;
            let b = io.read_matrix(rhs)?;
            let solve = match method {
                SolveMethod::Cmp => solvers::solve_cmp_system,
                SolveMethod::Drazin => solvers::solve_drazin_system,
                SolveMethod::Corange => solvers::solve_in_corange,
                SolveMethod::Pi => solvers::solve_pi,
                SolveMethod::Dstar => solvers::solve_drazin_star,
            };
            serde_json::to_value(solve(&a, &b, tol)?).expect("report serializes")
        }
        Command::Check { file } => {
            let a = io.read_matrix(file)?;
            let identities = verify_identities(&a, tol)?;
            let cepd = cepd_equivalences(&a, tol)?;
            let pi = check_pi_theorems(&a, tol)?;
            json!({
                "identities": identities,
                "identities_all_pass": identities.all_pass(),
                "cepd_equivalences": cepd,
                "partial_isometry_rows": pi,
            })
        }
        Command::Gen {
            kind,
            n,
            r,
            k,
            spectrum_floor,
        } => {
            let spec = GenSpec::new(*n, *r, *k, cli.seed).with_spectrum_floor(*spectrum_floor);
            let m = match kind {
                GenKind::Index => gen_with_index(&spec)?,
                GenKind::Pi => gen_partial_isometry(&spec)?,
                GenKind::Cepd => gen_cepd(&spec)?,
                GenKind::Isopow => gen_isometric_powers(&spec)?,
                GenKind::Block2ep => gen_block_two_ep(cli.seed),
                GenKind::Gaussian => gen_gaussian(*n, *n, cli.seed),
            };
            return Ok(Outcome::Matrix(m));
        }
    };
    Ok(Outcome::Report(report))
}

/// Runs the tool on `args` (including the program name) and returns the exit
/// status.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                2
            } else {
                let _ = write!(stdout, "{text}");
                0
            };
        }
    };
    let tol = match Tolerance::new(cli.tol_rank, cli.tol_eq) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return 2;
        }
    };
    let command: Vec<String> = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let mut io = Io { stdin };
    match execute(&cli, &tol, &mut io) {
        Ok(Outcome::Matrix(m)) => {
            let _ = write!(stdout, "{}", serialize_matrix(&m, cli.format));
            0
        }
        Ok(Outcome::Report(result)) => {
            let doc = report::document(command, &tol, Some(result), None, 0);
            let _ = write!(stdout, "{}", report::render(&doc, cli.format));
            0
        }
        Err(e) => {
            let code = e.exit_code();
            let _ = writeln!(stderr, "error: {e}");
            if code == 1 {
                let doc = report::document(command, &tol, None, Some(e.to_string()), code);
                let _ = write!(stdout, "{}", report::render(&doc, cli.format));
            }
            code
        }
    }
}
