//! Command-line front end for `heisospec`.
//!
//! Every subcommand produces an [`Outcome`]: a JSON document (always carrying
//! `schema_version` and the echoed configuration), a text rendering, and for
//! `spectrum` a CSV table. Exit codes: 0 pass, 1 check failure, 2 usage,
//! 3 resource limit.

pub mod commands;
pub mod output;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use heisospec::{AlgebraKind, Error as CoreError, FourierMode, HeisenbergAlgebra, Scalar};
use serde::Serialize;

pub use commands::{cmd_classify, cmd_intertwine, cmd_report, cmd_spectrum, cmd_verify};
pub use output::{emit, Outcome};

/// Version of the JSON and CSV layouts written by this binary.
pub const SCHEMA_VERSION: u32 = 1;

/// Directory that receives output files when `--out` is not given.
pub const OUT_DIR_ENV: &str = "HEISOSPEC_OUT_DIR";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("check failed: {0}")]
    CheckFailed(String),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::CheckFailed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Resource(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::ResourceLimit { .. } => CliError::Resource(e.to_string()),
            CoreError::NoConvergence(_) => CliError::CheckFailed(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

/// Arithmetic used by the exact symbolic sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Exact {
    /// Arbitrary-precision rationals.
    Big,
    /// `i64` rationals; faster, aborts on overflow instead of losing exactness.
    I64,
}

#[derive(Debug, Parser)]
#[command(name = "heisospec", version, about = "Verification toolkit for generalized Heisenberg groups N(p,q)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Algebraic invariant suites: composition law, Heisenberg type, bracket, σ checks.
    Verify(VerifyArgs),
    /// Exact operator-level intertwining residuals by degree.
    Intertwine(IntertwineArgs),
    /// Extreme eigenvalues of Hermite truncations of a fiber operator.
    Spectrum(SpectrumArgs),
    /// Property profile of an algebra or of a (dim z, dim v, isotypic) triple.
    Classify(ClassifyArgs),
    /// Audibility report for a pair `p,q:p',q'`.
    Report(ReportArgs),
}

#[derive(Clone, Debug, Args, Serialize)]
pub struct AlgebraArgs {
    /// Composition algebra: quaternion (h) or octonion (o).
    #[arg(long, default_value = "octonion")]
    pub kind: AlgebraKind,
    #[arg(short = 'p', default_value_t = 1)]
    pub p: usize,
    #[arg(short = 'q', default_value_t = 1)]
    pub q: usize,
}

impl AlgebraArgs {
    pub fn algebra(&self) -> CliResult<HeisenbergAlgebra> {
        Ok(HeisenbergAlgebra::new(self.kind, self.p, self.q)?)
    }
}

#[derive(Clone, Debug, Args, Serialize)]
pub struct OutputArgs {
    /// Output file; defaults to stdout, or to a file in $HEISOSPEC_OUT_DIR when set.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: OutputFormat,
}

#[derive(Clone, Debug, Args, Serialize)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub algebra: AlgebraArgs,
    /// Random rational samples per suite.
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    /// Random unit directions for the floating σ check.
    #[arg(long, default_value_t = 100)]
    pub unit_samples: usize,
    /// Frobenius tolerance for floating checks.
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    #[serde(skip)]
    pub output: OutputArgs,
}

#[derive(Clone, Debug, Args, Serialize)]
pub struct ModeArgs {
    /// Mode α as comma-separated integers of length dim z; defaults to e_1.
    #[arg(long, value_parser = parse_alpha, allow_hyphen_values = true)]
    pub alpha: Option<Alpha>,
    /// Radial coefficient c (positive rational such as 4 or 3/2); defaults to dim v / 4.
    #[arg(long = "coeff-c", value_parser = parse_positive_rational)]
    pub coeff_c: Option<PositiveRational>,
}

impl ModeArgs {
    pub fn mode(&self, dim_z: usize) -> CliResult<FourierMode> {
        match &self.alpha {
            None => Ok(FourierMode::basis(dim_z, 0)),
            Some(a) if a.0.len() != dim_z => {
                Err(CliError::Usage(format!("alpha has {} entries but dim z = {dim_z}", a.0.len())))
            }
            Some(a) => Ok(FourierMode::new(a.0.clone())),
        }
    }
}

#[derive(Clone, Debug, Args, Serialize)]
pub struct IntertwineArgs {
    #[command(flatten)]
    pub algebra: AlgebraArgs,
    #[command(flatten)]
    pub mode: ModeArgs,
    /// Highest total degree of the monomials checked.
    #[arg(short = 'd', long = "degree", default_value_t = 4)]
    pub degree: u32,
    #[arg(long, value_enum, default_value = "big")]
    pub exact: Exact,
    #[command(flatten)]
    #[serde(skip)]
    pub output: OutputArgs,
}

#[derive(Clone, Debug, Args, Serialize)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub algebra: AlgebraArgs,
    #[command(flatten)]
    pub mode: ModeArgs,
    /// Also compute the partner n(p+q,0) and compare spectra.
    #[arg(long)]
    pub pair: bool,
    /// Hermite truncation degree.
    #[arg(short = 'd', long = "degree", default_value_t = 3)]
    pub degree: u32,
    /// Number of extreme eigenvalues (lower half first, then upper half).
    #[arg(short = 'k', default_value_t = 20)]
    pub k: usize,
    /// Largest basis size allowed.
    #[arg(long, default_value_t = heisospec::spectral::DEFAULT_BASIS_CAP)]
    pub cap: usize,
    /// Largest basis solved densely; bigger ones use Lanczos.
    #[arg(long, default_value_t = 2000)]
    pub dense_limit: usize,
    /// Relative Ritz residual for Lanczos.
    #[arg(long, default_value_t = 1e-10)]
    pub eig_tol: f64,
    /// Largest eigenvalue difference accepted for --pair.
    #[arg(long, default_value_t = 1e-8)]
    pub diff_tol: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    #[serde(skip)]
    pub output: OutputArgs,
}

#[derive(Clone, Debug, Args, Serialize)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub algebra: AlgebraArgs,
    /// Classify a raw (dim z, dim v) pair instead of n(p,q).
    #[arg(long, requires = "dim_v")]
    pub dim_z: Option<usize>,
    #[arg(long, requires = "dim_z")]
    pub dim_v: Option<usize>,
    /// With --dim-z/--dim-v: the module is not isotypic.
    #[arg(long)]
    pub non_isotypic: bool,
    #[command(flatten)]
    #[serde(skip)]
    pub output: OutputArgs,
}

#[derive(Clone, Debug, Args, Serialize)]
pub struct ReportArgs {
    #[arg(long, default_value = "octonion")]
    pub kind: AlgebraKind,
    /// Pair as `p,q:p',q'`.
    #[arg(long, value_parser = parse_pair)]
    pub pair: PairSpec,
    #[command(flatten)]
    #[serde(skip)]
    pub output: OutputArgs,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Alpha(pub Vec<i64>);

/// Positive rational `num/den` in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(into = "String")]
pub struct PositiveRational {
    pub num: i64,
    pub den: i64,
}

impl PositiveRational {
    pub fn to_scalar<T: Scalar>(self) -> T {
        T::from_ratio(self.num, self.den)
    }
}

impl From<PositiveRational> for String {
    fn from(r: PositiveRational) -> String {
        if r.den == 1 {
            r.num.to_string()
        } else {
            format!("{}/{}", r.num, r.den)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PairSpec {
    pub a: (usize, usize),
    pub b: (usize, usize),
}

pub fn parse_alpha(s: &str) -> Result<Alpha, String> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<i64>().map_err(|_| format!("`{t}` is not an integer (modes are lattice points)"))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Alpha)
}

pub fn parse_positive_rational(s: &str) -> Result<PositiveRational, String> {
    let bad = || format!("`{s}` is not a rational number such as 4 or 3/2");
    let (num, den) = match s.trim().split_once('/') {
        Some((n, d)) => (n.trim().parse::<i64>().map_err(|_| bad())?, d.trim().parse::<i64>().map_err(|_| bad())?),
        None => (s.trim().parse::<i64>().map_err(|_| bad())?, 1),
    };
    if den == 0 {
        return Err(bad());
    }
    if num.signum() * den.signum() <= 0 {
        return Err("must be positive".into());
    }
    let g = gcd(num.unsigned_abs(), den.unsigned_abs()) as i64;
    Ok(PositiveRational { num: num.abs() / g, den: den.abs() / g })
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn parse_pair(s: &str) -> Result<PairSpec, String> {
    let side = |t: &str| -> Result<(usize, usize), String> {
        let (p, q) = t.split_once(',').ok_or_else(|| format!("`{t}` is not of the form p,q"))?;
        let p = p.trim().parse().map_err(|_| format!("bad p in `{t}`"))?;
        let q = q.trim().parse().map_err(|_| format!("bad q in `{t}`"))?;
        Ok((p, q))
    };
    let (a, b) = s.split_once(':').ok_or_else(|| "expected `p,q:p',q'`".to_string())?;
    Ok(PairSpec { a: side(a)?, b: side(b)? })
}

/// Runs a parsed command and writes its output; returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let (name, output, result) = match cli.command {
        Command::Verify(a) => ("verify", a.output.clone(), cmd_verify(&a)),
        Command::Intertwine(a) => ("intertwine", a.output.clone(), cmd_intertwine(&a)),
        Command::Spectrum(a) => ("spectrum", a.output.clone(), cmd_spectrum(&a)),
        Command::Classify(a) => ("classify", a.output.clone(), cmd_classify(&a)),
        Command::Report(a) => ("report", a.output.clone(), cmd_report(&a)),
    };
    let outcome = match result {
        Ok(o) => o,
        Err(e) => {
            eprintln!("heisospec {name}: {e}");
            return e.exit_code();
        }
    };
    let env_dir = std::env::var_os(OUT_DIR_ENV).map(PathBuf::from);
    if let Err(e) = emit(name, &outcome, &output, env_dir.as_deref()) {
        eprintln!("heisospec {name}: {e}");
        return e.exit_code();
    }
    if outcome.passed {
        0
    } else {
        eprintln!("heisospec {name}: one or more checks failed");
        1
    }
}
