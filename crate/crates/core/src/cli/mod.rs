//! Command-line front end: matrix files in, JSON certificates out.
//!
//! [`run`] is the whole program minus process plumbing, so it is callable
//! from tests and from the FFI layer.

pub mod document;
pub mod text;
mod verify;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_traits::Zero;
use serde_json::json;

use crate::congruence::{congruence_diagonalize_with, negative_witness, pd_factor_with, Inertia};
use crate::linalg::{MaxAbs, SymMatrix};
use crate::oracle::{OracleCounter, DEFAULT_ORACLE_LIMIT};
use crate::scalar::{GaussianRational, Rational};
use crate::spectral::{bisect_spectrum, bisect_spectrum_with, gap_gamma, mu_bracket, spectrum_bound};

pub use document::{CertificateDocument, ErrorDocument, Kind, Mode, Pivot};
pub use text::{parse_matrix, MatrixTextError, ParseError, ScalarText};
pub use verify::{verify_document, VerifyReport};

pub const ORACLE_LIMIT_ENV: &str = "SPECTRA_ORACLE_LIMIT";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Matrix(#[from] MatrixTextError),
    #[error(transparent)]
    Domain(#[from] crate::Error),
    #[error("verification failed: {0}")]
    Verify(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) | CliError::Matrix(_) => 2,
            CliError::Domain(crate::Error::InvalidPrecision(_)) => 2,
            CliError::Domain(_) | CliError::Verify(_) => 1,
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Io(_) => "io",
            CliError::Matrix(MatrixTextError::Parse(_)) => "parse_error",
            CliError::Matrix(MatrixTextError::Symmetry { .. }) => "symmetry_error",
            CliError::Domain(e) => match e {
                crate::Error::NotPositiveDefinite(_) => "not_positive_definite",
                crate::Error::InvalidPrecision(_) => "invalid_precision",
                crate::Error::SizeLimitExceeded { .. } => "size_limit_exceeded",
                crate::Error::SingularMatrix => "singular_matrix",
                _ => "domain_error",
            },
            CliError::Verify(_) => "verification_failed",
        }
    }

    fn inertia(&self) -> Option<Inertia> {
        match self {
            CliError::Domain(crate::Error::NotPositiveDefinite(i)) => Some(*i),
            _ => None,
        }
    }

    pub fn to_document(&self) -> ErrorDocument {
        ErrorDocument::new(self.code(), self.to_string(), self.inertia())
    }
}

/// A parsed input matrix in either scalar mode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyMatrix {
    Real(SymMatrix<Rational>),
    Hermitian(SymMatrix<GaussianRational>),
}

impl AnyMatrix {
    pub fn parse(text: &str, mode: Mode) -> Result<Self, MatrixTextError> {
        Ok(match mode {
            Mode::Real => AnyMatrix::Real(parse_matrix(text)?),
            Mode::Hermitian => AnyMatrix::Hermitian(parse_matrix(text)?),
        })
    }

    pub fn mode(&self) -> Mode {
        match self {
            AnyMatrix::Real(_) => Mode::Real,
            AnyMatrix::Hermitian(_) => Mode::Hermitian,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            AnyMatrix::Real(a) => a.n(),
            AnyMatrix::Hermitian(a) => a.n(),
        }
    }
}

/// What to certify.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Request {
    Inertia,
    Psd,
    CertifyPd,
    Gap,
    Eig { eps: Rational },
    Mu { eps: Rational },
    OracleCheck,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    pub pivot: Pivot,
    pub parallel: bool,
    pub oracle_limit: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            pivot: Pivot::Max,
            parallel: false,
            oracle_limit: DEFAULT_ORACLE_LIMIT,
        }
    }
}

pub fn certify(req: &Request, m: &AnyMatrix, opts: &Options) -> Result<CertificateDocument, CliError> {
    match m {
        AnyMatrix::Real(a) => certify_generic(req, a, Mode::Real, opts),
        AnyMatrix::Hermitian(a) => certify_generic(req, a, Mode::Hermitian, opts),
    }
}

fn strings(xs: &[Rational]) -> Vec<String> {
    xs.iter().map(text::format_rational).collect()
}

fn certify_generic<S: ScalarText>(
    req: &Request,
    a: &SymMatrix<S>,
    mode: Mode,
    opts: &Options,
) -> Result<CertificateDocument, CliError> {
    let policy = opts.pivot.policy();
    let (kind, result) = match req {
        Request::Inertia => {
            let cert = congruence_diagonalize_with(a, &policy);
            let i = cert.inertia();
            let r = document::InertiaResult {
                n_plus: i.n_plus,
                n_minus: i.n_minus,
                n_zero: i.n_zero,
                p: text::matrix_rows(cert.p()),
                d: strings(cert.d()),
            };
            (Kind::Inertia, serde_json::to_value(r))
        }
        Request::Psd => {
            let cert = congruence_diagonalize_with(a, &policy);
            let i = cert.inertia();
            let witness = negative_witness(a).map(|w| w.entries().iter().map(ScalarText::to_text).collect());
            let r = document::PsdResult {
                psd: i.is_psd(),
                n_plus: i.n_plus,
                n_minus: i.n_minus,
                n_zero: i.n_zero,
                p: text::matrix_rows(cert.p()),
                d: strings(cert.d()),
                witness,
            };
            (Kind::Psd, serde_json::to_value(r))
        }
        Request::CertifyPd => {
            let cert = pd_factor_with(a, &policy)?;
            let r = document::CongruencePayload {
                p: text::matrix_rows(cert.p()),
                d: strings(cert.d()),
            };
            (Kind::PdFactor, serde_json::to_value(r))
        }
        Request::Gap => {
            let cert = pd_factor_with(a, &policy)?;
            let p_inv = crate::congruence::invert(cert.p())?;
            let p_inv_max_sq = p_inv.max_abs_sq();
            let gamma = gap_gamma(a.n(), cert.d(), &p_inv_max_sq).ok_or(crate::Error::SingularMatrix)?;
            let r = document::GapResult {
                p: text::matrix_rows(cert.p()),
                d: strings(cert.d()),
                p_inv: text::matrix_rows(&p_inv),
                p_inv_max_sq: text::format_rational(&p_inv_max_sq),
                gamma: text::format_rational(&gamma),
            };
            (Kind::Gap, serde_json::to_value(r))
        }
        Request::Eig { eps } => {
            let brackets = bisect_spectrum_with(a, eps, opts.parallel)?;
            let r = document::SpectrumResult {
                eps: text::format_rational(eps),
                brackets,
            };
            (Kind::Spectrum, serde_json::to_value(r))
        }
        Request::Mu { eps } => {
            let bracket = mu_bracket(a, eps)?;
            let r = document::MuResult {
                eps: text::format_rational(eps),
                bracket,
            };
            (Kind::Mu, serde_json::to_value(r))
        }
        Request::OracleCheck => (
            Kind::OracleCheck,
            serde_json::to_value(oracle_check(a, opts.oracle_limit)?),
        ),
    };
    let result = result.expect("payload serializes");
    Ok(CertificateDocument::new(
        kind,
        mode,
        opts.pivot,
        text::matrix_rows(a.as_matrix()),
        result,
    ))
}

/// Probe points: `±(R+1)`, `0`, and the endpoints and midpoints of a coarse
/// bracketing of the spectrum.
fn oracle_probes<S: ScalarText>(a: &SymMatrix<S>) -> Result<Vec<Rational>, crate::Error> {
    let r = spectrum_bound(a) + Rational::from_integer(1.into());
    let mut probes = vec![-r.clone(), Rational::zero(), r];
    for b in bisect_spectrum(a, &Rational::new(1.into(), 4.into()))? {
        let mid = (&b.lo + &b.hi) / Rational::from_integer(2.into());
        probes.extend([b.lo, mid, b.hi]);
    }
    probes.sort();
    probes.dedup();
    Ok(probes)
}

fn oracle_check<S: ScalarText>(a: &SymMatrix<S>, limit: usize) -> Result<document::OracleCheckResult, crate::Error> {
    let oracle = OracleCounter::with_limit(a, limit)?;
    let probes: Vec<document::ProbeRecord> = oracle_probes(a)?
        .into_iter()
        .map(|t| document::ProbeRecord {
            inertia_count: crate::spectral::eigen_count_below(a, &t),
            oracle_count: oracle.count_below(&t),
            t: text::format_rational(&t),
        })
        .collect();
    Ok(document::OracleCheckResult {
        agree: probes.iter().all(|p| p.inertia_count == p.oracle_count),
        char_poly: strings(oracle.char_poly().coeffs()),
        probes,
    })
}

#[derive(Parser, Debug)]
#[command(
    name = "spectra-cert",
    version,
    about = "Exact eigenvalue certificates for symmetric and Hermitian matrices"
)]
struct Cli {
    /// Parse entries as Gaussian rationals (Hermitian matrices).
    #[arg(long, global = true)]
    hermitian: bool,

    /// Emit JSON documents (default).
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,

    /// Emit a human-readable summary instead of JSON.
    #[arg(long, global = true)]
    text: bool,

    /// Pivot policy for congruence diagonalization.
    #[arg(long, global = true, value_enum, default_value_t = Pivot::Max)]
    pivot: Pivot,

    /// Refine disjoint bisection intervals in parallel (output is unchanged).
    #[arg(long, global = true)]
    parallel: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Inertia (n+, n-, n0) with its congruence certificate.
    Inertia {
        /// Matrix file ("-" for standard input)
        file: PathBuf,
    },
    /// Positive-semidefiniteness decision, with a witness vector when it fails.
    Psd {
        /// Matrix file ("-" for standard input)
        file: PathBuf,
    },
    /// Congruence certificate with every diagonal entry positive.
    CertifyPd {
        /// Matrix file ("-" for standard input)
        file: PathBuf,
    },
    /// Certified lower bound gamma > 0 on the least eigenvalue of a PD matrix.
    Gap {
        /// Matrix file ("-" for standard input)
        file: PathBuf,
    },
    /// Bracket every eigenvalue to width eps.
    Eig {
        /// Maximum bracket width, a positive rational such as 1/1024
        #[arg(long, value_parser = eps_parser)]
        eps: Rational,
        /// Matrix file ("-" for standard input)
        file: PathBuf,
    },
    /// Bracket the least eigenvalue to width eps.
    Mu {
        /// Maximum bracket width, a positive rational such as 1/1024
        #[arg(long, value_parser = eps_parser)]
        eps: Rational,
        /// Matrix file ("-" for standard input)
        file: PathBuf,
    },
    /// Re-check a certificate document.
    Verify {
        /// Only run the mathematical checks; skip digest, canonical encoding
        /// and recomputation.
        #[arg(long)]
        lenient: bool,
        /// Certificate document ("-" for standard input)
        cert: PathBuf,
    },
    /// Cross-check inertia counts against the characteristic-polynomial oracle.
    OracleCheck {
        /// Matrix file ("-" for standard input)
        file: PathBuf,
    },
}

fn eps_parser(s: &str) -> Result<Rational, String> {
    text::parse_rational(s)
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn read_input(path: &PathBuf) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map_err(|e| CliError::Io(e.to_string()))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn oracle_limit_from_env() -> Result<usize, CliError> {
    match std::env::var(ORACLE_LIMIT_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{ORACLE_LIMIT_ENV} must be a nonnegative integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_ORACLE_LIMIT),
    }
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: rendered,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: rendered,
                }
            };
        }
    };
    let text_mode = cli.text;
    match execute(cli) {
        Ok(stdout) => Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err((err, stdout)) => {
            let stdout = match stdout {
                Some(s) => s,
                None if text_mode => String::new(),
                None => err.to_document().to_json(),
            };
            Outcome {
                code: err.exit_code(),
                stdout,
                stderr: format!("error: {err}\n"),
            }
        }
    }
}

type Failure = (CliError, Option<String>);

fn execute(cli: Cli) -> Result<String, Failure> {
    let mode = if cli.hermitian { Mode::Hermitian } else { Mode::Real };
    let opts = Options {
        pivot: cli.pivot,
        parallel: cli.parallel,
        oracle_limit: oracle_limit_from_env().map_err(|e| (e, None))?,
    };
    let (req, file) = match cli.command {
        Command::Verify { lenient, cert } => {
            let doc = read_input(&cert).map_err(|e| (e, None))?;
            let report = verify_document(&doc, lenient, opts.oracle_limit).map_err(|e| (e, None))?;
            return Ok(if cli.text { report.to_text() } else { report.to_json() });
        }
        Command::Inertia { file } => (Request::Inertia, file),
        Command::Psd { file } => (Request::Psd, file),
        Command::CertifyPd { file } => (Request::CertifyPd, file),
        Command::Gap { file } => (Request::Gap, file),
        Command::Eig { eps, file } => (Request::Eig { eps }, file),
        Command::Mu { eps, file } => (Request::Mu { eps }, file),
        Command::OracleCheck { file } => (Request::OracleCheck, file),
    };
    let input = read_input(&file).map_err(|e| (e, None))?;
    let matrix = AnyMatrix::parse(&input, mode).map_err(|e| (e.into(), None))?;
    let doc = certify(&req, &matrix, &opts).map_err(|e| (e, None))?;
    let out = if cli.text { render_text(&doc) } else { doc.to_json() };
    if doc.kind == Kind::OracleCheck && doc.result["agree"] != serde_json::Value::Bool(true) {
        return Err((
            CliError::Verify("oracle disagrees with inertia counts".into()),
            Some(out),
        ));
    }
    Ok(out)
}

/// Human-readable rendering of a certificate document.
pub fn render_text(doc: &CertificateDocument) -> String {
    let r = &doc.result;
    let s = |v: &serde_json::Value| v.as_str().map(str::to_string).unwrap_or_else(|| v.to_string());
    let list = |v: &serde_json::Value| {
        v.as_array()
            .map(|xs| xs.iter().map(s).collect::<Vec<_>>().join(" "))
            .unwrap_or_default()
    };
    let mut out = format!(
        "{} ({} {}x{})\n",
        doc.kind.as_str(),
        json!(doc.mode).as_str().unwrap_or(""),
        doc.matrix.len(),
        doc.matrix.len()
    );
    match doc.kind {
        Kind::Inertia | Kind::Psd => {
            out += &format!(
                "inertia: n_plus={} n_minus={} n_zero={}\n",
                r["n_plus"], r["n_minus"], r["n_zero"]
            );
            out += &format!("D: {}\n", list(&r["d"]));
            if doc.kind == Kind::Psd {
                out += &format!("positive semidefinite: {}\n", r["psd"]);
                if !r["witness"].is_null() {
                    out += &format!("witness: {}\n", list(&r["witness"]));
                }
            }
        }
        Kind::PdFactor => out += &format!("D: {}\n", list(&r["d"])),
        Kind::Gap => {
            out += &format!("D: {}\n", list(&r["d"]));
            out += &format!("|P^-1|^2: {}\ngamma: {}\n", s(&r["p_inv_max_sq"]), s(&r["gamma"]));
        }
        Kind::Spectrum => {
            for b in r["brackets"].as_array().into_iter().flatten() {
                out += &bracket_line(b, &s);
            }
        }
        Kind::Mu => out += &bracket_line(&r["bracket"], &s),
        Kind::OracleCheck => {
            out += &format!("char poly (ascending): {}\n", list(&r["char_poly"]));
            out += &format!(
                "probes: {}\nagree: {}\n",
                r["probes"].as_array().map_or(0, Vec::len),
                r["agree"]
            );
        }
    }
    out
}

fn bracket_line(b: &serde_json::Value, s: &dyn Fn(&serde_json::Value) -> String) -> String {
    if b["exact"] == serde_json::Value::Bool(true) {
        format!("eigenvalue {} (multiplicity {})\n", s(&b["lo"]), b["multiplicity"])
    } else {
        format!(
            "[{}, {}] (multiplicity {})\n",
            s(&b["lo"]),
            s(&b["hi"]),
            b["multiplicity"]
        )
    }
}
