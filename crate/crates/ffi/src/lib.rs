//! C ABI for `spectra-cert`.
//!
//! Matrices live behind the opaque [`SpectraMatrix`] handle. Every fallible
//! function returns a [`SpectraStatus`]; on failure a human-readable message
//! is available from [`spectra_last_error`] on the same thread. Strings
//! returned through out-parameters are owned by the caller and must be
//! released with [`spectra_string_free`].
//!
//! The header `include/spectra_cert.h` is generated from this file by the
//! build script.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use spectra_cert::cli::text::parse_rational;
use spectra_cert::cli::{self, AnyMatrix, CliError, MatrixTextError, Mode, Options, Pivot, Request};
use spectra_cert::congruence::{inertia_with, is_psd};
use spectra_cert::oracle::DEFAULT_ORACLE_LIMIT;
use spectra_cert::spectral::eigen_count_below;
use spectra_cert::Error;

/// Result code of every fallible function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpectraStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The matrix text or a rational literal could not be parsed.
    ParseError = 3,
    /// The matrix is not symmetric (Hermitian in Hermitian mode).
    SymmetryError = 4,
    /// A positive-definite certificate was requested for a matrix that is not.
    NotPositiveDefinite = 5,
    /// The precision was missing or not positive.
    InvalidPrecision = 6,
    /// The matrix exceeds the characteristic-polynomial size limit.
    SizeLimitExceeded = 7,
    /// A certificate failed verification.
    VerificationFailed = 8,
    /// An enum argument was out of range.
    InvalidArgument = 9,
    /// Any other mathematical precondition failed.
    DomainError = 10,
    /// An internal error; please report it.
    Internal = 11,
}

/// Certificate kinds accepted by [`spectra_certify`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpectraKind {
    Inertia = 0,
    Psd = 1,
    PdFactor = 2,
    Gap = 3,
    Spectrum = 4,
    Mu = 5,
    OracleCheck = 6,
}

/// Pivot selection rule of the congruence diagonalization.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpectraPivot {
    /// Largest diagonal magnitude, ties to the lowest index.
    Max = 0,
    /// First nonzero diagonal entry.
    First = 1,
}

/// Counts of positive, negative and zero eigenvalues.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SpectraInertia {
    pub n_plus: usize,
    pub n_minus: usize,
    pub n_zero: usize,
}

/// Opaque handle to a parsed symmetric or Hermitian matrix.
pub struct SpectraMatrix {
    inner: AnyMatrix,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure {
    status: SpectraStatus,
    message: String,
}

impl Failure {
    fn new(status: SpectraStatus, message: impl Into<String>) -> Self {
        Failure {
            status,
            message: message.into(),
        }
    }
}

impl From<CliError> for Failure {
    fn from(e: CliError) -> Self {
        let status = match &e {
            CliError::Matrix(MatrixTextError::Parse(_)) => SpectraStatus::ParseError,
            CliError::Matrix(MatrixTextError::Symmetry { .. }) => SpectraStatus::SymmetryError,
            CliError::Domain(d) => return Failure::from_domain(d),
            CliError::Verify(_) => SpectraStatus::VerificationFailed,
            CliError::Usage(_) | CliError::Io(_) => SpectraStatus::InvalidArgument,
        };
        Failure::new(status, e.to_string())
    }
}

impl Failure {
    fn from_domain(e: &Error) -> Self {
        let status = match e {
            Error::NotPositiveDefinite(_) => SpectraStatus::NotPositiveDefinite,
            Error::InvalidPrecision(_) => SpectraStatus::InvalidPrecision,
            Error::SizeLimitExceeded { .. } => SpectraStatus::SizeLimitExceeded,
            _ => SpectraStatus::DomainError,
        };
        Failure::new(status, e.to_string())
    }
}

fn set_last_error(message: Option<String>) {
    let message = message.map(|m| CString::new(m.replace('\0', " ")).expect("interior nul removed"));
    LAST_ERROR.with(|slot| *slot.borrow_mut() = message);
}

/// Runs `f`, records its error message and converts the outcome to a status.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SpectraStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error(None);
            SpectraStatus::Ok
        }
        Ok(Err(failure)) => {
            set_last_error(Some(failure.message));
            failure.status
        }
        Err(_) => {
            set_last_error(Some("internal error: panic in spectra-cert".into()));
            SpectraStatus::Internal
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::new(SpectraStatus::NullPointer, format!("{name} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::new(SpectraStatus::InvalidUtf8, format!("{name} is not valid UTF-8")))
}

unsafe fn matrix_arg<'a>(m: *const SpectraMatrix) -> Result<&'a SpectraMatrix, Failure> {
    m.as_ref()
        .ok_or_else(|| Failure::new(SpectraStatus::NullPointer, "matrix handle is null"))
}

unsafe fn out_arg<'a, T>(p: *mut T, name: &str) -> Result<&'a mut T, Failure> {
    p.as_mut()
        .ok_or_else(|| Failure::new(SpectraStatus::NullPointer, format!("{name} is null")))
}

fn rational_arg(text: &str, name: &str) -> Result<spectra_cert::Rational, Failure> {
    parse_rational(text).map_err(|e| Failure::new(SpectraStatus::ParseError, format!("{name}: {e}")))
}

fn pivot_arg(pivot: c_int) -> Result<Pivot, Failure> {
    match pivot {
        p if p == SpectraPivot::Max as c_int => Ok(Pivot::Max),
        p if p == SpectraPivot::First as c_int => Ok(Pivot::First),
        p => Err(Failure::new(
            SpectraStatus::InvalidArgument,
            format!("unknown pivot rule {p}"),
        )),
    }
}

fn into_c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Failure::new(SpectraStatus::Internal, "output contains a nul byte"))
}

/// Parses a matrix in the text format (`rows cols` header, then rows of
/// rationals; Gaussian rationals such as `1/2-3i` when `hermitian` is true).
///
/// On success `*out` receives a handle that must be released with
/// [`spectra_matrix_free`].
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn spectra_matrix_parse(
    text: *const c_char,
    hermitian: bool,
    out: *mut *mut SpectraMatrix,
) -> SpectraStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = std::ptr::null_mut();
        let text = str_arg(text, "text")?;
        let mode = if hermitian { Mode::Hermitian } else { Mode::Real };
        let inner = AnyMatrix::parse(text, mode).map_err(CliError::from)?;
        *out = Box::into_raw(Box::new(SpectraMatrix { inner }));
        Ok(())
    })
}

/// Releases a matrix handle. Null is ignored.
///
/// # Safety
/// `m` must be null or a handle from [`spectra_matrix_parse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn spectra_matrix_free(m: *mut SpectraMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Dimension of the matrix, or 0 for a null handle.
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn spectra_matrix_dim(m: *const SpectraMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.inner.n())
}

/// Whether the matrix was parsed in Hermitian mode.
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn spectra_matrix_is_hermitian(m: *const SpectraMatrix) -> bool {
    m.as_ref().is_some_and(|m| m.inner.mode() == Mode::Hermitian)
}

/// Computes the inertia with the given pivot rule (a [`SpectraPivot`] value).
///
/// # Safety
/// `m` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn spectra_inertia(
    m: *const SpectraMatrix,
    pivot: c_int,
    out: *mut SpectraInertia,
) -> SpectraStatus {
    guard(|| {
        let m = matrix_arg(m)?;
        let out = out_arg(out, "out")?;
        let policy = pivot_arg(pivot)?.policy();
        let i = match &m.inner {
            AnyMatrix::Real(a) => inertia_with(a, &policy),
            AnyMatrix::Hermitian(a) => inertia_with(a, &policy),
        };
        *out = SpectraInertia {
            n_plus: i.n_plus,
            n_minus: i.n_minus,
            n_zero: i.n_zero,
        };
        Ok(())
    })
}

/// Decides positive semidefiniteness.
///
/// # Safety
/// `m` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn spectra_is_psd(m: *const SpectraMatrix, out: *mut bool) -> SpectraStatus {
    guard(|| {
        let m = matrix_arg(m)?;
        let out = out_arg(out, "out")?;
        *out = match &m.inner {
            AnyMatrix::Real(a) => is_psd(a),
            AnyMatrix::Hermitian(a) => is_psd(a),
        };
        Ok(())
    })
}

/// Counts eigenvalues strictly below `t` and equal to `t`, where `t` is a
/// rational literal such as `"-3/4"`.
///
/// # Safety
/// `m` must be a live handle, `t` a nul-terminated string and `below`,
/// `equal` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn spectra_count_below(
    m: *const SpectraMatrix,
    t: *const c_char,
    below: *mut usize,
    equal: *mut usize,
) -> SpectraStatus {
    guard(|| {
        let m = matrix_arg(m)?;
        let t = rational_arg(str_arg(t, "t")?, "t")?;
        let below = out_arg(below, "below")?;
        let equal = out_arg(equal, "equal")?;
        (*below, *equal) = match &m.inner {
            AnyMatrix::Real(a) => eigen_count_below(a, &t),
            AnyMatrix::Hermitian(a) => eigen_count_below(a, &t),
        };
        Ok(())
    })
}

/// Produces a certificate document (JSON, the same bytes the command-line
/// tool prints). `kind` is a [`SpectraKind`] value and `pivot` a
/// [`SpectraPivot`] value. `eps` is a positive rational literal, required for
/// [`SpectraKind::Spectrum`] and [`SpectraKind::Mu`] and ignored otherwise
/// (it may be null then).
///
/// On success `*out_json` receives a string to release with
/// [`spectra_string_free`].
///
/// # Safety
/// `m` must be a live handle, `eps` null or a nul-terminated string and
/// `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn spectra_certify(
    m: *const SpectraMatrix,
    kind: c_int,
    eps: *const c_char,
    pivot: c_int,
    out_json: *mut *mut c_char,
) -> SpectraStatus {
    guard(|| {
        let out = out_arg(out_json, "out_json")?;
        *out = std::ptr::null_mut();
        let m = matrix_arg(m)?;
        let pivot = pivot_arg(pivot)?;
        let eps = || -> Result<spectra_cert::Rational, Failure> {
            if eps.is_null() {
                return Err(Failure::new(
                    SpectraStatus::InvalidPrecision,
                    "eps is required for this kind",
                ));
            }
            rational_arg(str_arg(eps, "eps")?, "eps")
        };
        let req = match kind {
            k if k == SpectraKind::Inertia as c_int => Request::Inertia,
            k if k == SpectraKind::Psd as c_int => Request::Psd,
            k if k == SpectraKind::PdFactor as c_int => Request::CertifyPd,
            k if k == SpectraKind::Gap as c_int => Request::Gap,
            k if k == SpectraKind::Spectrum as c_int => Request::Eig { eps: eps()? },
            k if k == SpectraKind::Mu as c_int => Request::Mu { eps: eps()? },
            k if k == SpectraKind::OracleCheck as c_int => Request::OracleCheck,
            k => {
                return Err(Failure::new(
                    SpectraStatus::InvalidArgument,
                    format!("unknown certificate kind {k}"),
                ))
            }
        };
        let opts = Options {
            pivot,
            parallel: false,
            oracle_limit: DEFAULT_ORACLE_LIMIT,
        };
        let doc = cli::certify(&req, &m.inner, &opts)?;
        *out = into_c_string(doc.to_json())?;
        Ok(())
    })
}

/// Verifies a certificate document. Strict mode (the default, `lenient`
/// false) also checks the digest, the canonical encoding and that a fresh
/// recomputation reproduces the document.
///
/// Returns [`SpectraStatus::Ok`] if the document verifies and
/// [`SpectraStatus::VerificationFailed`] if not. If `out_report` is not null
/// it receives the JSON verification report on success (release with
/// [`spectra_string_free`]) and null otherwise.
///
/// # Safety
/// `json` must be a nul-terminated string; `out_report` null or valid.
#[no_mangle]
pub unsafe extern "C" fn spectra_verify(
    json: *const c_char,
    lenient: bool,
    out_report: *mut *mut c_char,
) -> SpectraStatus {
    guard(|| {
        if let Some(out) = out_report.as_mut() {
            *out = std::ptr::null_mut();
        }
        let json = str_arg(json, "json")?;
        let report = cli::verify_document(json, lenient, DEFAULT_ORACLE_LIMIT)?;
        if let Some(out) = out_report.as_mut() {
            *out = into_c_string(report.to_json())?;
        }
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn spectra_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message describing the most recent failure on the calling thread, or null
/// if the last call succeeded. Valid until the next call into this library on
/// the same thread; do not free.
#[no_mangle]
pub extern "C" fn spectra_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(std::ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn spectra_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
