//! JSON certificate documents.
//!
//! Every rational is an exact `"p/q"` string. A document carries the input
//! matrix, the command parameters, the result payload and a SHA-256 digest
//! of everything else, so it can be re-checked from the file alone.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::congruence::Inertia;
use crate::spectral::EigenBracket;

pub const TOOL_NAME: &str = "spectra-cert";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Serde adapter storing a [`Rational`](crate::scalar::Rational) as a string.
pub mod rational_str {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::cli::text::{format_rational, parse_rational};
    use crate::scalar::Rational;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Inertia,
    Psd,
    PdFactor,
    Gap,
    Spectrum,
    Mu,
    OracleCheck,
}

impl Kind {
    pub fn as_str(&self) -> &'static str {
        match self {
            Kind::Inertia => "inertia",
            Kind::Psd => "psd",
            Kind::PdFactor => "pd_factor",
            Kind::Gap => "gap",
            Kind::Spectrum => "spectrum",
            Kind::Mu => "mu",
            Kind::OracleCheck => "oracle_check",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    #[default]
    Real,
    Hermitian,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Pivot {
    #[default]
    Max,
    First,
}

impl Pivot {
    pub fn policy(self) -> crate::congruence::PivotPolicy {
        match self {
            Pivot::Max => crate::congruence::PivotPolicy::MaxAbs,
            Pivot::First => crate::congruence::PivotPolicy::First,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDocument {
    pub kind: Kind,
    pub tool: String,
    pub version: String,
    pub mode: Mode,
    pub pivot: Pivot,
    pub matrix: Vec<Vec<String>>,
    pub result: Value,
    pub digest: String,
}

#[derive(Serialize)]
struct DigestBody<'a> {
    kind: Kind,
    tool: &'a str,
    version: &'a str,
    mode: Mode,
    pivot: Pivot,
    matrix: &'a [Vec<String>],
    result: &'a Value,
}

impl CertificateDocument {
    pub fn new(kind: Kind, mode: Mode, pivot: Pivot, matrix: Vec<Vec<String>>, result: Value) -> Self {
        let mut doc = CertificateDocument {
            kind,
            tool: TOOL_NAME.to_string(),
            version: TOOL_VERSION.to_string(),
            mode,
            pivot,
            matrix,
            result,
            digest: String::new(),
        };
        doc.digest = doc.compute_digest();
        doc
    }

    pub fn compute_digest(&self) -> String {
        let body = DigestBody {
            kind: self.kind,
            tool: &self.tool,
            version: &self.version,
            mode: self.mode,
            pivot: self.pivot,
            matrix: &self.matrix,
            result: &self.result,
        };
        let bytes = serde_json::to_vec(&body).expect("document body serializes");
        format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
    }

    /// Canonical encoding: compact JSON followed by a newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("document serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CongruencePayload {
    pub p: Vec<Vec<String>>,
    pub d: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InertiaResult {
    pub n_plus: usize,
    pub n_minus: usize,
    pub n_zero: usize,
    pub p: Vec<Vec<String>>,
    pub d: Vec<String>,
}

impl InertiaResult {
    pub fn inertia(&self) -> Inertia {
        Inertia {
            n_plus: self.n_plus,
            n_minus: self.n_minus,
            n_zero: self.n_zero,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PsdResult {
    pub psd: bool,
    pub n_plus: usize,
    pub n_minus: usize,
    pub n_zero: usize,
    pub p: Vec<Vec<String>>,
    pub d: Vec<String>,
    /// A vector with `⟨w, A·w⟩ < 0` when `psd` is false.
    pub witness: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GapResult {
    pub p: Vec<Vec<String>>,
    pub d: Vec<String>,
    pub p_inv: Vec<Vec<String>>,
    pub p_inv_max_sq: String,
    pub gamma: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumResult {
    pub eps: String,
    pub brackets: Vec<EigenBracket>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MuResult {
    pub eps: String,
    pub bracket: EigenBracket,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbeRecord {
    pub t: String,
    pub inertia_count: (usize, usize),
    pub oracle_count: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleCheckResult {
    pub agree: bool,
    /// `det(λI − A)`, ascending coefficients.
    pub char_poly: Vec<String>,
    pub probes: Vec<ProbeRecord>,
}

/// Emitted on stdout when a command fails on valid input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorDocument {
    pub kind: String,
    pub tool: String,
    pub version: String,
    pub error: String,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inertia: Option<Inertia>,
}

impl ErrorDocument {
    pub fn new(error: &str, message: String, inertia: Option<Inertia>) -> Self {
        ErrorDocument {
            kind: "error".into(),
            tool: TOOL_NAME.into(),
            version: TOOL_VERSION.into(),
            error: error.into(),
            message,
            inertia,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("error document serializes");
        s.push('\n');
        s
    }
}
