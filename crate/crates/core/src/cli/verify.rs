//! Re-checking certificate documents.
//!
//! The mathematical checks use only the document: congruence certificates
//! are multiplied out, brackets are re-counted by inertia, and derived
//! quantities are recomputed from the payload. Strict mode additionally
//! requires the digest, the canonical encoding and a fresh recomputation to
//! match byte for byte.

use num_traits::Signed;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

use super::document::{self, CertificateDocument, Kind, Mode, TOOL_NAME, TOOL_VERSION};
use super::text::{self, parse_rational, ScalarText};
use super::{certify, AnyMatrix, CliError, Options, Request};
use crate::congruence::{invert, CongruenceCertificate, Inertia};
use crate::linalg::{quadratic_form, MaxAbs, SymMatrix, Vector};
use crate::oracle::OracleCounter;
use crate::scalar::{GaussianRational, Rational};
use crate::spectral::{eigen_count_below, gap_gamma, EigenBracket};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub kind: &'static str,
    pub verified: bool,
    pub certificate_kind: Kind,
    pub strict: bool,
    pub checks: Vec<String>,
}

impl VerifyReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("verified {} certificate\n", self.certificate_kind.as_str());
        for c in &self.checks {
            out += &format!("  ok: {c}\n");
        }
        out
    }
}

type Checks = Result<Vec<String>, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn payload<T: DeserializeOwned>(v: &Value) -> Result<T, String> {
    serde_json::from_value(v.clone()).map_err(|e| format!("malformed result: {e}"))
}

fn rationals(xs: &[String]) -> Result<Vec<Rational>, String> {
    xs.iter().map(|x| parse_rational(x)).collect()
}

pub fn verify_document(input: &str, lenient: bool, oracle_limit: usize) -> Result<VerifyReport, CliError> {
    let doc =
        CertificateDocument::from_json(input).map_err(|e| CliError::Verify(format!("malformed document: {e}")))?;
    let checks = check_document(&doc, oracle_limit).map_err(CliError::Verify)?;
    let mut report = VerifyReport {
        kind: "verification",
        verified: true,
        certificate_kind: doc.kind,
        strict: !lenient,
        checks,
    };
    if !lenient {
        strict_checks(&doc, input, oracle_limit).map_err(CliError::Verify)?;
        report.checks.extend([
            "digest".to_string(),
            "canonical encoding".into(),
            "recomputation".into(),
        ]);
    }
    Ok(report)
}

fn check_document(doc: &CertificateDocument, oracle_limit: usize) -> Checks {
    ensure(doc.tool == TOOL_NAME, format!("unknown tool {:?}", doc.tool))?;
    ensure(
        doc.version == TOOL_VERSION,
        format!("unsupported version {:?}", doc.version),
    )?;
    match doc.mode {
        Mode::Real => check_math::<Rational>(doc, oracle_limit),
        Mode::Hermitian => check_math::<GaussianRational>(doc, oracle_limit),
    }
}

fn strict_checks(doc: &CertificateDocument, input: &str, oracle_limit: usize) -> Result<(), String> {
    ensure(
        doc.digest == doc.compute_digest(),
        "digest does not match document contents",
    )?;
    ensure(doc.to_json() == input, "document is not in canonical encoding")?;
    let matrix = rebuild_matrix(doc)?;
    let opts = Options {
        pivot: doc.pivot,
        parallel: false,
        oracle_limit,
    };
    let fresh = certify(&request_for(doc)?, &matrix, &opts).map_err(|e| format!("recomputation failed: {e}"))?;
    ensure(&fresh == doc, "document differs from a fresh recomputation")
}

fn request_for(doc: &CertificateDocument) -> Result<Request, String> {
    let eps = || {
        doc.result["eps"]
            .as_str()
            .ok_or_else(|| "missing eps".to_string())
            .and_then(parse_rational)
    };
    Ok(match doc.kind {
        Kind::Inertia => Request::Inertia,
        Kind::Psd => Request::Psd,
        Kind::PdFactor => Request::CertifyPd,
        Kind::Gap => Request::Gap,
        Kind::Spectrum => Request::Eig { eps: eps()? },
        Kind::Mu => Request::Mu { eps: eps()? },
        Kind::OracleCheck => Request::OracleCheck,
    })
}

fn rebuild_matrix(doc: &CertificateDocument) -> Result<AnyMatrix, String> {
    Ok(match doc.mode {
        Mode::Real => AnyMatrix::Real(sym_from_rows(&doc.matrix)?),
        Mode::Hermitian => AnyMatrix::Hermitian(sym_from_rows(&doc.matrix)?),
    })
}

fn sym_from_rows<S: ScalarText>(rows: &[Vec<String>]) -> Result<SymMatrix<S>, String> {
    let m = text::matrix_from_rows::<S>(rows)?;
    SymMatrix::new(m).map_err(|e| format!("input matrix: {e}"))
}

fn congruence<S: ScalarText>(
    a: &SymMatrix<S>,
    p: &[Vec<String>],
    d: &[String],
    checks: &mut Vec<String>,
) -> Result<CongruenceCertificate<S>, String> {
    let p = text::matrix_from_rows::<S>(p)?;
    let d = rationals(d)?;
    ensure(
        p.n() == a.n() && d.len() == a.n(),
        "certificate dimensions do not match the matrix",
    )?;
    let cert = CongruenceCertificate::from_parts(p, d);
    ensure(
        cert.reconstruct().map_err(|e| e.to_string())? == *a.as_matrix(),
        "P^H·D·P differs from A",
    )?;
    invert(cert.p()).map_err(|_| "P is singular".to_string())?;
    checks.push("P^H·D·P = A".into());
    checks.push("P invertible".into());
    Ok(cert)
}

fn check_counts(claimed: Inertia, cert_inertia: Inertia, checks: &mut Vec<String>) -> Result<(), String> {
    ensure(
        claimed == cert_inertia,
        format!("inertia {claimed} does not match signs of D {cert_inertia}"),
    )?;
    checks.push("inertia matches signs of D".into());
    Ok(())
}

fn check_eps(eps: &str) -> Result<Rational, String> {
    let eps = parse_rational(eps)?;
    ensure(eps.is_positive(), "eps must be positive")?;
    Ok(eps)
}

fn check_bracket<S: ScalarText>(a: &SymMatrix<S>, b: &EigenBracket, eps: &Rational) -> Result<(), String> {
    ensure(
        b.verify(a),
        format!(
            "bracket [{}, {}] does not hold {} eigenvalue(s)",
            b.lo, b.hi, b.multiplicity
        ),
    )?;
    ensure(
        b.exact || b.width() <= *eps,
        format!("bracket [{}, {}] is wider than eps", b.lo, b.hi),
    )
}

fn check_math<S: ScalarText>(doc: &CertificateDocument, oracle_limit: usize) -> Checks {
    let a: SymMatrix<S> = sym_from_rows(&doc.matrix)?;
    let mut checks = vec!["input matrix is symmetric".to_string()];
    match doc.kind {
        Kind::Inertia => {
            let r: document::InertiaResult = payload(&doc.result)?;
            let cert = congruence(&a, &r.p, &r.d, &mut checks)?;
            check_counts(r.inertia(), cert.inertia(), &mut checks)?;
        }
        Kind::Psd => {
            let r: document::PsdResult = payload(&doc.result)?;
            let cert = congruence(&a, &r.p, &r.d, &mut checks)?;
            let claimed = Inertia {
                n_plus: r.n_plus,
                n_minus: r.n_minus,
                n_zero: r.n_zero,
            };
            check_counts(claimed, cert.inertia(), &mut checks)?;
            ensure(r.psd == claimed.is_psd(), "psd flag contradicts inertia")?;
            match (&r.witness, r.psd) {
                (None, true) => {}
                (Some(w), false) => {
                    let w = Vector::new(w.iter().map(|x| S::parse_text(x)).collect::<Result<Vec<S>, _>>()?);
                    let q = quadratic_form(&a, &w).map_err(|e| e.to_string())?;
                    ensure(q.is_negative(), "witness does not give a negative quadratic form")?;
                    checks.push("witness has <w, A·w> < 0".into());
                }
                _ => return Err("witness must be present exactly when psd is false".into()),
            }
        }
        Kind::PdFactor => {
            let r: document::CongruencePayload = payload(&doc.result)?;
            let cert = congruence(&a, &r.p, &r.d, &mut checks)?;
            ensure(cert.d().iter().all(Signed::is_positive), "D has a non-positive entry")?;
            checks.push("D > 0".into());
        }
        Kind::Gap => {
            let r: document::GapResult = payload(&doc.result)?;
            let cert = congruence(&a, &r.p, &r.d, &mut checks)?;
            ensure(cert.d().iter().all(Signed::is_positive), "D has a non-positive entry")?;
            let p_inv = text::matrix_from_rows::<S>(&r.p_inv)?;
            ensure(p_inv.n() == a.n(), "P^-1 has the wrong dimension")?;
            ensure(
                cert.p().mul(&p_inv).map_err(|e| e.to_string())?.is_identity(),
                "P·P^-1 is not the identity",
            )?;
            let max_sq = parse_rational(&r.p_inv_max_sq)?;
            ensure(max_sq == p_inv.max_abs_sq(), "p_inv_max_sq is not |P^-1|∞²")?;
            let gamma = parse_rational(&r.gamma)?;
            ensure(
                Some(&gamma) == gap_gamma(a.n(), cert.d(), &max_sq).as_ref(),
                "gamma is not min(D)/(n³·|P^-1|∞²)",
            )?;
            ensure(gamma.is_positive(), "gamma is not positive")?;
            checks.extend([
                "D > 0".into(),
                "P·P^-1 = I".into(),
                "gamma = min(D)/(n³·|P^-1|∞²) > 0".into(),
            ]);
        }
        Kind::Spectrum => {
            let r: document::SpectrumResult = payload(&doc.result)?;
            let eps = check_eps(&r.eps)?;
            for b in &r.brackets {
                check_bracket(&a, b, &eps)?;
            }
            for w in r.brackets.windows(2) {
                let ordered = if w[0].exact || w[1].exact {
                    w[0].hi < w[1].lo
                } else {
                    w[0].hi <= w[1].lo
                };
                ensure(ordered, "brackets overlap or are out of order")?;
            }
            let total: usize = r.brackets.iter().map(|b| b.multiplicity).sum();
            ensure(
                total == a.n(),
                format!("multiplicities sum to {total}, expected {}", a.n()),
            )?;
            checks.extend([
                "bracket counts".into(),
                "bracket widths".into(),
                "brackets disjoint".into(),
                "multiplicities sum to n".into(),
            ]);
        }
        Kind::Mu => {
            let r: document::MuResult = payload(&doc.result)?;
            let eps = check_eps(&r.eps)?;
            check_bracket(&a, &r.bracket, &eps)?;
            ensure(
                eigen_count_below(&a, &r.bracket.lo).0 == 0,
                "an eigenvalue lies below the bracket",
            )?;
            checks.extend([
                "bracket count".into(),
                "bracket width".into(),
                "no eigenvalue below lo".into(),
            ]);
        }
        Kind::OracleCheck => {
            let r: document::OracleCheckResult = payload(&doc.result)?;
            let oracle = OracleCounter::with_limit(&a, oracle_limit).map_err(|e| e.to_string())?;
            ensure(
                rationals(&r.char_poly)? == oracle.char_poly().coeffs(),
                "characteristic polynomial mismatch",
            )?;
            for p in &r.probes {
                let t = parse_rational(&p.t)?;
                ensure(
                    p.inertia_count == eigen_count_below(&a, &t),
                    format!("inertia count at {t} misreported"),
                )?;
                ensure(
                    p.oracle_count == oracle.count_below(&t),
                    format!("oracle count at {t} misreported"),
                )?;
            }
            let agree = r.probes.iter().all(|p| p.inertia_count == p.oracle_count);
            ensure(r.agree == agree, "agree flag misreported")?;
            ensure(!r.probes.is_empty(), "no probes")?;
            checks.push("probe records".into());
        }
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::Pivot;

    fn doc_for(text: &str, req: Request) -> CertificateDocument {
        let m = AnyMatrix::parse(text, Mode::Real).unwrap();
        certify(&req, &m, &Options::default()).unwrap()
    }

    /// Re-digests a tampered document so only the mathematical checks can
    /// catch it.
    fn forge(mut doc: CertificateDocument, f: impl FnOnce(&mut Value)) -> String {
        f(&mut doc.result);
        doc.digest = doc.compute_digest();
        doc.to_json()
    }

    #[test]
    fn accepts_emitted_documents() {
        for req in [
            Request::Inertia,
            Request::Psd,
            Request::CertifyPd,
            Request::Gap,
            Request::OracleCheck,
        ] {
            let doc = doc_for("2 2\n2 1\n1 2\n", req);
            verify_document(&doc.to_json(), false, 8).unwrap();
        }
        let eps = Rational::new(1.into(), 8.into());
        for req in [Request::Eig { eps: eps.clone() }, Request::Mu { eps }] {
            verify_document(&doc_for("3 3\n0 1 2\n1 0 1\n2 1 -1\n", req).to_json(), false, 8).unwrap();
        }
    }

    #[test]
    fn math_checks_catch_forged_payloads() {
        let doc = doc_for("2 2\n2 1\n1 2\n", Request::Inertia);
        let bad = forge(doc.clone(), |r| r["d"][1] = Value::String("3/2".into()));
        assert!(verify_document(&bad, true, 8).is_ok(), "unchanged value stays valid");
        let bad = forge(doc.clone(), |r| r["d"][1] = Value::String("5/2".into()));
        assert!(verify_document(&bad, true, 8).is_err());
        let bad = forge(doc, |r| r["n_plus"] = Value::from(1));
        assert!(verify_document(&bad, true, 8).is_err());

        let gap = doc_for("2 2\n2 1\n1 2\n", Request::Gap);
        let bad = forge(gap, |r| r["gamma"] = Value::String("1/4".into()));
        assert!(verify_document(&bad, true, 8).is_err());

        let mu = doc_for(
            "2 2\n2 1\n1 2\n",
            Request::Mu {
                eps: Rational::new(1.into(), 8.into()),
            },
        );
        let bad = forge(mu, |r| r["bracket"]["lo"] = Value::String("2".into()));
        assert!(verify_document(&bad, true, 8).is_err());
    }

    #[test]
    fn strict_mode_catches_consistent_edits() {
        // a narrower eps that the same brackets still satisfy
        let doc = doc_for(
            "2 2\n2 1\n1 2\n",
            Request::Mu {
                eps: Rational::new(1.into(), 8.into()),
            },
        );
        let edited = doc.to_json().replace("\"eps\":\"1/8\"", "\"eps\":\"1/7\"");
        assert_ne!(edited, doc.to_json());
        assert!(verify_document(&edited, true, 8).is_ok());
        assert!(verify_document(&edited, false, 8).is_err());
    }

    #[test]
    fn rejects_wrong_tool_and_trailing_whitespace() {
        let doc = doc_for("1 1\n3\n", Request::Inertia);
        let json = doc.to_json();
        assert!(verify_document(&json.replace("spectra-cert", "other-tool"), true, 8).is_err());
        assert!(verify_document(&format!("{json} "), false, 8).is_err());
        assert!(verify_document(&format!("{json} "), true, 8).is_ok());
    }

    #[test]
    fn pivot_is_part_of_the_document() {
        let m = AnyMatrix::parse("2 2\n1 2\n2 5\n", Mode::Real).unwrap();
        let opts = Options {
            pivot: Pivot::First,
            ..Options::default()
        };
        let doc = certify(&Request::Inertia, &m, &opts).unwrap();
        assert_eq!(doc.pivot, Pivot::First);
        verify_document(&doc.to_json(), false, 8).unwrap();
    }
}
