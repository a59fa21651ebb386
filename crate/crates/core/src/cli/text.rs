//! Exact text literals for scalars and the matrix file format.
//!
//! ```text
//! 2 2
//! 2   1/2
//! 1/2 -3
//! ```
//!
//! The first line gives `rows cols`; each following non-blank line is one
//! row of whitespace-separated literals. Rational literals are `p` or `p/q`;
//! Hermitian entries additionally accept `a+bi`, `a-bi`, `bi` and `i`.
//! Lines starting with `#` are ignored.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::linalg::{Matrix, SymMatrix};
use crate::scalar::{gaussian, GaussianRational, Rational, Scalar};

/// A location in the matrix text, 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub reason: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.reason)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum MatrixTextError {
    #[error("parse error at {0}")]
    Parse(ParseError),
    /// 1-based indices: entry `(row, col)` is not the conjugate of `(col, row)`.
    #[error("matrix is not symmetric: entry ({row},{col}) does not match ({col},{row})")]
    Symmetry { row: usize, col: usize },
}

/// Conversion between scalars and their exact text literals.
pub trait ScalarText: Scalar {
    fn to_text(&self) -> String;
    fn parse_text(s: &str) -> Result<Self, String>;
}

pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    let unsigned = num.strip_prefix('-').or_else(|| num.strip_prefix('+')).unwrap_or(num);
    if !digits(unsigned) || !den.is_none_or(digits) {
        return Err(format!("invalid rational literal {s:?}"));
    }
    let num = BigInt::from_str(num).map_err(|e| e.to_string())?;
    let den = match den {
        Some(d) => BigInt::from_str(d).map_err(|e| e.to_string())?,
        None => BigInt::from(1),
    };
    if den.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(Rational::new(num, den))
}

pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

impl ScalarText for Rational {
    fn to_text(&self) -> String {
        format_rational(self)
    }

    fn parse_text(s: &str) -> Result<Self, String> {
        if s.contains('i') {
            return Err(format!("complex literal {s:?} requires hermitian mode"));
        }
        parse_rational(s)
    }
}

impl ScalarText for GaussianRational {
    fn to_text(&self) -> String {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => format_rational(&self.re),
            (true, false) => format!("{}i", format_rational(&self.im)),
            (false, false) if self.im.is_negative() => {
                format!("{}-{}i", format_rational(&self.re), format_rational(&-self.im.clone()))
            }
            (false, false) => format!("{}+{}i", format_rational(&self.re), format_rational(&self.im)),
        }
    }

    fn parse_text(s: &str) -> Result<Self, String> {
        let Some(body) = s.strip_suffix('i') else {
            return parse_rational(s).map(|re| gaussian(re, Rational::zero()));
        };
        // split at the last sign that is not the leading one
        let split = body
            .char_indices()
            .rev()
            .find(|&(k, c)| k > 0 && (c == '+' || c == '-'))
            .map(|(k, _)| k);
        let (re, im) = match split {
            Some(k) => (parse_rational(&body[..k])?, &body[k..]),
            None => (Rational::zero(), body),
        };
        let im = match im {
            "" | "+" => Rational::from_integer(1.into()),
            "-" => Rational::from_integer((-1).into()),
            t => parse_rational(t).map_err(|_| format!("invalid complex literal {s:?}"))?,
        };
        Ok(gaussian(re, im))
    }
}

fn parse_error(line: usize, column: usize, reason: impl Into<String>) -> MatrixTextError {
    MatrixTextError::Parse(ParseError {
        line,
        column,
        reason: reason.into(),
    })
}

/// Tokens of one line with their 1-based column.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (k, c) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((line[..s].chars().count() + 1, &line[s..k]));
                start = None;
            }
            (false, None) => start = Some(k),
            _ => {}
        }
    }
    out
}

pub fn parse_matrix<S: ScalarText>(text: &str) -> Result<SymMatrix<S>, MatrixTextError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));

    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_error(1, 1, "missing \"rows cols\" header"))?;
    let header = tokens(header);
    if header.len() != 2 {
        return Err(parse_error(hline, 1, "header must be \"rows cols\""));
    }
    let dim = |(col, t): (usize, &str)| {
        t.parse::<usize>()
            .ok()
            .filter(|&d| d > 0)
            .ok_or_else(|| parse_error(hline, col, format!("invalid dimension {t:?}")))
    };
    let rows = dim(header[0])?;
    let cols = dim(header[1])?;
    if rows != cols {
        return Err(parse_error(
            hline,
            header[1].0,
            format!("matrix must be square, got {rows}x{cols}"),
        ));
    }

    let mut data = Vec::with_capacity(rows);
    for r in 0..rows {
        let (lno, line) = lines
            .next()
            .ok_or_else(|| parse_error(text.lines().count() + 1, 1, format!("expected {rows} rows, found {r}")))?;
        let toks = tokens(line);
        if toks.len() != cols {
            return Err(parse_error(
                lno,
                1,
                format!("expected {cols} entries, found {}", toks.len()),
            ));
        }
        let row = toks
            .into_iter()
            .map(|(col, t)| S::parse_text(t).map_err(|e| parse_error(lno, col, e)))
            .collect::<Result<Vec<S>, _>>()?;
        data.push(row);
    }
    if let Some((lno, _)) = lines.next() {
        return Err(parse_error(lno, 1, "unexpected trailing row"));
    }

    let m = Matrix::from_rows(data).expect("dimensions checked above");
    SymMatrix::new(m).map_err(|e| match e {
        crate::Error::NotSymmetric { row, col } => MatrixTextError::Symmetry {
            row: row + 1,
            col: col + 1,
        },
        other => unreachable!("{other}"),
    })
}

pub fn matrix_rows<S: ScalarText>(m: &Matrix<S>) -> Vec<Vec<String>> {
    m.rows()
        .map(|row| row.iter().map(ScalarText::to_text).collect())
        .collect()
}

pub fn matrix_from_rows<S: ScalarText>(rows: &[Vec<String>]) -> Result<Matrix<S>, String> {
    let parsed = rows
        .iter()
        .map(|row| row.iter().map(|t| S::parse_text(t)).collect::<Result<Vec<S>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Matrix::from_rows(parsed).map_err(|e| e.to_string())
}

/// Renders a matrix in the input file format.
pub fn format_matrix<S: ScalarText>(m: &Matrix<S>) -> String {
    let mut out = format!("{} {}\n", m.n(), m.n());
    for row in matrix_rows(m) {
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
