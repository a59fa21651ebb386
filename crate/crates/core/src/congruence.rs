//! Congruence diagonalization `A = P^H·D·P` over an exact field.
//!
//! The working matrix `W` starts at `A` and is transformed by elementary
//! congruences `W ← E^H·W·E` until it is diagonal. `P` is accumulated as
//! `P ← E⁻¹·P` so that `A = P^H·W·P` holds after every step; elementary
//! inverses are written down directly and no matrix is ever inverted.
//!
//! Pivoted indices are not permuted to the front: `D` is reported in the
//! original index order.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, SymMatrix, Vector};
use crate::scalar::{Rational, Scalar};

/// How the next pivot is chosen among the remaining nonzero diagonal entries.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum PivotPolicy {
    /// Largest `|w_kk|`, ties broken by lowest index.
    #[default]
    MaxAbs,
    /// Lowest index.
    First,
    /// Earliest position in the given order. Indices missing from the list
    /// are appended in natural order; out-of-range ones are ignored.
    Priority(Vec<usize>),
}

impl PivotPolicy {
    fn order(&self, n: usize) -> Vec<usize> {
        match self {
            PivotPolicy::Priority(list) => {
                let mut seen = vec![false; n];
                let mut order = Vec::with_capacity(n);
                for i in list.iter().copied().chain(0..n).filter(|&i| i < n) {
                    if !seen[i] {
                        seen[i] = true;
                        order.push(i);
                    }
                }
                order
            }
            _ => (0..n).collect(),
        }
    }
}

/// Sign counts of the diagonal of a congruence-diagonal form.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Inertia {
    pub n_plus: usize,
    pub n_minus: usize,
    pub n_zero: usize,
}

impl Inertia {
    pub fn from_diagonal(d: &[Rational]) -> Self {
        d.iter().fold(Inertia::default(), |mut acc, x| {
            match x.cmp(&Rational::zero()) {
                Ordering::Greater => acc.n_plus += 1,
                Ordering::Less => acc.n_minus += 1,
                Ordering::Equal => acc.n_zero += 1,
            }
            acc
        })
    }

    pub fn n(&self) -> usize {
        self.n_plus + self.n_minus + self.n_zero
    }

    pub fn is_psd(&self) -> bool {
        self.n_minus == 0
    }

    pub fn is_pd(&self) -> bool {
        self.n_minus == 0 && self.n_zero == 0
    }
}

impl fmt::Display for Inertia {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.n_plus, self.n_minus, self.n_zero)
    }
}

/// `(P, D)` with `A = P^H·diag(D)·P` and `P` invertible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceCertificate<S> {
    p: Matrix<S>,
    d: Vec<Rational>,
}

impl<S: Scalar> CongruenceCertificate<S> {
    /// Wraps an externally supplied pair; nothing is checked until
    /// [`verify`](Self::verify).
    pub fn from_parts(p: Matrix<S>, d: Vec<Rational>) -> Self {
        CongruenceCertificate { p, d }
    }

    pub fn p(&self) -> &Matrix<S> {
        &self.p
    }

    pub fn d(&self) -> &[Rational] {
        &self.d
    }

    pub fn into_parts(self) -> (Matrix<S>, Vec<Rational>) {
        (self.p, self.d)
    }

    pub fn inertia(&self) -> Inertia {
        Inertia::from_diagonal(&self.d)
    }

    /// `P^H·diag(D)·P`.
    pub fn reconstruct(&self) -> Result<Matrix<S>> {
        if self.d.len() != self.p.n() {
            return Err(Error::DimensionMismatch {
                expected: self.p.n(),
                found: self.d.len(),
            });
        }
        let dp = Matrix::from_diagonal(&self.d).mul(&self.p)?;
        self.p.conj_transpose().mul(&dp)
    }

    /// Exact check of `A = P^H·D·P` with `P` invertible.
    pub fn verify(&self, a: &SymMatrix<S>) -> bool {
        self.p.n() == a.n() && matches!(self.reconstruct(), Ok(m) if &m == a.as_matrix()) && invert(&self.p).is_ok()
    }
}

pub fn congruence_diagonalize<S: Scalar>(a: &SymMatrix<S>) -> CongruenceCertificate<S> {
    congruence_diagonalize_with(a, &PivotPolicy::MaxAbs)
}

pub fn congruence_diagonalize_with<S: Scalar>(a: &SymMatrix<S>, policy: &PivotPolicy) -> CongruenceCertificate<S> {
    let n = a.n();
    let order = policy.order(n);
    let mut w = a.as_matrix().clone();
    let mut p = Matrix::<S>::identity(n);
    let mut active = vec![true; n];

    for _ in 0..n {
        let k = match choose_pivot(&w, &active, &order, policy) {
            Some(k) => k,
            None => match find_repair_pair(&w, &active, &order) {
                Some((i, j)) => {
                    repair(&mut w, &mut p, i, j);
                    i
                }
                // the remaining block is zero
                None => break,
            },
        };
        eliminate(&mut w, &mut p, &active, k);
        active[k] = false;
    }

    let d = (0..n).map(|i| w[(i, i)].real_part()).collect();
    CongruenceCertificate { p, d }
}

fn choose_pivot<S: Scalar>(w: &Matrix<S>, active: &[bool], order: &[usize], policy: &PivotPolicy) -> Option<usize> {
    let mut candidates = order.iter().copied().filter(|&k| active[k] && !w[(k, k)].is_zero());
    match policy {
        PivotPolicy::MaxAbs => {
            let mut best: Option<(usize, Rational)> = None;
            for k in candidates {
                let m = w[(k, k)].real_part().abs();
                if best.as_ref().is_none_or(|(_, b)| m > *b) {
                    best = Some((k, m));
                }
            }
            best.map(|(k, _)| k)
        }
        _ => candidates.next(),
    }
}

fn find_repair_pair<S: Scalar>(w: &Matrix<S>, active: &[bool], order: &[usize]) -> Option<(usize, usize)> {
    order.iter().filter(|&&i| active[i]).find_map(|&i| {
        order
            .iter()
            .find(|&&j| j != i && active[j] && !w[(i, j)].is_zero())
            .map(|&j| (i, j))
    })
}

/// `col_i += s·col_j`, `row_i += s̄·row_j`, choosing `s` so that the new
/// `w_ii = 2·Re(s·w_ij)` is nonzero. Requires `w_ii = w_jj = 0`.
fn repair<S: Scalar>(w: &mut Matrix<S>, p: &mut Matrix<S>, i: usize, j: usize) {
    let n = w.n();
    let s = S::repair_multipliers()
        .into_iter()
        .find(|s| !(s.clone() * w[(i, j)].clone()).real_part().is_zero())
        .expect("a nonzero entry has a nonzero real or imaginary part");
    let sc = s.conj();
    for r in 0..n {
        w[(r, i)] = w[(r, i)].clone() + w[(r, j)].clone() * s.clone();
    }
    for c in 0..n {
        w[(i, c)] = w[(i, c)].clone() + sc.clone() * w[(j, c)].clone();
    }
    // E = I + s·e_j·e_iᵗ, so E⁻¹·P subtracts s·row_i from row_j.
    for c in 0..n {
        p[(j, c)] = p[(j, c)].clone() - s.clone() * p[(i, c)].clone();
    }
}

/// Clears row and column `k` of `w` against every other active index.
fn eliminate<S: Scalar>(w: &mut Matrix<S>, p: &mut Matrix<S>, active: &[bool], k: usize) {
    let n = w.n();
    let pivot = w[(k, k)].clone();
    for j in (0..n).filter(|&j| j != k && active[j]) {
        if w[(k, j)].is_zero() {
            continue;
        }
        let c = w[(k, j)].clone() / pivot.clone();
        let cc = c.conj();
        for r in 0..n {
            if !w[(r, k)].is_zero() {
                w[(r, j)] = w[(r, j)].clone() - w[(r, k)].clone() * c.clone();
            }
        }
        for col in 0..n {
            if !w[(k, col)].is_zero() {
                w[(j, col)] = w[(j, col)].clone() - cc.clone() * w[(k, col)].clone();
            }
        }
        // E = I − c·e_k·e_jᵗ, so E⁻¹·P adds c·row_j to row_k.
        for col in 0..n {
            if !p[(j, col)].is_zero() {
                p[(k, col)] = p[(k, col)].clone() + c.clone() * p[(j, col)].clone();
            }
        }
    }
}

pub fn inertia<S: Scalar>(a: &SymMatrix<S>) -> Inertia {
    inertia_with(a, &PivotPolicy::MaxAbs)
}

pub fn inertia_with<S: Scalar>(a: &SymMatrix<S>, policy: &PivotPolicy) -> Inertia {
    congruence_diagonalize_with(a, policy).inertia()
}

/// `⟨v, A·v⟩ ≥ 0` for all `v`, decided as `n_minus = 0`.
pub fn is_psd<S: Scalar>(a: &SymMatrix<S>) -> bool {
    inertia(a).is_psd()
}

/// A certificate with every `d_i > 0`, or the offending inertia.
pub fn pd_factor<S: Scalar>(a: &SymMatrix<S>) -> Result<CongruenceCertificate<S>> {
    pd_factor_with(a, &PivotPolicy::MaxAbs)
}

pub fn pd_factor_with<S: Scalar>(a: &SymMatrix<S>, policy: &PivotPolicy) -> Result<CongruenceCertificate<S>> {
    let cert = congruence_diagonalize_with(a, policy);
    let inertia = cert.inertia();
    if inertia.is_pd() {
        Ok(cert)
    } else {
        Err(Error::NotPositiveDefinite(inertia))
    }
}

/// Exact inverse by Gauss–Jordan elimination.
pub fn invert<S: Scalar>(m: &Matrix<S>) -> Result<Matrix<S>> {
    let n = m.n();
    let mut a = m.clone();
    let mut inv = Matrix::<S>::identity(n);
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[(r, col)].is_zero())
            .ok_or(Error::SingularMatrix)?;
        if piv != col {
            for c in 0..n {
                let t = a[(piv, c)].clone();
                a[(piv, c)] = a[(col, c)].clone();
                a[(col, c)] = t;
                let t = inv[(piv, c)].clone();
                inv[(piv, c)] = inv[(col, c)].clone();
                inv[(col, c)] = t;
            }
        }
        let scale = S::one() / a[(col, col)].clone();
        for c in 0..n {
            a[(col, c)] = a[(col, c)].clone() * scale.clone();
            inv[(col, c)] = inv[(col, c)].clone() * scale.clone();
        }
        for r in (0..n).filter(|&r| r != col) {
            let f = a[(r, col)].clone();
            if f.is_zero() {
                continue;
            }
            for c in 0..n {
                a[(r, c)] = a[(r, c)].clone() - f.clone() * a[(col, c)].clone();
                inv[(r, c)] = inv[(r, c)].clone() - f.clone() * inv[(col, c)].clone();
            }
        }
    }
    Ok(inv)
}

/// A vector with `⟨v, A·v⟩ < 0` and integral components, if `A` is not PSD.
///
/// Built as `P⁻¹·e_i` for a negative `d_i`, so that `⟨v, A·v⟩ = d_i` before
/// the denominators are cleared.
pub fn negative_witness<S: Scalar>(a: &SymMatrix<S>) -> Option<Vector<S>> {
    let cert = congruence_diagonalize(a);
    let i = cert.d.iter().position(|x| x.is_negative())?;
    let pinv = invert(&cert.p).expect("certificate P is invertible");
    let column: Vec<S> = (0..a.n()).map(|r| pinv[(r, i)].clone()).collect();
    let lcm = column
        .iter()
        .map(Scalar::denom_lcm)
        .fold(num_bigint::BigInt::from(1), |acc, d| {
            num_integer::Integer::lcm(&acc, &d)
        });
    let scale = S::from_rational(Rational::from_integer(lcm));
    Some(Vector::new(column).scale(&scale))
}
