//! Vectors, square matrices and the entrywise/Euclidean norms.
//!
//! Euclidean norms are handled in squared form throughout so that every
//! quantity stays rational: `norm_sq(v) = ⟨v, v⟩`, and the operator bound
//! `‖A·v‖ ≤ n^{3/2}·|A|∞·‖v‖` is checked as
//! `‖A·v‖² ≤ n³·|A|∞²·‖v‖²`.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

/// Column vector over a scalar field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vector<S>(Vec<S>);

impl<S: Scalar> Vector<S> {
    pub fn new(entries: Vec<S>) -> Self {
        Vector(entries)
    }

    pub fn zeros(n: usize) -> Self {
        Vector(vec![S::zero(); n])
    }

    /// The `i`-th standard basis vector of length `n`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = S::one();
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn entries(&self) -> &[S] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<S> {
        self.0
    }

    pub fn scale(&self, c: &S) -> Self {
        Vector(self.0.iter().map(|x| c.clone() * x.clone()).collect())
    }
}

impl<S> Index<usize> for Vector<S> {
    type Output = S;

    fn index(&self, i: usize) -> &S {
        &self.0[i]
    }
}

impl<S: Scalar> From<Vec<S>> for Vector<S> {
    fn from(v: Vec<S>) -> Self {
        Vector(v)
    }
}

/// Dense square matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<S> {
    n: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(n: usize) -> Self {
        Matrix {
            n,
            data: vec![S::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_diagonal(d: &[Rational]) -> Self {
        let mut m = Self::zeros(d.len());
        for (i, x) in d.iter().enumerate() {
            m[(i, i)] = S::from_rational(x.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptyMatrix);
        }
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::NotSquare {
                    rows: n,
                    cols: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix { n, data })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[S]> {
        self.data.chunks(self.n.max(1))
    }

    pub fn entries(&self) -> impl Iterator<Item = &S> {
        self.data.iter()
    }

    pub fn conj_transpose(&self) -> Self {
        let n = self.n;
        let mut t = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                t[(j, i)] = self[(i, j)].conj();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix<S>) -> Result<Matrix<S>> {
        if self.n != rhs.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: rhs.n,
            });
        }
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &Vector<S>) -> Result<Vector<S>> {
        if self.n != v.len() {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: v.len(),
            });
        }
        Ok(Vector(
            self.rows()
                .map(|row| {
                    row.iter()
                        .zip(v.entries())
                        .fold(S::zero(), |acc, (a, x)| acc + a.clone() * x.clone())
                })
                .collect(),
        ))
    }

    /// First pair `(i, j)` with `i < j` (or `i == j`) violating
    /// `a_ij = conj(a_ji)`, if any.
    pub fn first_asymmetry(&self) -> Option<(usize, usize)> {
        (0..self.n)
            .flat_map(|i| (i..self.n).map(move |j| (i, j)))
            .find(|&(i, j)| self[(i, j)] != self[(j, i)].conj())
    }

    pub fn max_abs(&self) -> Rational {
        max_measure(self.data.iter())
    }

    pub fn is_identity(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| {
            (0..n).all(|j| {
                if i == j {
                    self[(i, j)].is_one()
                } else {
                    self[(i, j)].is_zero()
                }
            })
        })
    }
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;

    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.n + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.n + j]
    }
}

/// A square matrix with `a_ij = conj(a_ji)`: symmetric over the rationals,
/// Hermitian over the Gaussian rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymMatrix<S>(Matrix<S>);

impl<S: Scalar> SymMatrix<S> {
    pub fn new(m: Matrix<S>) -> Result<Self> {
        match m.first_asymmetry() {
            Some((row, col)) => Err(Error::NotSymmetric { row, col }),
            None => Ok(SymMatrix(m)),
        }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        Self::new(Matrix::from_rows(rows)?)
    }

    pub fn identity(n: usize) -> Self {
        SymMatrix(Matrix::identity(n))
    }

    pub fn zeros(n: usize) -> Self {
        SymMatrix(Matrix::zeros(n))
    }

    pub fn diagonal(d: &[Rational]) -> Self {
        SymMatrix(Matrix::from_diagonal(d))
    }

    pub fn n(&self) -> usize {
        self.0.n
    }

    pub fn as_matrix(&self) -> &Matrix<S> {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix<S> {
        self.0
    }

    /// `A − t·I`.
    pub fn shifted(&self, t: &Rational) -> Self {
        let mut m = self.0.clone();
        let t = S::from_rational(t.clone());
        for i in 0..m.n {
            m[(i, i)] = m[(i, i)].clone() - t.clone();
        }
        SymMatrix(m)
    }

    pub fn max_abs(&self) -> Rational {
        self.0.max_abs()
    }
}

impl<S> Index<(usize, usize)> for SymMatrix<S> {
    type Output = S;

    fn index(&self, idx: (usize, usize)) -> &S {
        &self.0[idx]
    }
}

impl<S: Scalar> fmt::Display for Matrix<S>
where
    S: fmt::Display,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

fn max_measure<'a, S: Scalar>(xs: impl Iterator<Item = &'a S>) -> Rational {
    xs.map(Scalar::abs_measure).max().unwrap_or_else(Rational::zero)
}

fn max_modulus_sq<'a, S: Scalar>(xs: impl Iterator<Item = &'a S>) -> Rational {
    xs.map(Scalar::modulus_sq).max().unwrap_or_else(Rational::zero)
}

/// `⟨v, w⟩ = ᵗv̄·w`; conjugate-linear in the first argument.
pub fn inner_product<S: Scalar>(v: &Vector<S>, w: &Vector<S>) -> Result<S> {
    if v.len() != w.len() {
        return Err(Error::DimensionMismatch {
            expected: v.len(),
            found: w.len(),
        });
    }
    Ok(v.entries()
        .iter()
        .zip(w.entries())
        .fold(S::zero(), |acc, (a, b)| acc + a.conj() * b.clone()))
}

/// `‖v‖² = ⟨v, v⟩`.
pub fn norm_sq<S: Scalar>(v: &Vector<S>) -> Rational {
    v.entries().iter().map(Scalar::modulus_sq).sum()
}

/// Entrywise maximum `|·|∞` of a vector or matrix.
///
/// Over the Gaussian rationals this is the maximum squared modulus.
pub trait MaxAbs {
    fn max_abs(&self) -> Rational;

    /// `|x|∞²` in both modes.
    fn max_abs_sq(&self) -> Rational;
}

impl<S: Scalar> MaxAbs for Vector<S> {
    fn max_abs(&self) -> Rational {
        max_measure(self.0.iter())
    }

    fn max_abs_sq(&self) -> Rational {
        max_modulus_sq(self.0.iter())
    }
}

impl<S: Scalar> MaxAbs for Matrix<S> {
    fn max_abs(&self) -> Rational {
        max_measure(self.data.iter())
    }

    fn max_abs_sq(&self) -> Rational {
        max_modulus_sq(self.data.iter())
    }
}

impl<S: Scalar> MaxAbs for SymMatrix<S> {
    fn max_abs(&self) -> Rational {
        self.0.max_abs()
    }

    fn max_abs_sq(&self) -> Rational {
        MaxAbs::max_abs_sq(&self.0)
    }
}

pub fn max_abs<T: MaxAbs>(x: &T) -> Rational {
    x.max_abs()
}

pub fn mat_vec<S: Scalar>(a: &SymMatrix<S>, v: &Vector<S>) -> Result<Vector<S>> {
    a.0.mul_vec(v)
}

/// `⟨v, A·v⟩`, which is real for Hermitian `A`.
pub fn quadratic_form<S: Scalar>(a: &SymMatrix<S>, v: &Vector<S>) -> Result<Rational> {
    let av = mat_vec(a, v)?;
    Ok(inner_product(v, &av)?.real_part())
}

/// Checks `‖A·v‖² ≤ n³·|A|∞²·‖v‖²`. Always true; exposed for testing.
pub fn check_dagger<S: Scalar>(a: &SymMatrix<S>, v: &Vector<S>) -> Result<bool> {
    let av = mat_vec(a, v)?;
    let n = Rational::from_integer(a.n().into());
    let rhs = &n * &n * &n * a.max_abs_sq() * norm_sq(v);
    Ok(norm_sq(&av) <= rhs)
}
