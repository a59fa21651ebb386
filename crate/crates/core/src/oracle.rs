//! Independent verification channel based on the characteristic polynomial.
//!
//! Nothing here touches congruence or inertia: eigenvalue counts come from
//! `det(λI − A)` via Faddeev–LeVerrier, square-free decomposition for
//! multiplicities, and Sturm sequences for locating distinct roots.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, SymMatrix};
use crate::polynomial::RatPolynomial;
use crate::scalar::{Rational, Scalar};

pub const DEFAULT_ORACLE_LIMIT: usize = 8;

fn check_limit(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        Err(Error::SizeLimitExceeded { n, limit })
    } else {
        Ok(())
    }
}

/// Monic `det(λI − A)`, using the default size limit.
pub fn char_poly<S: Scalar>(a: &SymMatrix<S>) -> Result<RatPolynomial> {
    char_poly_with_limit(a, DEFAULT_ORACLE_LIMIT)
}

pub fn char_poly_with_limit<S: Scalar>(a: &SymMatrix<S>, limit: usize) -> Result<RatPolynomial> {
    let n = a.n();
    check_limit(n, limit)?;
    let a = a.as_matrix();
    // Faddeev–LeVerrier: M_k = A·M_{k−1} + c_{n−k+1}·I, c_{n−k} = −tr(A·M_k)/k.
    let mut coeffs = vec![S::zero(); n + 1];
    coeffs[n] = S::one();
    let mut m = Matrix::<S>::zeros(n);
    for k in 1..=n {
        let mut next = a.mul(&m)?;
        for i in 0..n {
            next[(i, i)] = next[(i, i)].clone() + coeffs[n - k + 1].clone();
        }
        m = next;
        let am = a.mul(&m)?;
        let trace = (0..n).fold(S::zero(), |acc, i| acc + am[(i, i)].clone());
        coeffs[n - k] = -trace / S::from_rational(Rational::from_integer(k.into()));
    }
    debug_assert!(coeffs.iter().all(Scalar::is_real));
    Ok(RatPolynomial::new(coeffs.iter().map(Scalar::real_part).collect()))
}

/// Determinant by fraction-based Gaussian elimination.
pub fn determinant<S: Scalar>(a: &Matrix<S>) -> S {
    let n = a.n();
    let mut m = a.clone();
    let mut det = S::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[(r, col)].is_zero()) else {
            return S::zero();
        };
        if piv != col {
            for c in 0..n {
                let t = m[(piv, c)].clone();
                m[(piv, c)] = m[(col, c)].clone();
                m[(col, c)] = t;
            }
            det = -det;
        }
        let p = m[(col, col)].clone();
        det = det * p.clone();
        for r in col + 1..n {
            let f = m[(r, col)].clone() / p.clone();
            if f.is_zero() {
                continue;
            }
            for c in col..n {
                m[(r, c)] = m[(r, c)].clone() - f.clone() * m[(col, c)].clone();
            }
        }
    }
    det
}

/// Sturm sequence `p, p′, −rem(p, p′), …`.
pub fn sturm_chain(p: &RatPolynomial) -> Vec<RatPolynomial> {
    let mut chain = vec![p.clone()];
    let mut next = p.derivative();
    while !next.is_zero() {
        let r = chain.last().unwrap().div_rem(&next).1;
        chain.push(next);
        next = -&r;
    }
    chain
}

fn sign_variations(chain: &[RatPolynomial], x: &Rational) -> usize {
    let signs: Vec<bool> = chain
        .iter()
        .map(|q| q.eval(x))
        .filter(|v| !v.is_zero())
        .map(|v| v.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots of `p` in `(lo, hi]`.
pub fn sturm_count(p: &RatPolynomial, lo: &Rational, hi: &Rational) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if lo > hi {
        return Err(Error::InvalidInterval {
            lo: lo.clone(),
            hi: hi.clone(),
        });
    }
    let chain = sturm_chain(&p.squarefree_part());
    Ok(sign_variations(&chain, lo) - sign_variations(&chain, hi))
}

struct Factor {
    poly: RatPolynomial,
    chain: Vec<RatPolynomial>,
    multiplicity: usize,
    lower: Rational,
}

/// Eigenvalue counts with multiplicity, precomputed from the characteristic
/// polynomial so that repeated probes are cheap.
pub struct OracleCounter {
    n: usize,
    char_poly: RatPolynomial,
    factors: Vec<Factor>,
}

impl OracleCounter {
    pub fn new<S: Scalar>(a: &SymMatrix<S>) -> Result<Self> {
        Self::with_limit(a, DEFAULT_ORACLE_LIMIT)
    }

    pub fn with_limit<S: Scalar>(a: &SymMatrix<S>, limit: usize) -> Result<Self> {
        let char_poly = char_poly_with_limit(a, limit)?;
        Ok(Self::from_char_poly(a.n(), char_poly))
    }

    fn from_char_poly(n: usize, char_poly: RatPolynomial) -> Self {
        let factors = char_poly
            .squarefree_decomposition()
            .into_iter()
            .map(|(poly, multiplicity)| Factor {
                chain: sturm_chain(&poly),
                lower: -poly.cauchy_bound(),
                poly,
                multiplicity,
            })
            .collect();
        OracleCounter { n, char_poly, factors }
    }

    pub fn char_poly(&self) -> &RatPolynomial {
        &self.char_poly
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `(#eigenvalues < t, #eigenvalues = t)`, with multiplicity.
    pub fn count_below(&self, t: &Rational) -> (usize, usize) {
        self.factors.iter().fold((0, 0), |(below, at), f| {
            let root_at_t = f.poly.eval(t).is_zero();
            let le = if *t <= f.lower {
                0
            } else {
                sign_variations(&f.chain, &f.lower) - sign_variations(&f.chain, t)
            };
            let lt = le - usize::from(root_at_t);
            (
                below + f.multiplicity * lt,
                at + f.multiplicity * usize::from(root_at_t),
            )
        })
    }
}

/// Oracle counterpart of `spectral::eigen_count_below`.
pub fn oracle_count_below<S: Scalar>(a: &SymMatrix<S>, t: &Rational) -> Result<(usize, usize)> {
    Ok(OracleCounter::new(a)?.count_below(t))
}

pub fn oracle_count_below_with_limit<S: Scalar>(
    a: &SymMatrix<S>,
    t: &Rational,
    limit: usize,
) -> Result<(usize, usize)> {
    Ok(OracleCounter::with_limit(a, limit)?.count_below(t))
}
