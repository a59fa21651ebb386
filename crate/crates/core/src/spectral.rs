//! Eigenvalue localization by exact inertia counts.
//!
//! The number of eigenvalues below `t` is the negative index of inertia of
//! `A − t·I`, and the number equal to `t` is its nullity. Bisection on that
//! counting function brackets every eigenvalue; the least one is `μ(A)`,
//! the infimum of the Rayleigh quotient.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::congruence::{invert, pd_factor, CongruenceCertificate};
use crate::error::{Error, Result};
use crate::linalg::{norm_sq, quadratic_form, Matrix, MaxAbs, SymMatrix, Vector};
use crate::scalar::{Rational, Scalar};

/// `⟨v, A·v⟩ / ‖v‖²`.
pub fn rayleigh<S: Scalar>(a: &SymMatrix<S>, v: &Vector<S>) -> Result<Rational> {
    let q = quadratic_form(a, v)?;
    let nv = norm_sq(v);
    if nv.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(q / nv)
}

/// `Σ |a_ij|`, which bounds `|⟨v, A·v⟩|` whenever every `|v_i| ≤ 1`.
///
/// Gaussian entries contribute the upper bound `|Re| + |Im|`.
pub fn s_bound<S: Scalar>(a: &SymMatrix<S>) -> Rational {
    a.as_matrix().entries().map(Scalar::abs_upper).sum()
}

/// `R = n²·|A|∞`, so every eigenvalue lies in `[−R, R]`.
pub fn spectrum_bound<S: Scalar>(a: &SymMatrix<S>) -> Rational {
    let n = Rational::from_integer(a.n().into());
    let max = a
        .as_matrix()
        .entries()
        .map(Scalar::abs_upper)
        .max()
        .unwrap_or_else(Rational::zero);
    &n * &n * max
}

/// `(#eigenvalues < t, #eigenvalues = t)` counted with multiplicity.
pub fn eigen_count_below<S: Scalar>(a: &SymMatrix<S>, t: &Rational) -> (usize, usize) {
    let inertia = crate::congruence::inertia(&a.shifted(t));
    (inertia.n_minus, inertia.n_zero)
}

/// Number of eigenvalues in `(lo, hi]`.
pub fn count_in<S: Scalar>(a: &SymMatrix<S>, lo: &Rational, hi: &Rational) -> usize {
    let (bl, al) = eigen_count_below(a, lo);
    let (bh, ah) = eigen_count_below(a, hi);
    (bh + ah).saturating_sub(bl + al)
}

/// A rational interval holding `multiplicity` eigenvalues.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenBracket {
    #[serde(with = "crate::cli::document::rational_str")]
    pub lo: Rational,
    #[serde(with = "crate::cli::document::rational_str")]
    pub hi: Rational,
    pub multiplicity: usize,
    /// `lo = hi` is itself an eigenvalue of the stated multiplicity.
    pub exact: bool,
}

impl EigenBracket {
    fn exact(t: Rational, multiplicity: usize) -> Self {
        EigenBracket {
            lo: t.clone(),
            hi: t,
            multiplicity,
            exact: true,
        }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// Re-derives the multiplicity from inertia counts. Non-exact brackets
    /// must have endpoints that are not eigenvalues.
    pub fn verify<S: Scalar>(&self, a: &SymMatrix<S>) -> bool {
        if self.lo > self.hi || self.multiplicity == 0 {
            return false;
        }
        if self.exact {
            return self.lo == self.hi && eigen_count_below(a, &self.lo).1 == self.multiplicity;
        }
        let (bl, al) = eigen_count_below(a, &self.lo);
        let (bh, ah) = eigen_count_below(a, &self.hi);
        al == 0 && ah == 0 && self.lo < self.hi && bh.checked_sub(bl) == Some(self.multiplicity)
    }
}

/// A certified lower bound `gamma > 0` on `⟨v, B·v⟩ / ‖v‖²`.
///
/// With `B = P^H·D·P`, `⟨v, B·v⟩ = Σ d_i·|(P·v)_i|² ≥ min(d)·‖P·v‖²`, and
/// `‖v‖ ≤ n^{3/2}·|P⁻¹|∞·‖P·v‖`, giving `gamma = min(d) / (n³·|P⁻¹|∞²)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapCertificate<S> {
    pub cert: CongruenceCertificate<S>,
    pub p_inv: Matrix<S>,
    /// `|P⁻¹|∞²` (maximum squared modulus of the entries of `P⁻¹`).
    pub p_inv_max_sq: Rational,
    pub gamma: Rational,
}

pub fn gap_gamma(n: usize, d: &[Rational], p_inv_max_sq: &Rational) -> Option<Rational> {
    let min_d = d.iter().min()?;
    let n = Rational::from_integer(n.into());
    let denom = &n * &n * &n * p_inv_max_sq;
    if denom.is_zero() {
        return None;
    }
    Some(min_d / denom)
}

pub fn positivity_gap<S: Scalar>(b: &SymMatrix<S>) -> Result<GapCertificate<S>> {
    let cert = pd_factor(b)?;
    let p_inv = invert(cert.p())?;
    let p_inv_max_sq = p_inv.max_abs_sq();
    let gamma = gap_gamma(b.n(), cert.d(), &p_inv_max_sq).ok_or(Error::SingularMatrix)?;
    Ok(GapCertificate {
        cert,
        p_inv,
        p_inv_max_sq,
        gamma,
    })
}

#[derive(Clone, Debug)]
struct Probe {
    t: Rational,
    below: usize,
    at: usize,
}

impl Probe {
    fn new<S: Scalar>(a: &SymMatrix<S>, t: Rational) -> Self {
        let (below, at) = eigen_count_below(a, &t);
        Probe { t, below, at }
    }

    /// Eigenvalues strictly between `self` and `hi`.
    fn inner_count(&self, hi: &Probe) -> usize {
        hi.below - self.below - self.at
    }
}

fn midpoint(lo: &Rational, hi: &Rational) -> Rational {
    (lo + hi) / Rational::from_integer(2.into())
}

fn check_eps(eps: &Rational) -> Result<()> {
    if eps.is_positive() {
        Ok(())
    } else {
        Err(Error::InvalidPrecision(eps.clone()))
    }
}

/// Brackets every eigenvalue, ascending, with widths `≤ eps` unless exact.
pub fn bisect_spectrum<S: Scalar>(a: &SymMatrix<S>, eps: &Rational) -> Result<Vec<EigenBracket>> {
    bisect_spectrum_with(a, eps, false)
}

/// As [`bisect_spectrum`]; `parallel` refines disjoint sub-intervals on the
/// rayon pool. The output is identical either way.
pub fn bisect_spectrum_with<S: Scalar>(a: &SymMatrix<S>, eps: &Rational, parallel: bool) -> Result<Vec<EigenBracket>> {
    check_eps(eps)?;
    let r = spectrum_bound(a);
    let lo = Probe::new(a, -r.clone());
    let mut out = Vec::new();
    if lo.at > 0 {
        out.push(EigenBracket::exact(lo.t.clone(), lo.at));
    }
    if r.is_zero() {
        return Ok(out);
    }
    let hi = Probe::new(a, r);
    let k = lo.inner_count(&hi);
    out.extend(refine_all(a, lo, hi.clone(), k, eps, parallel));
    if hi.at > 0 {
        out.push(EigenBracket::exact(hi.t, hi.at));
    }
    Ok(out)
}

fn refine_all<S: Scalar>(
    a: &SymMatrix<S>,
    lo: Probe,
    hi: Probe,
    k: usize,
    eps: &Rational,
    parallel: bool,
) -> Vec<EigenBracket> {
    if k == 0 {
        return Vec::new();
    }
    if lo.at == 0 && hi.at == 0 && &hi.t - &lo.t <= *eps {
        return vec![EigenBracket {
            lo: lo.t,
            hi: hi.t,
            multiplicity: k,
            exact: false,
        }];
    }
    let mid = Probe::new(a, midpoint(&lo.t, &hi.t));
    let left_k = lo.inner_count(&mid);
    let right_k = mid.inner_count(&hi);
    let exact = (mid.at > 0).then(|| EigenBracket::exact(mid.t.clone(), mid.at));
    let (mut left, right) = if parallel && left_k > 0 && right_k > 0 {
        rayon::join(
            || refine_all(a, lo, mid.clone(), left_k, eps, parallel),
            || refine_all(a, mid.clone(), hi, right_k, eps, parallel),
        )
    } else {
        (
            refine_all(a, lo, mid.clone(), left_k, eps, parallel),
            refine_all(a, mid.clone(), hi, right_k, eps, parallel),
        )
    };
    left.extend(exact);
    left.extend(right);
    left
}

/// Bracket of the least eigenvalue `μ(A)`: the first bracket of
/// [`bisect_spectrum`], found without refining the others.
///
/// Since `μ(A) ≥ lo`, the returned `lo` satisfies `⟨v, A·v⟩ ≥ lo·‖v‖²` for
/// every `v`.
pub fn mu_bracket<S: Scalar>(a: &SymMatrix<S>, eps: &Rational) -> Result<EigenBracket> {
    check_eps(eps)?;
    let r = spectrum_bound(a);
    let mut lo = Probe::new(a, -r.clone());
    if lo.at > 0 {
        return Ok(EigenBracket::exact(lo.t, lo.at));
    }
    let mut hi = Probe::new(a, r);
    let mut k = lo.inner_count(&hi);
    if k == 0 {
        return Ok(EigenBracket::exact(hi.t, hi.at));
    }
    loop {
        if hi.at == 0 && &hi.t - &lo.t <= *eps {
            return Ok(EigenBracket {
                lo: lo.t,
                hi: hi.t,
                multiplicity: k,
                exact: false,
            });
        }
        let mid = Probe::new(a, midpoint(&lo.t, &hi.t));
        let left_k = lo.inner_count(&mid);
        if left_k > 0 {
            k = left_k;
            hi = mid;
        } else if mid.at > 0 {
            return Ok(EigenBracket::exact(mid.t, mid.at));
        } else {
            k = mid.inner_count(&hi);
            lo = mid;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rational};

    fn sym(rows: &[&[i64]]) -> SymMatrix<Rational> {
        SymMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()).unwrap()
    }

    fn rv(xs: &[i64]) -> Vector<Rational> {
        Vector::new(xs.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn rayleigh_examples() {
        let a = sym(&[&[2, 1], &[1, 2]]);
        assert_eq!(rayleigh(&a, &rv(&[1, 1])).unwrap(), int(3));
        assert_eq!(rayleigh(&a, &rv(&[1, -1])).unwrap(), int(1));
        assert_eq!(rayleigh(&SymMatrix::identity(3), &rv(&[2, -7, 1])).unwrap(), int(1));
        assert_eq!(rayleigh(&a, &rv(&[0, 0])), Err(Error::ZeroVector));
    }

    #[test]
    fn s_bound_examples() {
        let a = sym(&[&[2, 1], &[1, 2]]);
        assert_eq!(s_bound(&a), int(6));
        assert_eq!(s_bound(&SymMatrix::<Rational>::zeros(2)), int(0));
        assert!(quadratic_form(&a, &rv(&[1, 0])).unwrap().abs() <= s_bound(&a));
    }

    #[test]
    fn gap_examples() {
        let g = positivity_gap(&sym(&[&[2, 1], &[1, 2]])).unwrap();
        assert_eq!(g.p_inv_max_sq, int(1));
        assert_eq!(g.gamma, rational(3, 16));
        let g = positivity_gap(&SymMatrix::<Rational>::identity(2)).unwrap();
        assert_eq!(g.gamma, rational(1, 8));
        assert!(matches!(
            positivity_gap(&sym(&[&[1, 1], &[1, 1]])),
            Err(Error::NotPositiveDefinite(_))
        ));
    }

    #[test]
    fn count_below_examples() {
        let a = sym(&[&[2, 1], &[1, 2]]);
        assert_eq!(eigen_count_below(&a, &int(2)), (1, 0));
        assert_eq!(eigen_count_below(&a, &int(1)), (0, 1));
        assert_eq!(eigen_count_below(&SymMatrix::<Rational>::zeros(3), &int(0)), (0, 3));
    }

    #[test]
    fn spectrum_bound_examples() {
        let a = sym(&[&[2, 1], &[1, 2]]);
        assert_eq!(spectrum_bound(&a), int(8));
        assert_eq!(eigen_count_below(&a, &int(-8)), (0, 0));
        assert_eq!(spectrum_bound(&SymMatrix::<Rational>::zeros(4)), int(0));
        assert_eq!(spectrum_bound(&SymMatrix::<Rational>::identity(3)), int(9));
    }

    #[test]
    fn bisect_one_by_one_is_exact() {
        for eps in [rational(1, 1000), int(1), int(100)] {
            let b = bisect_spectrum(&sym(&[&[7]]), &eps).unwrap();
            assert_eq!(b, vec![EigenBracket::exact(int(7), 1)]);
        }
    }

    #[test]
    fn bisect_two_by_two() {
        let a = sym(&[&[2, 1], &[1, 2]]);
        let b = bisect_spectrum(&a, &rational(1, 4)).unwrap();
        assert_eq!(b.len(), 2);
        assert!(b[0].contains(&int(1)) && b[1].contains(&int(3)));
        assert!(b
            .iter()
            .all(|x| x.multiplicity == 1 && (x.exact || x.width() <= rational(1, 4))));
        assert!(b.iter().all(|x| x.verify(&a)));

        let swap = sym(&[&[0, 1], &[1, 0]]);
        let b = bisect_spectrum(&swap, &rational(1, 2)).unwrap();
        assert_eq!(b.len(), 2);
        assert!(b[0].contains(&int(-1)) && b[1].contains(&int(1)));
    }

    #[test]
    fn bisect_rejects_bad_eps() {
        let a = sym(&[&[1]]);
        assert_eq!(bisect_spectrum(&a, &int(0)), Err(Error::InvalidPrecision(int(0))));
        assert_eq!(mu_bracket(&a, &int(-1)), Err(Error::InvalidPrecision(int(-1))));
    }

    #[test]
    fn eigenvalue_on_the_bound_is_not_an_endpoint() {
        // eigenvalues -4 (R = 4·|A|∞ is larger) and a cluster near the bound
        let a = SymMatrix::<Rational>::diagonal(&[int(-2), int(2), rational(15, 8)]);
        for eps in [rational(1, 64), int(1), int(50)] {
            let b = bisect_spectrum(&a, &eps).unwrap();
            assert_eq!(b.iter().map(|x| x.multiplicity).sum::<usize>(), 3);
            assert!(b.iter().all(|x| x.verify(&a)), "{b:?}");
            assert!(b.windows(2).all(|w| w[0].hi < w[1].lo));
        }
    }

    #[test]
    fn parallel_matches_sequential() {
        let a = sym(&[&[4, 1, 0, 2], &[1, -3, 1, 0], &[0, 1, 0, 1], &[2, 0, 1, 5]]);
        let eps = rational(1, 1 << 12);
        assert_eq!(
            bisect_spectrum_with(&a, &eps, true).unwrap(),
            bisect_spectrum(&a, &eps).unwrap()
        );
    }

    #[test]
    fn mu_examples() {
        let eps = rational(1, 8);
        let m = mu_bracket(&sym(&[&[2, 1], &[1, 2]]), &eps).unwrap();
        assert!(m.contains(&int(1)) && (m.exact || m.width() <= eps));
        assert_eq!(
            mu_bracket(&SymMatrix::<Rational>::zeros(2), &eps).unwrap(),
            EigenBracket::exact(int(0), 2)
        );
        let m = mu_bracket(&sym(&[&[1, 2], &[2, 1]]), &eps).unwrap();
        assert!(m.contains(&int(-1)));
    }

    #[test]
    fn mu_is_first_spectrum_bracket() {
        for a in [
            sym(&[&[2, 1], &[1, 2]]),
            sym(&[&[0, 3, 1], &[3, 1, 0], &[1, 0, -2]]),
            sym(&[&[5, 0], &[0, 5]]),
            sym(&[&[-3]]),
        ] {
            let eps = rational(1, 100);
            assert_eq!(mu_bracket(&a, &eps).unwrap(), bisect_spectrum(&a, &eps).unwrap()[0]);
        }
    }
}
