//! Exact scalar fields.
//!
//! Everything downstream is written once against [`Scalar`], which has two
//! instances: [`Rational`] for real symmetric matrices and
//! [`GaussianRational`] for Hermitian ones. Both are closed under the field
//! operations, and `|x|²` is always a [`Rational`].

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, Zero};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Complex number with rational real and imaginary parts.
pub type GaussianRational = Complex<Rational>;

/// Builds `num/den` from machine integers. Panics if `den == 0`.
pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds the integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Builds `re + im·i`.
pub fn gaussian(re: Rational, im: Rational) -> GaussianRational {
    Complex::new(re, im)
}

/// An exact field with an involutive conjugation whose fixed points are the
/// rationals.
pub trait Scalar: Clone + Debug + PartialEq + Eq + Num + Neg<Output = Self> + Send + Sync + 'static {
    /// `true` for the Gaussian rationals.
    const HERMITIAN: bool;

    fn conj(&self) -> Self;

    /// `|x|²`, always a nonnegative rational.
    fn modulus_sq(&self) -> Rational;

    /// A rational upper bound on `|x|`; exact for [`Rational`].
    fn abs_upper(&self) -> Rational;

    fn real_part(&self) -> Rational;

    fn imag_part(&self) -> Rational;

    fn from_rational(r: Rational) -> Self;

    /// Multipliers `s` tried, in order, by the zero-diagonal repair step
    /// `col_i += s·col_j`, which puts `2·Re(s·a_ij)` on the diagonal.
    fn repair_multipliers() -> Vec<Self>;

    /// Least common multiple of every denominator appearing in `x`.
    fn denom_lcm(&self) -> BigInt;

    fn is_real(&self) -> bool {
        self.imag_part().is_zero()
    }

    /// The entry measure used by `|·|∞`: `|x|` for rationals and `|x|²` for
    /// Gaussian rationals, whose modulus is generally irrational.
    fn abs_measure(&self) -> Rational {
        if Self::HERMITIAN {
            self.modulus_sq()
        } else {
            self.abs_upper()
        }
    }
}

impl Scalar for Rational {
    const HERMITIAN: bool = false;

    fn conj(&self) -> Self {
        self.clone()
    }

    fn modulus_sq(&self) -> Rational {
        self * self
    }

    fn abs_upper(&self) -> Rational {
        self.abs()
    }

    fn real_part(&self) -> Rational {
        self.clone()
    }

    fn imag_part(&self) -> Rational {
        Rational::zero()
    }

    fn from_rational(r: Rational) -> Self {
        r
    }

    fn repair_multipliers() -> Vec<Self> {
        vec![Rational::one()]
    }

    fn denom_lcm(&self) -> BigInt {
        self.denom().clone()
    }
}

impl Scalar for GaussianRational {
    const HERMITIAN: bool = true;

    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn modulus_sq(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    // |a + bi| ≤ |a| + |b|
    fn abs_upper(&self) -> Rational {
        self.re.abs() + self.im.abs()
    }

    fn real_part(&self) -> Rational {
        self.re.clone()
    }

    fn imag_part(&self) -> Rational {
        self.im.clone()
    }

    fn from_rational(r: Rational) -> Self {
        Complex::new(r, Rational::zero())
    }

    // s = 1 yields 2·Re(a_ij); s = -i yields 2·Im(a_ij).
    fn repair_multipliers() -> Vec<Self> {
        vec![
            Complex::new(Rational::one(), Rational::zero()),
            Complex::new(Rational::zero(), -Rational::one()),
        ]
    }

    fn denom_lcm(&self) -> BigInt {
        self.re.denom().lcm(self.im.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let r = rational(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        let z = rational(0, 7);
        assert_eq!(z.denom(), &BigInt::from(1));
    }

    #[test]
    fn gaussian_modulus_and_conj() {
        let z = gaussian(int(3), int(-4));
        assert_eq!(z.modulus_sq(), int(25));
        assert_eq!(Scalar::conj(&z), gaussian(int(3), int(4)));
        assert_eq!(z.abs_upper(), int(7));
        assert_eq!(z.abs_measure(), int(25));
        assert_eq!(int(-5).abs_measure(), int(5));
    }

    #[test]
    fn repair_multiplier_reaches_imaginary_part() {
        let a = gaussian(int(0), int(3));
        let s = &GaussianRational::repair_multipliers()[1];
        assert_eq!((s * &a).re * int(2), int(6));
    }

    #[test]
    fn denominators() {
        let z = gaussian(rational(1, 4), rational(5, 6));
        assert_eq!(z.denom_lcm(), BigInt::from(12));
    }
}
