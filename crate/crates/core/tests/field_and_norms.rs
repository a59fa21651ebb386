use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use proptest::prelude::*;
use spectra_cert::linalg::{
    check_dagger, inner_product, mat_vec, max_abs, norm_sq, quadratic_form, Matrix, SymMatrix, Vector,
};
use spectra_cert::scalar::{gaussian, rational, GaussianRational, Rational, Scalar};

fn rat() -> impl Strategy<Value = Rational> {
    (-60i64..=60, 1i64..=30).prop_map(|(n, d)| rational(n, d))
}

fn gauss() -> impl Strategy<Value = GaussianRational> {
    (rat(), rat()).prop_map(|(re, im)| gaussian(re, im))
}

fn canonical(r: &Rational) -> bool {
    r.denom() > &BigInt::zero() && r.numer().gcd(r.denom()) == BigInt::from(1)
}

fn sym_rational(n: usize) -> impl Strategy<Value = SymMatrix<Rational>> {
    prop::collection::vec(rat(), n * (n + 1) / 2).prop_map(move |upper| {
        let mut m = Matrix::zeros(n);
        let mut it = upper.into_iter();
        for i in 0..n {
            for j in i..n {
                let x = it.next().unwrap();
                m[(i, j)] = x.clone();
                m[(j, i)] = x;
            }
        }
        SymMatrix::new(m).unwrap()
    })
}

fn hermitian(n: usize) -> impl Strategy<Value = SymMatrix<GaussianRational>> {
    prop::collection::vec(gauss(), n * (n + 1) / 2).prop_map(move |upper| {
        let mut m = Matrix::zeros(n);
        let mut it = upper.into_iter();
        for i in 0..n {
            for j in i..n {
                let z = it.next().unwrap();
                if i == j {
                    m[(i, i)] = gaussian(z.re, Rational::zero());
                } else {
                    m[(j, i)] = Scalar::conj(&z);
                    m[(i, j)] = z;
                }
            }
        }
        SymMatrix::new(m).unwrap()
    })
}

fn sym_and_vec() -> impl Strategy<Value = (SymMatrix<Rational>, Vector<Rational>)> {
    (1usize..=5).prop_flat_map(|n| (sym_rational(n), prop::collection::vec(rat(), n).prop_map(Vector::new)))
}

fn herm_and_vec() -> impl Strategy<Value = (SymMatrix<GaussianRational>, Vector<GaussianRational>)> {
    (1usize..=4).prop_flat_map(|n| (hermitian(n), prop::collection::vec(gauss(), n).prop_map(Vector::new)))
}

proptest! {
    #[test]
    fn arithmetic_stays_canonical(a in rat(), b in rat(), c in rat()) {
        let results = [&a + &b, &a - &b, &a * &b, (&a + &b) * &c];
        prop_assert!(results.iter().all(canonical));
        if !b.is_zero() {
            prop_assert!(canonical(&(&a / &b)));
        }
    }

    #[test]
    fn field_axioms(a in rat(), b in rat(), c in rat()) {
        prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
    }

    #[test]
    fn gaussian_conjugation(z in gauss(), w in gauss()) {
        prop_assert_eq!(Scalar::conj(&Scalar::conj(&z)), z.clone());
        prop_assert_eq!(Scalar::conj(&(z.clone() * w.clone())), Scalar::conj(&z) * Scalar::conj(&w));
        prop_assert!(z.modulus_sq() >= Rational::zero());
        prop_assert_eq!((z.clone() * Scalar::conj(&z)).re, z.modulus_sq());
    }

    #[test]
    fn inner_product_symmetric(v in prop::collection::vec(rat(), 3), w in prop::collection::vec(rat(), 3)) {
        let (v, w) = (Vector::new(v), Vector::new(w));
        prop_assert_eq!(inner_product(&v, &w).unwrap(), inner_product(&w, &v).unwrap());
    }

    #[test]
    fn inner_product_conjugate_symmetric(v in prop::collection::vec(gauss(), 3), w in prop::collection::vec(gauss(), 3), c in gauss()) {
        let (v, w) = (Vector::new(v), Vector::new(w));
        prop_assert_eq!(inner_product(&v, &w).unwrap(), Scalar::conj(&inner_product(&w, &v).unwrap()));
        // linear in the second argument
        prop_assert_eq!(inner_product(&v, &w.scale(&c)).unwrap(), c * inner_product(&v, &w).unwrap());
    }

    #[test]
    fn norm_sq_zero_iff_zero(v in prop::collection::vec(gauss(), 1..5)) {
        let v = Vector::new(v);
        let n = norm_sq(&v);
        prop_assert!(n >= Rational::zero());
        prop_assert_eq!(n.is_zero(), v.is_zero());
    }

    #[test]
    fn hermitian_quadratic_form_is_real((a, v) in herm_and_vec()) {
        let av = mat_vec(&a, &v).unwrap();
        prop_assert!(inner_product(&v, &av).unwrap().im.is_zero());
    }

    #[test]
    fn dagger_rational((a, v) in sym_and_vec()) {
        prop_assert!(check_dagger(&a, &v).unwrap());
    }

    #[test]
    fn dagger_hermitian((a, v) in herm_and_vec()) {
        prop_assert!(check_dagger(&a, &v).unwrap());
    }

    #[test]
    fn euclidean_vs_sup_norm(v in prop::collection::vec(rat(), 1..7)) {
        let n = Rational::from_integer(v.len().into());
        let v = Vector::new(v);
        let m = max_abs(&v);
        prop_assert!(&m * &m <= norm_sq(&v));
        prop_assert!(norm_sq(&v) <= n * &m * &m);
    }

    #[test]
    fn sup_norm_of_product((a, w) in sym_and_vec()) {
        let n = Rational::from_integer(a.n().into());
        prop_assert!(max_abs(&mat_vec(&a, &w).unwrap()) <= n * max_abs(&a) * max_abs(&w));
    }

    #[test]
    fn quadratic_form_matches_inner_product((a, v) in sym_and_vec()) {
        let av = mat_vec(&a, &v).unwrap();
        prop_assert_eq!(quadratic_form(&a, &v).unwrap(), inner_product(&v, &av).unwrap());
    }
}
