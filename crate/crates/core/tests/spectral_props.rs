mod common;

use common::*;
use num_traits::Signed;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use spectra_cert::linalg::{norm_sq, quadratic_form, MaxAbs, SymMatrix};
use spectra_cert::oracle::OracleCounter;
use spectra_cert::scalar::{int, rational, Rational};
use spectra_cert::spectral::{
    bisect_spectrum, eigen_count_below, mu_bracket, positivity_gap, rayleigh, s_bound, spectrum_bound,
};

#[test]
fn counting_is_monotone() {
    let mut rng = StdRng::seed_from_u64(21);
    for _ in 0..60 {
        let n = rng.gen_range(1..=5);
        let a = rand_structured_sym(&mut rng, n);
        let mut ts: Vec<Rational> = (0..8).map(|_| rand_rational(&mut rng)).collect();
        ts.sort();
        let counts: Vec<(usize, usize)> = ts.iter().map(|t| eigen_count_below(&a, t)).collect();
        for w in counts.windows(2) {
            assert!(w[0].0 <= w[1].0);
        }
        for (below, at) in counts {
            assert!(below + at <= n);
        }
    }
}

#[test]
fn counting_is_shift_coherent() {
    let mut rng = StdRng::seed_from_u64(22);
    for _ in 0..60 {
        let n = rng.gen_range(1..=5);
        let a = rand_structured_sym(&mut rng, n);
        let c = rand_rational(&mut rng);
        let shifted = a.shifted(&-c.clone());
        for _ in 0..5 {
            let t = rand_rational(&mut rng);
            assert_eq!(eigen_count_below(&shifted, &(&t + &c)), eigen_count_below(&a, &t));
        }
    }
}

#[test]
fn rayleigh_scale_invariance() {
    let mut rng = StdRng::seed_from_u64(23);
    for _ in 0..200 {
        let n = rng.gen_range(1..=5);
        let a = rand_sym(&mut rng, n);
        let v = rand_nonzero_vec(&mut rng, n);
        let c = loop {
            let c = rand_rational(&mut rng);
            if c != int(0) {
                break c;
            }
        };
        assert_eq!(rayleigh(&a, &v.scale(&c)).unwrap(), rayleigh(&a, &v).unwrap());
    }
}

#[test]
fn s_bound_contracts() {
    let mut rng = StdRng::seed_from_u64(24);
    for _ in 0..200 {
        let n = rng.gen_range(1..=5);
        let a = rand_sym(&mut rng, n);
        let s = s_bound(&a);
        let v = rand_nonzero_vec(&mut rng, n);
        let nn = Rational::from_integer(n.into());
        assert!(rayleigh(&a, &v).unwrap().abs() <= &nn * &s);
        // rescale so that every |v_i| ≤ 1
        let unit = v.scale(&(Rational::from_integer(1.into()) / v.max_abs()));
        assert!(quadratic_form(&a, &unit).unwrap().abs() <= s);
    }
}

#[test]
fn spectrum_bound_encloses_everything() {
    let mut rng = StdRng::seed_from_u64(25);
    for _ in 0..100 {
        let n = rng.gen_range(1..=6);
        let a = rand_sym(&mut rng, n);
        let r = spectrum_bound(&a);
        let (below, _) = eigen_count_below(&a, &-r.clone());
        assert_eq!(below, 0);
        let (below, at) = eigen_count_below(&a, &r);
        assert_eq!(below + at, n);
    }
}

#[test]
fn spectrum_brackets_are_sound() {
    let mut rng = StdRng::seed_from_u64(26);
    for k in 0..80 {
        let n = rng.gen_range(1..=5);
        let a = if k % 2 == 0 {
            rand_sym(&mut rng, n)
        } else {
            rand_structured_sym(&mut rng, n)
        };
        let eps = rational(1, 1 << rng.gen_range(0..12));
        let brackets = bisect_spectrum(&a, &eps).unwrap();
        assert_eq!(brackets.iter().map(|b| b.multiplicity).sum::<usize>(), n);
        for b in &brackets {
            assert!(b.verify(&a));
            assert!(b.exact || b.width() <= eps);
        }
        for w in brackets.windows(2) {
            assert!(w[0].hi <= w[1].lo);
            if w[0].exact || w[1].exact {
                assert!(w[0].hi < w[1].lo);
            }
        }
        assert_eq!(brackets, bisect_spectrum(&a, &eps).unwrap(), "deterministic");
    }
}

#[test]
fn spectrum_matches_oracle() {
    let mut rng = StdRng::seed_from_u64(27);
    for _ in 0..60 {
        let n = rng.gen_range(1..=5);
        let a = rand_structured_sym(&mut rng, n);
        let oracle = OracleCounter::new(&a).unwrap();
        for b in bisect_spectrum(&a, &rational(1, 64)).unwrap() {
            if b.exact {
                assert_eq!(oracle.count_below(&b.lo).1, b.multiplicity);
            } else {
                let (bl, al) = oracle.count_below(&b.lo);
                let (bh, ah) = oracle.count_below(&b.hi);
                assert_eq!((al, ah), (0, 0));
                assert_eq!(bh - bl, b.multiplicity);
            }
        }
    }
}

#[test]
fn mu_lower_endpoint_bounds_quadratic_form() {
    let mut rng = StdRng::seed_from_u64(28);
    for _ in 0..20 {
        let n = rng.gen_range(1..=5);
        let a = rand_sym(&mut rng, n);
        let mu = mu_bracket(&a, &rational(1, 256)).unwrap();
        // the least eigenvalue is inside: nothing below lo, something at or below hi
        assert_eq!(eigen_count_below(&a, &mu.lo).0, 0);
        let (below, at) = eigen_count_below(&a, &mu.hi);
        assert!(below + at >= 1);
        for _ in 0..200 {
            let v = rand_vec(&mut rng, n);
            assert!(quadratic_form(&a, &v).unwrap() >= &mu.lo * norm_sq(&v));
        }
    }
}

#[test]
fn gap_is_sound() {
    let mut rng = StdRng::seed_from_u64(29);
    for _ in 0..40 {
        let n = rng.gen_range(1..=5);
        let b = rand_pd(&mut rng, n);
        let g = positivity_gap(&b).unwrap();
        assert!(g.gamma.is_positive());
        for _ in 0..50 {
            let v = rand_vec(&mut rng, n);
            assert!(quadratic_form(&b, &v).unwrap() >= &g.gamma * norm_sq(&v));
        }
        assert!(g.gamma <= mu_bracket(&b, &rational(1, 64)).unwrap().hi);
    }
}

#[test]
fn hermitian_spectrum() {
    let mut rng = StdRng::seed_from_u64(30);
    for _ in 0..30 {
        let n = rng.gen_range(1..=4);
        let a = rand_hermitian(&mut rng, n);
        let brackets = bisect_spectrum(&a, &rational(1, 32)).unwrap();
        assert_eq!(brackets.iter().map(|b| b.multiplicity).sum::<usize>(), n);
        assert!(brackets.iter().all(|b| b.verify(&a)));
        let mu = mu_bracket(&a, &rational(1, 32)).unwrap();
        assert_eq!(mu, brackets[0]);
        for _ in 0..20 {
            let v = rand_gaussian_vec(&mut rng, n);
            assert!(quadratic_form(&a, &v).unwrap() >= &mu.lo * norm_sq(&v));
        }
    }
}

#[test]
fn repeated_eigenvalues_cluster() {
    // diag(1, 1, 1/3 + tiny) style clusters collapse into one bracket at coarse eps
    let a = SymMatrix::<Rational>::diagonal(&[rational(1, 3), rational(1, 3) + rational(1, 1 << 20), int(2)]);
    let brackets = bisect_spectrum(&a, &rational(1, 16)).unwrap();
    assert_eq!(brackets.iter().map(|b| b.multiplicity).collect::<Vec<_>>(), vec![2, 1]);
    assert!(!brackets[0].exact);
}
