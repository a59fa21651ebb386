#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::Rng;
use spectra_cert::linalg::{Matrix, SymMatrix, Vector};
use spectra_cert::scalar::{gaussian, int, rational, GaussianRational, Rational};

/// Numerator in `[-20, 20]`, denominator in `[1, 10]`.
pub fn rand_rational(rng: &mut StdRng) -> Rational {
    rational(rng.gen_range(-20..=20), rng.gen_range(1..=10))
}

pub fn rand_small_rational(rng: &mut StdRng) -> Rational {
    rational(rng.gen_range(-6..=6), rng.gen_range(1..=4))
}

pub fn rand_gaussian(rng: &mut StdRng) -> GaussianRational {
    gaussian(rand_small_rational(rng), rand_small_rational(rng))
}

pub fn rand_sym(rng: &mut StdRng, n: usize) -> SymMatrix<Rational> {
    rand_sym_with(rng, n, rand_rational)
}

pub fn rand_sym_with(rng: &mut StdRng, n: usize, mut f: impl FnMut(&mut StdRng) -> Rational) -> SymMatrix<Rational> {
    let mut m = Matrix::<Rational>::zeros(n);
    for i in 0..n {
        for j in i..n {
            let x = f(rng);
            m[(i, j)] = x.clone();
            m[(j, i)] = x;
        }
    }
    SymMatrix::new(m).unwrap()
}

/// Random symmetric matrix that sometimes has repeated or zero structure:
/// a fraction of entries are forced to zero and some diagonals are copied.
pub fn rand_structured_sym(rng: &mut StdRng, n: usize) -> SymMatrix<Rational> {
    let zero_p = rng.gen_range(0.0..0.7);
    rand_sym_with(rng, n, |r| {
        if r.gen_bool(zero_p) {
            int(0)
        } else {
            rand_small_rational(r)
        }
    })
}

pub fn rand_hermitian(rng: &mut StdRng, n: usize) -> SymMatrix<GaussianRational> {
    let mut m = Matrix::<GaussianRational>::zeros(n);
    for i in 0..n {
        m[(i, i)] = gaussian(rand_small_rational(rng), int(0));
        for j in i + 1..n {
            let z = rand_gaussian(rng);
            m[(j, i)] = gaussian(z.re.clone(), -z.im.clone());
            m[(i, j)] = z;
        }
    }
    SymMatrix::new(m).unwrap()
}

pub fn rand_vec(rng: &mut StdRng, n: usize) -> Vector<Rational> {
    Vector::new((0..n).map(|_| rand_rational(rng)).collect())
}

pub fn rand_nonzero_vec(rng: &mut StdRng, n: usize) -> Vector<Rational> {
    loop {
        let v = rand_vec(rng, n);
        if !v.is_zero() {
            return v;
        }
    }
}

pub fn rand_gaussian_vec(rng: &mut StdRng, n: usize) -> Vector<GaussianRational> {
    loop {
        let v = Vector::new((0..n).map(|_| rand_gaussian(rng)).collect());
        if !v.is_zero() {
            return v;
        }
    }
}

/// `ᵗM·M + I` for a random square `M`: positive definite.
pub fn rand_pd(rng: &mut StdRng, n: usize) -> SymMatrix<Rational> {
    let mut m = Matrix::<Rational>::zeros(n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = rand_small_rational(rng);
        }
    }
    let mut b = m.conj_transpose().mul(&m).unwrap();
    for i in 0..n {
        b[(i, i)] = b[(i, i)].clone() + int(1);
    }
    SymMatrix::new(b).unwrap()
}

/// Every symmetric `n×n` matrix with entries drawn from `values`.
pub fn all_symmetric(n: usize, values: &[i64]) -> Vec<SymMatrix<Rational>> {
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let total = values.len().pow(slots.len() as u32);
    (0..total)
        .map(|mut code| {
            let mut m = Matrix::<Rational>::zeros(n);
            for &(i, j) in &slots {
                let x = int(values[code % values.len()]);
                code /= values.len();
                m[(i, j)] = x.clone();
                m[(j, i)] = x;
            }
            SymMatrix::new(m).unwrap()
        })
        .collect()
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..=p.len() {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}
