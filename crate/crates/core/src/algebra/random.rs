//! Seeded random sampling of scalars, matrices and polynomials.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng as _;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::matrix::{LinearSubstitution, Matrix};
use super::poly::{monomials_of_degree, MultiPoly, Vars};
use super::ring::{Rationals, Ring, Q};

pub type Rng = ChaCha8Rng;

pub fn seeded(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A small rational `n/d` with `|n| <= bound`, `1 <= d <= bound`.
pub fn small_rational(rng: &mut Rng, bound: i64) -> BigRational {
    let n = rng.gen_range(-bound..=bound);
    let d = rng.gen_range(1..=bound);
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn small_int(rng: &mut Rng, bound: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(rng.gen_range(-bound..=bound)))
}

/// A random invertible `n x n` integer matrix.
pub fn invertible_matrix(rng: &mut Rng, n: usize, bound: i64) -> LinearSubstitution {
    loop {
        let rows = (0..n)
            .map(|_| (0..n).map(|_| small_int(rng, bound)).collect())
            .collect();
        let m = Matrix::from_rows(Q, rows).expect("square");
        if let Ok(s) = LinearSubstitution::new(m) {
            return s;
        }
    }
}

/// A random integer matrix of determinant one, as a product of elementary
/// shears and a random permutation-with-sign.
pub fn unimodular_matrix(rng: &mut Rng, n: usize, bound: i64) -> LinearSubstitution {
    let mut m = Matrix::identity(Q, n);
    for _ in 0..2 * n {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        if n > 1 {
            while j == i {
                j = rng.gen_range(0..n);
            }
        } else {
            break;
        }
        let c = small_int(rng, bound);
        let mut e = Matrix::identity(Q, n);
        e.set(i, j, c);
        m = m.mul(&e).expect("square");
    }
    LinearSubstitution::new(m).expect("determinant one")
}

/// Random homogeneous form of degree `d` in the variables `idx` of `vars`,
/// with small rational coefficients.
pub fn random_form(rng: &mut Rng, vars: &Vars, idx: &[usize], d: u32, bound: i64) -> MultiPoly {
    let terms = monomials_of_degree(idx.len(), d).into_iter().map(|m| {
        let mut e = vec![0u16; vars.len()];
        for (k, &i) in idx.iter().enumerate() {
            e[i] = m[k];
        }
        (e, small_rational(rng, bound))
    });
    MultiPoly::from_terms(Q, vars.clone(), terms)
}

/// A random nonzero vector of small integers.
pub fn nonzero_vector(rng: &mut Rng, n: usize, bound: i64) -> Vec<BigRational> {
    loop {
        let v: Vec<BigRational> = (0..n).map(|_| small_int(rng, bound)).collect();
        if v.iter().any(|x| !Rationals.is_zero(x)) {
            return v;
        }
    }
}
