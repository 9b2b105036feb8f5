#![allow(dead_code)]

use defcoh_core::{Field, Matrix, Scalar, TwoVectorSpace};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(rng: &mut ChaCha8Rng, field: Field, rows: usize, cols: usize, lo: i64, hi: i64) -> Matrix {
    Matrix::from_fn(field, rows, cols, |_, _| field.from_i64(rng.gen_range(lo..=hi)))
}

/// `∂` with `1 ≤ dim C, dim V0 ≤ max_dim` and entries in `−2..=2`.
pub fn random_two_vector(rng: &mut ChaCha8Rng, max_dim: usize) -> TwoVectorSpace {
    let c = rng.gen_range(1..=max_dim);
    let v = rng.gen_range(1..=max_dim);
    TwoVectorSpace::new(random_matrix(rng, Field::RATIONAL, v, c, -2, 2))
}

/// A random `rows × cols` rational matrix of exactly the given rank.
pub fn random_of_rank(rng: &mut ChaCha8Rng, rows: usize, cols: usize, rank: usize) -> Matrix {
    let q = Field::RATIONAL;
    loop {
        let a = random_matrix(rng, q, rows, rank, -2, 2);
        let b = random_matrix(rng, q, rank, cols, -2, 2);
        let m = a.mul(&b);
        if defcoh_core::linalg::rank(&m) == rank {
            return m;
        }
    }
}

pub fn scalars(field: Field, xs: &[i64]) -> Vec<Scalar> {
    xs.iter().map(|&x| field.from_i64(x)).collect()
}
