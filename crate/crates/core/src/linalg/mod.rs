//! Exact linear algebra over the rationals.

pub mod matrix;
pub mod poly;
pub mod rational;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use matrix::Matrix;
pub use rational::{format_rational, frac, parse_rational, q, Rational};

use crate::error::{Error, Result};

/// Seed used when a caller does not thread its own.
pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// Half-width of the integer range random coefficients are drawn from.
pub const COEFF_RANGE: i64 = 1 << 20;

const RANDOM_TRIALS: usize = 3;

pub fn mat_solve(a: &Matrix, b: &Matrix) -> Result<Option<Matrix>> {
    if a.rows() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "solve: a has {} rows, b has {}",
            a.rows(),
            b.rows()
        )));
    }
    Ok(a.solve(b))
}

pub fn mat_kernel(a: &Matrix) -> Matrix {
    a.kernel()
}

/// Whether some linear combination of `space` is invertible.
pub fn generic_invertibility(space: &[Matrix]) -> Result<bool> {
    let blocks: Vec<Vec<Matrix>> = space.iter().map(|m| vec![m.clone()]).collect();
    let n = check_square_space(&blocks)?;
    if n.is_empty() {
        return Ok(false);
    }
    Ok(block_invertible_combination(&blocks, DEFAULT_SEED)?.is_some())
}

fn check_square_space(space: &[Vec<Matrix>]) -> Result<Vec<usize>> {
    let Some(first) = space.first() else {
        return Ok(Vec::new());
    };
    let sizes: Vec<usize> = first.iter().map(Matrix::rows).collect();
    for elem in space {
        if elem.len() != sizes.len() {
            return Err(Error::DimensionMismatch("block counts differ".into()));
        }
        for (m, &n) in elem.iter().zip(&sizes) {
            if !m.is_square() {
                return Err(Error::NonSquare("invertibility space".into()));
            }
            if m.rows() != n {
                return Err(Error::DimensionMismatch("block sizes differ".into()));
            }
        }
    }
    Ok(sizes)
}

/// Coefficients `c` such that `sum_i c_i * space[i]` is invertible, where
/// every element of `space` is block diagonal with blocks `space[i][v]`.
///
/// A block-diagonal combination is invertible iff every block is, and a
/// product of nonzero polynomials is nonzero, so each block space is
/// certified on its own. Returns `None` iff no combination is invertible.
/// An empty family yields `None`; callers treat zero objects separately.
pub fn block_invertible_combination(
    space: &[Vec<Matrix>],
    seed: u64,
) -> Result<Option<Vec<Rational>>> {
    let sizes = check_square_space(space)?;
    let k = space.len();
    if k == 0 {
        return Ok(None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| -> Vec<Rational> {
        (0..k)
            .map(|_| q(rng.gen_range(-COEFF_RANGE..=COEFF_RANGE)))
            .collect()
    };
    let failing = |c: &[Rational]| -> Vec<usize> {
        (0..sizes.len())
            .filter(|&v| sizes[v] > 0 && combine(space, v, c).determinant().is_zero())
            .collect()
    };
    let mut last = Vec::new();
    for _ in 0..RANDOM_TRIALS {
        let c = draw(&mut rng);
        last = failing(&c);
        if last.is_empty() {
            return Ok(Some(c));
        }
    }
    for &v in &last {
        let block: Vec<Matrix> = space.iter().map(|e| e[v].clone()).collect();
        if poly::symbolic_determinant(&block).is_zero() {
            return Ok(None);
        }
    }
    // Every block determinant is a nonzero polynomial, so the product is
    // too and random points hit its complement almost surely.
    loop {
        let c = draw(&mut rng);
        if failing(&c).is_empty() {
            return Ok(Some(c));
        }
    }
}

fn combine(space: &[Vec<Matrix>], v: usize, c: &[Rational]) -> Matrix {
    let n = space[0][v].rows();
    let mut m = Matrix::zeros(n, n);
    for (e, ci) in space.iter().zip(c) {
        m.add_scaled(ci, &e[v]);
    }
    m
}

/// Coefficients expressing `target` in the span of `basis` (all of equal
/// shape), or `None` if it is not in the span.
pub fn solve_in_span(basis: &[Matrix], target: &Matrix) -> Option<Vec<Rational>> {
    let len = target.rows() * target.cols();
    let cols: Vec<Vec<Rational>> = basis.iter().map(|m| m.data().to_vec()).collect();
    let a = Matrix::from_columns(len, &cols);
    let b = Matrix::new(len, 1, target.data().to_vec());
    a.solve(&b).map(|x| x.column(0))
}

/// Indices of a maximal linearly independent subfamily.
pub fn independent_subset(vectors: &[Vec<Rational>], len: usize) -> Vec<usize> {
    if vectors.is_empty() {
        return Vec::new();
    }
    Matrix::from_columns(len, vectors).rref().1
}
