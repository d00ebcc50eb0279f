//! Random exact test instances with a prescribed index.
//!
//! A matrix of index j is built as S diag(C, N) S^-1 with C a random
//! invertible block, N a nilpotent Jordan block of index j (padded with
//! zeros) and S a random integer unimodular matrix, so everything stays in
//! the rational field. Weights come as M*M + I (positive definite) or
//! M + M* re-rolled until invertible (hermitian, often indefinite).

use rand::Rng;

use crate::dense::Dense;
use crate::matrix::Matrix;
use crate::scalar::GaussianRational;
use crate::weight::{Tolerance, Weight};

fn small_entry(rng: &mut impl Rng, complex: bool) -> GaussianRational {
    let re = rng.gen_range(-2i64..=2);
    let im = if complex && rng.gen_bool(0.5) {
        rng.gen_range(-2i64..=2)
    } else {
        0
    };
    GaussianRational::from_parts_i64(re, 1, im, 1)
}

/// Random matrix with small Gaussian-integer entries.
pub fn small_matrix(rng: &mut impl Rng, rows: usize, cols: usize, complex: bool) -> Matrix {
    let data = (0..rows * cols)
        .map(|_| small_entry(rng, complex))
        .collect();
    Matrix::from_exact(Dense::new(rows, cols, data))
}

/// diag(A, B) for same-backend blocks.
pub fn block_diag(a: &Matrix, b: &Matrix) -> Matrix {
    let top = a.hstack(&Matrix::zeros(a.rows(), b.cols(), a.backend()));
    let bottom = Matrix::zeros(b.rows(), a.cols(), b.backend()).hstack(b);
    top.expect("same backend")
        .vstack(&bottom.expect("same backend"))
        .expect("column counts agree")
}

fn invertible_block(rng: &mut impl Rng, n: usize, complex: bool) -> Dense<GaussianRational> {
    loop {
        let data = (0..n * n).map(|_| small_entry(rng, complex)).collect();
        let c = Dense::new(n, n, data);
        if c.rank_by_elimination() == n {
            return c;
        }
    }
}

/// Random integer unimodular matrix and its (integer) inverse, built from
/// elementary row additions and swaps starting at the identity.
fn unimodular(rng: &mut impl Rng, n: usize) -> (Dense<GaussianRational>, Dense<GaussianRational>) {
    let mut s = Dense::<GaussianRational>::identity(n);
    if n > 1 {
        // unit multipliers keep the entries of S and S^-1 small, which
        // keeps the rational arithmetic downstream fast
        for _ in 0..n + 2 {
            let i = rng.gen_range(0..n);
            let mut k = rng.gen_range(0..n);
            while k == i {
                k = rng.gen_range(0..n);
            }
            let c = GaussianRational::from_i64(if rng.gen_bool(0.5) { 1 } else { -1 });
            for j in 0..n {
                let v = s.at(k, j).add(&c.mul(s.at(i, j)));
                *s.at_mut(k, j) = v;
            }
        }
    }
    let inv = s.inverse().expect("unimodular matrices are invertible");
    (s, inv)
}

/// Random exact n x n matrix with index exactly `index` (0 means
/// invertible; `index` = n means nilpotent of full index).
pub fn matrix_with_index(rng: &mut impl Rng, n: usize, index: usize) -> Matrix {
    assert!(index <= n, "index can be at most n");
    let r = if index == 0 {
        n
    } else {
        rng.gen_range(0..=n - index)
    };
    let mut d = Dense::<GaussianRational>::zeros(n, n);
    let c = invertible_block(rng, r, true);
    for i in 0..r {
        for j in 0..r {
            *d.at_mut(i, j) = c.at(i, j).clone();
        }
    }
    // Jordan nilpotent block of size `index` right below the invertible block
    for i in 0..index.saturating_sub(1) {
        *d.at_mut(r + i, r + i + 1) = GaussianRational::one();
    }
    let (s, s_inv) = unimodular(rng, n);
    Matrix::from_exact(s.mul(&d).mul(&s_inv))
}

/// Random positive definite exact weight M*M + I.
pub fn positive_definite_weight(rng: &mut impl Rng, n: usize) -> Weight {
    let m = small_matrix(rng, n, n, true);
    let mm = m
        .conj_transpose()
        .try_mul(&m)
        .expect("shapes agree")
        .try_add(&Matrix::identity(n, crate::scalar::Backend::Exact))
        .expect("shapes agree");
    Weight::new(mm, &Tolerance::exact()).expect("M*M + I is hermitian positive definite")
}

/// Random hermitian invertible exact weight, not positive definite in
/// general.
pub fn hermitian_weight(rng: &mut impl Rng, n: usize) -> Weight {
    let tol = Tolerance::exact();
    loop {
        let m = small_matrix(rng, n, n, true);
        let h = m.try_add(&m.conj_transpose()).expect("shapes agree");
        if h.rank(&tol) == n {
            return Weight::new(h, &tol).expect("hermitian invertible by construction");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn generated_index_is_exact() {
        let mut rng = StdRng::seed_from_u64(7);
        let tol = Tolerance::exact();
        for n in 2..=5 {
            for j in 0..=3.min(n) {
                let a = matrix_with_index(&mut rng, n, j);
                assert_eq!(a.index(&tol).unwrap(), j, "n={n} j={j}");
            }
        }
    }

    #[test]
    fn weights_validate() {
        let mut rng = StdRng::seed_from_u64(11);
        for n in 1..=4 {
            let pd = positive_definite_weight(&mut rng, n);
            assert!(pd.is_positive_definite());
            let h = hermitian_weight(&mut rng, n);
            assert!(h.matrix().is_hermitian(&Tolerance::exact()));
        }
    }
}
