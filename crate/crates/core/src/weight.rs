//! Validated weight matrices and tolerance settings.

use crate::dense::Dense;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Backend, Entry};

/// Cutoffs for rank decisions and axiom residuals. Both are zero on the
/// exact backend (decisions are exact) and strictly positive on the float
/// backend.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    /// Relative singular-value cutoff for numerical rank.
    pub rank_rel: f64,
    /// Relative Frobenius cutoff for axiom and solve residuals.
    pub residual_rel: f64,
}

impl Tolerance {
    pub const DEFAULT_RANK_REL: f64 = 1e-12;
    pub const DEFAULT_RESIDUAL_REL: f64 = 1e-9;

    pub fn exact() -> Self {
        Tolerance {
            rank_rel: 0.0,
            residual_rel: 0.0,
        }
    }

    pub fn float_default() -> Self {
        Tolerance {
            rank_rel: Self::DEFAULT_RANK_REL,
            residual_rel: Self::DEFAULT_RESIDUAL_REL,
        }
    }

    pub fn for_backend(backend: Backend) -> Self {
        match backend {
            Backend::Exact => Self::exact(),
            Backend::Float => Self::float_default(),
        }
    }

    pub fn with_residual(mut self, residual_rel: f64) -> Self {
        self.residual_rel = residual_rel;
        self
    }

    pub fn validate(&self, backend: Backend) -> Result<()> {
        let ok = match backend {
            Backend::Exact => self.rank_rel == 0.0 && self.residual_rel == 0.0,
            Backend::Float => self.rank_rel > 0.0 && self.residual_rel > 0.0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "tolerance {self:?} is not valid for the {backend} backend"
            )))
        }
    }
}

/// A hermitian invertible weight (the E or F of the weighted inverses),
/// validated at construction, with a cached positive-definiteness flag.
#[derive(Debug, Clone, PartialEq)]
pub struct Weight {
    matrix: Matrix,
    positive_definite: bool,
}

fn diagonal_pivots_positive<T: Entry>(m: &Dense<T>, is_pos: impl Fn(&T) -> bool) -> bool {
    // Unpivoted hermitian elimination: completes with positive pivots
    // exactly when the matrix is positive definite.
    let n = m.rows;
    let mut w = m.clone();
    for k in 0..n {
        let d = w.at(k, k).clone();
        if !is_pos(&d) {
            return false;
        }
        for i in k + 1..n {
            let factor = w.at(i, k).div(&d);
            for j in k + 1..n {
                let v = w.at(i, j).sub(&factor.mul(w.at(k, j)));
                *w.at_mut(i, j) = v;
            }
        }
    }
    true
}

impl Weight {
    pub fn new(matrix: Matrix, tol: &Tolerance) -> Result<Weight> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        if !matrix.is_hermitian(tol) {
            return Err(Error::NotHermitian);
        }
        if matrix.rank(tol) != matrix.rows() {
            return Err(Error::NotInvertible);
        }
        let positive_definite = if let Some(m) = matrix.as_exact() {
            diagonal_pivots_positive(m, |q| {
                use num_traits::Zero;
                q.im().is_zero() && q.re() > &num_rational::BigRational::zero()
            })
        } else {
            let m = matrix.as_float().expect("matrix is exact or float");
            diagonal_pivots_positive(m, |z| z.re > 0.0)
        };
        Ok(Weight {
            matrix,
            positive_definite,
        })
    }

    pub fn identity(n: usize, backend: Backend) -> Weight {
        Weight {
            matrix: Matrix::identity(n, backend),
            positive_definite: true,
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    pub fn backend(&self) -> Backend {
        self.matrix.backend()
    }

    pub fn is_positive_definite(&self) -> bool {
        self.positive_definite
    }

    /// Inverse of the weight; the matrix was validated invertible, and the
    /// inverse of a hermitian matrix is hermitian.
    pub fn inverse(&self) -> Matrix {
        self.matrix
            .inverse()
            .expect("weight was validated invertible")
    }

    pub fn to_float(&self) -> Weight {
        Weight {
            matrix: self.matrix.to_float(),
            positive_definite: self.positive_definite,
        }
    }
}
