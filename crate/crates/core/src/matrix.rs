//! Dense complex matrices with an exact-rational or floating backend.
//!
//! A [`Matrix`] is a row-major array of scalars tagged with the backend it
//! lives in. All entries of one matrix share that backend by construction;
//! combining matrices from different backends is an error, never a silent
//! promotion (use [`Matrix::to_float`] to promote explicitly).

use std::fmt;

use num_complex::Complex64;

use crate::dense::Dense;
use crate::error::{Error, Result};
use crate::scalar::{Backend, GaussianRational, Scalar};
use crate::svd::svd;
use crate::weight::Tolerance;

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix(Repr);

#[derive(Debug, Clone, PartialEq)]
enum Repr {
    Exact(Dense<GaussianRational>),
    Float(Dense<Complex64>),
}

impl Matrix {
    // ------------------------------------------------------------------
    // construction
    // ------------------------------------------------------------------

    pub(crate) fn from_exact(d: Dense<GaussianRational>) -> Matrix {
        Matrix(Repr::Exact(d))
    }

    pub(crate) fn from_float(d: Dense<Complex64>) -> Matrix {
        Matrix(Repr::Float(d))
    }

    pub(crate) fn as_exact(&self) -> Option<&Dense<GaussianRational>> {
        match &self.0 {
            Repr::Exact(d) => Some(d),
            Repr::Float(_) => None,
        }
    }

    pub(crate) fn as_float(&self) -> Option<&Dense<Complex64>> {
        match &self.0 {
            Repr::Float(d) => Some(d),
            Repr::Exact(_) => None,
        }
    }

    pub fn from_scalars(rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Matrix> {
        if entries.len() != rows * cols {
            return Err(Error::Precondition(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                entries.len()
            )));
        }
        let backend = entries
            .first()
            .map(Scalar::backend)
            .unwrap_or(Backend::Exact);
        match backend {
            Backend::Exact => {
                let mut data = Vec::with_capacity(entries.len());
                for e in entries {
                    match e {
                        Scalar::Exact(q) => data.push(q),
                        Scalar::Float(_) => return Err(Error::BackendMismatch("matrix entries")),
                    }
                }
                Ok(Matrix::from_exact(Dense::new(rows, cols, data)))
            }
            Backend::Float => {
                let mut data = Vec::with_capacity(entries.len());
                for e in entries {
                    match e {
                        Scalar::Float(z) => data.push(z),
                        Scalar::Exact(_) => return Err(Error::BackendMismatch("matrix entries")),
                    }
                }
                Ok(Matrix::from_float(Dense::new(rows, cols, data)))
            }
        }
    }

    pub fn exact_from_i64(rows: usize, cols: usize, entries: &[i64]) -> Matrix {
        Matrix::from_exact(Dense::new(
            rows,
            cols,
            entries
                .iter()
                .map(|&v| GaussianRational::from_i64(v))
                .collect(),
        ))
    }

    /// Parse a rectangular array of rational literals like `"5/17"` or
    /// `"1/2-2/3i"`. Panics on ragged input; returns parse errors.
    pub fn exact_from_strs(rows: &[&[&str]]) -> Result<Matrix> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            assert_eq!(row.len(), ncols, "ragged rows");
            for s in *row {
                data.push(s.parse::<GaussianRational>()?);
            }
        }
        Ok(Matrix::from_exact(Dense::new(nrows, ncols, data)))
    }

    pub fn float_from_complex(rows: usize, cols: usize, entries: Vec<Complex64>) -> Matrix {
        Matrix::from_float(Dense::new(rows, cols, entries))
    }

    pub fn float_from_re(rows: usize, cols: usize, entries: &[f64]) -> Matrix {
        Matrix::from_float(Dense::new(
            rows,
            cols,
            entries.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        ))
    }

    pub fn identity(n: usize, backend: Backend) -> Matrix {
        match backend {
            Backend::Exact => Matrix::from_exact(Dense::identity(n)),
            Backend::Float => Matrix::from_float(Dense::identity(n)),
        }
    }

    pub fn zeros(rows: usize, cols: usize, backend: Backend) -> Matrix {
        match backend {
            Backend::Exact => Matrix::from_exact(Dense::zeros(rows, cols)),
            Backend::Float => Matrix::from_float(Dense::zeros(rows, cols)),
        }
    }

    // ------------------------------------------------------------------
    // shape and access
    // ------------------------------------------------------------------

    pub fn rows(&self) -> usize {
        match &self.0 {
            Repr::Exact(m) => m.rows,
            Repr::Float(m) => m.rows,
        }
    }

    pub fn cols(&self) -> usize {
        match &self.0 {
            Repr::Exact(m) => m.cols,
            Repr::Float(m) => m.cols,
        }
    }

    pub fn backend(&self) -> Backend {
        match &self.0 {
            Repr::Exact(_) => Backend::Exact,
            Repr::Float(_) => Backend::Float,
        }
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Exact(m) => m.is_zero(),
            Repr::Float(m) => m.is_zero(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        match &self.0 {
            Repr::Exact(m) => Scalar::Exact(m.at(i, j).clone()),
            Repr::Float(m) => Scalar::Float(*m.at(i, j)),
        }
    }

    /// Lossy promotion of exact entries to `Complex64`; float matrices are
    /// returned unchanged.
    pub fn to_float(&self) -> Matrix {
        match &self.0 {
            Repr::Exact(m) => Matrix::from_float(Dense::new(
                m.rows,
                m.cols,
                m.data.iter().map(GaussianRational::to_complex64).collect(),
            )),
            Repr::Float(m) => Matrix::from_float(m.clone()),
        }
    }

    fn ensure_same_shape(&self, rhs: &Matrix, context: &'static str) -> Result<()> {
        if self.rows() != rhs.rows() || self.cols() != rhs.cols() {
            return Err(Error::DimensionMismatch {
                context,
                lhs_rows: self.rows(),
                lhs_cols: self.cols(),
                rhs_rows: rhs.rows(),
                rhs_cols: rhs.cols(),
            });
        }
        Ok(())
    }

    // ------------------------------------------------------------------
    // arithmetic
    // ------------------------------------------------------------------

    pub fn try_add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.ensure_same_shape(rhs, "add")?;
        match (&self.0, &rhs.0) {
            (Repr::Exact(a), Repr::Exact(b)) => Ok(Matrix::from_exact(a.add(b))),
            (Repr::Float(a), Repr::Float(b)) => Ok(Matrix::from_float(a.add(b))),
            _ => Err(Error::BackendMismatch("add")),
        }
    }

    pub fn try_sub(&self, rhs: &Matrix) -> Result<Matrix> {
        self.ensure_same_shape(rhs, "sub")?;
        match (&self.0, &rhs.0) {
            (Repr::Exact(a), Repr::Exact(b)) => Ok(Matrix::from_exact(a.sub(b))),
            (Repr::Float(a), Repr::Float(b)) => Ok(Matrix::from_float(a.sub(b))),
            _ => Err(Error::BackendMismatch("sub")),
        }
    }

    pub fn try_mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols() != rhs.rows() {
            return Err(Error::DimensionMismatch {
                context: "mul",
                lhs_rows: self.rows(),
                lhs_cols: self.cols(),
                rhs_rows: rhs.rows(),
                rhs_cols: rhs.cols(),
            });
        }
        match (&self.0, &rhs.0) {
            (Repr::Exact(a), Repr::Exact(b)) => Ok(Matrix::from_exact(a.mul(b))),
            (Repr::Float(a), Repr::Float(b)) => Ok(Matrix::from_float(a.mul(b))),
            _ => Err(Error::BackendMismatch("mul")),
        }
    }

    pub fn neg(&self) -> Matrix {
        match &self.0 {
            Repr::Exact(m) => Matrix::from_exact(m.neg()),
            Repr::Float(m) => Matrix::from_float(m.neg()),
        }
    }

    pub fn conj_transpose(&self) -> Matrix {
        match &self.0 {
            Repr::Exact(m) => Matrix::from_exact(m.conj_transpose()),
            Repr::Float(m) => Matrix::from_float(m.conj_transpose()),
        }
    }

    pub fn pow(&self, p: usize) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows(),
                cols: self.cols(),
            });
        }
        Ok(match &self.0 {
            Repr::Exact(m) => Matrix::from_exact(m.pow(p)),
            Repr::Float(m) => Matrix::from_float(m.pow(p)),
        })
    }

    pub fn hstack(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.rows() != rhs.rows() {
            return Err(Error::DimensionMismatch {
                context: "hstack",
                lhs_rows: self.rows(),
                lhs_cols: self.cols(),
                rhs_rows: rhs.rows(),
                rhs_cols: rhs.cols(),
            });
        }
        match (&self.0, &rhs.0) {
            (Repr::Exact(a), Repr::Exact(b)) => Ok(Matrix::from_exact(a.hstack(b))),
            (Repr::Float(a), Repr::Float(b)) => Ok(Matrix::from_float(a.hstack(b))),
            _ => Err(Error::BackendMismatch("hstack")),
        }
    }

    pub fn vstack(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols() != rhs.cols() {
            return Err(Error::DimensionMismatch {
                context: "vstack",
                lhs_rows: self.rows(),
                lhs_cols: self.cols(),
                rhs_rows: rhs.rows(),
                rhs_cols: rhs.cols(),
            });
        }
        match (&self.0, &rhs.0) {
            (Repr::Exact(a), Repr::Exact(b)) => Ok(Matrix::from_exact(a.vstack(b))),
            (Repr::Float(a), Repr::Float(b)) => Ok(Matrix::from_float(a.vstack(b))),
            _ => Err(Error::BackendMismatch("vstack")),
        }
    }

    // ------------------------------------------------------------------
    // norms and comparison
    // ------------------------------------------------------------------

    pub fn frobenius_norm(&self) -> f64 {
        match &self.0 {
            Repr::Exact(m) => m.frobenius_sq().sqrt(),
            Repr::Float(m) => m.frobenius_sq().sqrt(),
        }
    }

    /// Scale-free defect between two same-shape matrices:
    /// `|a - b|_F / (1 + |a|_F + |b|_F)`.
    pub fn rel_residual(&self, rhs: &Matrix) -> f64 {
        let diff = self
            .try_sub(rhs)
            .expect("rel_residual requires same shape and backend");
        diff.frobenius_norm() / (1.0 + self.frobenius_norm() + rhs.frobenius_norm())
    }

    /// Exact equality on the exact backend, tolerance comparison on float.
    pub fn approx_eq(&self, rhs: &Matrix, tol: &Tolerance) -> bool {
        if self.rows() != rhs.rows() || self.cols() != rhs.cols() {
            return false;
        }
        match (&self.0, &rhs.0) {
            (Repr::Exact(_), Repr::Exact(_)) => self == rhs,
            (Repr::Float(_), Repr::Float(_)) => self.rel_residual(rhs) <= tol.residual_rel,
            _ => false,
        }
    }

    pub fn is_hermitian(&self, tol: &Tolerance) -> bool {
        self.is_square() && self.approx_eq(&self.conj_transpose(), tol)
    }

    // ------------------------------------------------------------------
    // rank, index, factorization
    // ------------------------------------------------------------------

    /// Exact backend: pivot count of an exact full-pivoting elimination.
    /// Float backend: singular values above
    /// `tol.rank_rel * sigma_max * max(rows, cols)`.
    pub fn rank(&self, tol: &Tolerance) -> usize {
        match &self.0 {
            Repr::Exact(m) => m.rank_by_elimination(),
            Repr::Float(m) => svd(m).rank(tol.rank_rel, m.rows.max(m.cols)),
        }
    }

    /// Smallest k >= 0 with rank(A^k) = rank(A^{k+1}); at most n. Powers
    /// are accumulated incrementally, one multiplication per step.
    pub fn index(&self, tol: &Tolerance) -> Result<usize> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows(),
                cols: self.cols(),
            });
        }
        let n = self.rows();
        let mut current = Matrix::identity(n, self.backend());
        let mut rank_k = n;
        for k in 0..=n {
            let next = current.try_mul(self)?;
            let rank_k1 = next.rank(tol);
            if rank_k1 == rank_k {
                return Ok(k);
            }
            current = next;
            rank_k = rank_k1;
        }
        Ok(n)
    }

    /// A = P*Q with P of full column rank r, Q of full row rank r,
    /// r = rank(A). Rank-zero input yields empty factors whose product is
    /// the zero matrix.
    pub fn full_rank_factorization(&self, tol: &Tolerance) -> (Matrix, Matrix) {
        match &self.0 {
            Repr::Exact(m) => {
                let (p, q) = m.full_rank_factorization();
                (Matrix::from_exact(p), Matrix::from_exact(q))
            }
            Repr::Float(m) => {
                let s = svd(m);
                let (p, q) = s.rank_factors(tol.rank_rel, m.rows.max(m.cols));
                (Matrix::from_float(p), Matrix::from_float(q))
            }
        }
    }

    /// Inverse of a square matrix; `Err(Singular)` when no inverse exists.
    /// On the float backend singularity means an exactly-zero pivot; callers
    /// that need a tolerance-based decision should check `rank` first.
    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows(),
                cols: self.cols(),
            });
        }
        match &self.0 {
            Repr::Exact(m) => m.inverse().map(Matrix::from_exact).ok_or(Error::Singular),
            Repr::Float(m) => m.inverse().map(Matrix::from_float).ok_or(Error::Singular),
        }
    }

    /// Moore-Penrose pseudoinverse machinery: exact backend through the
    /// full-rank factorization formula `Q*(QQ*)^-1 (P*P)^-1 P*`, float
    /// backend through the SVD. The public operation wrapping this lives in
    /// the `classical` module.
    pub(crate) fn pinv(&self, tol: &Tolerance) -> Matrix {
        match &self.0 {
            Repr::Exact(m) => {
                let (p, q) = m.full_rank_factorization();
                let p_star = p.conj_transpose();
                let q_star = q.conj_transpose();
                let qq = q.mul(&q_star);
                let pp = p_star.mul(&p);
                let qq_inv = qq.inverse().expect("QQ* is invertible for full row rank Q");
                let pp_inv = pp
                    .inverse()
                    .expect("P*P is invertible for full column rank P");
                Matrix::from_exact(q_star.mul(&qq_inv).mul(&pp_inv).mul(&p_star))
            }
            Repr::Float(m) => Matrix::from_float(svd(m).pinv(tol.rank_rel, m.rows.max(m.cols))),
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows() {
            write!(f, "[")?;
            for j in 0..self.cols() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl std::ops::Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        self.try_add(rhs).expect("matrix add")
    }
}

impl std::ops::Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        self.try_sub(rhs).expect("matrix sub")
    }
}

impl std::ops::Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.try_mul(rhs).expect("matrix mul")
    }
}

fn solve_consistent(recon: &Matrix, a: &Matrix, tol: &Tolerance) -> Result<bool> {
    Ok(match recon.backend() {
        Backend::Exact => recon == a,
        Backend::Float => {
            let defect = recon.try_sub(a)?.frobenius_norm();
            defect <= tol.residual_rel * a.frobenius_norm()
        }
    })
}

/// Solve `Z * B = A` for Z. Returns `Ok(None)` when the system is
/// inconsistent. Consistency is decided constructively: Z = A * B^- with
/// B^- an inner inverse of B, accepted iff Z*B reproduces A (exactly on the
/// exact backend, within `tol.residual_rel * |A|_F` on float).
pub fn solve_right(b: &Matrix, a: &Matrix, tol: &Tolerance) -> Result<Option<Matrix>> {
    if b.cols() != a.cols() {
        return Err(Error::DimensionMismatch {
            context: "solve_right",
            lhs_rows: b.rows(),
            lhs_cols: b.cols(),
            rhs_rows: a.rows(),
            rhs_cols: a.cols(),
        });
    }
    if b.backend() != a.backend() {
        return Err(Error::BackendMismatch("solve_right"));
    }
    let z = a.try_mul(&b.pinv(tol))?;
    let recon = z.try_mul(b)?;
    Ok(solve_consistent(&recon, a, tol)?.then_some(z))
}

/// Solve `B * X = A` for X; mirror of [`solve_right`].
pub fn solve_left(b: &Matrix, a: &Matrix, tol: &Tolerance) -> Result<Option<Matrix>> {
    if b.rows() != a.rows() {
        return Err(Error::DimensionMismatch {
            context: "solve_left",
            lhs_rows: b.rows(),
            lhs_cols: b.cols(),
            rhs_rows: a.rows(),
            rhs_cols: a.cols(),
        });
    }
    if b.backend() != a.backend() {
        return Err(Error::BackendMismatch("solve_left"));
    }
    let x = b.pinv(tol).try_mul(a)?;
    let recon = b.try_mul(&x)?;
    Ok(solve_consistent(&recon, a, tol)?.then_some(x))
}
