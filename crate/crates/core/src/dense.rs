//! Generic dense kernels shared by both scalar backends.
//!
//! Everything here is backend-agnostic: the exact backend instantiates the
//! kernels with `GaussianRational` (zero tests are exact, elimination is
//! lossless), the float backend with `Complex64`. Rank and factorization
//! decisions that genuinely differ between backends (singular values vs.
//! exact pivots) live in `matrix.rs` and `svd.rs`, not here.

use crate::scalar::Entry;

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Dense<T> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<T>,
}

impl<T: Entry> Dense<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must be rows*cols");
        Dense { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Dense::new(rows, cols, vec![T::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Dense::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Dense::new(rows, cols, data)
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Entry::is_zero)
    }

    pub fn mul(&self, rhs: &Dense<T>) -> Dense<T> {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        let mut out = Dense::<T>::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a.mul(b);
                    let cur = out.at(i, j).add(&prod);
                    *out.at_mut(i, j) = cur;
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Dense<T>) -> Dense<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a.add(b))
            .collect();
        Dense::new(self.rows, self.cols, data)
    }

    pub fn sub(&self, rhs: &Dense<T>) -> Dense<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a.sub(b))
            .collect();
        Dense::new(self.rows, self.cols, data)
    }

    pub fn neg(&self) -> Dense<T> {
        Dense::new(
            self.rows,
            self.cols,
            self.data.iter().map(Entry::neg).collect(),
        )
    }

    pub fn conj_transpose(&self) -> Dense<T> {
        Dense::from_fn(self.cols, self.rows, |i, j| self.at(j, i).conj())
    }

    pub fn pow(&self, p: usize) -> Dense<T> {
        assert!(self.is_square());
        let mut result = Dense::identity(self.rows);
        let mut base = self.clone();
        let mut exp = p;
        while exp > 0 {
            if exp & 1 == 1 {
                result = result.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Columns of `self` followed by columns of `rhs`.
    pub fn hstack(&self, rhs: &Dense<T>) -> Dense<T> {
        assert_eq!(self.rows, rhs.rows);
        Dense::from_fn(self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                rhs.at(i, j - self.cols).clone()
            }
        })
    }

    /// Rows of `self` followed by rows of `rhs`.
    pub fn vstack(&self, rhs: &Dense<T>) -> Dense<T> {
        assert_eq!(self.cols, rhs.cols);
        Dense::from_fn(self.rows + rhs.rows, self.cols, |i, j| {
            if i < self.rows {
                self.at(i, j).clone()
            } else {
                rhs.at(i - self.rows, j).clone()
            }
        })
    }

    pub fn frobenius_sq(&self) -> f64 {
        self.data.iter().map(Entry::abs_sq).sum()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Rank by Gaussian elimination with full pivoting. Exact whenever the
    /// entry type's zero test is exact; the float backend does not use this
    /// (it counts singular values instead).
    pub fn rank_by_elimination(&self) -> usize {
        let mut m = self.clone();
        let steps = m.rows.min(m.cols);
        let mut rank = 0;
        for s in 0..steps {
            // full pivot: largest nonzero entry of the trailing block
            let mut best: Option<(usize, usize, f64)> = None;
            for i in s..m.rows {
                for j in s..m.cols {
                    let e = m.at(i, j);
                    if e.is_zero() {
                        continue;
                    }
                    let w = e.pivot_weight();
                    if best.is_none_or(|(_, _, bw)| w > bw) {
                        best = Some((i, j, w));
                    }
                }
            }
            let Some((pi, pj, _)) = best else { break };
            m.swap_rows(s, pi);
            m.swap_cols(s, pj);
            let pivot = m.at(s, s).clone();
            for r in s + 1..m.rows {
                if m.at(r, s).is_zero() {
                    continue;
                }
                let factor = m.at(r, s).div(&pivot);
                for c in s..m.cols {
                    let v = m.at(r, c).sub(&factor.mul(m.at(s, c)));
                    *m.at_mut(r, c) = v;
                }
            }
            rank += 1;
        }
        rank
    }

    /// Reduced row echelon form with row pivoting (columns stay in place),
    /// returning the pivot column indices. Exact-backend only.
    pub fn rref(&self) -> (Dense<T>, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let mut best: Option<(usize, f64)> = None;
            for i in r..m.rows {
                let e = m.at(i, c);
                if e.is_zero() {
                    continue;
                }
                let w = e.pivot_weight();
                if best.is_none_or(|(_, bw)| w > bw) {
                    best = Some((i, w));
                }
            }
            let Some((pi, _)) = best else { continue };
            m.swap_rows(r, pi);
            let pivot = m.at(r, c).clone();
            for j in c..m.cols {
                let v = m.at(r, j).div(&pivot);
                *m.at_mut(r, j) = v;
            }
            for i in 0..m.rows {
                if i == r || m.at(i, c).is_zero() {
                    continue;
                }
                let factor = m.at(i, c).clone();
                for j in c..m.cols {
                    let v = m.at(i, j).sub(&factor.mul(m.at(r, j)));
                    *m.at_mut(i, j) = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Gauss-Jordan inverse with row pivoting; `None` when a pivot column
    /// has no nonzero entry. For the float backend callers validate
    /// invertibility separately (via singular values).
    pub fn inverse(&self) -> Option<Dense<T>> {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = Dense::<T>::identity(n);
        for c in 0..n {
            let mut best: Option<(usize, f64)> = None;
            for i in c..n {
                let e = m.at(i, c);
                if e.is_zero() {
                    continue;
                }
                let w = e.pivot_weight();
                if best.is_none_or(|(_, bw)| w > bw) {
                    best = Some((i, w));
                }
            }
            let (pi, _) = best?;
            m.swap_rows(c, pi);
            inv.swap_rows(c, pi);
            let pivot = m.at(c, c).clone();
            for j in 0..n {
                let v = m.at(c, j).div(&pivot);
                *m.at_mut(c, j) = v;
                let w = inv.at(c, j).div(&pivot);
                *inv.at_mut(c, j) = w;
            }
            for i in 0..n {
                if i == c || m.at(i, c).is_zero() {
                    continue;
                }
                let factor = m.at(i, c).clone();
                for j in 0..n {
                    let v = m.at(i, j).sub(&factor.mul(m.at(c, j)));
                    *m.at_mut(i, j) = v;
                    let w = inv.at(i, j).sub(&factor.mul(inv.at(c, j)));
                    *inv.at_mut(i, j) = w;
                }
            }
        }
        Some(inv)
    }

    /// Full-rank factorization A = P*Q from the reduced row echelon form:
    /// P is the pivot columns of A (rows x r), Q the nonzero rows of
    /// rref(A) (r x cols). Exact-backend only.
    pub fn full_rank_factorization(&self) -> (Dense<T>, Dense<T>) {
        let (r, pivots) = self.rref();
        let rank = pivots.len();
        let p = Dense::from_fn(self.rows, rank, |i, j| self.at(i, pivots[j]).clone());
        let q = Dense::from_fn(rank, self.cols, |i, j| r.at(i, j).clone());
        (p, q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussianRational;

    fn m(rows: usize, cols: usize, entries: &[i64]) -> Dense<GaussianRational> {
        Dense::new(
            rows,
            cols,
            entries
                .iter()
                .map(|&v| GaussianRational::from_i64(v))
                .collect(),
        )
    }

    #[test]
    fn multiply_and_power() {
        let a = m(2, 2, &[0, 1, 0, 0]);
        assert!(a.pow(2).is_zero());
        assert_eq!(a.pow(0), Dense::identity(2));
        let b = m(2, 3, &[1, 2, 3, 4, 5, 6]);
        let prod = m(2, 2, &[1, 0, 0, 1]).mul(&b);
        assert_eq!(prod, b);
    }

    #[test]
    fn empty_factor_product_is_zero() {
        let p: Dense<GaussianRational> = Dense::zeros(3, 0);
        let q: Dense<GaussianRational> = Dense::zeros(0, 2);
        let prod = p.mul(&q);
        assert_eq!((prod.rows, prod.cols), (3, 2));
        assert!(prod.is_zero());
    }

    #[test]
    fn elimination_rank() {
        assert_eq!(
            m(3, 3, &[1, 0, 0, 0, 1, 0, 0, 0, 1]).rank_by_elimination(),
            3
        );
        assert_eq!(m(3, 3, &[0; 9]).rank_by_elimination(), 0);
        // two independent rows
        assert_eq!(
            m(3, 3, &[4, 3, 0, 0, 0, 0, -1, 4, 0]).rank_by_elimination(),
            2
        );
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(3, 3, &[2, 1, 0, 1, 2, 1, 0, 1, 2]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Dense::identity(3));
        assert!(m(2, 2, &[1, 2, 2, 4]).inverse().is_none());
    }

    #[test]
    fn full_rank_factorization_reconstructs() {
        let a = m(3, 3, &[4, 3, 0, 0, 0, 0, -1, 4, 0]);
        let (p, q) = a.full_rank_factorization();
        assert_eq!(p.cols, 2);
        assert_eq!(q.rows, 2);
        assert_eq!(p.mul(&q), a);
        assert_eq!(p.rank_by_elimination(), 2);
        assert_eq!(q.rank_by_elimination(), 2);

        let z = m(2, 2, &[0; 4]);
        let (pz, qz) = z.full_rank_factorization();
        assert_eq!((pz.cols, qz.rows), (0, 0));
        assert!(pz.mul(&qz).is_zero());
    }
}
