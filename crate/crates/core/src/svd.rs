//! One-sided Jacobi singular value decomposition for the float backend.
//!
//! Jacobi SVD is slower than bidiagonalization but simple, dependency-free
//! and very accurate for the small dense matrices this library targets.
//! Columns of the working matrix are orthogonalized pairwise by unitary
//! plane rotations; the column norms converge to the singular values.

use num_complex::Complex64;

use crate::dense::Dense;
use crate::scalar::Entry;

pub(crate) struct Svd {
    /// rows x k, k = min(rows, cols); columns with zero singular value are zero.
    pub u: Dense<Complex64>,
    /// Singular values in descending order, length k.
    pub sigma: Vec<f64>,
    /// cols x k.
    pub v: Dense<Complex64>,
}

const MAX_SWEEPS: usize = 64;
const SKIP_TOL: f64 = 1e-30; // |gram_pq|^2 <= SKIP_TOL * |col_p|^2 |col_q|^2

pub(crate) fn svd(a: &Dense<Complex64>) -> Svd {
    if a.rows < a.cols {
        let t = svd(&a.conj_transpose());
        return Svd {
            u: t.v,
            sigma: t.sigma,
            v: t.u,
        };
    }
    let (m, n) = (a.rows, a.cols);
    let mut b = a.clone();
    let mut v = Dense::<Complex64>::identity(n);

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let mut alpha = 0.0;
                let mut beta = 0.0;
                let mut gamma = Complex64::new(0.0, 0.0);
                for i in 0..m {
                    let bp = *b.at(i, p);
                    let bq = *b.at(i, q);
                    alpha += bp.norm_sqr();
                    beta += bq.norm_sqr();
                    gamma += bp.conj() * bq;
                }
                let g2 = gamma.norm_sqr();
                if g2 <= SKIP_TOL * alpha * beta || g2 == 0.0 {
                    continue;
                }
                rotated = true;
                let g = g2.sqrt();
                let phase = gamma / g; // gamma = g * phase, |phase| = 1
                let d = phase.conj();
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for i in 0..m {
                    let bp = *b.at(i, p);
                    let bq = *b.at(i, q);
                    *b.at_mut(i, p) = c * bp - d * s * bq;
                    *b.at_mut(i, q) = s * bp + d * c * bq;
                }
                for i in 0..n {
                    let vp = *v.at(i, p);
                    let vq = *v.at(i, q);
                    *v.at_mut(i, p) = c * vp - d * s * vq;
                    *v.at_mut(i, q) = s * vp + d * c * vq;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let norms: Vec<f64> = (0..n)
        .map(|j| (0..m).map(|i| b.at(i, j).norm_sqr()).sum::<f64>().sqrt())
        .collect();
    order.sort_by(|&x, &y| norms[y].partial_cmp(&norms[x]).unwrap());

    let mut u = Dense::<Complex64>::zeros(m, n);
    let mut vs = Dense::<Complex64>::zeros(n, n);
    let mut sigma = Vec::with_capacity(n);
    for (col, &j) in order.iter().enumerate() {
        let s = norms[j];
        sigma.push(s);
        if s > 0.0 {
            for i in 0..m {
                *u.at_mut(i, col) = *b.at(i, j) / s;
            }
        }
        for i in 0..n {
            *vs.at_mut(i, col) = *v.at(i, j);
        }
    }
    Svd { u, sigma, v: vs }
}

impl Svd {
    /// Count of singular values above `rank_rel * sigma_max * max_dim`.
    pub fn rank(&self, rank_rel: f64, max_dim: usize) -> usize {
        let smax = self.sigma.first().copied().unwrap_or(0.0);
        let cutoff = rank_rel * smax * max_dim as f64;
        self.sigma.iter().filter(|&&s| s > cutoff).count()
    }

    /// Moore-Penrose pseudoinverse with the same rank cutoff rule.
    pub fn pinv(&self, rank_rel: f64, max_dim: usize) -> Dense<Complex64> {
        let r = self.rank(rank_rel, max_dim);
        let (m, n) = (self.u.rows, self.v.rows);
        let mut out = Dense::<Complex64>::zeros(n, m);
        for k in 0..r {
            let inv_s = 1.0 / self.sigma[k];
            for i in 0..n {
                let vik = *self.v.at(i, k);
                if vik.is_zero() {
                    continue;
                }
                for j in 0..m {
                    let term = vik * inv_s * self.u.at(j, k).conj();
                    let cur = *out.at(i, j) + term;
                    *out.at_mut(i, j) = cur;
                }
            }
        }
        out
    }

    /// Rank-truncated factors (U_r * diag(sigma_r), V_r^*): a full-rank
    /// factorization of the rank-truncated matrix.
    pub fn rank_factors(
        &self,
        rank_rel: f64,
        max_dim: usize,
    ) -> (Dense<Complex64>, Dense<Complex64>) {
        let r = self.rank(rank_rel, max_dim);
        let p = Dense::from_fn(self.u.rows, r, |i, j| self.u.at(i, j) * self.sigma[j]);
        let q = Dense::from_fn(r, self.v.rows, |i, j| self.v.at(j, i).conj());
        (p, q)
    }
}
