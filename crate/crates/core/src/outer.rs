//! Outer inverses with prescribed range and nullspace.
//!
//! `X = P (QAP)^-1 Q` is the unique outer inverse of A with range R(P) and
//! nullspace N(Q) when QAP is invertible. The weighted core-EP inverses
//! are exactly such outer inverses, so these constructions provide an
//! independent route to the same values; the test suites cross-check the
//! primary constructions against them.

use crate::error::Result;
use crate::matrix::Matrix;
use crate::weight::{Tolerance, Weight};

/// Outer inverse of A with range R(`range_source`) and nullspace
/// N(`null_source`): XAX = X, R(X) = R(range_source),
/// N(X) = N(null_source). `None` when no such outer inverse exists.
pub fn outer_inverse_with_spaces(
    a: &Matrix,
    range_source: &Matrix,
    null_source: &Matrix,
    tol: &Tolerance,
) -> Result<Option<Matrix>> {
    let (p, _) = range_source.full_rank_factorization(tol);
    let (_, q) = null_source.full_rank_factorization(tol);
    if p.cols() != q.rows() {
        // prescribed range and nullspace of different codimensions
        return Ok(None);
    }
    let core = q.try_mul(a)?.try_mul(&p)?;
    match core.inverse() {
        Ok(inv) => Ok(Some(p.try_mul(&inv)?.try_mul(&q)?)),
        Err(_) => Ok(None),
    }
}

/// The E-weighted core-EP inverse through its space characterization:
/// the outer inverse with range R(A^k) and nullspace N((A^k)* E).
pub fn core_ep_by_spaces(a: &Matrix, e: &Weight, tol: &Tolerance) -> Result<Option<Matrix>> {
    let k = a.index(tol)?;
    let ak = a.pow(k)?;
    let null_source = ak.conj_transpose().try_mul(e.matrix())?;
    outer_inverse_with_spaces(a, &ak, &null_source, tol)
}

/// The F-weighted dual core-EP inverse through its space characterization:
/// range R(F^-1 (A^k)*), nullspace N(A^k).
pub fn dual_core_ep_by_spaces(a: &Matrix, f: &Weight, tol: &Tolerance) -> Result<Option<Matrix>> {
    let k = a.index(tol)?;
    let ak = a.pow(k)?;
    let range_source = f.inverse().try_mul(&ak.conj_transpose())?;
    outer_inverse_with_spaces(a, &range_source, &ak, tol)
}

/// The Drazin inverse as the outer inverse with range and nullspace of A^k.
pub fn drazin_by_spaces(a: &Matrix, tol: &Tolerance) -> Result<Option<Matrix>> {
    let k = a.index(tol)?;
    let ak = a.pow(k)?;
    outer_inverse_with_spaces(a, &ak, &ak, tol)
}
