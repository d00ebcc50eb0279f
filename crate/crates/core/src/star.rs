//! Star weighted core-EP and weighted core-EP star matrices: the unique
//! solutions of two systems of matrix equations, their ten-way
//! characterizations, and the projector / outer-inverse structure they
//! induce. Throughout, A^+ denotes the unweighted Moore-Penrose inverse.
//!
//! Notation for the dual family varies in the literature; this library
//! uniformly writes A^{F,ep,*} = A^{F,ep} A A* (weight first, star last).

use crate::classical::{ensure_square, ensure_weight_matches, moore_penrose};
use crate::core_ep::{core_ep, dual_core_ep};
use crate::error::Result;
use crate::matrix::Matrix;
use crate::scalar::Backend;
use crate::verify::{nullspace_equal, range_equal};
use crate::weight::{Tolerance, Weight};

/// Which of the two star families a report refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StarSide {
    StarCoreEp,
    DualCoreEpStar,
}

/// Residuals of the defining system (one entry per equation) and the
/// resulting uniqueness verdict: the system has exactly one solution, so
/// a candidate passes iff it is that solution.
#[derive(Debug, Clone)]
pub struct StarSystemReport {
    pub side: StarSide,
    pub residuals: Vec<(&'static str, f64)>,
    pub unique_solution: bool,
}

/// Projector certificate: idempotency plus the prescribed range and
/// nullspace, decided by rank identities.
#[derive(Debug, Clone)]
pub struct ProjectorReport {
    pub projector: Matrix,
    pub idempotency_residual: f64,
    pub idempotent: bool,
    pub range_target_met: bool,
    pub nullspace_target_met: bool,
}

impl ProjectorReport {
    pub fn passed(&self) -> bool {
        self.idempotent && self.range_target_met && self.nullspace_target_met
    }
}

/// Star E-weighted core-EP matrix A^{*,ep,E} = A* A A^{ep,E}.
pub fn star_core_ep(a: &Matrix, e: &Weight, tol: &Tolerance) -> Result<Matrix> {
    let ce = core_ep(a, e, tol)?;
    a.conj_transpose().try_mul(a)?.try_mul(&ce.value)
}

/// F-weighted dual core-EP star matrix A^{F,ep,*} = A^{F,ep} A A*.
pub fn dual_core_ep_star(a: &Matrix, f: &Weight, tol: &Tolerance) -> Result<Matrix> {
    let de = dual_core_ep(a, f, tol)?;
    de.value.try_mul(a)?.try_mul(&a.conj_transpose())
}

fn equation_residual(lhs: &Matrix, rhs: &Matrix, tol: &Tolerance) -> Result<(f64, bool)> {
    let diff = lhs.try_sub(rhs)?;
    let residual = diff.frobenius_norm() / (1.0 + lhs.frobenius_norm() + rhs.frobenius_norm());
    let passed = match diff.backend() {
        Backend::Exact => diff.is_zero(),
        Backend::Float => residual <= tol.residual_rel,
    };
    Ok((residual, passed))
}

/// Evaluate the defining system of the star E-weighted core-EP matrix for
/// a candidate X:
///   X (A^+)* X = X,   X A^k = A* A^k,   (A^+)* X = A A^{ep,E}.
pub fn verify_star_system(
    a: &Matrix,
    e: &Weight,
    x: &Matrix,
    tol: &Tolerance,
) -> Result<StarSystemReport> {
    ensure_square(a)?;
    ensure_weight_matches(a, e, a.rows(), "verify_star_system")?;
    let ce = core_ep(a, e, tol)?;
    let k = ce.index_used;
    let pinv_star = moore_penrose(a, tol).conj_transpose();
    let ak = a.pow(k)?;

    let mut residuals = Vec::with_capacity(3);
    let mut all = true;
    for (label, lhs, rhs) in [
        (
            "X (A+)* X = X",
            x.try_mul(&pinv_star)?.try_mul(x)?,
            x.clone(),
        ),
        (
            "X A^k = A* A^k",
            x.try_mul(&ak)?,
            a.conj_transpose().try_mul(&ak)?,
        ),
        (
            "(A+)* X = A A^{ep,E}",
            pinv_star.try_mul(x)?,
            a.try_mul(&ce.value)?,
        ),
    ] {
        let (residual, passed) = equation_residual(&lhs, &rhs, tol)?;
        residuals.push((label, residual));
        all &= passed;
    }
    Ok(StarSystemReport {
        side: StarSide::StarCoreEp,
        residuals,
        unique_solution: all,
    })
}

/// Dual system for a candidate Y:
///   Y (A^+)* Y = Y,   A^k Y = A^k A*,   Y (A^+)* = A^{F,ep} A.
pub fn verify_dual_star_system(
    a: &Matrix,
    f: &Weight,
    y: &Matrix,
    tol: &Tolerance,
) -> Result<StarSystemReport> {
    ensure_square(a)?;
    ensure_weight_matches(a, f, a.rows(), "verify_dual_star_system")?;
    let de = dual_core_ep(a, f, tol)?;
    let k = de.index_used;
    let pinv_star = moore_penrose(a, tol).conj_transpose();
    let ak = a.pow(k)?;

    let mut residuals = Vec::with_capacity(3);
    let mut all = true;
    for (label, lhs, rhs) in [
        (
            "Y (A+)* Y = Y",
            y.try_mul(&pinv_star)?.try_mul(y)?,
            y.clone(),
        ),
        (
            "A^k Y = A^k A*",
            ak.try_mul(y)?,
            ak.try_mul(&a.conj_transpose())?,
        ),
        (
            "Y (A+)* = A^{F,ep} A",
            y.try_mul(&pinv_star)?,
            de.value.try_mul(a)?,
        ),
    ] {
        let (residual, passed) = equation_residual(&lhs, &rhs, tol)?;
        residuals.push((label, residual));
        all &= passed;
    }
    Ok(StarSystemReport {
        side: StarSide::DualCoreEpStar,
        residuals,
        unique_solution: all,
    })
}

fn eq(a: &Matrix, b: &Matrix, tol: &Tolerance) -> bool {
    a.approx_eq(b, tol)
}

/// The ten equivalent characterizations of "X is the star E-weighted
/// core-EP matrix of A", each evaluated independently. All ten agree for
/// every candidate by the equivalence theorem; evaluating them separately
/// lets a discrepancy pinpoint the faulty probe.
pub fn star_equivalences(
    a: &Matrix,
    e: &Weight,
    x: &Matrix,
    tol: &Tolerance,
) -> Result<[bool; 10]> {
    ensure_square(a)?;
    let ce = core_ep(a, e, tol)?;
    let m = &ce.value;
    let k = ce.index_used;
    let p = moore_penrose(a, tol);
    let ps = p.conj_transpose();
    let astar = a.conj_transpose();
    let ak = a.pow(k)?;
    let star = astar.try_mul(a)?.try_mul(m)?;

    let x_a_ce = x.try_mul(a)?.try_mul(m)?;
    let pa_x = p.try_mul(a)?.try_mul(x)?;
    let ce_a_ps = m.try_mul(a)?.try_mul(&ps)?;
    let x_ce_a_ps_x = x.try_mul(&ce_a_ps)?.try_mul(x)?;
    let ce_a_ps_x = ce_a_ps.try_mul(x)?;
    let a_ce = a.try_mul(m)?;
    let nine = eq(&x_ce_a_ps_x, x, tol)
        && eq(&ce_a_ps_x, &a_ce, tol)
        && eq(&x.try_mul(&ce_a_ps)?, &astar.try_mul(&ce_a_ps)?, tol);

    Ok([
        // (i) X = A* A A^{ep,E}
        eq(x, &star, tol),
        // (ii) X A A^{ep,E} = X and X A^k = A* A^k
        eq(&x_a_ce, x, tol) && eq(&x.try_mul(&ak)?, &astar.try_mul(&ak)?, tol),
        // (iii) A^+ A X A A^{ep,E} = X and (A^+)* X A^k = A^k
        eq(&p.try_mul(a)?.try_mul(&x_a_ce)?, x, tol) && eq(&ps.try_mul(x)?.try_mul(&ak)?, &ak, tol),
        // (iv) X A A^{ep,E} = X and X A = A* A A^{ep,E} A
        eq(&x_a_ce, x, tol) && eq(&x.try_mul(a)?, &star.try_mul(a)?, tol),
        // (v) X A A^{ep,E} = X and X (A^+)* = A* A A^{ep,E} (A^+)*
        eq(&x_a_ce, x, tol) && eq(&x.try_mul(&ps)?, &star.try_mul(&ps)?, tol),
        // (vi) A^+ A X = X and (A^+)* X = A A^{ep,E}
        eq(&pa_x, x, tol) && eq(&ps.try_mul(x)?, &a_ce, tol),
        // (vii) A^+ A X = X and A^+ (A^+)* X = A^+ A A^{ep,E}
        eq(&pa_x, x, tol)
            && eq(
                &p.try_mul(&ps)?.try_mul(x)?,
                &p.try_mul(a)?.try_mul(m)?,
                tol,
            ),
        // (viii) A^+ A X = X and A X = A A* A A^{ep,E}
        eq(&pa_x, x, tol) && eq(&a.try_mul(x)?, &a.try_mul(&star)?, tol),
        // (ix) three equations through A^{ep,E} A (A^+)*
        nine,
        // (x) the three of (ix) plus idempotency of the linking product
        nine && eq(&ce_a_ps.try_mul(x)?.try_mul(&ce_a_ps)?, &ce_a_ps, tol),
    ])
}

/// Dual ten-way characterization for "Y is the F-weighted dual core-EP
/// star matrix of A".
pub fn dual_star_equivalences(
    a: &Matrix,
    f: &Weight,
    y: &Matrix,
    tol: &Tolerance,
) -> Result<[bool; 10]> {
    ensure_square(a)?;
    let de = dual_core_ep(a, f, tol)?;
    let m = &de.value;
    let k = de.index_used;
    let p = moore_penrose(a, tol);
    let ps = p.conj_transpose();
    let astar = a.conj_transpose();
    let ak = a.pow(k)?;
    let star = m.try_mul(a)?.try_mul(&astar)?;

    let ma_y = m.try_mul(a)?.try_mul(y)?;
    let y_a_p = y.try_mul(a)?.try_mul(&p)?;
    let ps_a_m = ps.try_mul(a)?.try_mul(m)?;
    let y_ps_a_m = y.try_mul(&ps_a_m)?;
    let m_a = m.try_mul(a)?;
    let nine = eq(&y_ps_a_m.try_mul(y)?, y, tol)
        && eq(&y_ps_a_m, &m_a, tol)
        && eq(&ps_a_m.try_mul(y)?, &ps_a_m.try_mul(&astar)?, tol);

    Ok([
        // (i) Y = A^{F,ep} A A*
        eq(y, &star, tol),
        // (ii) A^{F,ep} A Y = Y and A^k Y = A^k A*
        eq(&ma_y, y, tol) && eq(&ak.try_mul(y)?, &ak.try_mul(&astar)?, tol),
        // (iii) A^{F,ep} A Y A A^+ = Y and A^k Y (A^+)* = A^k
        eq(&ma_y.try_mul(a)?.try_mul(&p)?, y, tol) && eq(&ak.try_mul(y)?.try_mul(&ps)?, &ak, tol),
        // (iv) A^{F,ep} A Y = Y and A Y = A A^{F,ep} A A*
        eq(&ma_y, y, tol) && eq(&a.try_mul(y)?, &a.try_mul(&star)?, tol),
        // (v) A^{F,ep} A Y = Y and (A^+)* Y = (A^+)* A^{F,ep} A A*
        eq(&ma_y, y, tol) && eq(&ps.try_mul(y)?, &ps.try_mul(&star)?, tol),
        // (vi) Y A A^+ = Y and Y (A^+)* = A^{F,ep} A
        eq(&y_a_p, y, tol) && eq(&y.try_mul(&ps)?, &m_a, tol),
        // (vii) Y A A^+ = Y and Y (A^+)* A^+ = A^{F,ep} A A^+
        eq(&y_a_p, y, tol) && eq(&y.try_mul(&ps)?.try_mul(&p)?, &m_a.try_mul(&p)?, tol),
        // (viii) Y A A^+ = Y and Y A = A^{F,ep} A A* A
        eq(&y_a_p, y, tol) && eq(&y.try_mul(a)?, &star.try_mul(a)?, tol),
        // (ix) three equations through (A^+)* A A^{F,ep}
        nine,
        // (x) the three of (ix) plus idempotency of the linking product
        nine && eq(&ps_a_m.try_mul(y)?.try_mul(&ps_a_m)?, &ps_a_m, tol),
    ])
}

fn projector_report(
    p: &Matrix,
    range_target: &Matrix,
    nullspace_target: &Matrix,
    tol: &Tolerance,
) -> Result<ProjectorReport> {
    let (idempotency_residual, idempotent) = equation_residual(&p.pow(2)?, p, tol)?;
    Ok(ProjectorReport {
        range_target_met: range_equal(p, range_target, tol)?,
        nullspace_target_met: nullspace_equal(p, nullspace_target, tol)?,
        projector: p.clone(),
        idempotency_residual,
        idempotent,
    })
}

/// With X = A^{*,ep,E}: (A^+)* X is the projector onto R(A^k) along
/// N(A^{ep,E}), and X (A^+)* the projector onto R(A* A^k) along
/// N(A^{ep,E} (A^+)*).
pub fn star_projectors(
    a: &Matrix,
    e: &Weight,
    tol: &Tolerance,
) -> Result<(ProjectorReport, ProjectorReport)> {
    let ce = core_ep(a, e, tol)?;
    let k = ce.index_used;
    let x = a.conj_transpose().try_mul(a)?.try_mul(&ce.value)?;
    let ps = moore_penrose(a, tol).conj_transpose();
    let ak = a.pow(k)?;

    let p1 = ps.try_mul(&x)?;
    let first = projector_report(&p1, &ak, &ce.value, tol)?;

    let p2 = x.try_mul(&ps)?;
    let second = projector_report(
        &p2,
        &a.conj_transpose().try_mul(&ak)?,
        &ce.value.try_mul(&ps)?,
        tol,
    )?;
    Ok((first, second))
}

/// Dual projectors for Y = A^{F,ep,*}. These are the conjugate transposes
/// of the primal projectors of A* with weight F^-1, which fixes the
/// spaces: Y (A^+)* projects onto R(F^-1 (A^k)*) = R(A^{F,ep}) along
/// N(A^k) = N(A^{F,ep}), and (A^+)* Y projects onto R((A^+)* A^{F,ep})
/// along N(A^k A*).
pub fn dual_star_projectors(
    a: &Matrix,
    f: &Weight,
    tol: &Tolerance,
) -> Result<(ProjectorReport, ProjectorReport)> {
    let de = dual_core_ep(a, f, tol)?;
    let k = de.index_used;
    let y = de.value.try_mul(a)?.try_mul(&a.conj_transpose())?;
    let ps = moore_penrose(a, tol).conj_transpose();
    let ak = a.pow(k)?;
    let range_dual = f.inverse().try_mul(&ak.conj_transpose())?;

    let p1 = y.try_mul(&ps)?;
    let first = projector_report(&p1, &range_dual, &ak, tol)?;

    let p2 = ps.try_mul(&y)?;
    let second = projector_report(
        &p2,
        &ps.try_mul(&de.value)?,
        &ak.try_mul(&a.conj_transpose())?,
        tol,
    )?;
    Ok((first, second))
}

/// Outer-inverse identification: X = A^{*,ep,E} is the outer inverse of
/// B = (A^+)* with prescribed range R(A* A^k) and nullspace N(A^{ep,E}),
/// i.e. XBX = X with those space equalities.
pub fn outer_inverse_identity(a: &Matrix, e: &Weight, tol: &Tolerance) -> Result<bool> {
    let ce = core_ep(a, e, tol)?;
    let k = ce.index_used;
    let x = a.conj_transpose().try_mul(a)?.try_mul(&ce.value)?;
    let b = moore_penrose(a, tol).conj_transpose();
    let outer = x.try_mul(&b)?.try_mul(&x)?.approx_eq(&x, tol);
    let range = range_equal(&x, &a.conj_transpose().try_mul(&a.pow(k)?)?, tol)?;
    let nullspace = nullspace_equal(&x, &ce.value, tol)?;
    Ok(outer && range && nullspace)
}

/// Dual outer-inverse identification: Y = A^{F,ep,*} is the outer inverse
/// of (A^+)* with range R(F^-1 (A^k)*) and nullspace N(A^k A*) (the
/// conjugate-transposed mirror of the primal identification).
pub fn dual_outer_inverse_identity(a: &Matrix, f: &Weight, tol: &Tolerance) -> Result<bool> {
    let de = dual_core_ep(a, f, tol)?;
    let k = de.index_used;
    let ak = a.pow(k)?;
    let y = de.value.try_mul(a)?.try_mul(&a.conj_transpose())?;
    let b = moore_penrose(a, tol).conj_transpose();
    let outer = y.try_mul(&b)?.try_mul(&y)?.approx_eq(&y, tol);
    let range = range_equal(&y, &f.inverse().try_mul(&ak.conj_transpose())?, tol)?;
    let nullspace = nullspace_equal(&y, &ak.try_mul(&a.conj_transpose())?, tol)?;
    Ok(outer && range && nullspace)
}
