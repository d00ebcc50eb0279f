//! Moore-Penrose, Drazin, group, {1,3^E}/{1,4^F} and generalized weighted
//! Moore-Penrose inverses. These are the building blocks the weighted
//! core-EP constructions consume.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::dense::Dense;
use crate::error::{Error, Result};
use crate::matrix::{solve_left, solve_right, Matrix};
use crate::scalar::GaussianRational;
use crate::verify::{check_axioms, Axiom, AxiomReport};
use crate::weight::{Tolerance, Weight};

/// Names of the inverse families computed by this library.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InverseKind {
    MoorePenrose,
    Drazin,
    Group,
    OneThreeE,
    OneFourF,
    WeightedMp,
    WeightedCore,
    WeightedDualCore,
    CoreEpE,
    DualCoreEpF,
    StarCoreEp,
    DualCoreEpStar,
}

impl InverseKind {
    pub const ALL: [InverseKind; 12] = [
        InverseKind::MoorePenrose,
        InverseKind::Drazin,
        InverseKind::Group,
        InverseKind::OneThreeE,
        InverseKind::OneFourF,
        InverseKind::WeightedMp,
        InverseKind::WeightedCore,
        InverseKind::WeightedDualCore,
        InverseKind::CoreEpE,
        InverseKind::DualCoreEpF,
        InverseKind::StarCoreEp,
        InverseKind::DualCoreEpStar,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            InverseKind::MoorePenrose => "moore-penrose",
            InverseKind::Drazin => "drazin",
            InverseKind::Group => "group",
            InverseKind::OneThreeE => "one-three-e",
            InverseKind::OneFourF => "one-four-f",
            InverseKind::WeightedMp => "weighted-mp",
            InverseKind::WeightedCore => "weighted-core",
            InverseKind::WeightedDualCore => "weighted-dual-core",
            InverseKind::CoreEpE => "core-ep",
            InverseKind::DualCoreEpF => "dual-core-ep",
            InverseKind::StarCoreEp => "star-core-ep",
            InverseKind::DualCoreEpStar => "dual-core-ep-star",
        }
    }

    /// Which weights the kind's definition involves.
    pub fn needs_weights(self) -> (bool, bool) {
        match self {
            InverseKind::MoorePenrose | InverseKind::Drazin | InverseKind::Group => (false, false),
            InverseKind::OneThreeE
            | InverseKind::WeightedCore
            | InverseKind::CoreEpE
            | InverseKind::StarCoreEp => (true, false),
            InverseKind::OneFourF
            | InverseKind::WeightedDualCore
            | InverseKind::DualCoreEpF
            | InverseKind::DualCoreEpStar => (false, true),
            InverseKind::WeightedMp => (true, true),
        }
    }
}

impl fmt::Display for InverseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for InverseKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        InverseKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown inverse kind {s:?}")))
    }
}

/// A computed inverse together with its certificate.
#[derive(Debug, Clone)]
pub struct InverseResult {
    pub value: Matrix,
    pub kind: InverseKind,
    /// The k (or construction power m) the computation used.
    pub index_used: usize,
    /// Free-text construction identifier.
    pub path: String,
    pub report: AxiomReport,
}

// ----------------------------------------------------------------------
// operations
// ----------------------------------------------------------------------

/// Moore-Penrose pseudoinverse: exact backend through the full-rank
/// factorization formula, float backend through the SVD.
pub fn moore_penrose(a: &Matrix, tol: &Tolerance) -> Matrix {
    a.pinv(tol)
}

pub(crate) fn ensure_square(a: &Matrix) -> Result<()> {
    if a.is_square() {
        Ok(())
    } else {
        Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        })
    }
}

pub(crate) fn ensure_weight_matches(
    a: &Matrix,
    w: &Weight,
    expected: usize,
    name: &'static str,
) -> Result<()> {
    if w.size() != expected {
        return Err(Error::DimensionMismatch {
            context: name,
            lhs_rows: a.rows(),
            lhs_cols: a.cols(),
            rhs_rows: w.size(),
            rhs_cols: w.size(),
        });
    }
    if w.backend() != a.backend() {
        return Err(Error::BackendMismatch(name));
    }
    Ok(())
}

/// Drazin inverse via A^l (A^{2l+1})^+ A^l with l = ind(A). On the exact
/// backend the result is cross-checked against the full-rank-factorization
/// recursion.
pub fn drazin(a: &Matrix, tol: &Tolerance) -> Result<Matrix> {
    ensure_square(a)?;
    let l = a.index(tol)?;
    let al = a.pow(l)?;
    let mid = moore_penrose(&a.pow(2 * l + 1)?, tol);
    let x = al.try_mul(&mid)?.try_mul(&al)?;
    if let Some(m) = a.as_exact() {
        let cross = Matrix::from_exact(drazin_by_factorization(m));
        if cross != x {
            return Err(Error::Internal(
                "Drazin cross-check: pseudoinverse route and factorization recursion disagree"
                    .into(),
            ));
        }
    }
    Ok(x)
}

/// Full-rank-factorization recursion for the Drazin inverse: with A = PQ
/// and B = QP, A^D = P (B^D)^2 Q, recursing until B is invertible or zero.
fn drazin_by_factorization(a: &Dense<GaussianRational>) -> Dense<GaussianRational> {
    if a.is_zero() {
        return Dense::zeros(a.rows, a.cols);
    }
    let (p, q) = a.full_rank_factorization();
    let b = q.mul(&p);
    let bd = match b.inverse() {
        Some(inv) => inv,
        None => drazin_by_factorization(&b),
    };
    p.mul(&bd).mul(&bd).mul(&q)
}

/// Group inverse: the Drazin inverse when ind(A) <= 1, nonexistent above.
pub fn group_inverse(a: &Matrix, tol: &Tolerance) -> Result<Matrix> {
    ensure_square(a)?;
    let k = a.index(tol)?;
    if k > 1 {
        return Err(Error::no_exist(
            "group inverse",
            format!("index is {k}, group inverse needs index <= 1"),
        ));
    }
    drazin(a, tol)
}

/// A {1,3^E} inverse of A, from the consistency of A = Z A* E A: the
/// solver's canonical solution Z yields Y = Z* E with AYA = A and
/// (EAY)* = EAY. Nonexistence of a solution is the nonexistence of the
/// whole class.
pub fn one_three_e(a: &Matrix, e: &Weight, tol: &Tolerance) -> Result<Matrix> {
    ensure_weight_matches(a, e, a.rows(), "one_three_e")?;
    let b = a.conj_transpose().try_mul(e.matrix())?.try_mul(a)?;
    let z = solve_right(&b, a, tol)?
        .ok_or_else(|| Error::no_exist("{1,3^E} inverse", "A = Z A* E A has no solution"))?;
    let y = z.conj_transpose().try_mul(e.matrix())?;
    let report = check_axioms(a, &y, &[Axiom::P1, Axiom::P3E], Some(e), None, tol)?;
    if !report.all_passed() {
        return Err(Error::Internal(
            "constructed {1,3^E} candidate failed its axiom bundle".into(),
        ));
    }
    Ok(y)
}

/// A {1,4^F} inverse of A, dual construction: solve A F^-1 A* X = A and
/// take Y = F^-1 X*. The candidate is always verified before returning.
pub fn one_four_f(a: &Matrix, f: &Weight, tol: &Tolerance) -> Result<Matrix> {
    ensure_weight_matches(a, f, a.cols(), "one_four_f")?;
    let f_inv = f.inverse();
    let b = a.try_mul(&f_inv)?.try_mul(&a.conj_transpose())?;
    let x = solve_left(&b, a, tol)?
        .ok_or_else(|| Error::no_exist("{1,4^F} inverse", "A = A F^-1 A* X has no solution"))?;
    let y = f_inv.try_mul(&x.conj_transpose())?;
    let report = check_axioms(a, &y, &[Axiom::P1, Axiom::P4F], None, Some(f), tol)?;
    if !report.all_passed() {
        return Err(Error::Internal(
            "constructed {1,4^F} candidate failed its axiom bundle".into(),
        ));
    }
    Ok(y)
}

/// Lower-triangular L with M = L L^*; float backend only, M hermitian
/// positive definite.
fn cholesky_float(m: &Dense<Complex64>) -> Option<Dense<Complex64>> {
    let n = m.rows;
    let mut l = Dense::<Complex64>::zeros(n, n);
    for j in 0..n {
        let mut diag = m.at(j, j).re;
        for k in 0..j {
            diag -= l.at(j, k).norm_sqr();
        }
        if diag <= 0.0 {
            return None;
        }
        let diag = diag.sqrt();
        *l.at_mut(j, j) = Complex64::new(diag, 0.0);
        for i in j + 1..n {
            let mut v = *m.at(i, j);
            for k in 0..j {
                v -= l.at(i, k) * l.at(j, k).conj();
            }
            *l.at_mut(i, j) = v / diag;
        }
    }
    Some(l)
}

/// Generalized weighted Moore-Penrose inverse A^+_{E,F}.
///
/// Existence is decided by the consistency of the two systems
/// A F^-1 A* E A Y = A = Z A F^-1 A* E A; on success the inverse is
/// assembled as F^-1 (EAY)* A F^-1 (EZA)*. On the float backend with both
/// weights positive definite a Cholesky change of basis is used instead.
/// The exact backend always takes the linear-system route, which stays in
/// the rational field.
pub fn weighted_mp(a: &Matrix, e: &Weight, f: &Weight, tol: &Tolerance) -> Result<Matrix> {
    ensure_weight_matches(a, e, a.rows(), "weighted_mp (E)")?;
    ensure_weight_matches(a, f, a.cols(), "weighted_mp (F)")?;

    let pd_float = a.as_float().is_some() && e.is_positive_definite() && f.is_positive_definite();
    let x = if pd_float {
        weighted_mp_cholesky(a, e, f, tol)?
    } else {
        weighted_mp_systems(a, e, f, tol)?
    };

    let report = check_axioms(
        a,
        &x,
        &[Axiom::P1, Axiom::P2, Axiom::P3E, Axiom::P4F],
        Some(e),
        Some(f),
        tol,
    )?;
    if !report.all_passed() {
        return Err(Error::Internal(
            "weighted Moore-Penrose candidate failed its axiom bundle".into(),
        ));
    }
    Ok(x)
}

fn weighted_mp_systems(a: &Matrix, e: &Weight, f: &Weight, tol: &Tolerance) -> Result<Matrix> {
    let f_inv = f.inverse();
    let m = a
        .try_mul(&f_inv)?
        .try_mul(&a.conj_transpose())?
        .try_mul(e.matrix())?
        .try_mul(a)?;
    let y = solve_left(&m, a, tol)?.ok_or_else(|| {
        Error::no_exist(
            "generalized weighted Moore-Penrose inverse",
            "A F^-1 A* E A Y = A has no solution",
        )
    })?;
    let z = solve_right(&m, a, tol)?.ok_or_else(|| {
        Error::no_exist(
            "generalized weighted Moore-Penrose inverse",
            "Z A F^-1 A* E A = A has no solution",
        )
    })?;
    // Y_{1,4^F} A Y_{1,3^E}
    let y14 = f_inv.try_mul(&e.matrix().try_mul(a)?.try_mul(&y)?.conj_transpose())?;
    let y13 = f_inv.try_mul(&e.matrix().try_mul(&z)?.try_mul(a)?.conj_transpose())?;
    y14.try_mul(a)?.try_mul(&y13)
}

fn weighted_mp_cholesky(a: &Matrix, e: &Weight, f: &Weight, tol: &Tolerance) -> Result<Matrix> {
    let (Some(ed), Some(fd)) = (e.matrix().as_float(), f.matrix().as_float()) else {
        return Err(Error::BackendMismatch("weighted_mp_cholesky"));
    };
    let r = Matrix::from_float(
        cholesky_float(ed)
            .ok_or(Error::Internal(
                "cholesky of positive definite E failed".into(),
            ))?
            .conj_transpose(),
    );
    let s = Matrix::from_float(
        cholesky_float(fd)
            .ok_or(Error::Internal(
                "cholesky of positive definite F failed".into(),
            ))?
            .conj_transpose(),
    );
    let s_inv = s.inverse()?;
    let tilde = r.try_mul(a)?.try_mul(&s_inv)?;
    s_inv.try_mul(&moore_penrose(&tilde, tol))?.try_mul(&r)
}
