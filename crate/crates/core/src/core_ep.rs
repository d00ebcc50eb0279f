//! E-weighted core-EP and F-weighted dual core-EP inverses, the index-1
//! weighted core inverses, and the structural laws relating them:
//! alternate constructions, Drazin recovery, power laws, composition and
//! additivity.

use std::fmt;

use crate::classical::{
    drazin, ensure_square, ensure_weight_matches, one_four_f, one_three_e, weighted_mp,
    InverseKind, InverseResult,
};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::verify::{check_axioms, Axiom, AxiomReport};
use crate::weight::{Tolerance, Weight};

/// Which construction produced a core-EP value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstructionPath {
    /// A^D A^m X with X a {1,3^E} (dually {1,4^F}) inverse of A^m.
    ThmOneThreePower,
    /// A^D A^m (A^m)^+_{E,I} through the generalized weighted Moore-Penrose.
    CorWeightedMp,
    /// A^m (A^{m+1})^+_{E,I}, positive definite weights.
    PropMpOfPower,
    /// A^D A^{2k} X* E from a factor of A^k.
    FactorSufficient,
}

impl fmt::Display for ConstructionPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConstructionPath::ThmOneThreePower => "thm_onethree_power",
            ConstructionPath::CorWeightedMp => "cor_weighted_mp",
            ConstructionPath::PropMpOfPower => "prop_mp_of_power",
            ConstructionPath::FactorSufficient => "factor_sufficient",
        })
    }
}

/// Certificate attached to a core-EP computation: the index k, the power m
/// used by the construction (m >= k), the verified defining axioms and the
/// construction path.
#[derive(Debug, Clone)]
pub struct CoreEpCertificate {
    pub k: usize,
    pub m: usize,
    pub axioms: AxiomReport,
    pub construction_path: ConstructionPath,
}

fn rename_no_exist(err: Error, kind: &'static str) -> Error {
    match err {
        Error::NoExist { reason, .. } => Error::NoExist { kind, reason },
        other => other,
    }
}

// ----------------------------------------------------------------------
// index-1 weighted core inverses
// ----------------------------------------------------------------------

/// E-weighted core inverse A^{#,E} = A^# A Y with Y a {1,3^E} inverse of A.
/// Exists only for ind(A) <= 1 with A{1,3^E} non-empty.
pub fn weighted_core(a: &Matrix, e: &Weight, tol: &Tolerance) -> Result<Matrix> {
    ensure_square(a)?;
    ensure_weight_matches(a, e, a.rows(), "weighted_core")?;
    let k = a.index(tol)?;
    if k > 1 {
        return Err(Error::no_exist(
            "E-weighted core inverse",
            format!("index is {k}, the weighted core inverse needs index <= 1"),
        ));
    }
    let y =
        one_three_e(a, e, tol).map_err(|err| rename_no_exist(err, "E-weighted core inverse"))?;
    let sharp = drazin(a, tol)?; // the group inverse, since ind(A) <= 1
    let value = sharp.try_mul(a)?.try_mul(&y)?;
    let report = check_axioms(
        a,
        &value,
        &[Axiom::P6, Axiom::P7, Axiom::P3E],
        Some(e),
        None,
        tol,
    )?;
    if !report.all_passed() {
        return Err(Error::Internal(
            "weighted core candidate failed (6),(7),(3^E)".into(),
        ));
    }
    Ok(value)
}

/// F-weighted dual core inverse: Y A A^# with Y a {1,4^F} inverse of A.
pub fn weighted_dual_core(a: &Matrix, f: &Weight, tol: &Tolerance) -> Result<Matrix> {
    ensure_square(a)?;
    ensure_weight_matches(a, f, a.rows(), "weighted_dual_core")?;
    let k = a.index(tol)?;
    if k > 1 {
        return Err(Error::no_exist(
            "F-weighted dual core inverse",
            format!("index is {k}, the weighted dual core inverse needs index <= 1"),
        ));
    }
    let y = one_four_f(a, f, tol)
        .map_err(|err| rename_no_exist(err, "F-weighted dual core inverse"))?;
    let sharp = drazin(a, tol)?;
    let value = y.try_mul(a)?.try_mul(&sharp)?;
    let report = check_axioms(
        a,
        &value,
        &[Axiom::P8, Axiom::P9, Axiom::P4F],
        None,
        Some(f),
        tol,
    )?;
    if !report.all_passed() {
        return Err(Error::Internal(
            "weighted dual core candidate failed (8),(9),(4^F)".into(),
        ));
    }
    Ok(value)
}

// ----------------------------------------------------------------------
// weighted core-EP inverses
// ----------------------------------------------------------------------

/// E-weighted core-EP inverse by A^D A^m X with X a {1,3^E} inverse of
/// A^m, at an explicit construction power m >= ind(A) (`None` means the
/// minimal m = ind(A)). The result does not depend on m or on which
/// {1,3^E} inverse the solver picked.
pub fn core_ep_with_power(
    a: &Matrix,
    e: &Weight,
    m: Option<usize>,
    tol: &Tolerance,
) -> Result<(Matrix, CoreEpCertificate)> {
    ensure_square(a)?;
    ensure_weight_matches(a, e, a.rows(), "core_ep")?;
    let k = a.index(tol)?;
    let m = m.unwrap_or(k);
    if m < k {
        return Err(Error::PowerBelowIndex { m, k });
    }
    let am = a.pow(m)?;
    let x = one_three_e(&am, e, tol)
        .map_err(|err| rename_no_exist(err, "E-weighted core-EP inverse"))?;
    let value = drazin(a, tol)?.try_mul(&am)?.try_mul(&x)?;
    let axioms = check_axioms(
        a,
        &value,
        &[Axiom::P6k(k), Axiom::P7, Axiom::P3E],
        Some(e),
        None,
        tol,
    )?;
    if !axioms.all_passed() {
        return Err(Error::Internal(
            "core-EP candidate failed (6^k),(7),(3^E)".into(),
        ));
    }
    Ok((
        value,
        CoreEpCertificate {
            k,
            m,
            axioms,
            construction_path: ConstructionPath::ThmOneThreePower,
        },
    ))
}

/// E-weighted core-EP inverse A^{ep,E}: the unique X with
/// X A^{k+1} = A^k, A X^2 = X and (EAX)* = EAX, k = ind(A).
pub fn core_ep(a: &Matrix, e: &Weight, tol: &Tolerance) -> Result<InverseResult> {
    let (value, cert) = core_ep_with_power(a, e, None, tol)?;
    Ok(InverseResult {
        value,
        kind: InverseKind::CoreEpE,
        index_used: cert.k,
        path: format!("{} (m = {})", cert.construction_path, cert.m),
        report: cert.axioms,
    })
}

/// Dual construction Y A^m A^D with Y a {1,4^F} inverse of A^m.
pub fn dual_core_ep_with_power(
    a: &Matrix,
    f: &Weight,
    m: Option<usize>,
    tol: &Tolerance,
) -> Result<(Matrix, CoreEpCertificate)> {
    ensure_square(a)?;
    ensure_weight_matches(a, f, a.rows(), "dual_core_ep")?;
    let k = a.index(tol)?;
    let m = m.unwrap_or(k);
    if m < k {
        return Err(Error::PowerBelowIndex { m, k });
    }
    let am = a.pow(m)?;
    let y = one_four_f(&am, f, tol)
        .map_err(|err| rename_no_exist(err, "F-weighted dual core-EP inverse"))?;
    let value = y.try_mul(&am)?.try_mul(&drazin(a, tol)?)?;
    let axioms = check_axioms(
        a,
        &value,
        &[Axiom::P8k(k), Axiom::P9, Axiom::P4F],
        None,
        Some(f),
        tol,
    )?;
    if !axioms.all_passed() {
        return Err(Error::Internal(
            "dual core-EP candidate failed (8^k),(9),(4^F)".into(),
        ));
    }
    Ok((
        value,
        CoreEpCertificate {
            k,
            m,
            axioms,
            construction_path: ConstructionPath::ThmOneThreePower,
        },
    ))
}

/// F-weighted dual core-EP inverse A^{F,ep}: the unique X with
/// A^{k+1} X = A^k, X^2 A = X and (FXA)* = FXA, k = ind(A).
pub fn dual_core_ep(a: &Matrix, f: &Weight, tol: &Tolerance) -> Result<InverseResult> {
    let (value, cert) = dual_core_ep_with_power(a, f, None, tol)?;
    Ok(InverseResult {
        value,
        kind: InverseKind::DualCoreEpF,
        index_used: cert.k,
        path: format!("{} (m = {}, dual)", cert.construction_path, cert.m),
        report: cert.axioms,
    })
}

/// Core-EP through the generalized weighted Moore-Penrose inverse:
/// A^D A^m (A^m)^+_{E,I}, cross-checked against A^m (A^{m+1})^+_{E,I}
/// when E is positive definite, and against the primary construction.
pub fn core_ep_via_weighted_mp(a: &Matrix, e: &Weight, tol: &Tolerance) -> Result<Matrix> {
    ensure_square(a)?;
    ensure_weight_matches(a, e, a.rows(), "core_ep_via_weighted_mp")?;
    let k = a.index(tol)?;
    let id = Weight::identity(a.rows(), a.backend());
    let am = a.pow(k)?;
    let wmp = weighted_mp(&am, e, &id, tol)
        .map_err(|err| rename_no_exist(err, "E-weighted core-EP inverse"))?;
    let value = drazin(a, tol)?.try_mul(&am)?.try_mul(&wmp)?;

    if e.is_positive_definite() {
        let wmp_next = weighted_mp(&a.pow(k + 1)?, e, &id, tol)?;
        let alt = am.try_mul(&wmp_next)?;
        if !value.approx_eq(&alt, tol) {
            return Err(Error::Internal(
                "core-EP routes A^D A^m (A^m)+_{E,I} and A^m (A^{m+1})+_{E,I} disagree".into(),
            ));
        }
    }
    let primary = core_ep(a, e, tol)?;
    if !value.approx_eq(&primary.value, tol) {
        return Err(Error::Internal(
            "weighted-MP core-EP route disagrees with the primary construction".into(),
        ));
    }
    Ok(value)
}

/// Sufficient-condition construction: when A^k = X ((A^k)*)^2 E A^k, the
/// core-EP inverse is A^D A^{2k} X* E. The factor identity is checked as a
/// precondition.
pub fn core_ep_from_factorization(
    a: &Matrix,
    e: &Weight,
    x: &Matrix,
    tol: &Tolerance,
) -> Result<Matrix> {
    ensure_square(a)?;
    ensure_weight_matches(a, e, a.rows(), "core_ep_from_factorization")?;
    let k = a.index(tol)?;
    let ak = a.pow(k)?;
    let recon = x
        .try_mul(&ak.conj_transpose().pow(2)?)?
        .try_mul(e.matrix())?
        .try_mul(&ak)?;
    if !ak.approx_eq(&recon, tol) {
        return Err(Error::Precondition(
            "X does not satisfy A^k = X ((A^k)*)^2 E A^k".into(),
        ));
    }
    let value = drazin(a, tol)?
        .try_mul(&a.pow(2 * k)?)?
        .try_mul(&x.conj_transpose())?
        .try_mul(e.matrix())?;
    let primary = core_ep(a, e, tol)?;
    if !value.approx_eq(&primary.value, tol) {
        return Err(Error::Internal(
            "factor-based core-EP route disagrees with the primary construction".into(),
        ));
    }
    Ok(value)
}

/// Drazin recovery A^D = X^{m+1} A^m from a core-EP inverse X, any
/// m >= ind(A).
pub fn drazin_from_core_ep(a: &Matrix, x: &Matrix, m: usize, tol: &Tolerance) -> Result<Matrix> {
    ensure_square(a)?;
    let k = a.index(tol)?;
    if m < k {
        return Err(Error::PowerBelowIndex { m, k });
    }
    let value = x.pow(m + 1)?.try_mul(&a.pow(m)?)?;
    let expected = drazin(a, tol)?;
    if !value.approx_eq(&expected, tol) {
        return Err(Error::Precondition(
            "X^{m+1} A^m is not the Drazin inverse: X is not a weighted core-EP inverse of A"
                .into(),
        ));
    }
    Ok(value)
}

/// Power law: (A^l)^{ep,E} = (A^{ep,E})^l and A^{ep,E} = A^{l-1} (A^l)^{ep,E}.
/// Returns the core-EP inverse of A^l after asserting both identities.
pub fn core_ep_power(a: &Matrix, e: &Weight, l: usize, tol: &Tolerance) -> Result<Matrix> {
    if l == 0 {
        return Err(Error::Precondition("power l must be positive".into()));
    }
    let base = core_ep(a, e, tol)?;
    let al = a.pow(l)?;
    let powered = core_ep(&al, e, tol)?.value;
    if !powered.approx_eq(&base.value.pow(l)?, tol) {
        return Err(Error::Internal(
            "(A^l)^{ep,E} differs from (A^{ep,E})^l".into(),
        ));
    }
    let recovered = a.pow(l - 1)?.try_mul(&powered)?;
    if !recovered.approx_eq(&base.value, tol) {
        return Err(Error::Internal(
            "A^{l-1} (A^l)^{ep,E} does not recover A^{ep,E}".into(),
        ));
    }
    Ok(powered)
}

/// (A^{ep,E})^{ep,E} = A^2 A^{ep,E}; the closed form is returned and the
/// recomputed core-EP of the core-EP is asserted equal.
pub fn core_ep_of_core_ep(a: &Matrix, e: &Weight, tol: &Tolerance) -> Result<Matrix> {
    let base = core_ep(a, e, tol)?;
    let value = a.pow(2)?.try_mul(&base.value)?;
    let recomputed = core_ep(&base.value, e, tol)?.value;
    if !value.approx_eq(&recomputed, tol) {
        return Err(Error::Internal(
            "A^2 A^{ep,E} differs from the core-EP inverse of A^{ep,E}".into(),
        ));
    }
    Ok(value)
}

// ----------------------------------------------------------------------
// additive laws
// ----------------------------------------------------------------------

/// Sum or difference flavour of the additive theorems.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdditiveOp {
    Sum,
    Difference,
}

impl AdditiveOp {
    fn combine(self, a: &Matrix, b: &Matrix) -> Result<Matrix> {
        match self {
            AdditiveOp::Sum => a.try_add(b),
            AdditiveOp::Difference => a.try_sub(b),
        }
    }
}

fn hypothesis_is_zero(m: &Matrix, scale: f64, tol: &Tolerance) -> bool {
    match m.backend() {
        crate::scalar::Backend::Exact => m.is_zero(),
        crate::scalar::Backend::Float => m.frobenius_norm() <= tol.residual_rel * (1.0 + scale),
    }
}

fn check_commuting_annihilation(
    a: &Matrix,
    b: &Matrix,
    tol: &Tolerance,
    failed: &mut Vec<&'static str>,
) -> Result<()> {
    let scale = a.frobenius_norm() * b.frobenius_norm();
    if !hypothesis_is_zero(&a.try_mul(b)?, scale, tol) {
        failed.push("AB = 0");
    }
    if !hypothesis_is_zero(&b.try_mul(a)?, scale, tol) {
        failed.push("BA = 0");
    }
    Ok(())
}

/// (A ± B)^{ep,E} = A^{ep,E} ± B^{ep,E} under A*EB = 0 and AB = 0 = BA.
/// The hypotheses are checked, not trusted; the combined value is asserted
/// against the directly computed core-EP of A ± B.
pub fn additive_core_ep(
    a: &Matrix,
    b: &Matrix,
    e: &Weight,
    op: AdditiveOp,
    tol: &Tolerance,
) -> Result<Matrix> {
    ensure_square(a)?;
    a.try_add(b)?; // shape/backend agreement
    ensure_weight_matches(a, e, a.rows(), "additive_core_ep")?;

    let mut failed = Vec::new();
    let star_scale = a.frobenius_norm() * e.matrix().frobenius_norm() * b.frobenius_norm();
    let a_star_eb = a.conj_transpose().try_mul(e.matrix())?.try_mul(b)?;
    if !hypothesis_is_zero(&a_star_eb, star_scale, tol) {
        failed.push("A*EB = 0");
    }
    check_commuting_annihilation(a, b, tol, &mut failed)?;
    if !failed.is_empty() {
        return Err(Error::HypothesisFailed(failed));
    }

    let pa = core_ep(a, e, tol)?.value;
    let pb = core_ep(b, e, tol)?.value;
    let combined = op.combine(&pa, &pb)?;
    let direct = core_ep(&op.combine(a, b)?, e, tol)?.value;
    if !combined.approx_eq(&direct, tol) {
        return Err(Error::Internal(
            "blockwise core-EP sum disagrees with the core-EP of the sum".into(),
        ));
    }
    Ok(combined)
}

/// Dual additive law under A F^-1 B* = 0 and AB = 0 = BA.
pub fn additive_dual_core_ep(
    a: &Matrix,
    b: &Matrix,
    f: &Weight,
    op: AdditiveOp,
    tol: &Tolerance,
) -> Result<Matrix> {
    ensure_square(a)?;
    a.try_add(b)?;
    ensure_weight_matches(a, f, a.rows(), "additive_dual_core_ep")?;

    let mut failed = Vec::new();
    let scale = a.frobenius_norm() * f.inverse().frobenius_norm() * b.frobenius_norm();
    let afb = a.try_mul(&f.inverse())?.try_mul(&b.conj_transpose())?;
    if !hypothesis_is_zero(&afb, scale, tol) {
        failed.push("A F^-1 B* = 0");
    }
    check_commuting_annihilation(a, b, tol, &mut failed)?;
    if !failed.is_empty() {
        return Err(Error::HypothesisFailed(failed));
    }

    let pa = dual_core_ep(a, f, tol)?.value;
    let pb = dual_core_ep(b, f, tol)?.value;
    let combined = op.combine(&pa, &pb)?;
    let direct = dual_core_ep(&op.combine(a, b)?, f, tol)?.value;
    if !combined.approx_eq(&direct, tol) {
        return Err(Error::Internal(
            "blockwise dual core-EP sum disagrees with the dual core-EP of the sum".into(),
        ));
    }
    Ok(combined)
}

/// (A ± B)^D = A^D ± B^D under AB = 0 = BA.
pub fn additive_drazin(a: &Matrix, b: &Matrix, op: AdditiveOp, tol: &Tolerance) -> Result<Matrix> {
    ensure_square(a)?;
    a.try_add(b)?;
    let mut failed = Vec::new();
    check_commuting_annihilation(a, b, tol, &mut failed)?;
    if !failed.is_empty() {
        return Err(Error::HypothesisFailed(failed));
    }
    let combined = op.combine(&drazin(a, tol)?, &drazin(b, tol)?)?;
    let direct = drazin(&op.combine(a, b)?, tol)?;
    if !combined.approx_eq(&direct, tol) {
        return Err(Error::Internal(
            "blockwise Drazin sum disagrees with the Drazin inverse of the sum".into(),
        ));
    }
    Ok(combined)
}
