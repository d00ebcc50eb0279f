//! Kind-dispatched computation and verification, the entry point the CLI
//! builds on.

use crate::classical::{
    drazin, group_inverse, moore_penrose, one_four_f, one_three_e, weighted_mp, InverseKind,
};
use crate::core_ep::{core_ep, dual_core_ep, weighted_core, weighted_dual_core};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::star::{
    dual_core_ep_star, star_core_ep, verify_dual_star_system, verify_star_system, StarSystemReport,
};
use crate::verify::{axiom_bundle, check_axioms, AxiomReport};
use crate::weight::{Tolerance, Weight};

/// Certificate attached to a computed or verified candidate: either the
/// kind's axiom bundle or, for the star matrices, the defining equation
/// system.
#[derive(Debug, Clone)]
pub enum Certificate {
    Axioms(AxiomReport),
    StarSystem(StarSystemReport),
}

impl Certificate {
    pub fn passed(&self) -> bool {
        match self {
            Certificate::Axioms(report) => report.all_passed(),
            Certificate::StarSystem(report) => report.unique_solution,
        }
    }

    /// (label, residual, passed, tolerance) rows for tabular output.
    pub fn rows(&self) -> Vec<(String, f64, bool, f64)> {
        match self {
            Certificate::Axioms(report) => report
                .checks
                .iter()
                .map(|c| (c.axiom.to_string(), c.residual, c.passed, c.tolerance_used))
                .collect(),
            Certificate::StarSystem(report) => report
                .residuals
                .iter()
                .map(|(label, residual)| {
                    (
                        (*label).to_string(),
                        *residual,
                        report.unique_solution,
                        f64::NAN,
                    )
                })
                .collect(),
        }
    }
}

/// A computed inverse of any kind, with everything the CLI needs to write
/// an output file and a certificate sidecar.
#[derive(Debug, Clone)]
pub struct Computation {
    pub kind: InverseKind,
    pub value: Matrix,
    pub index_used: usize,
    pub path: String,
    pub certificate: Certificate,
}

fn require_e(kind: InverseKind, e: Option<&Weight>) -> Result<&Weight> {
    e.ok_or_else(|| Error::Precondition(format!("kind {kind} requires the weight E")))
}

fn require_f(kind: InverseKind, f: Option<&Weight>) -> Result<&Weight> {
    f.ok_or_else(|| Error::Precondition(format!("kind {kind} requires the weight F")))
}

/// Compute the requested inverse of A, verifying its defining bundle.
pub fn compute_inverse(
    kind: InverseKind,
    a: &Matrix,
    e: Option<&Weight>,
    f: Option<&Weight>,
    tol: &Tolerance,
) -> Result<Computation> {
    let k = if a.is_square() { a.index(tol)? } else { 0 };
    let (value, path) = match kind {
        InverseKind::MoorePenrose => (
            moore_penrose(a, tol),
            "full-rank factorization / SVD".to_string(),
        ),
        InverseKind::Drazin => (drazin(a, tol)?, format!("A^l (A^(2l+1))+ A^l with l = {k}")),
        InverseKind::Group => (group_inverse(a, tol)?, "Drazin at index <= 1".to_string()),
        InverseKind::OneThreeE => (
            one_three_e(a, require_e(kind, e)?, tol)?,
            "Z* E from A = Z A* E A".to_string(),
        ),
        InverseKind::OneFourF => (
            one_four_f(a, require_f(kind, f)?, tol)?,
            "F^-1 X* from A = A F^-1 A* X".to_string(),
        ),
        InverseKind::WeightedMp => (
            weighted_mp(a, require_e(kind, e)?, require_f(kind, f)?, tol)?,
            "Y_{1,4^F} A Y_{1,3^E}".to_string(),
        ),
        InverseKind::WeightedCore => (
            weighted_core(a, require_e(kind, e)?, tol)?,
            "A# A A^{(1,3^E)}".to_string(),
        ),
        InverseKind::WeightedDualCore => (
            weighted_dual_core(a, require_f(kind, f)?, tol)?,
            "A^{(1,4^F)} A A#".to_string(),
        ),
        InverseKind::CoreEpE => {
            let r = core_ep(a, require_e(kind, e)?, tol)?;
            let path = r.path.clone();
            (r.value, path)
        }
        InverseKind::DualCoreEpF => {
            let r = dual_core_ep(a, require_f(kind, f)?, tol)?;
            let path = r.path.clone();
            (r.value, path)
        }
        InverseKind::StarCoreEp => (
            star_core_ep(a, require_e(kind, e)?, tol)?,
            "A* A A^{ep,E}".to_string(),
        ),
        InverseKind::DualCoreEpStar => (
            dual_core_ep_star(a, require_f(kind, f)?, tol)?,
            "A^{F,ep} A A*".to_string(),
        ),
    };
    let certificate = verify_candidate(kind, a, &value, e, f, tol)?;
    if !certificate.passed() {
        return Err(Error::Internal(format!(
            "computed {kind} value failed its own certificate"
        )));
    }
    Ok(Computation {
        kind,
        value,
        index_used: k,
        path,
        certificate,
    })
}

/// Evaluate the defining bundle (or star system) of `kind` for an
/// arbitrary candidate X.
pub fn verify_candidate(
    kind: InverseKind,
    a: &Matrix,
    x: &Matrix,
    e: Option<&Weight>,
    f: Option<&Weight>,
    tol: &Tolerance,
) -> Result<Certificate> {
    match kind {
        InverseKind::StarCoreEp => {
            let report = verify_star_system(a, require_e(kind, e)?, x, tol)?;
            Ok(Certificate::StarSystem(report))
        }
        InverseKind::DualCoreEpStar => {
            let report = verify_dual_star_system(a, require_f(kind, f)?, x, tol)?;
            Ok(Certificate::StarSystem(report))
        }
        _ => {
            let k = if a.is_square() { a.index(tol)? } else { 0 };
            let bundle = axiom_bundle(kind, k).expect("non-star kinds have axiom bundles");
            let id_e;
            let id_f;
            let (we, wf) = if kind == InverseKind::MoorePenrose {
                id_e = Weight::identity(a.rows(), a.backend());
                id_f = Weight::identity(a.cols(), a.backend());
                (Some(&id_e), Some(&id_f))
            } else {
                (e, f)
            };
            let needs = kind.needs_weights();
            if needs.0 {
                require_e(kind, we)?;
            }
            if needs.1 {
                require_f(kind, wf)?;
            }
            let report = check_axioms(a, x, &bundle, we, wf, tol)?;
            Ok(Certificate::Axioms(report))
        }
    }
}
