//! Weighted core-EP generalized inverses of square complex matrices.
//!
//! The library computes and certifies E-weighted core-EP, F-weighted dual
//! core-EP, weighted and generalized Moore-Penrose, Drazin, group and
//! weighted core inverses, plus the star weighted core-EP matrices and
//! their defining matrix-equation systems, on two scalar backends:
//!
//! * exact — Gaussian rationals (arbitrary-precision rational real and
//!   imaginary parts); every decision is exact and reference values
//!   reproduce bit-for-bit;
//! * float — `Complex<f64>` with tolerance-controlled rank decisions.
//!
//! ```
//! use wcep_core::{core_ep, Matrix, Tolerance, Weight};
//!
//! let tol = Tolerance::exact();
//! let a = Matrix::exact_from_i64(3, 3, &[4, 3, 0, 0, 0, 0, -1, 4, 0]);
//! let e = Weight::new(
//!     Matrix::exact_from_i64(3, 3, &[3, 1, 2, 1, 1, 1, 2, 1, 2]),
//!     &tol,
//! )
//! .unwrap();
//! let inv = core_ep(&a, &e, &tol).unwrap();
//! assert_eq!(inv.index_used, 2);
//! assert!(inv.report.all_passed());
//! ```

pub mod classical;
pub mod compute;
pub mod core_ep;
mod dense;
pub mod error;
pub mod generate;
pub mod matrix;
pub mod outer;
pub mod reference;
pub mod scalar;
pub mod star;
mod svd;
pub mod verify;
pub mod weight;

pub use classical::{
    drazin, group_inverse, moore_penrose, one_four_f, one_three_e, weighted_mp, InverseKind,
    InverseResult,
};
pub use core_ep::{
    additive_core_ep, additive_drazin, additive_dual_core_ep, core_ep, core_ep_from_factorization,
    core_ep_of_core_ep, core_ep_power, core_ep_via_weighted_mp, drazin_from_core_ep, dual_core_ep,
    weighted_core, weighted_dual_core, AdditiveOp, ConstructionPath, CoreEpCertificate,
};
pub use error::{Error, Result};
pub use matrix::{solve_left, solve_right, Matrix};
pub use scalar::{Backend, GaussianRational, Scalar};
pub use star::{
    dual_core_ep_star, dual_star_equivalences, dual_star_projectors, outer_inverse_identity,
    star_core_ep, star_equivalences, star_projectors, verify_dual_star_system, verify_star_system,
    ProjectorReport, StarSide, StarSystemReport,
};
pub use verify::{
    check_axioms, classify_inverse, nullspace_equal, range_equal, Axiom, AxiomCheck, AxiomReport,
};
pub use weight::{Tolerance, Weight};
