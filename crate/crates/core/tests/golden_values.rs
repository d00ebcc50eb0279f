//! Reproduction of the embedded reference examples, bit-exact on the
//! exact backend and within 1e-10 relative Frobenius error on float.

use wcep_core::classical::{drazin, moore_penrose};
use wcep_core::compute::{compute_inverse, verify_candidate};
use wcep_core::core_ep::{core_ep, core_ep_of_core_ep, dual_core_ep};
use wcep_core::reference::{example_one, example_two};
use wcep_core::verify::{check_axioms, classify_inverse, range_equal, Axiom};
use wcep_core::{InverseKind, Matrix, Tolerance, Weight};

fn rel_frobenius_error(x: &Matrix, golden: &Matrix) -> f64 {
    let diff = x.try_sub(golden).unwrap();
    diff.frobenius_norm() / golden.frobenius_norm()
}

#[test]
fn example_one_index_is_two_on_both_backends() {
    let ex = example_one();
    assert_eq!(ex.a.index(&Tolerance::exact()).unwrap(), 2);
    assert_eq!(
        ex.a.to_float().index(&Tolerance::float_default()).unwrap(),
        2
    );
}

#[test]
fn example_one_core_ep_exact() {
    let ex = example_one();
    let tol = Tolerance::exact();
    let got = core_ep(&ex.a, &ex.e, &tol).unwrap();
    assert_eq!(got.value, ex.core_ep);
    assert_eq!(got.index_used, 2);
    assert!(got.report.all_passed());
}

#[test]
fn example_one_dual_core_ep_exact() {
    let ex = example_one();
    let tol = Tolerance::exact();
    let got = dual_core_ep(&ex.a, &ex.f, &tol).unwrap();
    assert_eq!(got.value, ex.dual_core_ep);
}

#[test]
fn example_two_drazin_and_core_ep_exact() {
    let ex = example_two();
    let tol = Tolerance::exact();
    assert_eq!(ex.a.index(&tol).unwrap(), 2);
    assert_eq!(drazin(&ex.a, &tol).unwrap(), ex.drazin);
    assert_eq!(core_ep(&ex.a, &ex.e, &tol).unwrap().value, ex.core_ep);

    let twice = core_ep_of_core_ep(&ex.a, &ex.e, &tol).unwrap();
    assert_eq!(twice, ex.core_ep_of_core_ep);
    // the double inverse is not the original matrix
    assert_ne!(twice, ex.a);
}

#[test]
fn example_two_published_witness_is_a_one_three_e_inverse() {
    let ex = example_two();
    let tol = Tolerance::exact();
    let a2 = ex.a.pow(2).unwrap();
    let report = check_axioms(
        &a2,
        &ex.one_three_of_a_squared,
        &[Axiom::P1, Axiom::P3E],
        Some(&ex.e),
        None,
        &tol,
    )
    .unwrap();
    assert!(report.all_passed());
    assert!(report.checks.iter().all(|c| c.residual == 0.0));
}

#[test]
fn golden_values_on_float_backend() {
    let tol = Tolerance::float_default();
    let ex1 = example_one();
    let (a1, e1, f1) = (ex1.a.to_float(), ex1.e.to_float(), ex1.f.to_float());
    let ce = core_ep(&a1, &e1, &tol).unwrap().value;
    assert!(rel_frobenius_error(&ce, &ex1.core_ep.to_float()) <= 1e-10);
    let de = dual_core_ep(&a1, &f1, &tol).unwrap().value;
    assert!(rel_frobenius_error(&de, &ex1.dual_core_ep.to_float()) <= 1e-10);

    let ex2 = example_two();
    let (a2, e2) = (ex2.a.to_float(), ex2.e.to_float());
    assert_eq!(a2.index(&tol).unwrap(), 2);
    let dz = drazin(&a2, &tol).unwrap();
    assert!(rel_frobenius_error(&dz, &ex2.drazin.to_float()) <= 1e-10);
    let ce2 = core_ep(&a2, &e2, &tol).unwrap().value;
    assert!(rel_frobenius_error(&ce2, &ex2.core_ep.to_float()) <= 1e-10);
    let twice = core_ep_of_core_ep(&a2, &e2, &tol).unwrap();
    assert!(rel_frobenius_error(&twice, &ex2.core_ep_of_core_ep.to_float()) <= 1e-10);
}

#[test]
fn classify_reference_core_ep_value() {
    let ex = example_two();
    let tol = Tolerance::exact();
    let kinds = classify_inverse(&ex.a, &ex.core_ep, Some(&ex.e), None, &tol).unwrap();
    assert!(kinds.contains(&InverseKind::CoreEpE));
    // AX != XA for this example, so it is not the Drazin inverse
    assert!(!kinds.contains(&InverseKind::Drazin));
}

#[test]
fn classify_identity_covers_all_kinds() {
    let tol = Tolerance::exact();
    let a = Matrix::identity(3, wcep_core::Backend::Exact);
    let e = Weight::identity(3, wcep_core::Backend::Exact);
    let f = Weight::identity(3, wcep_core::Backend::Exact);
    let kinds = classify_inverse(&a, &a, Some(&e), Some(&f), &tol).unwrap();
    assert_eq!(kinds.len(), InverseKind::ALL.len());

    let zero = Matrix::zeros(3, 3, wcep_core::Backend::Exact);
    let none = classify_inverse(&a, &zero, Some(&e), Some(&f), &tol).unwrap();
    assert!(none.is_empty());
}

#[test]
fn range_characterization_on_example_one() {
    let ex = example_one();
    let tol = Tolerance::exact();
    let x = core_ep(&ex.a, &ex.e, &tol).unwrap().value;
    let ak = ex.a.pow(2).unwrap();
    assert!(range_equal(&x, &ak, &tol).unwrap());
    assert!(range_equal(
        &x.conj_transpose(),
        &ex.e.matrix().try_mul(&ak).unwrap(),
        &tol
    )
    .unwrap());
}

#[test]
fn compute_dispatch_matches_direct_calls() {
    let ex = example_one();
    let tol = Tolerance::exact();
    let c = compute_inverse(InverseKind::CoreEpE, &ex.a, Some(&ex.e), None, &tol).unwrap();
    assert_eq!(c.value, ex.core_ep);
    assert!(c.certificate.passed());

    let mp = compute_inverse(InverseKind::MoorePenrose, &ex.a, None, None, &tol).unwrap();
    assert_eq!(mp.value, moore_penrose(&ex.a, &tol));

    // verifying the dual value against the core-EP bundle must fail
    let wrong = verify_candidate(
        InverseKind::CoreEpE,
        &ex.a,
        &ex.dual_core_ep,
        Some(&ex.e),
        None,
        &tol,
    )
    .unwrap();
    assert!(!wrong.passed());
}
