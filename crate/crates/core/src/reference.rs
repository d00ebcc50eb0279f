//! Worked reference examples with known closed-form weighted inverses.
//!
//! Two published 3x3 examples are embedded with their exact values; the
//! test suite and the `paper-examples` CLI command recompute each value
//! and compare bit-for-bit on the exact backend.

use crate::matrix::Matrix;
use crate::weight::{Tolerance, Weight};

/// First example: index-2 real matrix with positive definite weights E, F
/// and known E-weighted core-EP and F-weighted dual core-EP inverses.
pub struct ExampleOne {
    pub a: Matrix,
    pub e: Weight,
    pub f: Weight,
    pub core_ep: Matrix,
    pub dual_core_ep: Matrix,
}

/// Second example: index-2 real matrix with a positive definite rational
/// weight E, known Drazin inverse, a published {1,3^E} inverse of A^2, the
/// E-weighted core-EP inverse and its own core-EP inverse (which differs
/// from A).
pub struct ExampleTwo {
    pub a: Matrix,
    pub e: Weight,
    pub drazin: Matrix,
    /// A {1,3^E} inverse of A^2 (membership object, not unique).
    pub one_three_of_a_squared: Matrix,
    pub core_ep: Matrix,
    pub core_ep_of_core_ep: Matrix,
}

fn strs(rows: &[&[&str]]) -> Matrix {
    Matrix::exact_from_strs(rows).expect("reference literals parse")
}

pub fn example_one() -> ExampleOne {
    let tol = Tolerance::exact();
    let a = Matrix::exact_from_i64(3, 3, &[4, 3, 0, 0, 0, 0, -1, 4, 0]);
    let e = Weight::new(
        Matrix::exact_from_i64(3, 3, &[3, 1, 2, 1, 1, 1, 2, 1, 2]),
        &tol,
    )
    .expect("E is hermitian invertible");
    let f = Weight::new(
        Matrix::exact_from_i64(3, 3, &[2, 1, 0, 1, 2, 1, 0, 1, 2]),
        &tol,
    )
    .expect("F is hermitian invertible");
    let core_ep = strs(&[
        &["5/17", "3/34", "3/17"],
        &["0", "0", "0"],
        &["-5/68", "-3/136", "-3/68"],
    ]);
    let dual_core_ep = strs(&[
        &["1/6", "1/8", "0"],
        &["1/9", "1/12", "0"],
        &["-1/18", "-1/24", "0"],
    ]);
    ExampleOne {
        a,
        e,
        f,
        core_ep,
        dual_core_ep,
    }
}

pub fn example_two() -> ExampleTwo {
    let tol = Tolerance::exact();
    let a = Matrix::exact_from_i64(3, 3, &[-1, 4, -5, 1, -4, 5, 1, -2, 3]);
    let e = Weight::new(
        strs(&[&["34/25", "0", "3/5"], &["0", "1", "0"], &["3/5", "0", "2"]]),
        &tol,
    )
    .expect("E is hermitian invertible");
    let drazin = strs(&[
        &["0", "5/4", "-5/4"],
        &["0", "-5/4", "5/4"],
        &["0", "-3/4", "3/4"],
    ]);
    let one_three_of_a_squared = strs(&[
        &["0", "0", "0"],
        &["-5/236", "5/236", "3/236"],
        &["5/236", "-5/236", "-3/236"],
    ]);
    let core_ep = strs(&[
        &["-25/118", "25/118", "15/118"],
        &["25/118", "-25/118", "-15/118"],
        &["15/118", "-15/118", "-9/118"],
    ]);
    let core_ep_of_core_ep = strs(&[
        &["-50/59", "50/59", "30/59"],
        &["50/59", "-50/59", "-30/59"],
        &["30/59", "-30/59", "-18/59"],
    ]);
    ExampleTwo {
        a,
        e,
        drazin,
        one_three_of_a_squared,
        core_ep,
        core_ep_of_core_ep,
    }
}
