//! The nine inequalities of the `3 x 3` case written out by hand.

use crate::error::{Error, Result};
use crate::linalg::SymMatrix;
use crate::spectrum::{partial_sums, SortedSpectrum};

/// Slacks `rhs - lhs` of the `3 x 3` system. `x` is placed by the order with
/// `a_2^2` ahead of `a_1 a_3` and `y` by the order with `a_1 a_3` ahead.
pub fn sys33_inequalities(mu: &SortedSpectrum, x: &SymMatrix, y: &SymMatrix) -> Result<[f64; 9]> {
    let (m, n) = mu.dims();
    if (m, n) != (3, 3) {
        return Err(Error::WrongDims {
            expected: "3x3",
            m,
            n,
        });
    }
    if x.size() != 3 || y.size() != 3 {
        return Err(Error::Shape("expected 3x3 matrices".into()));
    }
    let (x11, x12, x13, x22, x23, x33) = (
        x.get(0, 0),
        x.get(0, 1),
        x.get(0, 2),
        x.get(1, 1),
        x.get(1, 2),
        x.get(2, 2),
    );
    let (y11, y12, y13, y22, y23, y33) = (
        y.get(0, 0),
        y.get(0, 1),
        y.get(0, 2),
        y.get(1, 1),
        y.get(1, 2),
        y.get(2, 2),
    );
    let lhs = [
        (x11 + x22 + x33) + (y11 + y22 + y33),
        (x22 + x33) + (y22 + y33),
        (x22 + x33 - x12) + (y22 + y33 - y12),
        (x33 - x12) + (y22 + y33 - y12 - y13),
        (x33 - x12 - x13) + (y33 - y12 - y13),
        (x33 - x12 - x13 - x23) + (y33 - y12 - y13 - y23),
        (-x12 - x13 - x23) + (-y12 - y13 - y23),
        (-x12 - x13) + (-y12 - y13),
        -x12 - y12,
    ];
    let rhs = partial_sums(mu);
    let mut out = [0.0; 9];
    for k in 0..9 {
        out[k] = rhs[k] - lhs[k];
    }
    Ok(out)
}
