//! Exact spectra of two-qubit block-positive matrices.
//!
//! Sorted non-increasingly, `mu` is the spectrum of a block-positive
//! `4 x 4` matrix iff
//!
//! * (a) `mu_3 >= 0`,
//! * (b) `mu_4 >= -mu_2`,
//! * (c) `mu_4 >= -sqrt(mu_1 mu_3)`.
//!
//! Boundary spectra are members. Every admissible spectrum is realized by
//! [`construct_bp22`] as a rank-one partial transpose plus two PSD pieces.

use crate::error::{Error, Result};
use crate::linalg::{partial_transpose, BipartiteOperator, CMatrix};
use crate::spectrum::{sort_descending, Spectrum};

pub const DEFAULT_TOL: f64 = 1e-9;

fn check_dims(s: &Spectrum) -> Result<()> {
    match s.dims() {
        (2, 2) => Ok(()),
        (m, n) => Err(Error::WrongDims {
            expected: "2x2",
            m,
            n,
        }),
    }
}

/// Slacks of inequalities (a), (b), (c) on the sorted spectrum; all three are
/// nonnegative exactly for members.
pub fn bp22_slacks(s: &Spectrum) -> Result<[f64; 3]> {
    check_dims(s)?;
    let mu = sort_descending(s);
    let v = mu.values();
    // mu_1 mu_3 < 0 only when (a) already fails; clamp so (c) stays finite
    let geo = (v[0] * v[2]).max(0.0).sqrt();
    Ok([v[2], v[3] + v[1], v[3] + geo])
}

/// Membership in the set of two-qubit block-positive spectra, with the
/// default additive slack `1e-9 * max(1, |mu|_inf)`.
pub fn is_bp22_spectrum(s: &Spectrum) -> Result<bool> {
    is_bp22_spectrum_with_tol(s, DEFAULT_TOL)
}

pub fn is_bp22_spectrum_with_tol(s: &Spectrum, tol: f64) -> Result<bool> {
    let slack = tol * s.tolerance_scale();
    Ok(bp22_slacks(s)?.iter().all(|x| *x >= -slack))
}

/// Explicit block-positive matrix with spectrum `s`.
///
/// For `mu_3 > 0 > mu_4` the result is
/// `(|v><v|)^T_B + g1 |00><00| + g2/2 (|01> + |10>)(<01| + <10|)` with
/// Schmidt coefficients `a2 = sqrt(mu_3)`, `a1 = -mu_4 / a2` and
/// `g1 = mu_1 - mu_4^2 / mu_3`, `g2 = mu_2 + mu_4`. Nonnegative spectra, and
/// spectra with `mu_3 = 0`, are returned as diagonal matrices.
pub fn construct_bp22(s: &Spectrum) -> Result<BipartiteOperator> {
    if !is_bp22_spectrum(s)? {
        return Err(Error::Inadmissible(format!(
            "{:?} violates the two-qubit inequalities",
            s.values()
        )));
    }
    let mu = sort_descending(s);
    let v = mu.values();
    let scale = s.tolerance_scale();
    if v[3] >= 0.0 || v[2] <= DEFAULT_TOL * scale {
        let w = CMatrix::from_diag(v);
        return Ok(BipartiteOperator::new(2, 2, w).expect("diagonal"));
    }

    let a2 = v[2].sqrt();
    let a1 = -v[3] / a2;
    // both are nonnegative for members; clamp tolerance-level negatives
    let g1 = (v[0] - v[3] * v[3] / v[2]).max(0.0);
    let g2 = (v[1] + v[3]).max(0.0);

    let mut x = CMatrix::zeros(4);
    x[(0, 0)] = (a1 * a1).into();
    x[(0, 3)] = (a1 * a2).into();
    x[(3, 0)] = (a1 * a2).into();
    x[(3, 3)] = (a2 * a2).into();
    let xg = partial_transpose(&BipartiteOperator::new(2, 2, x).expect("symmetric"));

    let mut y = CMatrix::zeros(4);
    y[(0, 0)] = g1.into();
    for r in 1..3 {
        for c in 1..3 {
            y[(r, c)] = (g2 / 2.0).into();
        }
    }
    let y = BipartiteOperator::new(2, 2, y).expect("symmetric");
    xg.add(&y)
}
