//! Convex hull of qubit-qudit witness spectra.
//!
//! For `mu` of length `2n` let `s_k` be the sum of all but the largest `k - 1`
//! sorted entries and `s_-` the sum of the negative entries. Membership of
//! `mu` in the convex hull of the block-positive (equivalently decomposable)
//! spectra has two equivalent forms:
//!
//! * a `2 x 2` real PSD matrix `X` with `x11 + x22 <= s1`, `x22 <= s2`,
//!   `x12 + x22 <= s3` and `x12 <= s_-` exists ([`conv_bp2n_member_c`]);
//! * with `q1 = s1^2 - 4 s_-^2` and `q2 = (s1 + 2 s3)^2 - 8 s3^2`:
//!   `q1, q2 >= 0`, `sqrt(q1) >= s1 - 2 s2`, `sqrt(q2) >= s1 - 4 s2 + 2 s3`
//!   and `2 sqrt(q1) + sqrt(q2) >= s1 - 2 s3` ([`conv_bp2n_member_d`]).
//!
//! The closed form is the decision procedure; the matrix search produces a
//! checkable certificate and serves as a cross-check. Neither says whether a
//! given hull point is itself the spectrum of a witness.

use crate::error::{Error, Result};
use crate::linalg::{min_eig, SymMatrix};
use crate::spectrum::{negative_part_sum, sort_descending, tail_sums_s123, Spectrum};

pub const DEFAULT_TOL: f64 = 1e-9;

/// The summaries `s1, s2, s3, s_-` of a qubit-qudit spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailSums {
    pub s1: f64,
    pub s2: f64,
    pub s3: f64,
    pub s_neg: f64,
}

impl TailSums {
    pub fn of(s: &Spectrum) -> Result<Self> {
        canonical_2n(s)?;
        let (s1, s2, s3) = tail_sums_s123(&sort_descending(s))?;
        Ok(TailSums {
            s1,
            s2,
            s3,
            s_neg: negative_part_sum(s),
        })
    }

    pub fn q1(&self) -> f64 {
        self.s1 * self.s1 - 4.0 * self.s_neg * self.s_neg
    }

    pub fn q2(&self) -> f64 {
        let t = self.s1 + 2.0 * self.s3;
        t * t - 8.0 * self.s3 * self.s3
    }

    /// Signed slacks of the five closed-form inequalities, all in units of
    /// the spectrum (the `q >= 0` rows report `sign(q) sqrt|q|`).
    pub fn closed_form_slacks(&self) -> [f64; 5] {
        let (q1, q2) = (self.q1(), self.q2());
        let signed_root = |q: f64| q.signum() * q.abs().sqrt();
        let r1 = q1.max(0.0).sqrt();
        let r2 = q2.max(0.0).sqrt();
        [
            signed_root(q1),
            signed_root(q2),
            r1 - (self.s1 - 2.0 * self.s2),
            r2 - (self.s1 - 4.0 * self.s2 + 2.0 * self.s3),
            2.0 * r1 + r2 - (self.s1 - 2.0 * self.s3),
        ]
    }
}

/// Accepts `(2, n)` and `(n, 2)`; the factor order does not affect spectra.
fn canonical_2n(s: &Spectrum) -> Result<usize> {
    match s.dims() {
        (2, n) | (n, 2) if n >= 2 => Ok(n),
        (m, n) => Err(Error::WrongDims {
            expected: "2xn with n >= 2",
            m,
            n,
        }),
    }
}

/// Closed-form hull membership with the default slack
/// `1e-9 * max(1, |mu|_inf)`.
pub fn conv_bp2n_member_d(s: &Spectrum) -> Result<bool> {
    conv_bp2n_member_d_with_tol(s, DEFAULT_TOL)
}

pub fn conv_bp2n_member_d_with_tol(s: &Spectrum, tol: f64) -> Result<bool> {
    let t = TailSums::of(s)?;
    let slack = tol * s.tolerance_scale();
    Ok(t.closed_form_slacks().iter().all(|x| *x >= -slack))
}

/// Smallest signed slack of the closed form; negative outside the hull, and
/// its magnitude measures the distance to the boundary.
pub fn conv_bp2n_margin(s: &Spectrum) -> Result<f64> {
    let t = TailSums::of(s)?;
    Ok(t.closed_form_slacks()
        .iter()
        .fold(f64::INFINITY, |a, b| a.min(*b)))
}

/// Verifies a matrix certificate: `X` PSD and the four linear inequalities,
/// each within `tol * max(1, |mu|_inf)`.
pub fn check_condition_c(s: &Spectrum, x: &SymMatrix, tol: f64) -> Result<bool> {
    let t = TailSums::of(s)?;
    if x.size() != 2 {
        return Err(Error::Shape(format!(
            "expected a 2x2 matrix, got {0}x{0}",
            x.size()
        )));
    }
    let slack = tol * s.tolerance_scale();
    let (x11, x12, x22) = (x.get(0, 0), x.get(0, 1), x.get(1, 1));
    let rows = [
        t.s1 - (x11 + x22),
        t.s2 - x22,
        t.s3 - (x12 + x22),
        t.s_neg - x12,
    ];
    Ok(min_eig(x) >= -slack && rows.iter().all(|r| *r >= -slack))
}

/// Searches for the matrix certificate of hull membership.
///
/// With `x22 = t` fixed, the best choices are `x11 = s1 - t` and
/// `x12 = min(s_-, s3 - t)` (closest to zero, since `s_- <= 0`). The
/// determinant `(s1 - t) t - x12(t)^2` is then a concave piecewise quadratic
/// on `t in [0, min(s1, s2)]`, so its maximum sits at an endpoint, the kink
/// `t = s3 - s_-`, or a stationary point of one of the two pieces.
pub fn conv_bp2n_member_c(s: &Spectrum) -> Result<Option<SymMatrix>> {
    let t = TailSums::of(s)?;
    let hi = t.s1.min(t.s2);
    let slack = DEFAULT_TOL * s.tolerance_scale();
    if hi < -slack {
        return Ok(None);
    }
    let hi = hi.max(0.0);
    let x12 = |c: f64| t.s_neg.min(t.s3 - c);
    let det = |c: f64| (t.s1 - c) * c - x12(c).powi(2);

    let candidates = [
        0.0,
        hi,
        t.s3 - t.s_neg,
        t.s1 / 2.0,
        (t.s1 + 2.0 * t.s3) / 4.0,
    ];
    let best = candidates
        .iter()
        .map(|c| c.clamp(0.0, hi))
        .max_by(|a, b| det(*a).total_cmp(&det(*b)))
        .expect("nonempty");

    let mut x = SymMatrix::zeros(2);
    x.set(0, 0, (t.s1 - best).max(0.0));
    x.set(0, 1, x12(best));
    x.set(1, 1, best);
    if check_condition_c(s, &x, DEFAULT_TOL)? {
        Ok(Some(x))
    } else {
        Ok(None)
    }
}

/// Locates the membership boundary of a one-parameter family of spectra.
///
/// Membership must be monotone in the parameter on `[lo, hi]`. The returned
/// parameter is on the member side, within `1e-12` of the boundary. When both
/// endpoints are members `lo` is returned; when neither is, the endpoints do
/// not bracket a boundary.
pub fn threshold_bisect<F, P>(family: F, member: P, lo: f64, hi: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<Spectrum>,
    P: Fn(&Spectrum) -> Result<bool>,
{
    let at = |c: f64| -> Result<bool> { member(&family(c)?) };
    let (lo_in, hi_in) = (at(lo)?, at(hi)?);
    match (lo_in, hi_in) {
        (true, true) => return Ok(lo),
        (false, false) => return Err(Error::NotBracketed),
        _ => {}
    }
    // keep `inside` a member and `outside` a non-member
    let (mut inside, mut outside) = if lo_in { (lo, hi) } else { (hi, lo) };
    for _ in 0..200 {
        if (inside - outside).abs() <= 1e-12 {
            break;
        }
        let mid = 0.5 * (inside + outside);
        if at(mid)? {
            inside = mid;
        } else {
            outside = mid;
        }
    }
    Ok(inside)
}

/// The family `((1+sqrt5)/2, (1+sqrt5)/2, 1, 1, c, c)` in dimensions `2 x 3`.
pub fn golden_family(c: f64) -> Result<Spectrum> {
    let g = (1.0 + 5f64.sqrt()) / 2.0;
    Spectrum::new(2, 3, vec![g, g, 1.0, 1.0, c, c])
}
