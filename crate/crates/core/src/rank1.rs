//! Partial transposes of rank-one projections.
//!
//! For `|v> = sum_j a_j |j>|j>` with Schmidt coefficients `a_1 >= ... >= a_m`,
//! the operator `(|v><v|)^T_B` has eigenvalues `a_j^2`, `+-a_i a_j` for
//! `i < j`, and `m (n - m)` extra zeros.

use crate::error::{Error, Result};
use crate::linalg::{partial_transpose, BipartiteOperator, CMatrix};
use crate::spectrum::Spectrum;

/// Non-increasing, nonnegative Schmidt coefficients with dimensions `m <= n`.
/// The coefficients need not be normalized.
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtVector {
    coeffs: Vec<f64>,
    n: usize,
}

impl SchmidtVector {
    pub fn new(coeffs: Vec<f64>, n: usize) -> Result<Self> {
        let m = coeffs.len();
        if m == 0 || m > n {
            return Err(Error::WrongDims {
                expected: "1 <= m <= n",
                m,
                n,
            });
        }
        if coeffs.iter().any(|a| !a.is_finite() || *a < 0.0) {
            return Err(Error::Invalid(
                "Schmidt coefficients must be nonnegative".into(),
            ));
        }
        if coeffs.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid(
                "Schmidt coefficients must be non-increasing".into(),
            ));
        }
        Ok(SchmidtVector { coeffs, n })
    }

    /// Sorts arbitrary nonnegative coefficients before validating.
    pub fn from_unsorted(mut coeffs: Vec<f64>, n: usize) -> Result<Self> {
        coeffs.sort_by(|a, b| b.total_cmp(a));
        Self::new(coeffs, n)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.coeffs.len(), self.n)
    }
}

/// Closed-form spectrum of `(|v><v|)^T_B`.
pub fn rank1_pt_spectrum(a: &SchmidtVector) -> Spectrum {
    let (m, n) = a.dims();
    let al = &a.coeffs;
    let mut values = Vec::with_capacity(m * n);
    values.extend(al.iter().map(|x| x * x));
    for i in 0..m {
        for j in (i + 1)..m {
            let p = al[i] * al[j];
            values.push(p);
            values.push(-p);
        }
    }
    values.resize(m * n, 0.0);
    Spectrum::new(m, n, values).expect("length m*n by construction")
}

/// Builds `(|v><v|)^T_B` with the computational bases as Schmidt bases.
pub fn build_rank1_pt(a: &SchmidtVector) -> BipartiteOperator {
    let (m, n) = a.dims();
    let mut proj = CMatrix::zeros(m * n);
    for (j, aj) in a.coeffs.iter().enumerate() {
        for (k, ak) in a.coeffs.iter().enumerate() {
            proj[(j * n + j, k * n + k)] = (aj * ak).into();
        }
    }
    let op = BipartiteOperator::new(m, n, proj).expect("real symmetric by construction");
    partial_transpose(&op)
}
