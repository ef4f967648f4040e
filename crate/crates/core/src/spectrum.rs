//! Spectra of bipartite operators.
//!
//! A [`Spectrum`] is an unordered list of `m * n` real eigenvalues tagged with
//! the local dimensions `(m, n)`. Every membership question in this crate is
//! permutation invariant, so operations sort internally instead of trusting
//! the caller's order. [`SortedSpectrum`] holds the non-increasing arrangement;
//! its reversal is the ascending view used by the absolutely-PPT tests.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Real eigenvalue vector of length `m * n`, in no particular order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SpectrumRepr", into = "SpectrumRepr")]
pub struct Spectrum {
    m: usize,
    n: usize,
    values: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct SpectrumRepr {
    m: usize,
    n: usize,
    values: Vec<f64>,
}

impl TryFrom<SpectrumRepr> for Spectrum {
    type Error = Error;

    fn try_from(r: SpectrumRepr) -> Result<Self> {
        Spectrum::new(r.m, r.n, r.values)
    }
}

impl From<Spectrum> for SpectrumRepr {
    fn from(s: Spectrum) -> Self {
        SpectrumRepr {
            m: s.m,
            n: s.n,
            values: s.values,
        }
    }
}

impl Spectrum {
    pub fn new(m: usize, n: usize, values: Vec<f64>) -> Result<Self> {
        if m == 0 || n == 0 || values.len() != m * n {
            return Err(Error::LengthMismatch {
                len: values.len(),
                m,
                n,
            });
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::Invalid(format!("non-finite eigenvalue {v}")));
        }
        Ok(Spectrum { m, n, values })
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Same values with the factor dimensions swapped.
    pub fn transposed_dims(&self) -> Spectrum {
        Spectrum {
            m: self.n,
            n: self.m,
            values: self.values.clone(),
        }
    }

    pub fn scaled(&self, factor: f64) -> Spectrum {
        Spectrum {
            m: self.m,
            n: self.n,
            values: self.values.iter().map(|v| v * factor).collect(),
        }
    }

    /// Largest absolute entry, at least 1. Used to scale additive tolerances.
    pub fn tolerance_scale(&self) -> f64 {
        self.values.iter().fold(1.0_f64, |acc, v| acc.max(v.abs()))
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }
}

/// Eigenvalues arranged in non-increasing order.
#[derive(Debug, Clone, PartialEq)]
pub struct SortedSpectrum {
    m: usize,
    n: usize,
    values: Vec<f64>,
}

impl SortedSpectrum {
    pub fn dims(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    /// Non-increasing values.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Non-decreasing values (the reversal of [`values`](Self::values)).
    pub fn ascending(&self) -> Vec<f64> {
        self.values.iter().rev().copied().collect()
    }

    pub fn max(&self) -> f64 {
        self.values[0]
    }

    pub fn min(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    pub fn into_spectrum(self) -> Spectrum {
        Spectrum {
            m: self.m,
            n: self.n,
            values: self.values,
        }
    }
}

/// Sorts a spectrum into non-increasing order. Ties keep their input order.
pub fn sort_descending(s: &Spectrum) -> SortedSpectrum {
    let mut values = s.values.clone();
    values.sort_by(|a, b| b.total_cmp(a));
    SortedSpectrum {
        m: s.m,
        n: s.n,
        values,
    }
}

/// Suffix sums of a vector: `out[k] = v[k] + v[k+1] + ... + v[last]`.
pub fn suffix_sums(v: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; v.len()];
    let mut acc = 0.0;
    for (k, x) in v.iter().enumerate().rev() {
        acc += x;
        out[k] = acc;
    }
    out
}

/// Partial sums of the sorted spectrum, `p(mu_down)`.
pub fn partial_sums(s: &SortedSpectrum) -> Vec<f64> {
    suffix_sums(&s.values)
}

/// The tail sums `s1, s2, s3`: the sum of all entries but the largest
/// `k - 1`, for `k = 1, 2, 3`.
pub fn tail_sums_s123(s: &SortedSpectrum) -> Result<(f64, f64, f64)> {
    if s.values.len() < 3 {
        return Err(Error::DimensionTooSmall {
            needed: 3,
            got: s.values.len(),
        });
    }
    let p = partial_sums(s);
    Ok((p[0], p[1], p[2]))
}

/// Sum of the strictly negative entries (zero for a nonnegative spectrum).
pub fn negative_part_sum(s: &Spectrum) -> f64 {
    // summed in sorted order so the result does not depend on the input permutation
    let sorted = sort_descending(s);
    sorted.values.iter().rev().take_while(|v| **v < 0.0).sum()
}
