use serde::{Deserialize, Serialize};

use super::eigen::jacobi_symmetric;
use crate::error::{Error, Result};

/// Default tolerance for positive semidefiniteness tests.
pub const DEFAULT_PSD_TOL: f64 = 1e-9;

/// Real symmetric matrix. Only the upper triangle is stored, so symmetry is
/// exact by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    size: usize,
    upper: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(size: usize) -> Self {
        SymMatrix {
            size,
            upper: vec![0.0; size * (size + 1) / 2],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut out = Self::zeros(size);
        for i in 0..size {
            out.set(i, i, 1.0);
        }
        out
    }

    /// Every entry equal to `value`.
    pub fn filled(size: usize, value: f64) -> Self {
        SymMatrix {
            size,
            upper: vec![value; size * (size + 1) / 2],
        }
    }

    /// Reads the upper triangle of square `rows`; the lower triangle is ignored.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let size = rows.len();
        let mut out = Self::zeros(size);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != size {
                return Err(Error::Shape(format!("row {r} has {} entries", row.len())));
            }
            for c in r..size {
                out.set(r, c, row[c]);
            }
        }
        Ok(out)
    }

    pub fn from_dense(size: usize, dense: &[f64]) -> Self {
        let mut out = Self::zeros(size);
        for r in 0..size {
            for c in r..size {
                out.set(r, c, 0.5 * (dense[r * size + c] + dense[c * size + r]));
            }
        }
        out
    }

    pub fn size(&self) -> usize {
        self.size
    }

    fn slot(&self, r: usize, c: usize) -> usize {
        let (r, c) = if r <= c { (r, c) } else { (c, r) };
        // row-major packed upper triangle
        r * self.size - r * (r + 1) / 2 + c
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.upper[self.slot(r, c)]
    }

    pub fn set(&mut self, r: usize, c: usize, value: f64) {
        let s = self.slot(r, c);
        self.upper[s] = value;
    }

    pub fn to_dense(&self) -> Vec<f64> {
        let n = self.size;
        let mut out = vec![0.0; n * n];
        for r in 0..n {
            for c in 0..n {
                out[r * n + c] = self.get(r, c);
            }
        }
        out
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.size)
            .map(|r| (0..self.size).map(|c| self.get(r, c)).collect())
            .collect()
    }

    /// Eigenvalues in non-increasing order with eigenvectors as the columns
    /// of a row-major dense matrix.
    pub fn eigh(&self) -> (Vec<f64>, Vec<f64>) {
        jacobi_symmetric(self.size, &self.to_dense())
    }

    pub fn eigvals(&self) -> Vec<f64> {
        self.eigh().0
    }

    pub fn add(&self, other: &SymMatrix) -> SymMatrix {
        assert_eq!(self.size, other.size);
        SymMatrix {
            size: self.size,
            upper: self
                .upper
                .iter()
                .zip(&other.upper)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &SymMatrix) -> SymMatrix {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, factor: f64) -> SymMatrix {
        SymMatrix {
            size: self.size,
            upper: self.upper.iter().map(|a| a * factor).collect(),
        }
    }

    /// Frobenius inner product `tr(A B)`.
    pub fn inner(&self, other: &SymMatrix) -> f64 {
        assert_eq!(self.size, other.size);
        let mut acc = 0.0;
        for r in 0..self.size {
            for c in r..self.size {
                let w = if r == c { 1.0 } else { 2.0 };
                acc += w * self.get(r, c) * other.get(r, c);
            }
        }
        acc
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.inner(self).sqrt()
    }

    /// Rank-one matrix `v v^T`.
    pub fn outer(v: &[f64]) -> SymMatrix {
        let mut out = Self::zeros(v.len());
        for r in 0..v.len() {
            for c in r..v.len() {
                out.set(r, c, v[r] * v[c]);
            }
        }
        out
    }
}

impl Serialize for SymMatrix {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(ser)
    }
}

impl<'de> Deserialize<'de> for SymMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<f64>>::deserialize(de)?;
        SymMatrix::from_rows(&rows).map_err(serde::de::Error::custom)
    }
}

pub fn min_eig(s: &SymMatrix) -> f64 {
    if s.size == 0 {
        return 0.0;
    }
    *s.eigvals().last().expect("nonempty")
}

/// `min_eig(s) >= -tol`.
pub fn is_psd(s: &SymMatrix, tol: f64) -> bool {
    min_eig(s) >= -tol
}

/// Nearest positive semidefinite matrix in Frobenius norm: negative
/// eigenvalues are clipped to zero.
pub fn psd_project(s: &SymMatrix) -> SymMatrix {
    let n = s.size;
    let (vals, vecs) = s.eigh();
    if vals.iter().all(|v| *v >= 0.0) {
        return s.clone();
    }
    let mut out = SymMatrix::zeros(n);
    for (k, &lam) in vals.iter().enumerate() {
        if lam <= 0.0 {
            continue;
        }
        for r in 0..n {
            let vr = vecs[r * n + k] * lam;
            for c in r..n {
                let cur = out.get(r, c);
                out.set(r, c, cur + vr * vecs[c * n + k]);
            }
        }
    }
    out
}
