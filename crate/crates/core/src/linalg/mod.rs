//! Dense linear algebra on bipartite operators.
//!
//! Composite indices follow the row-major convention `r = i * n + k`, where
//! `i` indexes the first factor (dimension `m`) and `k` the second factor
//! (dimension `n`). The partial transpose acts on the second factor.

mod eigen;
mod random;
mod symmetric;

use std::ops::{Index, IndexMut};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use random::{complex_gaussian, prng, random_psd, random_unit_vector, stream_rng, Prng};
pub use symmetric::{is_psd, min_eig, psd_project, SymMatrix, DEFAULT_PSD_TOL};

/// Relative symmetry residual accepted as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        CMatrix {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut out = Self::zeros(dim);
        for i in 0..dim {
            out[(i, i)] = Complex64::new(1.0, 0.0);
        }
        out
    }

    pub fn from_diag(diag: &[f64]) -> Self {
        let mut out = Self::zeros(diag.len());
        for (i, d) in diag.iter().enumerate() {
            out[(i, i)] = Complex64::new(*d, 0.0);
        }
        out
    }

    /// Builds a matrix from real rows. Panics if the rows are not square.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Self {
        let dim = rows.len();
        let mut out = Self::zeros(dim);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), dim, "row {r} has the wrong length");
            for (c, x) in row.iter().enumerate() {
                out[(r, c)] = Complex64::new(*x, 0.0);
            }
        }
        out
    }

    pub fn from_data(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::Shape(format!(
                "{} entries for a {dim}x{dim} matrix",
                data.len()
            )));
        }
        Ok(CMatrix { dim, data })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                out[(c, r)] = self[(r, c)].conj();
            }
        }
        out
    }

    pub fn matmul(&self, other: &CMatrix) -> Self {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut out = Self::zeros(d);
        for r in 0..d {
            for k in 0..d {
                let a = self[(r, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..d {
                    out.data[r * d + c] += a * other.data[k * d + c];
                }
            }
        }
        out
    }

    pub fn add(&self, other: &CMatrix) -> Self {
        assert_eq!(self.dim, other.dim);
        CMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, factor: f64) -> Self {
        CMatrix {
            dim: self.dim,
            data: self.data.iter().map(|a| a * factor).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |acc, z| acc.max(z.norm()))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest `|A[r,c] - conj(A[c,r])|`.
    pub fn hermitian_residual(&self) -> f64 {
        let mut res = 0.0_f64;
        for r in 0..self.dim {
            for c in r..self.dim {
                res = res.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        res
    }

    fn check_hermitian(&self, rel_tol: f64) -> Result<()> {
        let res = self.hermitian_residual();
        if res > rel_tol * self.max_abs().max(1.0) {
            return Err(Error::NonHermitian(res));
        }
        Ok(())
    }

    /// `<x| A |x>` for a vector `x`.
    pub fn quadratic_form(&self, x: &[Complex64]) -> Complex64 {
        let d = self.dim;
        let mut acc = Complex64::new(0.0, 0.0);
        for r in 0..d {
            let mut row = Complex64::new(0.0, 0.0);
            for c in 0..d {
                row += self.data[r * d + c] * x[c];
            }
            acc += x[r].conj() * row;
        }
        acc
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.dim + c]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.dim + c]
    }
}

/// Eigenvalues (non-increasing) of a Hermitian matrix.
pub fn eigvals_hermitian(a: &CMatrix) -> Result<Vec<f64>> {
    Ok(eigh(a)?.0)
}

/// Eigenvalues (non-increasing) and eigenvectors (as matrix columns) of a
/// Hermitian matrix.
pub fn eigh(a: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    a.check_hermitian(1e-10)?;
    let (vals, vecs) = eigen::jacobi_hermitian(a.dim, &a.data);
    Ok((
        vals,
        CMatrix {
            dim: a.dim,
            data: vecs,
        },
    ))
}

/// Hermitian operator on `C^m (x) C^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteOperator {
    m: usize,
    n: usize,
    matrix: CMatrix,
}

impl BipartiteOperator {
    pub fn new(m: usize, n: usize, matrix: CMatrix) -> Result<Self> {
        if m == 0 || n == 0 || matrix.dim != m * n {
            return Err(Error::Shape(format!(
                "{}x{} matrix for dimensions {m}x{n}",
                matrix.dim, matrix.dim
            )));
        }
        matrix.check_hermitian(HERMITIAN_TOL)?;
        Ok(BipartiteOperator { m, n, matrix })
    }

    pub(crate) fn from_parts_unchecked(m: usize, n: usize, matrix: CMatrix) -> Self {
        debug_assert_eq!(matrix.dim, m * n);
        BipartiteOperator { m, n, matrix }
    }

    pub fn zeros(m: usize, n: usize) -> Self {
        Self::from_parts_unchecked(m, n, CMatrix::zeros(m * n))
    }

    pub fn identity(m: usize, n: usize) -> Self {
        Self::from_parts_unchecked(m, n, CMatrix::identity(m * n))
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    /// Entry at composite indices `((i, k), (j, l))`.
    pub fn entry(&self, i: usize, k: usize, j: usize, l: usize) -> Complex64 {
        self.matrix[(i * self.n + k, j * self.n + l)]
    }

    pub fn add(&self, other: &BipartiteOperator) -> Result<Self> {
        if self.dims() != other.dims() {
            return Err(Error::Shape("operands have different dimensions".into()));
        }
        Ok(Self::from_parts_unchecked(
            self.m,
            self.n,
            self.matrix.add(&other.matrix),
        ))
    }

    pub fn eigvals(&self) -> Vec<f64> {
        eigen::jacobi_hermitian(self.matrix.dim, &self.matrix.data).0
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }
}

/// Transpose on the second tensor factor:
/// `out((i,k),(j,l)) = a((i,l),(j,k))`.
pub fn partial_transpose(a: &BipartiteOperator) -> BipartiteOperator {
    let (m, n) = a.dims();
    let mut out = CMatrix::zeros(m * n);
    for i in 0..m {
        for j in 0..m {
            for k in 0..n {
                for l in 0..n {
                    out[(i * n + k, j * n + l)] = a.matrix[(i * n + l, j * n + k)];
                }
            }
        }
    }
    BipartiteOperator::from_parts_unchecked(m, n, out)
}

/// Kronecker product of two square matrices.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (da, db) = (a.dim, b.dim);
    let mut out = CMatrix::zeros(da * db);
    for i in 0..da {
        for j in 0..da {
            let aij = a[(i, j)];
            for k in 0..db {
                for l in 0..db {
                    out[(i * db + k, j * db + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    m: usize,
    n: usize,
    entries: Vec<Vec<[f64; 2]>>,
}

impl Serialize for BipartiteOperator {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let d = self.matrix.dim;
        let entries = (0..d)
            .map(|r| {
                (0..d)
                    .map(|c| {
                        let z = self.matrix[(r, c)];
                        [z.re, z.im]
                    })
                    .collect()
            })
            .collect();
        MatrixRepr {
            m: self.m,
            n: self.n,
            entries,
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for BipartiteOperator {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let repr = MatrixRepr::deserialize(de)?;
        let dim = repr.entries.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in &repr.entries {
            if row.len() != dim {
                return Err(serde::de::Error::custom("matrix rows must be square"));
            }
            data.extend(row.iter().map(|[re, im]| Complex64::new(*re, *im)));
        }
        let matrix = CMatrix::from_data(dim, data).map_err(serde::de::Error::custom)?;
        BipartiteOperator::new(repr.m, repr.n, matrix).map_err(serde::de::Error::custom)
    }
}
