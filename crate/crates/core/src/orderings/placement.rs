//! The placement map `L` of an ordering and its adjoint.
//!
//! `L(Y)` puts `y_ij` at the positive slot of `(i, j)`, `-y_ij` at its
//! negative slot and zeros in the middle `m (n - m)` slots. For `m = 3` and
//! the order `(1,1),(1,2),(1,3),(2,2),(2,3),(3,3)`:
//!
//! ```text
//! L(Y) = (y11, y12, y13, y22, y23, y33, -y23, -y13, -y12)
//! ```
//!
//! The adjoint takes an ascending spectrum `l` to the symmetric matrix with
//! `M_kk = 2 l[pos(k,k)]` and `M_kl = l[pos(k,l)] - l[neg(k,l)]`, so that
//! `<L(Y), l> = <Y, M>_F / 2`.

use super::{OrderingMap, ProductPair};
use crate::error::{Error, Result};
use crate::linalg::SymMatrix;
use crate::spectrum::SortedSpectrum;

#[derive(Debug, Clone, PartialEq)]
pub struct PlacementMap {
    m: usize,
    n: usize,
    // (i, j, positive slot, negative slot), 0-based
    entries: Vec<(usize, usize, usize, Option<usize>)>,
}

/// Materializes `L` for local dimensions `m <= n`.
pub fn build_l(ord: &OrderingMap, n: usize) -> Result<PlacementMap> {
    let m = ord.m();
    if n < m {
        return Err(Error::WrongDims {
            expected: "n >= m",
            m,
            n,
        });
    }
    let entries = ord
        .order()
        .iter()
        .map(|p: &ProductPair| {
            (
                p.i() - 1,
                p.j() - 1,
                ord.positive_slot(*p) - 1,
                ord.negative_slot(*p, n).map(|s| s - 1),
            )
        })
        .collect();
    Ok(PlacementMap { m, n, entries })
}

impl PlacementMap {
    pub fn dims(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    pub fn len(&self) -> usize {
        self.m * self.n
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn apply(&self, y: &SymMatrix) -> Result<Vec<f64>> {
        if y.size() != self.m {
            return Err(Error::Shape(format!(
                "expected a {0}x{0} matrix, got {1}x{1}",
                self.m,
                y.size()
            )));
        }
        let mut out = vec![0.0; self.len()];
        for &(i, j, pos, neg) in &self.entries {
            let v = y.get(i, j);
            out[pos] = v;
            if let Some(neg) = neg {
                out[neg] = -v;
            }
        }
        Ok(out)
    }

    /// Adjoint applied to an ascending vector of length `m n`.
    pub fn adjoint(&self, ascending: &[f64]) -> Result<SymMatrix> {
        if ascending.len() != self.len() {
            return Err(Error::VectorLengths(ascending.len(), self.len()));
        }
        let mut out = SymMatrix::zeros(self.m);
        for &(i, j, pos, neg) in &self.entries {
            let v = match neg {
                None => 2.0 * ascending[pos],
                Some(neg) => ascending[pos] - ascending[neg],
            };
            out.set(i, j, v);
        }
        Ok(out)
    }
}

pub fn apply_l(ord: &OrderingMap, n: usize, y: &SymMatrix) -> Result<Vec<f64>> {
    build_l(ord, n)?.apply(y)
}

/// `L*` of the ascending arrangement of `lam`. The spectrum may carry its
/// dimensions in either factor order.
pub fn apply_l_adjoint(ord: &OrderingMap, n: usize, lam: &SortedSpectrum) -> Result<SymMatrix> {
    let (a, b) = lam.dims();
    let m = ord.m();
    if (a.min(b), a.max(b)) != (m, n) {
        return Err(Error::WrongDims {
            expected: "spectrum dims matching the ordering",
            m: a,
            n: b,
        });
    }
    build_l(ord, n)?.adjoint(&lam.ascending())
}
