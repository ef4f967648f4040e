//! Absolutely PPT spectra and the dual pairing.
//!
//! A state spectrum `lam` is absolutely PPT when every state with that
//! spectrum has a positive partial transpose. This holds iff `L*(lam_up)` is
//! PSD for every product ordering of `min(m, n)` Schmidt coefficients, where
//! `lam_up` is the ascending arrangement. These spectra form the dual cone
//! of the decomposable witness spectra under [`min_pairing`].

use crate::error::{Error, Result};
use crate::linalg::{min_eig, SymMatrix};
use crate::orderings::{build_l, orderings};
use crate::spectrum::{sort_descending, SortedSpectrum, Spectrum};

pub const DEFAULT_TOL: f64 = 1e-9;
/// Entries above `-CLAMP` are treated as zero.
pub const CLAMP: f64 = 1e-12;

/// Clamps tiny negatives and swaps dimensions so that `m <= n`.
fn canonical_state(lam: &Spectrum) -> Result<Spectrum> {
    if let Some(v) = lam.values().iter().find(|v| **v < -CLAMP) {
        return Err(Error::NegativeEntry(*v));
    }
    let (m, n) = lam.dims();
    let values = lam.values().iter().map(|v| v.max(0.0)).collect();
    Spectrum::new(m.min(n), m.max(n), values)
}

/// The `L*(lam_up)` matrices, one per ordering of `min(m, n)`.
pub fn appt_matrices(lam: &Spectrum) -> Result<Vec<SymMatrix>> {
    let lam = canonical_state(lam)?;
    let (m, n) = lam.dims();
    let up = sort_descending(&lam).ascending();
    orderings(m)?
        .iter()
        .map(|ord| build_l(ord, n)?.adjoint(&up))
        .collect()
}

/// Smallest eigenvalue over all `L*(lam_up)`; nonnegative iff absolutely PPT.
pub fn appt_min_eig(lam: &Spectrum) -> Result<f64> {
    Ok(appt_matrices(lam)?
        .iter()
        .map(min_eig)
        .fold(f64::INFINITY, f64::min))
}

/// Absolutely-PPT test with tolerance `1e-9 * max(lam)`.
pub fn is_appt(lam: &Spectrum) -> Result<bool> {
    is_appt_with_tol(lam, DEFAULT_TOL)
}

pub fn is_appt_with_tol(lam: &Spectrum, tol: f64) -> Result<bool> {
    let scale = lam.values().iter().fold(0.0_f64, |a, v| a.max(v.abs()));
    Ok(appt_min_eig(lam)? >= -tol * scale)
}

fn qubit_qudit_state(lam: &Spectrum) -> Result<SortedSpectrum> {
    match lam.dims() {
        (2, n) | (n, 2) if n >= 2 => Ok(sort_descending(&canonical_state(lam)?)),
        (m, n) => Err(Error::WrongDims {
            expected: "2xn with n >= 2",
            m,
            n,
        }),
    }
}

/// `[[2 l_2n, l_(2n-1) - l_1], [., 2 l_(2n-2)]]` on the descending spectrum.
pub fn asep_2n_matrix(lam: &Spectrum) -> Result<SymMatrix> {
    let d = qubit_qudit_state(lam)?;
    let v = d.values();
    let k = v.len();
    SymMatrix::from_rows(&[
        vec![2.0 * v[k - 1], v[k - 2] - v[0]],
        vec![v[k - 2] - v[0], 2.0 * v[k - 3]],
    ])
}

/// Closed-form qubit-qudit test `l_1 <= l_(2n-1) + 2 sqrt(l_(2n-2) l_2n)`.
pub fn is_asep_2n(lam: &Spectrum) -> Result<bool> {
    let d = qubit_qudit_state(lam)?;
    let v = d.values();
    let k = v.len();
    let slack = v[k - 2] + 2.0 * (v[k - 3] * v[k - 1]).sqrt() - v[0];
    let tol = DEFAULT_TOL * d.max().max(0.0);
    let closed = slack >= -tol;
    debug_assert!(
        slack.abs() <= 1e-6 * d.max() || closed == (min_eig(&asep_2n_matrix(lam)?) >= 0.0),
        "closed form and matrix form disagree on {v:?}"
    );
    Ok(closed)
}

/// `sum_j mu_down[j] * lam_up[j]`: the largest entries of `mu` meet the
/// smallest of `lam`. Negative for some absolutely-PPT `lam` exactly when
/// `mu` lies outside the hull of decomposable witness spectra.
pub fn min_pairing(mu: &Spectrum, lam: &Spectrum) -> Result<f64> {
    if mu.len() != lam.len() {
        return Err(Error::VectorLengths(mu.len(), lam.len()));
    }
    let down = sort_descending(mu);
    let up = sort_descending(lam).ascending();
    Ok(down.values().iter().zip(&up).map(|(a, b)| a * b).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(m: usize, n: usize, v: &[f64]) -> Spectrum {
        Spectrum::new(m, n, v.to_vec()).unwrap()
    }

    fn paper_lambda() -> Spectrum {
        let v: Vec<f64> = [2.0, 2.0, 2.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0]
            .iter()
            .map(|x| x / 12.0)
            .collect();
        s(3, 3, &v)
    }

    #[test]
    fn appt_examples() {
        assert!(is_appt(&paper_lambda()).unwrap());
        assert!(!is_appt(&s(2, 2, &[1.0, 0.0, 0.0, 0.0])).unwrap());
        for (m, n) in [(2, 2), (2, 3), (3, 3), (3, 4), (4, 4)] {
            let k = m * n;
            let mixed = s(m, n, &vec![1.0 / k as f64; k]);
            assert!(is_appt(&mixed).unwrap(), "{m}x{n}");
        }
    }

    #[test]
    fn appt_rejects_negative_input() {
        assert!(matches!(
            is_appt(&s(2, 2, &[0.5, 0.5, 0.1, -0.1])),
            Err(Error::NegativeEntry(_))
        ));
        assert!(is_appt(&s(2, 2, &[0.25, 0.25, 0.25, 0.25 - 1e-13])).unwrap());
    }

    #[test]
    fn appt_swaps_dimensions() {
        let v = [0.3, 0.2, 0.2, 0.1, 0.1, 0.1];
        assert_eq!(
            is_appt(&s(3, 2, &v)).unwrap(),
            is_appt(&s(2, 3, &v)).unwrap()
        );
    }

    #[test]
    fn asep_examples() {
        assert!(is_asep_2n(&s(2, 2, &[0.25; 4])).unwrap());
        assert!(!is_asep_2n(&s(2, 2, &[1.0, 0.0, 0.0, 0.0])).unwrap());
        assert!(is_asep_2n(&s(2, 2, &[0.4, 0.3, 0.2, 0.1])).unwrap());
        assert!(matches!(
            is_asep_2n(&s(3, 3, &[1.0; 9])),
            Err(Error::WrongDims { .. })
        ));
    }

    #[test]
    fn qubit_qudit_adjoint_is_the_asep_matrix() {
        let lam = s(2, 3, &[0.3, 0.1, 0.25, 0.05, 0.2, 0.1]);
        assert_eq!(
            appt_matrices(&lam).unwrap(),
            vec![asep_2n_matrix(&lam).unwrap()]
        );
    }

    #[test]
    fn pairing_examples() {
        for c in [-0.5, -1.0, -1.1, -2.0] {
            let mu = s(3, 3, &[1.0, 1.0, 1.0, 1.0, 1.0, 1.0, -1.0, -1.0, c]);
            let got = min_pairing(&mu, &paper_lambda()).unwrap();
            assert!((got - (c + 1.0) / 6.0).abs() < 1e-15, "{c}: {got}");
        }
        let mu = s(2, 2, &[1.0; 4]);
        let lam = s(2, 2, &[0.4, 0.3, 0.2, 0.1]);
        assert!((min_pairing(&mu, &lam).unwrap() - 1.0).abs() < 1e-15);
        let pm = s(1, 2, &[1.0, -1.0]);
        assert_eq!(min_pairing(&pm, &pm).unwrap(), -2.0);
        assert!(min_pairing(&mu, &s(1, 2, &[1.0, 0.0])).is_err());
    }
}
