//! Cyclic Jacobi eigensolvers for small dense Hermitian and real symmetric
//! matrices.
//!
//! Matrices handled here are at most a few dozen rows, so the quadratic
//! convergence of the cyclic sweep is reached in a handful of sweeps and the
//! result is accurate to a small multiple of machine precision.

use num_complex::Complex64;

const MAX_SWEEPS: usize = 100;
const OFF_DIAGONAL_TOL: f64 = 1e-14;

/// Eigen-decomposition of a complex Hermitian matrix stored row-major.
///
/// Returns eigenvalues in non-increasing order and the matching eigenvectors
/// as columns of a row-major `dim x dim` matrix.
pub(crate) fn jacobi_hermitian(dim: usize, a: &[Complex64]) -> (Vec<f64>, Vec<Complex64>) {
    let mut a = a.to_vec();
    let mut v = vec![Complex64::new(0.0, 0.0); dim * dim];
    for i in 0..dim {
        v[i * dim + i] = Complex64::new(1.0, 0.0);
        a[i * dim + i] = Complex64::new(a[i * dim + i].re, 0.0);
    }
    let norm = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let threshold = OFF_DIAGONAL_TOL * norm;

    for _ in 0..MAX_SWEEPS {
        let off = off_diagonal_norm(dim, |r, c| a[r * dim + c].norm_sqr());
        if off <= threshold || off == 0.0 {
            break;
        }
        for p in 0..dim {
            for q in (p + 1)..dim {
                let apq = a[p * dim + q];
                let mag = apq.norm();
                if mag == 0.0 {
                    continue;
                }
                let app = a[p * dim + p].re;
                let aqq = a[q * dim + q].re;
                // phase that makes the (p, q) entry real and positive
                let e = apq / mag;
                let (c, s) = rotation(app, aqq, mag);
                let ec = e.conj();

                // A <- A V with V = [[c, s], [-s conj(e), c conj(e)]] on (p, q)
                for k in 0..dim {
                    let akp = a[k * dim + p];
                    let akq = a[k * dim + q];
                    a[k * dim + p] = akp * c - akq * ec * s;
                    a[k * dim + q] = akp * s + akq * ec * c;
                }
                // A <- V^H A
                for k in 0..dim {
                    let apk = a[p * dim + k];
                    let aqk = a[q * dim + k];
                    a[p * dim + k] = apk * c - aqk * e * s;
                    a[q * dim + k] = apk * s + aqk * e * c;
                }
                a[p * dim + q] = Complex64::new(0.0, 0.0);
                a[q * dim + p] = Complex64::new(0.0, 0.0);
                a[p * dim + p].im = 0.0;
                a[q * dim + q].im = 0.0;

                for k in 0..dim {
                    let vkp = v[k * dim + p];
                    let vkq = v[k * dim + q];
                    v[k * dim + p] = vkp * c - vkq * ec * s;
                    v[k * dim + q] = vkp * s + vkq * ec * c;
                }
            }
        }
    }

    let vals: Vec<f64> = (0..dim).map(|i| a[i * dim + i].re).collect();
    let order = descending_order(&vals);
    let sorted_vals = order.iter().map(|&i| vals[i]).collect();
    let mut sorted_vecs = vec![Complex64::new(0.0, 0.0); dim * dim];
    for (new_col, &old_col) in order.iter().enumerate() {
        for r in 0..dim {
            sorted_vecs[r * dim + new_col] = v[r * dim + old_col];
        }
    }
    (sorted_vals, sorted_vecs)
}

/// Eigen-decomposition of a real symmetric matrix stored row-major.
pub(crate) fn jacobi_symmetric(dim: usize, a: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let mut a = a.to_vec();
    let mut v = vec![0.0; dim * dim];
    for i in 0..dim {
        v[i * dim + i] = 1.0;
    }
    let norm = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let threshold = OFF_DIAGONAL_TOL * norm;

    for _ in 0..MAX_SWEEPS {
        let off = off_diagonal_norm(dim, |r, c| a[r * dim + c] * a[r * dim + c]);
        if off <= threshold || off == 0.0 {
            break;
        }
        for p in 0..dim {
            for q in (p + 1)..dim {
                let apq = a[p * dim + q];
                if apq == 0.0 {
                    continue;
                }
                let (c, s) = rotation(a[p * dim + p], a[q * dim + q], apq);
                for k in 0..dim {
                    let akp = a[k * dim + p];
                    let akq = a[k * dim + q];
                    a[k * dim + p] = c * akp - s * akq;
                    a[k * dim + q] = s * akp + c * akq;
                }
                for k in 0..dim {
                    let apk = a[p * dim + k];
                    let aqk = a[q * dim + k];
                    a[p * dim + k] = c * apk - s * aqk;
                    a[q * dim + k] = s * apk + c * aqk;
                }
                a[p * dim + q] = 0.0;
                a[q * dim + p] = 0.0;
                for k in 0..dim {
                    let vkp = v[k * dim + p];
                    let vkq = v[k * dim + q];
                    v[k * dim + p] = c * vkp - s * vkq;
                    v[k * dim + q] = s * vkp + c * vkq;
                }
            }
        }
    }

    let vals: Vec<f64> = (0..dim).map(|i| a[i * dim + i]).collect();
    let order = descending_order(&vals);
    let sorted_vals = order.iter().map(|&i| vals[i]).collect();
    let mut sorted_vecs = vec![0.0; dim * dim];
    for (new_col, &old_col) in order.iter().enumerate() {
        for r in 0..dim {
            sorted_vecs[r * dim + new_col] = v[r * dim + old_col];
        }
    }
    (sorted_vals, sorted_vecs)
}

/// Jacobi rotation `(c, s)` annihilating the off-diagonal entry `r` of the
/// symmetric block `[[app, r], [r, aqq]]`.
fn rotation(app: f64, aqq: f64, r: f64) -> (f64, f64) {
    let theta = (aqq - app) / (2.0 * r);
    let t = if theta.is_infinite() {
        0.0
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    (c, t * c)
}

fn off_diagonal_norm(dim: usize, sq: impl Fn(usize, usize) -> f64) -> f64 {
    let mut off = 0.0;
    for r in 0..dim {
        for c in 0..dim {
            if r != c {
                off += sq(r, c);
            }
        }
    }
    off.sqrt()
}

fn descending_order(vals: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..vals.len()).collect();
    order.sort_by(|&i, &j| vals[j].total_cmp(&vals[i]));
    order
}
