//! Seeded sampling primitives.
//!
//! All randomness goes through [`Prng`], the ChaCha stream cipher with 8
//! rounds (`rand_chacha::ChaCha8Rng`). Its output is specified independently
//! of platform and word size, so sample datasets reproduce bit for bit.
//! Independent streams for parallel work are derived with [`stream_rng`].

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::CMatrix;
use crate::error::{Error, Result};

pub type Prng = ChaCha8Rng;

pub fn prng(seed: u64) -> Prng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Generator for sub-task `index` of a job seeded with `seed`.
pub fn stream_rng(seed: u64, index: u64) -> Prng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Standard complex Gaussian with `E|z|^2 = 1`.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Haar-random unit vector in `C^dim`.
pub fn random_unit_vector<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..dim).map(|_| complex_gaussian(rng)).collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-300 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

/// Wishart sample `G G^H` with `G` a `dim x rank` matrix of standard complex
/// Gaussians.
pub fn random_psd<R: Rng + ?Sized>(dim: usize, rank: usize, rng: &mut R) -> Result<CMatrix> {
    if rank == 0 || rank > dim {
        return Err(Error::BadRank { rank, dim });
    }
    let g: Vec<Complex64> = (0..dim * rank).map(|_| complex_gaussian(rng)).collect();
    let mut out = CMatrix::zeros(dim);
    for r in 0..dim {
        for c in r..dim {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..rank {
                acc += g[r * rank + k] * g[c * rank + k].conj();
            }
            out[(r, c)] = acc;
            out[(c, r)] = acc.conj();
        }
        out[(r, r)].im = 0.0;
    }
    Ok(out)
}
