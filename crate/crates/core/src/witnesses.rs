//! Random decomposable witnesses, spectral necessary conditions and a
//! numerical block-positivity probe.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    eigh, partial_transpose, random_psd, random_unit_vector, stream_rng, BipartiteOperator, CMatrix,
};
use crate::spectrum::{sort_descending, Spectrum};

pub const DEFAULT_RESTARTS: usize = 50;
pub const DEFAULT_ITERS: usize = 200;
pub const STALL: f64 = 1e-12;
pub const BATTERY_TOL: f64 = 1e-9;

fn psd_or_zero(dim: usize, rank: usize, rng: &mut crate::linalg::Prng) -> Result<CMatrix> {
    if rank == 0 {
        Ok(CMatrix::zeros(dim))
    } else {
        random_psd(dim, rank, rng)
    }
}

/// `count` witnesses `X^T_B + Y` with Wishart `X`, `Y` of the given ranks
/// (rank 0 gives the zero matrix). Sample `k` draws from stream `k` of
/// `seed`, so any prefix of a batch is reproducible on its own.
pub fn sample_decomposable(
    (m, n): (usize, usize),
    (rx, ry): (usize, usize),
    seed: u64,
    count: usize,
) -> Result<Vec<BipartiteOperator>> {
    let dim = m * n;
    for rank in [rx, ry] {
        if rank > dim {
            return Err(Error::BadRank { rank, dim });
        }
    }
    (0..count)
        .map(|k| {
            let mut rng = stream_rng(seed, k as u64);
            let x = BipartiteOperator::new(m, n, psd_or_zero(dim, rx, &mut rng)?)?;
            let y = BipartiteOperator::new(m, n, psd_or_zero(dim, ry, &mut rng)?)?;
            partial_transpose(&x).add(&y)
        })
        .collect()
}

/// One line of a JSONL sample dataset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub dims: [usize; 2],
    pub spectrum: Vec<f64>,
    pub ranks: [usize; 2],
    pub seed: u64,
    pub index: usize,
}

pub fn sample_records(
    dims: (usize, usize),
    ranks: (usize, usize),
    seed: u64,
    count: usize,
) -> Result<Vec<SampleRecord>> {
    Ok(sample_decomposable(dims, ranks, seed, count)?
        .iter()
        .enumerate()
        .map(|(index, w)| SampleRecord {
            dims: [dims.0, dims.1],
            spectrum: w.eigvals(),
            ranks: [ranks.0, ranks.1],
            seed,
            index,
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    NegativeCount,
    RatioMinDim,
    RatioSqrt,
    RatioCeil,
    TraceSquare,
    DecomposableMin,
}

impl Condition {
    pub fn description(&self) -> &'static str {
        match self {
            Condition::NegativeCount => "at most (m-1)(n-1) negative eigenvalues",
            Condition::RatioMinDim => "min/max >= 1 - min(m,n)",
            Condition::RatioSqrt => {
                "min/max >= 1 - mn sqrt(mn-1) / (q sqrt(mn-1) + sqrt(mnq - q^2))"
            }
            Condition::RatioCeil => "min/max >= 1 - ceil((m + n - sqrt((m-n)^2 + 4q - 4)) / 2)",
            Condition::TraceSquare => "Tr(W)^2 >= Tr(W^2)",
            Condition::DecomposableMin => "min >= -Tr(W)/2 (decomposable only)",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub condition: Condition,
    /// `None` when the check does not apply.
    pub passed: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BatteryReport {
    pub negatives: usize,
    pub checks: Vec<CheckResult>,
}

impl BatteryReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed != Some(false))
    }

    pub fn get(&self, condition: Condition) -> Option<bool> {
        self.checks
            .iter()
            .find(|c| c.condition == condition)
            .and_then(|c| c.passed)
    }
}

/// `min >= bound * max`, written without dividing by `max`. A spectrum with
/// negative entries but no positive one fails every ratio bound.
fn ratio_at_least(min: f64, max: f64, bound: f64, q: usize, tol: f64) -> bool {
    if q == 0 {
        return true;
    }
    if max <= 0.0 {
        return false;
    }
    min >= bound * max - tol
}

/// The spectral necessary conditions for block positivity, plus the
/// decomposable-only bound when `decomposable` is set. Each comparison
/// allows `1e-9` relative to `max(1, |s|_inf)` (squared for the trace test).
pub fn necessary_battery(s: &Spectrum, decomposable: bool) -> BatteryReport {
    let (m, n) = s.dims();
    let scale = s.tolerance_scale();
    let tol = BATTERY_TOL * scale;
    let sorted = sort_descending(s);
    let (max, min) = (sorted.max(), sorted.min());
    let q = s.values().iter().filter(|v| **v < -tol).count();
    let (mf, nf, qf) = (m as f64, n as f64, q as f64);
    let mn = mf * nf;

    let sqrt_bound = if q == 0 {
        1.0
    } else {
        let r = (mn - 1.0).sqrt();
        1.0 - mn * r / (qf * r + (mn * qf - qf * qf).max(0.0).sqrt())
    };
    let ceil_bound = {
        let inner = 0.5 * (mf + nf - ((mf - nf).powi(2) + 4.0 * qf - 4.0).max(0.0).sqrt());
        1.0 - (inner - 1e-9).ceil()
    };
    let trace: f64 = s.sum();
    let trace_sq: f64 = s.values().iter().map(|v| v * v).sum();

    let mut checks = vec![
        CheckResult {
            condition: Condition::NegativeCount,
            passed: Some(q <= (m - 1) * (n - 1)),
        },
        CheckResult {
            condition: Condition::RatioMinDim,
            passed: Some(ratio_at_least(min, max, 1.0 - m.min(n) as f64, q, tol)),
        },
        CheckResult {
            condition: Condition::RatioSqrt,
            passed: Some(ratio_at_least(min, max, sqrt_bound, q, tol)),
        },
        CheckResult {
            condition: Condition::RatioCeil,
            passed: Some(ratio_at_least(min, max, ceil_bound, q, tol)),
        },
        CheckResult {
            condition: Condition::TraceSquare,
            passed: Some(trace * trace >= trace_sq - BATTERY_TOL * scale * scale),
        },
    ];
    checks.push(CheckResult {
        condition: Condition::DecomposableMin,
        passed: decomposable.then(|| min >= -trace / 2.0 - tol),
    });
    BatteryReport {
        negatives: q,
        checks,
    }
}

/// Lowest product-state expectation found by the see-saw search.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbeResult {
    pub value: f64,
    pub a: Vec<Complex64>,
    pub b: Vec<Complex64>,
}

/// `B[k,l] = sum_(i,j) conj(a_i) a_j W[(i,k),(j,l)]`.
fn conditional_second(w: &BipartiteOperator, a: &[Complex64]) -> CMatrix {
    let (m, n) = w.dims();
    let mut out = CMatrix::zeros(n);
    for k in 0..n {
        for l in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..m {
                for j in 0..m {
                    acc += a[i].conj() * a[j] * w.entry(i, k, j, l);
                }
            }
            out[(k, l)] = acc;
        }
    }
    hermitian_part(&out)
}

/// `A[i,j] = sum_(k,l) conj(b_k) b_l W[(i,k),(j,l)]`.
fn conditional_first(w: &BipartiteOperator, b: &[Complex64]) -> CMatrix {
    let (m, n) = w.dims();
    let mut out = CMatrix::zeros(m);
    for i in 0..m {
        for j in 0..m {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..n {
                for l in 0..n {
                    acc += b[k].conj() * b[l] * w.entry(i, k, j, l);
                }
            }
            out[(i, j)] = acc;
        }
    }
    hermitian_part(&out)
}

fn hermitian_part(a: &CMatrix) -> CMatrix {
    a.add(&a.adjoint()).scale(0.5)
}

fn min_eigenpair(a: &CMatrix) -> Result<(f64, Vec<Complex64>)> {
    let (vals, vecs) = eigh(a)?;
    let d = a.dim();
    let k = d - 1;
    Ok((vals[k], (0..d).map(|r| vecs[(r, k)]).collect()))
}

/// One see-saw run from `a0`. Returns the value after every half-step,
/// which never increases, and the final product vector.
pub fn see_saw(
    w: &BipartiteOperator,
    a0: Vec<Complex64>,
    iters: usize,
) -> Result<(Vec<f64>, Vec<Complex64>, Vec<Complex64>)> {
    let mut a = a0;
    let (mut value, mut b) = min_eigenpair(&conditional_second(w, &a))?;
    let mut trace = vec![value];
    for _ in 0..iters {
        let before = value;
        let (va, na) = min_eigenpair(&conditional_first(w, &b))?;
        a = na;
        let (vb, nb) = min_eigenpair(&conditional_second(w, &a))?;
        b = nb;
        trace.push(va);
        trace.push(vb);
        value = vb;
        if before - value < STALL {
            break;
        }
    }
    Ok((trace, a, b))
}

/// Best product-state value over `restarts` random starts. A negative value
/// proves that `w` is not block positive; a nonnegative one only means no
/// violation was found.
pub fn probe_block_positivity(
    w: &BipartiteOperator,
    restarts: usize,
    iters: usize,
    seed: u64,
) -> Result<ProbeResult> {
    let (m, _) = w.dims();
    let mut best: Option<ProbeResult> = None;
    for r in 0..restarts.max(1) {
        let mut rng = stream_rng(seed, r as u64);
        let a0 = random_unit_vector(m, &mut rng);
        let (trace, a, b) = see_saw(w, a0, iters)?;
        let value = *trace.last().expect("nonempty");
        if best.as_ref().is_none_or(|p| value < p.value) {
            best = Some(ProbeResult { value, a, b });
        }
    }
    Ok(best.expect("at least one restart"))
}
