//! Certificate-producing membership in the hull of decomposable witness
//! spectra.
//!
//! `mu` lies in the hull iff there are PSD matrices `Y_j`, one per product
//! ordering, with `sum_j p(L_j(Y_j)) <= p(mu_down)` componentwise, where `p`
//! takes suffix sums. Otherwise some absolutely-PPT `lam` has a negative
//! pairing with `mu`. [`decide_conv_dbp`] looks for one of the two
//! certificates and checks it with [`check_psd_certificate`] or
//! [`check_pairing_certificate`] before returning it.
//!
//! The search is a cutting-plane LP over ascending state spectra: the
//! objective is the pairing, the absolutely-PPT condition is approximated by
//! cuts `v^T L_j*(lam) v >= 0`, and the LP dual turns the accumulated cuts
//! into the `Y_j`. Near the boundary, member certificates are finished by
//! Dykstra's alternating projections.

mod cutting_plane;
mod dykstra;
mod sys33;

use serde::{Deserialize, Serialize};

use crate::appt::{is_appt, min_pairing};
use crate::error::{Error, Result};
use crate::linalg::{min_eig, SymMatrix};
use crate::orderings::{apply_l, orderings, OrderingMap};
use crate::spectrum::{partial_sums, sort_descending, suffix_sums, Spectrum};

pub use sys33::sys33_inequalities;

/// Largest `min(m, n)` handled; the ordering count grows to 114 at 5.
pub const MAX_LOCAL_DIM: usize = 4;
pub const PSD_TOL: f64 = 1e-9;
pub const SUM_TOL: f64 = 1e-8;
pub const PAIRING_TOL: f64 = 1e-9;
/// Largest cut-model gap, relative to `max(1, |mu|_inf)`, at which a member
/// certificate is still attempted.
pub const MEMBER_SEARCH_GAP: f64 = 1e-6;

/// PSD matrices satisfying the partial-sum inequalities, one per ordering of
/// `min(m, n)` in the order of [`orderings`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PsdCertificate {
    #[serde(rename = "Ys")]
    pub ys: Vec<SymMatrix>,
    /// `p(mu_down) - sum_j p(L_j(Y_j))`.
    pub residuals: Vec<f64>,
}

/// An absolutely-PPT state spectrum with negative pairing.
#[derive(Debug, Clone, PartialEq)]
pub struct PairingCertificate {
    pub lam: Spectrum,
    pub value: f64,
}

#[derive(Serialize, Deserialize)]
struct PairingRepr {
    dims: (usize, usize),
    lambda: Vec<f64>,
    value: f64,
}

impl Serialize for PairingCertificate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PairingRepr {
            dims: self.lam.dims(),
            lambda: self.lam.values().to_vec(),
            value: self.value,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PairingCertificate {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = PairingRepr::deserialize(d)?;
        let lam = Spectrum::new(r.dims.0, r.dims.1, r.lambda).map_err(serde::de::Error::custom)?;
        Ok(PairingCertificate {
            lam,
            value: r.value,
        })
    }
}

/// Either certificate, tagged by `kind` in JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Certificate {
    Psd(PsdCertificate),
    Pairing(PairingCertificate),
}

#[derive(Debug, Clone, PartialEq)]
pub enum MembershipVerdict {
    Member(PsdCertificate),
    NonMember(PairingCertificate),
    /// Neither certificate was found within budget. `lower_bound` bounds the
    /// normalized pairing from below; `worst_slack` is the most violated
    /// inequality of the best member attempt.
    Undecided {
        iterations: usize,
        lower_bound: f64,
        worst_slack: f64,
    },
}

impl MembershipVerdict {
    pub fn is_member(&self) -> bool {
        matches!(self, MembershipVerdict::Member(_))
    }

    pub fn is_non_member(&self) -> bool {
        matches!(self, MembershipVerdict::NonMember(_))
    }

    pub fn certificate(&self) -> Option<Certificate> {
        match self {
            MembershipVerdict::Member(c) => Some(Certificate::Psd(c.clone())),
            MembershipVerdict::NonMember(c) => Some(Certificate::Pairing(c.clone())),
            MembershipVerdict::Undecided { .. } => None,
        }
    }
}

/// Search limits and extra starting points.
#[derive(Debug, Clone)]
pub struct Budget {
    /// Cutting-plane rounds.
    pub lp_rounds: usize,
    /// Alternating-projection cycles for finishing member certificates.
    pub dykstra_cycles: usize,
    /// Candidate spectra tried as pairing certificates before any search.
    pub seeds: Vec<Spectrum>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            lp_rounds: 400,
            dykstra_cycles: 50_000,
            seeds: Vec::new(),
        }
    }
}

impl Budget {
    pub fn with_seed(mut self, lam: Spectrum) -> Self {
        self.seeds.push(lam);
        self
    }
}

/// The spectrum with dimensions swapped to `m <= n`.
fn canonical(mu: &Spectrum) -> Result<Spectrum> {
    let (m, n) = mu.dims();
    let (m, n) = (m.min(n), m.max(n));
    if m > MAX_LOCAL_DIM {
        return Err(Error::WrongDims {
            expected: "min(m, n) <= 4",
            m,
            n,
        });
    }
    Spectrum::new(m, n, mu.values().to_vec())
}

fn scale_of(mu: &Spectrum) -> f64 {
    mu.tolerance_scale()
}

/// `sum_j p(L_j(Y_j))` through the placement maps.
fn stacked_partial_sums(ords: &[OrderingMap], n: usize, ys: &[SymMatrix]) -> Result<Vec<f64>> {
    let len = ords.first().map_or(0, |o| o.m() * n);
    let mut total = vec![0.0; len];
    for (ord, y) in ords.iter().zip(ys) {
        for (t, v) in total.iter_mut().zip(suffix_sums(&apply_l(ord, n, y)?)) {
            *t += v;
        }
    }
    Ok(total)
}

fn residuals(mu: &Spectrum, ords: &[OrderingMap], ys: &[SymMatrix]) -> Result<Vec<f64>> {
    let (_, n) = mu.dims();
    let lhs = stacked_partial_sums(ords, n, ys)?;
    let rhs = partial_sums(&sort_descending(mu));
    Ok(rhs.iter().zip(&lhs).map(|(r, l)| r - l).collect())
}

fn psd_certificate(mu: &Spectrum, ys: Vec<SymMatrix>) -> Result<PsdCertificate> {
    let mu = canonical(mu)?;
    let ords = orderings(mu.dims().0)?;
    let residuals = residuals(&mu, ords, &ys)?;
    Ok(PsdCertificate { ys, residuals })
}

/// Re-evaluates a member certificate from scratch: each `Y_j` PSD within
/// `1e-9` and every partial-sum inequality within `1e-8`, both scaled by
/// `max(1, |mu|_inf)`.
pub fn check_psd_certificate(mu: &Spectrum, cert: &PsdCertificate) -> Result<bool> {
    let mu = canonical(mu)?;
    let (m, _) = mu.dims();
    let ords = orderings(m)?;
    if cert.ys.len() != ords.len() {
        return Err(Error::Shape(format!(
            "expected {} matrices, got {}",
            ords.len(),
            cert.ys.len()
        )));
    }
    if let Some(y) = cert.ys.iter().find(|y| y.size() != m) {
        return Err(Error::Shape(format!(
            "expected {m}x{m} matrices, got {0}x{0}",
            y.size()
        )));
    }
    let scale = scale_of(&mu);
    if cert.ys.iter().any(|y| min_eig(y) < -PSD_TOL * scale) {
        return Ok(false);
    }
    let slack = residuals(&mu, ords, &cert.ys)?;
    Ok(slack.iter().all(|s| *s >= -SUM_TOL * scale))
}

/// Re-evaluates a non-member certificate: `lam` absolutely PPT, and the
/// pairing recomputed from `mu` and `lam` below `-1e-9` and consistent with
/// the recorded value.
pub fn check_pairing_certificate(mu: &Spectrum, cert: &PairingCertificate) -> Result<bool> {
    if mu.len() != cert.lam.len() {
        return Err(Error::VectorLengths(mu.len(), cert.lam.len()));
    }
    let value = min_pairing(mu, &cert.lam)?;
    let appt = match is_appt(&cert.lam) {
        Ok(b) => b,
        Err(Error::NegativeEntry(_)) => false,
        Err(e) => return Err(e),
    };
    let consistent = (value - cert.value).abs() <= PAIRING_TOL * scale_of(mu).max(1.0);
    Ok(appt && value < -PAIRING_TOL && consistent)
}

fn pairing_candidate(mu: &Spectrum, lam: Spectrum) -> Result<Option<PairingCertificate>> {
    let value = min_pairing(mu, &lam)?;
    let cert = PairingCertificate { lam, value };
    Ok(check_pairing_certificate(mu, &cert)?.then_some(cert))
}

/// `m` entries equal to 2 and the rest 1, normalized.
fn default_seeds(m: usize, n: usize) -> Vec<Spectrum> {
    let len = m * n;
    let total = (len + m) as f64;
    let v = (0..len)
        .map(|k| if k < m { 2.0 / total } else { 1.0 / total })
        .collect();
    vec![Spectrum::new(m, n, v).expect("length m n")]
}

/// Decides whether `mu` lies in the hull of decomposable witness spectra.
///
/// Seeds from the budget are tried first as pairing certificates, in order,
/// followed by a built-in seed. A returned certificate always passes its
/// checker; `Undecided` means neither search succeeded within budget.
pub fn decide_conv_dbp(mu: &Spectrum, budget: &Budget) -> Result<MembershipVerdict> {
    let orig = mu;
    let mu = canonical(mu)?;
    let (m, n) = mu.dims();
    let ords = orderings(m)?;

    if mu.values().iter().all(|v| *v >= 0.0) {
        let cert = psd_certificate(&mu, vec![SymMatrix::zeros(m); ords.len()])?;
        return Ok(MembershipVerdict::Member(cert));
    }

    for seed in budget.seeds.iter().cloned().chain(default_seeds(m, n)) {
        if seed.len() != mu.len() {
            return Err(Error::VectorLengths(seed.len(), mu.len()));
        }
        if let Some(cert) = pairing_candidate(orig, seed)? {
            return Ok(MembershipVerdict::NonMember(cert));
        }
    }

    let scale = scale_of(&mu);
    let lp = cutting_plane::run(&mu, ords, budget.lp_rounds)?;
    if let Some(up) = lp.best.clone() {
        if let Some(cert) = pairing_candidate(orig, Spectrum::new(m, n, up)?)? {
            return Ok(MembershipVerdict::NonMember(cert));
        }
    }

    let mut worst_slack = f64::NEG_INFINITY;
    if lp.lower_bound >= -MEMBER_SEARCH_GAP * scale {
        let start = match cutting_plane::member_matrices(&mu, ords, &lp.cuts)? {
            Some(ys) => {
                let cert = psd_certificate(&mu, ys.clone())?;
                if check_psd_certificate(&mu, &cert)? {
                    return Ok(MembershipVerdict::Member(cert));
                }
                worst_slack = cert.residuals.iter().copied().fold(f64::INFINITY, f64::min);
                ys
            }
            None => vec![SymMatrix::zeros(m); ords.len()],
        };
        let relax = 0.5 * SUM_TOL * scale;
        let ys = dykstra::run(&mu, ords, start, relax, budget.dykstra_cycles)?;
        let cert = psd_certificate(&mu, ys)?;
        if check_psd_certificate(&mu, &cert)? {
            return Ok(MembershipVerdict::Member(cert));
        }
        let w = cert.residuals.iter().copied().fold(f64::INFINITY, f64::min);
        worst_slack = worst_slack.max(w);
    }
    Ok(MembershipVerdict::Undecided {
        iterations: lp.rounds,
        lower_bound: lp.lower_bound,
        worst_slack,
    })
}
