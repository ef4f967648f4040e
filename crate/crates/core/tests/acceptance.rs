//! Acceptance suite: one line per criterion, with its runtime.
//!
//! Run with `cargo test --test acceptance`. Set `EWS_SLOW=1` to include the
//! `m = 7` ordering count.

use std::time::{Duration, Instant};

use ews::appt::{appt_matrices, is_appt};
use ews::cli;
use ews::feasibility::{
    check_pairing_certificate, check_psd_certificate, decide_conv_dbp, Budget, MembershipVerdict,
    PsdCertificate,
};
use ews::linalg::SymMatrix;
use ews::orderings::{enumerate_orderings, ProductPair};
use ews::qubit_qudit::{
    check_condition_c, conv_bp2n_margin, conv_bp2n_member_c, conv_bp2n_member_d, golden_family,
    threshold_bisect,
};
use ews::rank1::{build_rank1_pt, rank1_pt_spectrum, SchmidtVector};
use ews::two_qubit::{construct_bp22, is_bp22_spectrum};
use ews::witnesses::{necessary_battery, probe_block_positivity, sample_decomposable};
use ews::Spectrum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    passed: bool,
    detail: String,
    /// Sub-checks that fail for a documented reason and do not fail the run.
    known: Vec<String>,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Outcome {
            passed,
            detail: detail.into(),
            known: Vec::new(),
        }
    }
}

fn desc(v: &[f64]) -> Vec<f64> {
    let mut v = v.to_vec();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

fn scale(v: &[f64]) -> f64 {
    v.iter().fold(1.0_f64, |a, x| a.max(x.abs()))
}

/// The three two-qubit inequalities on the sorted spectrum.
fn bp22_oracle(v: &[f64]) -> bool {
    let d = desc(v);
    let tol = 1e-9 * scale(v);
    d[2] >= -tol && d[3] >= -d[1] - tol && d[3] >= -(d[0] * d[2]).max(0.0).sqrt() - tol
}

/// The closed-form qubit-qudit hull test, evaluated from scratch.
fn conv2n_oracle(v: &[f64]) -> bool {
    let d = desc(v);
    let s1: f64 = d.iter().sum();
    let s2 = s1 - d[0];
    let s3 = s2 - d[1];
    let sneg: f64 = v.iter().filter(|x| **x < 0.0).sum();
    let q1 = s1 * s1 - 4.0 * sneg * sneg;
    let q2 = (s1 + 2.0 * s3).powi(2) - 8.0 * s3 * s3;
    let tol = 1e-9 * scale(v);
    let qtol = tol * tol.max(s1.abs());
    if q1 < -qtol || q2 < -qtol {
        return false;
    }
    let (r1, r2) = (q1.max(0.0).sqrt(), q2.max(0.0).sqrt());
    r1 >= s1 - 2.0 * s2 - tol
        && r2 >= s1 - 4.0 * s2 + 2.0 * s3 - tol
        && 2.0 * r1 + r2 >= s1 - 2.0 * s3 - tol
}

fn criterion_1() -> Outcome {
    let s = |v: &[f64]| Spectrum::new(2, 2, v.to_vec()).unwrap();
    let pins = is_bp22_spectrum(&s(&[4.0, 2.0, 1.0, -2.0])).unwrap()
        && !is_bp22_spectrum(&s(&[4.0, 2.0, -0.5, -0.5])).unwrap()
        && is_bp22_spectrum(&s(&[1.0, 1.0, 1.0, -1.0])).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut agree, mut members) = (0, 0);
    for _ in 0..10_000 {
        let v: Vec<f64> = (0..4).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let got = is_bp22_spectrum(&s(&v)).unwrap();
        if got == bp22_oracle(&v) {
            agree += 1;
        }
        members += got as usize;
    }
    Outcome::new(
        pins && agree == 10_000,
        format!("pins ok = {pins}; {agree}/10000 agree with the oracle ({members} members)"),
    )
}

fn random_bp22(rng: &mut ChaCha8Rng) -> Vec<f64> {
    loop {
        let mut v: Vec<f64> = (0..3).map(|_| rng.gen_range(0.0..1.0)).collect();
        v.push(rng.gen_range(-1.0..0.0));
        if bp22_oracle(&v) {
            return v;
        }
    }
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut worst_eig, mut worst_probe) = (0.0_f64, f64::INFINITY);
    for k in 0..1000 {
        let v = random_bp22(&mut rng);
        let s = Spectrum::new(2, 2, v.clone()).unwrap();
        let w = construct_bp22(&s).unwrap();
        let got = w.eigvals();
        for (a, b) in got.iter().zip(desc(&v)) {
            worst_eig = worst_eig.max((a - b).abs());
        }
        let p = probe_block_positivity(&w, 50, 200, k).unwrap();
        worst_probe = worst_probe.min(p.value);
    }
    Outcome::new(
        worst_eig <= 1e-9 && worst_probe >= -1e-8,
        format!("max eigenvalue error {worst_eig:.2e}; lowest probe value {worst_probe:.2e}"),
    )
}

fn criterion_3() -> Outcome {
    let c_star = -(3.0 + 5f64.sqrt()) / 6.0;
    let c = threshold_bisect(golden_family, conv_bp2n_member_d, -2.0, 0.0).unwrap();
    let s = golden_family(c_star).unwrap();
    let g = (1.0 + 5f64.sqrt()) / 2.0;
    let printed =
        SymMatrix::from_rows(&[vec![g, c_star], vec![c_star, g + 2.0 * c_star + 2.0]]).unwrap();
    let printed_ok = check_condition_c(&s, &printed, 1e-9).unwrap();
    let h = (3.0 + 5f64.sqrt()) / 2.0 + c_star;
    let corrected = SymMatrix::from_rows(&[vec![h, 2.0 * c_star], vec![2.0 * c_star, h]]).unwrap();
    let corrected_ok = check_condition_c(&s, &corrected, 1e-9).unwrap();
    let found = conv_bp2n_member_c(&s).unwrap().is_some();
    let mut out = Outcome::new(
        (c - c_star).abs() <= 1e-9 && corrected_ok && found,
        format!(
            "c = {c:.12}, |c - c*| = {:.1e}; corrected X accepted = {corrected_ok}; search finds X = {found}",
            (c - c_star).abs()
        ),
    );
    if !printed_ok {
        out.known.push(
            "printed X = [[g, c],[c, g + 2c + 2]] is rejected: x12 = c exceeds s_- = 2c (see README)"
                .into(),
        );
    }
    out
}

fn random_2n(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let negatives = rng.gen_range(1..=n);
    let depth = rng.gen_range(0.0..1.0);
    (0..2 * n)
        .map(|k| {
            if k < negatives {
                -depth * rng.gen_range(0.0..1.0)
            } else {
                rng.gen_range(0.0..1.0)
            }
        })
        .collect()
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut disagree, mut near, mut members) = (0, 0, 0);
    for k in 0..10_000 {
        let n = 2 + k % 4;
        let v = random_2n(&mut rng, n);
        let s = Spectrum::new(2, n, v).unwrap();
        let d = conv_bp2n_member_d(&s).unwrap();
        let c = conv_bp2n_member_c(&s).unwrap().is_some();
        members += d as usize;
        if c != d {
            if conv_bp2n_margin(&s).unwrap().abs() <= 1e-7 * s.tolerance_scale() {
                near += 1;
            } else {
                disagree += 1;
            }
        }
    }
    Outcome::new(
        disagree == 0,
        format!("{disagree} disagreements away from the boundary, {near} within 1e-7 ({members} members)"),
    )
}

fn criterion_5() -> Outcome {
    let expected = [1usize, 2, 10, 114, 2608];
    let counts: Vec<usize> = (2..=6)
        .map(|m| enumerate_orderings(m).unwrap().len())
        .collect();
    let p = |i, j| ProductPair::new(i, j).unwrap();
    let l1 = vec![p(1, 1), p(1, 2), p(1, 3), p(2, 2), p(2, 3), p(3, 3)];
    let l2 = vec![p(1, 1), p(1, 2), p(2, 2), p(1, 3), p(2, 3), p(3, 3)];
    let m3: Vec<Vec<ProductPair>> = enumerate_orderings(3)
        .unwrap()
        .iter()
        .map(|o| o.order().to_vec())
        .collect();
    let pair_ok = m3.len() == 2 && m3.contains(&l1) && m3.contains(&l2);
    let mut detail = format!("counts {counts:?}; m = 3 pair matches = {pair_ok}");
    let mut passed = counts == expected && pair_ok;
    if std::env::var("EWS_SLOW").is_ok_and(|v| v == "1") {
        let c7 = enumerate_orderings(7).unwrap().len();
        detail += &format!("; m = 7 count {c7}");
        passed &= c7 == 107_498;
    } else {
        detail += "; m = 7 skipped (EWS_SLOW=1)";
    }
    Outcome::new(passed, detail)
}

/// `lam_1 <= lam_(2n-1) + 2 sqrt(lam_(2n-2) lam_(2n))` on the sorted vector.
fn appt_2n_margin(v: &[f64]) -> f64 {
    let d = desc(v);
    let k = d.len();
    d[k - 2] + 2.0 * (d[k - 3] * d[k - 1]).sqrt() - d[0]
}

fn criterion_6() -> Outcome {
    let lam = Spectrum::new(
        3,
        3,
        [2.0, 2.0, 2.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0]
            .iter()
            .map(|x| x / 12.0)
            .collect(),
    )
    .unwrap();
    let pin = is_appt(&lam).unwrap();

    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut disagree, mut near, mut members) = (0, 0, 0);
    let mut worst_matrix = 0.0_f64;
    for k in 0..10_000 {
        let n = 2 + k % 4;
        let t: f64 = rng.gen_range(0.0..1.0);
        let raw: Vec<f64> = (0..2 * n)
            .map(|_| rng.gen_range(0.0..1.0_f64).powi(3))
            .collect();
        let total: f64 = raw.iter().sum();
        let v: Vec<f64> = raw
            .iter()
            .map(|x| (1.0 - t) * x / total + t / (2 * n) as f64)
            .collect();
        let s = Spectrum::new(2, n, v.clone()).unwrap();
        let got = is_appt(&s).unwrap();
        members += got as usize;
        let margin = appt_2n_margin(&v);
        if got != (margin >= 0.0) {
            if margin.abs() <= 1e-8 {
                near += 1;
            } else {
                disagree += 1;
            }
        }
        if k < 100 {
            let d = desc(&v);
            let l = d.len();
            let a = &appt_matrices(&s).unwrap()[0];
            let expect = [
                [2.0 * d[l - 1], d[l - 2] - d[0]],
                [d[l - 2] - d[0], 2.0 * d[l - 3]],
            ];
            for (r, row) in expect.iter().enumerate() {
                for (c, e) in row.iter().enumerate() {
                    worst_matrix = worst_matrix.max((a.get(r, c) - e).abs());
                }
            }
        }
    }
    Outcome::new(
        pin && disagree == 0 && worst_matrix <= 1e-12,
        format!(
            "(2,2,2,1,..,1)/12 APPT = {pin}; {disagree} disagreements, {near} within 1e-8 ({members} APPT); \
             2x2 matrix error {worst_matrix:.1e}"
        ),
    )
}

fn example53(c: f64) -> Spectrum {
    Spectrum::new(3, 3, vec![1.0, 1.0, 1.0, 1.0, 1.0, 1.0, -1.0, -1.0, c]).unwrap()
}

fn criterion_7() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for c in [-1.0, -0.5, 0.0] {
        let mu = example53(c);
        match decide_conv_dbp(&mu, &Budget::default()).unwrap() {
            MembershipVerdict::Member(cert) => {
                let valid = check_psd_certificate(&mu, &cert).unwrap();
                ok &= valid;
                notes.push(format!("c = {c}: member (certificate valid = {valid})"));
            }
            other => {
                ok = false;
                notes.push(format!("c = {c}: {other:?}"));
            }
        }
    }
    let half = PsdCertificate {
        ys: vec![SymMatrix::filled(3, 0.5); 2],
        residuals: Vec::new(),
    };
    let half_ok = check_psd_certificate(&example53(-1.0), &half).unwrap();
    ok &= half_ok;
    notes.push(format!("all-1/2 certificate at c = -1 valid = {half_ok}"));

    let paper_lam = Spectrum::new(
        3,
        3,
        [2.0, 2.0, 2.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0]
            .iter()
            .map(|x| x / 12.0)
            .collect(),
    )
    .unwrap();
    for c in [-1.01, -1.5] {
        let mu = example53(c);
        let budget = Budget::default().with_seed(paper_lam.clone());
        match decide_conv_dbp(&mu, &budget).unwrap() {
            MembershipVerdict::NonMember(cert) => {
                let valid = check_pairing_certificate(&mu, &cert).unwrap();
                let err = (cert.value - (c + 1.0) / 6.0).abs();
                ok &= valid && err <= 1e-9;
                notes.push(format!(
                    "c = {c}: non-member, value {:.12} (error {err:.1e}, valid = {valid})",
                    cert.value
                ));
            }
            other => {
                ok = false;
                notes.push(format!("c = {c}: {other:?}"));
            }
        }
    }
    Outcome::new(ok, notes.join("; "))
}

fn criterion_8() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for (m, n) in [(2usize, 2usize), (2, 3), (3, 3)] {
        let dim = m * n;
        let (mut battery_fail, mut rejected, mut undecided, mut accepted) = (0, 0, 0, 0);
        // ten batches of 100, sweeping the rank of the partially transposed factor
        for batch in 0..10 {
            let rx = 1 + batch % dim;
            let ry = batch % (dim + 1);
            for w in sample_decomposable((m, n), (rx, ry), 800 + batch as u64, 100).unwrap() {
                let s = Spectrum::new(m, n, w.eigvals()).unwrap();
                if !necessary_battery(&s, true).all_passed() {
                    battery_fail += 1;
                }
                let verdict = match (m, n) {
                    (2, 2) => Some(is_bp22_spectrum(&s).unwrap()),
                    (2, _) => Some(conv_bp2n_member_d(&s).unwrap()),
                    _ => match decide_conv_dbp(&s, &Budget::default()).unwrap() {
                        MembershipVerdict::Member(_) => Some(true),
                        MembershipVerdict::NonMember(_) => Some(false),
                        MembershipVerdict::Undecided { .. } => None,
                    },
                };
                match verdict {
                    Some(true) => accepted += 1,
                    Some(false) => rejected += 1,
                    None => undecided += 1,
                }
            }
        }
        ok &= battery_fail == 0 && rejected == 0;
        notes.push(format!(
            "{m}x{n}: battery failures {battery_fail}, accepted {accepted}, rejected {rejected}, undecided {undecided}"
        ));
    }
    Outcome::new(ok, notes.join("; "))
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst = 0.0_f64;
    for k in 0..1000 {
        let (m, n) = [(2, 2), (2, 4), (3, 3), (3, 5)][k % 4];
        let coeffs: Vec<f64> = (0..m).map(|_| rng.gen_range(0.0..1.0)).collect();
        let a = SchmidtVector::from_unsorted(coeffs, n).unwrap();
        let formula = desc(rank1_pt_spectrum(&a).values());
        let numeric = desc(&build_rank1_pt(&a).eigvals());
        for (x, y) in formula.iter().zip(&numeric) {
            worst = worst.max((x - y).abs());
        }
    }
    Outcome::new(worst <= 1e-10, format!("max deviation {worst:.1e}"))
}

fn criterion_10() -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(["ews", "region", "--step", "0.02"], &mut out, &mut err);
    let text = String::from_utf8(out).unwrap();
    let mut lines = text.lines();
    let header_ok = lines.next() == Some("mu1,mu2,mu3,label");
    let (mut green, mut orange, mut bad) = (0, 0, 0);
    let mut near_reference = false;
    for line in lines {
        let f: Vec<&str> = line.split(',').collect();
        let mu: Vec<f64> = f[..3].iter().map(|x| x.parse().unwrap()).collect();
        let v = [mu[0], mu[1], mu[2], 1.0 - mu[0] - mu[1] - mu[2]];
        match f[3] {
            "green" => {
                green += 1;
                bad += !bp22_oracle(&v) as usize;
                let d: f64 = mu
                    .iter()
                    .zip([0.8, 0.4, 0.2])
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max);
                near_reference |= d <= 0.02 + 1e-12;
            }
            "orange" => {
                orange += 1;
                bad += (!conv2n_oracle(&v) || bp22_oracle(&v)) as usize;
            }
            "outside" => {}
            _ => bad += 1,
        }
    }
    Outcome::new(
        code == 0 && header_ok && bad == 0 && orange > 0 && near_reference,
        format!(
            "{green} green, {orange} orange, {bad} mislabeled; green cell near (0.8,0.4,0.2) = {near_reference}"
        ),
    )
}

fn main() {
    // libtest-style flags are accepted and ignored
    let filter: Option<String> = std::env::args().skip(1).find(|a| !a.starts_with('-'));
    type Criterion = (usize, &'static str, Duration, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        (
            1,
            "two-qubit exactness",
            Duration::from_secs(1),
            criterion_1,
        ),
        (
            2,
            "constructor round-trip",
            Duration::from_secs(30),
            criterion_2,
        ),
        (
            3,
            "qubit-qutrit threshold",
            Duration::from_secs(1),
            criterion_3,
        ),
        (4, "(c) and (d) agree", Duration::from_secs(60), criterion_4),
        (5, "ordering counts", Duration::from_secs(60), criterion_5),
        (
            6,
            "absolutely-PPT pins",
            Duration::from_secs(60),
            criterion_6,
        ),
        (
            7,
            "three-by-three threshold",
            Duration::from_secs(60),
            criterion_7,
        ),
        (8, "necessity sweep", Duration::from_secs(300), criterion_8),
        (9, "rank-one spectra", Duration::from_secs(60), criterion_9),
        (10, "region export", Duration::from_secs(120), criterion_10),
    ];
    let mut failures = 0;
    for (id, name, limit, f) in criteria {
        if filter
            .as_ref()
            .is_some_and(|p| !format!("{id} {name}").contains(p.as_str()))
        {
            continue;
        }
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let in_time = elapsed <= limit;
        let passed = outcome.passed && in_time;
        failures += !passed as usize;
        println!(
            "{} criterion {id:>2} {name}: {} [{:.2}s, limit {}s]",
            if passed { "PASS" } else { "FAIL" },
            outcome.detail,
            elapsed.as_secs_f64(),
            limit.as_secs(),
        );
        for k in outcome.known {
            println!("FAIL criterion {id:>2} (known, not counted): {k}");
        }
    }
    if failures > 0 {
        eprintln!("{failures} criteria failed");
        std::process::exit(1);
    }
}
