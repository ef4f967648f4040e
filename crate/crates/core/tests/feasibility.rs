use ews::appt::{is_appt, min_pairing};
use ews::feasibility::{
    check_pairing_certificate, check_psd_certificate, decide_conv_dbp, sys33_inequalities, Budget,
    Certificate, MembershipVerdict,
};
use ews::linalg::SymMatrix;
use ews::orderings::{apply_l, orderings};
use ews::qubit_qudit::{conv_bp2n_margin, conv_bp2n_member_d};
use ews::spectrum::{partial_sums, sort_descending, suffix_sums};
use ews::witnesses::sample_decomposable;
use ews::Spectrum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_spectrum(rng: &mut ChaCha8Rng, m: usize, n: usize) -> Spectrum {
    let len = m * n;
    let negatives = rng.gen_range(1..len);
    let depth: f64 = rng.gen_range(0.0..1.5);
    let v = (0..len)
        .map(|k| {
            if k < negatives {
                -depth * rng.gen_range(0.0..1.0)
            } else {
                rng.gen_range(0.0..1.0)
            }
        })
        .collect();
    Spectrum::new(m, n, v).unwrap()
}

fn random_appt(rng: &mut ChaCha8Rng, m: usize, n: usize) -> Option<Spectrum> {
    let len = m * n;
    let t: f64 = rng.gen_range(0.0..1.0);
    let raw: Vec<f64> = (0..len).map(|_| rng.gen_range(0.0..1.0_f64)).collect();
    let total: f64 = raw.iter().sum();
    let v = raw
        .iter()
        .map(|x| (1.0 - t) * x / total + t / len as f64)
        .collect();
    let s = Spectrum::new(m, n, v).unwrap();
    is_appt(&s).unwrap().then_some(s)
}

fn verify(mu: &Spectrum, verdict: &MembershipVerdict) {
    match verdict {
        MembershipVerdict::Member(c) => assert!(check_psd_certificate(mu, c).unwrap(), "{mu:?}"),
        MembershipVerdict::NonMember(c) => {
            assert!(check_pairing_certificate(mu, c).unwrap(), "{mu:?}")
        }
        MembershipVerdict::Undecided { .. } => {}
    }
}

#[test]
fn agrees_with_the_qubit_qudit_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut undecided = 0;
    for k in 0..1000 {
        let n = 2 + k % 3;
        let mu = random_spectrum(&mut rng, 2, n);
        let expected = conv_bp2n_member_d(&mu).unwrap();
        let verdict = decide_conv_dbp(&mu, &Budget::default()).unwrap();
        verify(&mu, &verdict);
        match verdict {
            MembershipVerdict::Undecided { .. } => {
                undecided += 1;
                let margin = conv_bp2n_margin(&mu).unwrap();
                assert!(margin.abs() <= 1e-6 * mu.tolerance_scale(), "{mu:?}");
            }
            v => assert_eq!(v.is_member(), expected, "{mu:?}"),
        }
    }
    assert!(undecided <= 10, "{undecided} undecided");
}

#[test]
fn certificates_are_mutually_exclusive() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let mut members = 0;
    let mut non_members = 0;
    for k in 0..300 {
        let (m, n) = [(2, 2), (2, 3), (3, 3)][k % 3];
        let mu = random_spectrum(&mut rng, m, n);
        let verdict = decide_conv_dbp(&mu, &Budget::default()).unwrap();
        verify(&mu, &verdict);
        match &verdict {
            MembershipVerdict::Member(_) => {
                members += 1;
                // weak duality: no absolutely-PPT state pairs negatively with a member
                for _ in 0..20 {
                    if let Some(lam) = random_appt(&mut rng, m, n) {
                        let v = min_pairing(&mu, &lam).unwrap();
                        assert!(v >= -1e-9 * mu.tolerance_scale(), "{mu:?} {lam:?} {v}");
                    }
                }
            }
            MembershipVerdict::NonMember(c) => {
                non_members += 1;
                assert!(c.value < 0.0);
            }
            MembershipVerdict::Undecided { .. } => {}
        }
    }
    assert!(
        members > 30 && non_members > 30,
        "{members} / {non_members}"
    );
}

#[test]
fn decomposable_spectra_are_never_rejected() {
    for ((m, n), ranks) in [
        ((2, 4), (1, 0)),
        ((2, 4), (3, 2)),
        ((3, 4), (1, 0)),
        ((3, 4), (4, 3)),
    ] {
        for w in sample_decomposable((m, n), ranks, 31, 40).unwrap() {
            let mu = Spectrum::new(m, n, w.eigvals()).unwrap();
            let verdict = decide_conv_dbp(&mu, &Budget::default()).unwrap();
            verify(&mu, &verdict);
            assert!(!verdict.is_non_member(), "{mu:?}");
        }
    }
}

#[test]
fn three_by_three_system_matches_the_placement_maps() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let ords = orderings(3).unwrap();
    for _ in 0..200 {
        let mu = sort_descending(&random_spectrum(&mut rng, 3, 3));
        let rand_sym = |rng: &mut ChaCha8Rng| {
            let rows: Vec<Vec<f64>> = (0..3)
                .map(|_| (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect())
                .collect();
            SymMatrix::from_rows(&rows).unwrap()
        };
        let (x, y) = (rand_sym(&mut rng), rand_sym(&mut rng));
        let slack = sys33_inequalities(&mu, &x, &y).unwrap();
        let lx = suffix_sums(&apply_l(&ords[1], 3, &x).unwrap());
        let ly = suffix_sums(&apply_l(&ords[0], 3, &y).unwrap());
        let p = partial_sums(&mu);
        for k in 0..9 {
            assert!((slack[k] - (p[k] - lx[k] - ly[k])).abs() < 1e-12);
        }
    }
}

#[test]
fn example_certificate_fails_below_threshold() {
    let mu =
        |c: f64| Spectrum::new(3, 3, vec![1.0, 1.0, 1.0, 1.0, 1.0, 1.0, -1.0, -1.0, c]).unwrap();
    let cert = match decide_conv_dbp(&mu(-1.0), &Budget::default()).unwrap() {
        MembershipVerdict::Member(c) => c,
        other => panic!("{other:?}"),
    };
    assert!(!check_psd_certificate(&mu(-1.5), &cert).unwrap());
    let zero = ews::feasibility::PsdCertificate {
        ys: vec![SymMatrix::zeros(3); 2],
        residuals: Vec::new(),
    };
    assert!(!check_psd_certificate(&mu(-1.0), &zero).unwrap());
}

#[test]
fn certificates_serialize_with_their_kind() {
    let mu = Spectrum::new(3, 3, vec![1.0, 1.0, 1.0, 1.0, 1.0, 1.0, -1.0, -1.0, -1.1]).unwrap();
    let cert = decide_conv_dbp(&mu, &Budget::default())
        .unwrap()
        .certificate()
        .unwrap();
    let text = serde_json::to_string(&cert).unwrap();
    assert!(
        text.contains(r#""kind":"pairing""#) && text.contains(r#""lambda":["#),
        "{text}"
    );
    let back: Certificate = serde_json::from_str(&text).unwrap();
    assert_eq!(back, cert);
}
