use std::collections::HashSet;

use ews::orderings::{enumerate_orderings, realizable, OrderingMap, ProductPair};
use ews::rank1::{rank1_pt_spectrum, SchmidtVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn pp(i: usize, j: usize) -> ProductPair {
    ProductPair::new(i, j).unwrap()
}

fn order(v: &[(usize, usize)]) -> Vec<ProductPair> {
    v.iter().map(|(i, j)| pp(*i, *j)).collect()
}

fn pairs(m: usize) -> Vec<ProductPair> {
    (1..=m)
        .flat_map(|i| (i..=m).map(move |j| pp(i, j)))
        .collect()
}

fn dominates(a: ProductPair, b: ProductPair) -> bool {
    a != b && a.i() <= b.i() && a.j() <= b.j()
}

/// Every linear extension of the dominance order, by plain recursion.
fn linear_extensions(m: usize) -> Vec<Vec<ProductPair>> {
    fn go(
        rest: &mut Vec<ProductPair>,
        prefix: &mut Vec<ProductPair>,
        out: &mut Vec<Vec<ProductPair>>,
    ) {
        if rest.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for k in 0..rest.len() {
            let p = rest[k];
            if rest.iter().any(|q| dominates(*q, p)) {
                continue;
            }
            rest.remove(k);
            prefix.push(p);
            go(rest, prefix, out);
            prefix.pop();
            rest.insert(k, p);
        }
    }
    let mut out = Vec::new();
    go(&mut pairs(m), &mut Vec::new(), &mut out);
    out
}

/// The product order induced by `alpha`, or `None` on a tie.
fn induced_order(alpha: &[f64]) -> Option<Vec<ProductPair>> {
    let m = alpha.len();
    let mut ps = pairs(m);
    let value = |p: &ProductPair| alpha[p.i() - 1] * alpha[p.j() - 1];
    ps.sort_by(|a, b| value(b).total_cmp(&value(a)));
    let strict = ps
        .windows(2)
        .all(|w| value(&w[0]) > value(&w[1]) * (1.0 + 1e-9));
    strict.then_some(ps)
}

#[test]
fn four_brute_force_superset() {
    let all = linear_extensions(4);
    let found: Vec<Vec<ProductPair>> = enumerate_orderings(4)
        .unwrap()
        .iter()
        .map(|o| o.order().to_vec())
        .collect();
    assert_eq!(found.len(), 10);
    assert!(all.len() > found.len());
    let all_set: HashSet<_> = all.iter().cloned().collect();
    assert!(found.iter().all(|o| all_set.contains(o)));
    let realizable_count = all
        .iter()
        .filter(|o| realizable(o).unwrap().is_some())
        .count();
    assert_eq!(realizable_count, 10);
}

#[test]
fn sampled_alphas_land_in_the_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for m in 2..=5 {
        let known: HashSet<Vec<ProductPair>> = enumerate_orderings(m)
            .unwrap()
            .iter()
            .map(|o| o.order().to_vec())
            .collect();
        let mut seen = HashSet::new();
        for _ in 0..20_000 {
            let mut alpha: Vec<f64> = (0..m)
                .map(|_| rng.gen_range(0.0..1.0_f64).powi(2))
                .collect();
            alpha.sort_by(|a, b| b.total_cmp(a));
            if let Some(o) = induced_order(&alpha) {
                assert!(known.contains(&o), "m = {m}: unlisted ordering {o:?}");
                seen.insert(o);
            }
        }
        if m <= 4 {
            assert_eq!(seen.len(), known.len(), "m = {m}");
        }
    }
}

fn check_rank1_slots(o: &OrderingMap) {
    let m = o.m();
    let alpha = o.witness_alpha();
    let a = SchmidtVector::new(alpha.clone(), m).unwrap();
    let mut spec = rank1_pt_spectrum(&a).values().to_vec();
    spec.sort_by(|x, y| y.total_cmp(x));
    for p in o.order() {
        let v = alpha[p.i() - 1] * alpha[p.j() - 1];
        let pos = o.positive_slot(*p);
        assert!(
            (spec[pos - 1] - v).abs() <= 1e-12 * v.max(1.0),
            "{p} at {pos}"
        );
        if let Some(neg) = o.negative_slot(*p, m) {
            assert!(
                (spec[neg - 1] + v).abs() <= 1e-12 * v.max(1.0),
                "-{p} at {neg}"
            );
        }
    }
}

#[test]
fn witnesses_sort_rank_one_spectra_into_their_slots() {
    for m in 2..=5 {
        for o in enumerate_orderings(m).unwrap() {
            let alpha = o.witness_alpha();
            assert_eq!(induced_order(&alpha).as_deref(), Some(o.order()));
            check_rank1_slots(&o);
        }
    }
}

#[test]
fn log_witness_example() {
    let w = realizable(&order(&[(1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3)]))
        .unwrap()
        .unwrap();
    let b: Vec<f64> = w
        .iter()
        .map(|r| num_traits::ToPrimitive::to_f64(r).unwrap())
        .collect();
    let sums = [
        b[0] + b[0],
        b[0] + b[1],
        b[0] + b[2],
        b[1] + b[1],
        b[1] + b[2],
        b[2] + b[2],
    ];
    assert!(sums.windows(2).all(|s| s[0] >= s[1] + 1.0), "{sums:?}");
    let hand = [4.0, 1.0, 0.0];
    let hand_sums = [8.0, 5.0, 4.0, 2.0, 1.0, 0.0];
    let got: Vec<f64> = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)]
        .iter()
        .map(|(i, j)| hand[*i] + hand[*j])
        .collect();
    assert_eq!(got, hand_sums);
}

#[test]
fn four_conflicting_requirements() {
    // a1 a4 > a2 a3 and a2^2 > a1 a3 are jointly satisfiable, e.g. a = (4, 3, 1, 1)
    let a = [4.0, 3.0, 1.0, 1.0];
    assert!(a[0] * a[3] > a[1] * a[2] && a[1] * a[1] > a[0] * a[2]);
    let with_both = order(&[
        (1, 1),
        (1, 2),
        (2, 2),
        (1, 3),
        (1, 4),
        (2, 3),
        (2, 4),
        (3, 3),
        (3, 4),
        (4, 4),
    ]);
    assert!(realizable(&with_both).unwrap().is_some());
    // (2,2) > (1,3) and (1,4) > (2,3) with (3,3) > (2,4) is infeasible:
    // a2^2 a1 a4 > a1 a3 a2 a3 gives a2 a4 > a3^2
    let infeasible = order(&[
        (1, 1),
        (1, 2),
        (2, 2),
        (1, 3),
        (1, 4),
        (2, 3),
        (3, 3),
        (2, 4),
        (3, 4),
        (4, 4),
    ]);
    assert!(realizable(&infeasible).unwrap().is_none());
}

#[test]
fn export_format() {
    let list = enumerate_orderings(3).unwrap();
    let text = serde_json::to_string(&list).unwrap();
    assert!(text.starts_with(r#"[{"order":[[1,1],[1,2],[1,3],[2,2],[2,3],[3,3]],"witness":["#));
    let back: Vec<OrderingMap> = serde_json::from_str(&text).unwrap();
    assert_eq!(back, list);
}

#[test]
#[ignore = "takes several minutes; run with --ignored"]
fn seven_count() {
    assert_eq!(enumerate_orderings(7).unwrap().len(), 107_498);
}
