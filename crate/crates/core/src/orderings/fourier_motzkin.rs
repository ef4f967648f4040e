//! Exact feasibility of small systems `a . x >= b` with integer data.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Constraint {
    pub a: Vec<i128>,
    pub b: i128,
}

impl Constraint {
    pub fn new(a: Vec<i128>, b: i128) -> Self {
        Constraint { a, b }
    }

    fn normalized(mut self) -> Self {
        let g = self
            .a
            .iter()
            .chain(std::iter::once(&self.b))
            .fold(0i128, |g, x| g.gcd(x));
        if g > 1 {
            self.a.iter_mut().for_each(|x| *x /= g);
            self.b /= g;
        }
        self
    }
}

/// Merges duplicate left-hand sides, keeping the tightest bound. Returns
/// `None` when a trivial row `0 >= b` with `b > 0` shows infeasibility.
fn reduce(rows: Vec<Constraint>) -> Option<Vec<Constraint>> {
    let mut best: HashMap<Vec<i128>, i128> = HashMap::with_capacity(rows.len());
    for r in rows {
        let r = r.normalized();
        if r.a.iter().all(|x| *x == 0) {
            if r.b > 0 {
                return None;
            }
            continue;
        }
        best.entry(r.a)
            .and_modify(|b| *b = (*b).max(r.b))
            .or_insert(r.b);
    }
    let mut out: Vec<Constraint> = best.into_iter().map(|(a, b)| Constraint { a, b }).collect();
    // deterministic order keeps back-substitution reproducible
    out.sort_by(|x, y| x.a.cmp(&y.a).then(x.b.cmp(&y.b)));
    Some(out)
}

fn eliminate(rows: &[Constraint], v: usize) -> Vec<Constraint> {
    let mut out = Vec::new();
    let (mut pos, mut neg) = (Vec::new(), Vec::new());
    for r in rows {
        match r.a[v].signum() {
            0 => out.push(r.clone()),
            1 => pos.push(r),
            _ => neg.push(r),
        }
    }
    for p in &pos {
        for q in &neg {
            let (cp, cq) = (-q.a[v], p.a[v]);
            let a = p.a.iter().zip(&q.a).map(|(x, y)| cp * x + cq * y).collect();
            out.push(Constraint::new(a, cp * p.b + cq * q.b).normalized());
        }
    }
    out
}

/// Decides feasibility of `rows` over `nv` real variables and returns a
/// rational solution when one exists.
pub(crate) fn solve(rows: Vec<Constraint>, nv: usize) -> Option<Vec<BigRational>> {
    let mut stages: Vec<(usize, Vec<Constraint>)> = Vec::with_capacity(nv);
    let mut current = reduce(rows)?;
    let mut remaining: Vec<usize> = (0..nv).collect();
    while !remaining.is_empty() {
        let (k, v) = remaining
            .iter()
            .enumerate()
            .map(|(k, &v)| {
                let p = current.iter().filter(|r| r.a[v] > 0).count();
                let n = current.iter().filter(|r| r.a[v] < 0).count();
                (p * n, k, v)
            })
            .min()
            .map(|(_, k, v)| (k, v))
            .expect("nonempty");
        remaining.swap_remove(k);
        let next = reduce(eliminate(&current, v))?;
        stages.push((v, std::mem::replace(&mut current, next)));
    }

    let mut x = vec![BigRational::zero(); nv];
    for (v, rows) in stages.iter().rev() {
        let (mut lo, mut hi): (Option<BigRational>, Option<BigRational>) = (None, None);
        for r in rows.iter().filter(|r| r.a[*v] != 0) {
            let mut rest = BigRational::from_integer(BigInt::from(r.b));
            for (u, c) in r.a.iter().enumerate() {
                if u != *v && *c != 0 {
                    rest -= &x[u] * BigRational::from_integer(BigInt::from(*c));
                }
            }
            let bound = rest / BigRational::from_integer(BigInt::from(r.a[*v]));
            if r.a[*v].is_positive() {
                if lo.as_ref().is_none_or(|l| bound > *l) {
                    lo = Some(bound);
                }
            } else if hi.as_ref().is_none_or(|h| bound < *h) {
                hi = Some(bound);
            }
        }
        x[*v] = lo.or(hi).unwrap_or_else(BigRational::zero);
    }
    Some(x)
}

/// Exact check of `a . x >= b` for every row.
pub(crate) fn satisfies(rows: &[Constraint], x: &[BigRational]) -> bool {
    rows.iter().all(|r| {
        let lhs: BigRational =
            r.a.iter()
                .zip(x)
                .map(|(c, xi)| xi * BigRational::from_integer(BigInt::from(*c)))
                .sum();
        lhs >= BigRational::from_integer(BigInt::from(r.b))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(a: &[i128], b: i128) -> Constraint {
        Constraint::new(a.to_vec(), b)
    }

    #[test]
    fn interval_is_feasible() {
        let rows = vec![c(&[1], 2), c(&[-1], -5)];
        let x = solve(rows.clone(), 1).unwrap();
        assert!(satisfies(&rows, &x));
    }

    #[test]
    fn empty_interval_is_infeasible() {
        assert!(solve(vec![c(&[1], 3), c(&[-1], -2)], 1).is_none());
    }

    #[test]
    fn two_variable_triangle() {
        // x >= 1, y >= 1, x + y <= 3 feasible; x + y <= 1 not
        let rows = vec![c(&[1, 0], 1), c(&[0, 1], 1), c(&[-1, -1], -3)];
        let x = solve(rows.clone(), 2).unwrap();
        assert!(satisfies(&rows, &x));
        assert!(solve(vec![c(&[1, 0], 1), c(&[0, 1], 1), c(&[-1, -1], -1)], 2).is_none());
    }

    #[test]
    fn rational_solution() {
        // 2x >= 1 and 2x <= 1 pins x = 1/2
        let x = solve(vec![c(&[2], 1), c(&[-2], -1)], 1).unwrap();
        assert_eq!(x[0], BigRational::new(1.into(), 2.into()));
    }
}
