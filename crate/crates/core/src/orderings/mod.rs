//! Orderings of the Schmidt products `a_i a_j`, `i <= j`.
//!
//! A rank-one partial transpose has positive eigenvalues `a_i a_j` (`i <= j`)
//! and negative eigenvalues `-a_i a_j` (`i < j`). How these interleave in the
//! sorted spectrum is fixed by the total order of the products, and each
//! realizable order gives a linear placement map `L` from `m x m` symmetric
//! matrices to vectors of length `m n` (see [`build_l`]).
//!
//! An order is realizable when some `a_1 >= ... >= a_m > 0` makes the
//! products strictly decreasing along it. Working with `b_i = ln a_i` turns
//! this into a homogeneous linear system, decided exactly by Fourier-Motzkin
//! elimination. Each [`OrderingMap`] carries such a `b` as its witness.

mod fourier_motzkin;
mod placement;

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use fourier_motzkin::{satisfies, solve, Constraint};

pub use placement::{apply_l, apply_l_adjoint, build_l, PlacementMap};

pub const MAX_M: usize = 7;

/// The product `a_i a_j` with `1 <= i <= j <= m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "[usize; 2]", try_from = "[usize; 2]")]
pub struct ProductPair {
    i: usize,
    j: usize,
}

impl ProductPair {
    /// Canonicalizes to `i <= j`. Indices are 1-based.
    pub fn new(i: usize, j: usize) -> Result<Self> {
        let (i, j) = (i.min(j), i.max(j));
        if i == 0 {
            return Err(Error::MalformedOrder("pair indices are 1-based".into()));
        }
        Ok(ProductPair { i, j })
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn is_diagonal(&self) -> bool {
        self.i == self.j
    }

    /// Dense index in `0..m(m+1)/2`, row-major over the upper triangle.
    fn index(&self, m: usize) -> usize {
        let r = self.i - 1;
        r * m - r * (r + 1) / 2 + (self.j - 1)
    }
}

impl From<ProductPair> for [usize; 2] {
    fn from(p: ProductPair) -> Self {
        [p.i, p.j]
    }
}

impl TryFrom<[usize; 2]> for ProductPair {
    type Error = Error;

    fn try_from(v: [usize; 2]) -> Result<Self> {
        ProductPair::new(v[0], v[1])
    }
}

impl fmt::Display for ProductPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

fn pair_count(m: usize) -> usize {
    m * (m + 1) / 2
}

/// A realizable order of the products together with its slot assignment.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderingMap {
    m: usize,
    order: Vec<ProductPair>,
    // indexed by ProductPair::index
    positive: Vec<usize>,
    negative_rank: Vec<Option<usize>>,
    witness: Vec<BigRational>,
}

impl OrderingMap {
    fn from_parts(m: usize, order: Vec<ProductPair>, witness: Vec<BigRational>) -> Self {
        let mut positive = vec![0; pair_count(m)];
        let mut negative_rank = vec![None; pair_count(m)];
        let mut k = 0;
        for (slot, p) in order.iter().enumerate() {
            positive[p.index(m)] = slot + 1;
            if !p.is_diagonal() {
                k += 1;
                negative_rank[p.index(m)] = Some(k);
            }
        }
        OrderingMap {
            m,
            order,
            positive,
            negative_rank,
            witness,
        }
    }

    /// Validates and certifies an order.
    pub fn from_order(order: Vec<ProductPair>) -> Result<Self> {
        let m = check_permutation(&order)?;
        let witness = realizable(&order)?.ok_or_else(|| {
            Error::MalformedOrder("no positive Schmidt coefficients realize this order".into())
        })?;
        Ok(Self::from_parts(m, order, witness))
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn order(&self) -> &[ProductPair] {
        &self.order
    }

    /// 1-based position of `a_i a_j` among the products.
    pub fn positive_slot(&self, p: ProductPair) -> usize {
        self.positive[p.index(self.m)]
    }

    /// 1-based position of `-a_i a_j` in a spectrum of length `m n`; the
    /// `k`-th off-diagonal product of the order lands at `m n - k + 1`.
    pub fn negative_slot(&self, p: ProductPair, n: usize) -> Option<usize> {
        self.negative_rank[p.index(self.m)].map(|k| self.m * n - k + 1)
    }

    /// Log-scale witness `b` with `b_m = 0`; `a_i = exp(b_i)` realizes the
    /// order with every consecutive product ratio at least `e`.
    pub fn witness(&self) -> &[BigRational] {
        &self.witness
    }

    /// The witness as Schmidt coefficients `a_i = exp(b_i)`.
    pub fn witness_alpha(&self) -> Vec<f64> {
        self.witness
            .iter()
            .map(|b| b.to_f64().unwrap_or(f64::NAN).exp())
            .collect()
    }
}

fn check_permutation(order: &[ProductPair]) -> Result<usize> {
    let len = order.len();
    let m = (1..=MAX_M)
        .find(|m| pair_count(*m) == len)
        .ok_or_else(|| Error::MalformedOrder(format!("{len} is not m(m+1)/2 for m <= 7")))?;
    let mut seen = vec![false; len];
    for p in order {
        if p.j > m {
            return Err(Error::MalformedOrder(format!("{p} exceeds m = {m}")));
        }
        let k = p.index(m);
        if std::mem::replace(&mut seen[k], true) {
            return Err(Error::MalformedOrder(format!("{p} appears twice")));
        }
    }
    Ok(m)
}

/// Variables are `b_1, ..., b_{m-1}`; `b_m` is pinned to zero.
fn pair_row(m: usize, p: ProductPair, sign: i128, row: &mut [i128]) {
    for idx in [p.i, p.j] {
        if idx < m {
            row[idx - 1] += sign;
        }
    }
}

/// `b_p - b_q >= 1`, i.e. `a_p > a_q` with ratio at least `e`.
fn strictly_above(m: usize, p: ProductPair, q: ProductPair) -> Constraint {
    let mut a = vec![0; m - 1];
    pair_row(m, p, 1, &mut a);
    pair_row(m, q, -1, &mut a);
    Constraint::new(a, 1)
}

fn chain(m: usize) -> Vec<Constraint> {
    (1..m)
        .map(|i| {
            let mut a = vec![0; m - 1];
            a[i - 1] = 1;
            if i < m - 1 {
                a[i] = -1;
            }
            Constraint::new(a, 0)
        })
        .collect()
}

fn with_m_zero(m: usize, mut b: Vec<BigRational>) -> Vec<BigRational> {
    debug_assert_eq!(b.len(), m - 1);
    b.push(BigRational::zero());
    b
}

/// Exact realizability of a complete order.
///
/// Returns `b_1 >= ... >= b_m = 0` with `b_i + b_j >= b_k + b_l + 1` for
/// consecutive pairs `(i,j), (k,l)` of the order, or `None` when no
/// positive coefficients produce strictly decreasing products.
pub fn realizable(order: &[ProductPair]) -> Result<Option<Vec<BigRational>>> {
    let m = check_permutation(order)?;
    if m == 1 {
        return Ok(Some(vec![BigRational::zero()]));
    }
    let mut rows = chain(m);
    rows.extend(order.windows(2).map(|w| strictly_above(m, w[0], w[1])));
    let witness = solve(rows.clone(), m - 1);
    debug_assert!(witness.as_ref().is_none_or(|w| satisfies(&rows, w)));
    Ok(witness.map(|w| with_m_zero(m, w)))
}

struct Search {
    m: usize,
    placed: Vec<bool>,
    prefix: Vec<ProductPair>,
    out: Vec<OrderingMap>,
}

impl Search {
    fn available(&self) -> Vec<ProductPair> {
        let m = self.m;
        let mut out = Vec::new();
        for i in 1..=m {
            for j in i..=m {
                let p = ProductPair { i, j };
                if self.placed[p.index(m)] {
                    continue;
                }
                let left = i == 1 || self.placed[ProductPair { i: i - 1, j }.index(m)];
                let down = i == j || self.placed[ProductPair { i, j: j - 1 }.index(m)];
                if left && down {
                    out.push(p);
                }
            }
        }
        out
    }

    /// The prefix is strictly decreasing and its last product beats every
    /// product that could come next (and hence everything still unplaced).
    fn prefix_feasible(&self, next: &[ProductPair]) -> bool {
        let m = self.m;
        let mut rows = chain(m);
        rows.extend(
            self.prefix
                .windows(2)
                .map(|w| strictly_above(m, w[0], w[1])),
        );
        if let Some(last) = self.prefix.last() {
            rows.extend(next.iter().map(|q| strictly_above(m, *last, *q)));
        }
        solve(rows, m - 1).is_some()
    }

    fn run(&mut self) {
        let next = self.available();
        if next.is_empty() {
            let order = self.prefix.clone();
            let witness = realizable(&order)
                .expect("complete permutation")
                .expect("pruned search only reaches realizable orders");
            self.out
                .push(OrderingMap::from_parts(self.m, order, witness));
            return;
        }
        if !self.prefix_feasible(&next) {
            return;
        }
        for p in next {
            self.placed[p.index(self.m)] = true;
            self.prefix.push(p);
            self.run();
            self.prefix.pop();
            self.placed[p.index(self.m)] = false;
        }
    }
}

/// All realizable orders for `m` Schmidt coefficients, in lexicographic
/// order of the product sequences. The counts for `m = 2..7` are
/// 1, 2, 10, 114, 2608, 107498.
pub fn enumerate_orderings(m: usize) -> Result<Vec<OrderingMap>> {
    if !(2..=MAX_M).contains(&m) {
        return Err(Error::OutOfRange {
            what: "m",
            value: m,
            range: "2..=7",
        });
    }
    let mut search = Search {
        m,
        placed: vec![false; pair_count(m)],
        prefix: Vec::with_capacity(pair_count(m)),
        out: Vec::new(),
    };
    search.run();
    Ok(search.out)
}

/// Cached [`enumerate_orderings`]; `m = 1` yields the single trivial order.
pub fn orderings(m: usize) -> Result<&'static [OrderingMap]> {
    static CACHE: [OnceLock<Vec<OrderingMap>>; MAX_M + 1] = [const { OnceLock::new() }; MAX_M + 1];
    if m == 0 || m > MAX_M {
        return Err(Error::OutOfRange {
            what: "m",
            value: m,
            range: "1..=7",
        });
    }
    Ok(CACHE[m].get_or_init(|| {
        if m == 1 {
            let p = ProductPair { i: 1, j: 1 };
            vec![OrderingMap::from_parts(
                1,
                vec![p],
                vec![BigRational::zero()],
            )]
        } else {
            enumerate_orderings(m).expect("m in range")
        }
    }))
}

fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::MalformedOrder(format!("bad rational {s:?}"));
    let (p, q) = s.split_once('/').unwrap_or((s, "1"));
    let p: BigInt = p.trim().parse().map_err(|_| bad())?;
    let q: BigInt = q.trim().parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(p, q))
}

#[derive(Serialize, Deserialize)]
struct OrderingRepr {
    order: Vec<ProductPair>,
    witness: Vec<String>,
}

impl Serialize for OrderingMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        OrderingRepr {
            order: self.order.clone(),
            witness: self.witness.iter().map(format_rational).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for OrderingMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = OrderingRepr::deserialize(d)?;
        let m = check_permutation(&r.order).map_err(D::Error::custom)?;
        let witness = r
            .witness
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        if witness.len() != m || !witness[m - 1].is_zero() {
            return Err(D::Error::custom("witness must have length m and end in 0"));
        }
        if m >= 2 {
            let mut rows = chain(m);
            rows.extend(r.order.windows(2).map(|w| strictly_above(m, w[0], w[1])));
            if !satisfies(&rows, &witness[..m - 1]) {
                return Err(D::Error::custom("witness does not realize the order"));
            }
        }
        Ok(OrderingMap::from_parts(m, r.order, witness))
    }
}
