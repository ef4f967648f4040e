//! Outer approximation of the absolutely-PPT spectra by linear cuts.
//!
//! An ascending state spectrum is written through its increments
//! `w_t = lam_t - lam_(t-1) >= 0`, so that sortedness is a sign condition.
//! A linear functional `<x, lam>` becomes `sum_t w_t * suffix(x)_t`, which
//! makes the pairing, the trace and every cut `v^T L_j*(lam) v =
//! 2 <L_j(v v^T), lam>` linear in `w`.

use minilp::{ComparisonOp, LinearExpr, OptimizationDirection, Problem, Variable};

use crate::error::{Error, Result};
use crate::linalg::{min_eig, SymMatrix};
use crate::orderings::{build_l, OrderingMap, PlacementMap};
use crate::spectrum::{partial_sums, sort_descending, suffix_sums, Spectrum};

#[derive(Debug, Clone)]
pub(super) struct Cut {
    ordering: usize,
    v: Vec<f64>,
    /// `suffix(L_j(v v^T))`
    coeffs: Vec<f64>,
}

pub(super) struct LpOutcome {
    /// Best polished absolutely-PPT spectrum, ascending.
    pub best: Option<Vec<f64>>,
    /// Lower bound on the pairing over unit-trace absolutely-PPT spectra.
    pub lower_bound: f64,
    pub cuts: Vec<Cut>,
    pub rounds: usize,
}

fn lp_error(e: minilp::Error) -> Error {
    Error::Invalid(format!("linear program failed: {e}"))
}

fn cut(maps: &[PlacementMap], ordering: usize, v: Vec<f64>) -> Result<Cut> {
    let coeffs = suffix_sums(&maps[ordering].apply(&SymMatrix::outer(&v))?);
    Ok(Cut {
        ordering,
        v,
        coeffs,
    })
}

fn initial_cuts(maps: &[PlacementMap], m: usize) -> Result<Vec<Cut>> {
    let mut cuts = Vec::new();
    for j in 0..maps.len() {
        for i in 0..m {
            let mut v = vec![0.0; m];
            v[i] = 1.0;
            cuts.push(cut(maps, j, v)?);
            for l in (i + 1)..m {
                for sign in [1.0, -1.0] {
                    let mut v = vec![0.0; m];
                    v[i] = std::f64::consts::FRAC_1_SQRT_2;
                    v[l] = sign * std::f64::consts::FRAC_1_SQRT_2;
                    cuts.push(cut(maps, j, v)?);
                }
            }
        }
    }
    Ok(cuts)
}

fn expr(vars: &[Variable], coeffs: &[f64]) -> LinearExpr {
    let mut e = LinearExpr::empty();
    for (v, c) in vars.iter().zip(coeffs) {
        if *c != 0.0 {
            e.add(*v, *c);
        }
    }
    e
}

fn cumulative(w: &[f64]) -> Vec<f64> {
    let mut acc = 0.0;
    w.iter()
        .map(|x| {
            acc += x.max(0.0);
            acc
        })
        .collect()
}

/// Mixes an ascending spectrum with the uniform one until every `L_j*` is
/// PSD; the uniform spectrum maps to `(2 / mn) I` under each adjoint.
pub(super) fn polish_to_appt(maps: &[PlacementMap], ascending: &[f64]) -> Result<Vec<f64>> {
    let len = ascending.len() as f64;
    let total: f64 = ascending.iter().map(|v| v.max(0.0)).sum();
    let up: Vec<f64> = ascending.iter().map(|v| v.max(0.0) / total).collect();
    let mut worst = 0.0_f64;
    for map in maps {
        worst = worst.min(min_eig(&map.adjoint(&up)?));
    }
    if worst >= 0.0 {
        return Ok(up);
    }
    let floor = 2.0 / len;
    let t = (-worst / (-worst + floor) * (1.0 + 1e-9) + 1e-15).min(1.0);
    Ok(up.iter().map(|v| (1.0 - t) * v + t / len).collect())
}

/// Cutting-plane minimization of the pairing with `mu` over unit-trace
/// ascending spectra.
pub(super) fn run(mu: &Spectrum, ords: &[OrderingMap], max_rounds: usize) -> Result<LpOutcome> {
    let (m, n) = mu.dims();
    let len = m * n;
    let maps = ords
        .iter()
        .map(|o| build_l(o, n))
        .collect::<Result<Vec<_>>>()?;
    let down = sort_descending(mu);
    let p = partial_sums(&down);
    let scale = mu.tolerance_scale();

    let mut problem = Problem::new(OptimizationDirection::Minimize);
    let vars: Vec<Variable> = p
        .iter()
        .map(|c| problem.add_var(*c, (0.0, f64::INFINITY)))
        .collect();
    let trace: Vec<f64> = (0..len).map(|t| (len - t) as f64).collect();
    problem.add_constraint(expr(&vars, &trace), ComparisonOp::Eq, 1.0);
    let mut cuts = initial_cuts(&maps, m)?;
    for c in &cuts {
        problem.add_constraint(expr(&vars, &c.coeffs), ComparisonOp::Ge, 0.0);
    }
    let mut solution = problem.solve().map_err(lp_error)?;

    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut rounds = 0;
    loop {
        rounds += 1;
        let w: Vec<f64> = vars.iter().map(|v| *solution.var_value(*v)).collect();
        let up = cumulative(&w);
        let polished = polish_to_appt(&maps, &up)?;
        let value: f64 = down
            .values()
            .iter()
            .zip(&polished)
            .map(|(a, b)| a * b)
            .sum();
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((value, polished));
        }
        let objective = solution.objective();
        let refuted = best
            .as_ref()
            .is_some_and(|(b, _)| *b < -2.0 * super::PAIRING_TOL);
        if objective >= 0.0 || refuted || rounds >= max_rounds {
            break;
        }

        let mut added = Vec::new();
        for (j, map) in maps.iter().enumerate() {
            let (vals, vecs) = map.adjoint(&up)?.eigh();
            for (k, val) in vals.iter().enumerate() {
                if *val < -1e-14 * scale {
                    let v = (0..m).map(|r| vecs[r * m + k]).collect();
                    added.push(cut(&maps, j, v)?);
                }
            }
        }
        if added.is_empty() {
            break;
        }
        for c in added {
            solution = solution
                .add_constraint(expr(&vars, &c.coeffs), ComparisonOp::Ge, 0.0)
                .map_err(lp_error)?;
            cuts.push(c);
        }
    }
    Ok(LpOutcome {
        best: best.map(|(_, up)| up),
        lower_bound: solution.objective(),
        cuts,
        rounds,
    })
}

/// The dual of the cut LP: maximize `z` subject to
/// `z suffix(1) + sum_c y_c suffix(L_j(v_c v_c^T)) <= p(mu_down)`, `y >= 0`.
/// The matrices `Y_j = sum_(c in j) y_c v_c v_c^T` are PSD by construction
/// and satisfy the partial-sum inequalities with slack `z suffix(1)`.
pub(super) fn member_matrices(
    mu: &Spectrum,
    ords: &[OrderingMap],
    cuts: &[Cut],
) -> Result<Option<Vec<SymMatrix>>> {
    let (m, n) = mu.dims();
    let len = m * n;
    let p = partial_sums(&sort_descending(mu));

    let mut problem = Problem::new(OptimizationDirection::Maximize);
    let z = problem.add_var(1.0, (f64::NEG_INFINITY, f64::INFINITY));
    let ys: Vec<Variable> = cuts
        .iter()
        .map(|_| problem.add_var(0.0, (0.0, f64::INFINITY)))
        .collect();
    for t in 0..len {
        let mut e = LinearExpr::empty();
        e.add(z, (len - t) as f64);
        for (y, c) in ys.iter().zip(cuts) {
            if c.coeffs[t] != 0.0 {
                e.add(*y, c.coeffs[t]);
            }
        }
        problem.add_constraint(e, ComparisonOp::Le, p[t]);
    }
    let solution = match problem.solve() {
        Ok(s) => s,
        Err(_) => return Ok(None),
    };

    let mut out = vec![SymMatrix::zeros(m); ords.len()];
    for (y, c) in ys.iter().zip(cuts) {
        let weight = solution.var_value(*y).max(0.0);
        if weight > 0.0 {
            out[c.ordering] = out[c.ordering].add(&SymMatrix::outer(&c.v).scale(weight));
        }
    }
    Ok(Some(out))
}
