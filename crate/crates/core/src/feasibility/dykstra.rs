//! Dykstra's alternating projections onto the PSD cones and the partial-sum
//! half-spaces.

use crate::error::Result;
use crate::linalg::{min_eig, psd_project, SymMatrix};
use crate::orderings::{build_l, OrderingMap};
use crate::spectrum::{partial_sums, sort_descending, Spectrum};

/// The half-space `<g, Y> <= b` in the joint space of all `Y_j`, with the
/// Frobenius inner product summed over blocks.
struct HalfSpace {
    g: Vec<SymMatrix>,
    norm_sq: f64,
    b: f64,
}

fn joint_inner(a: &[SymMatrix], b: &[SymMatrix]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x.inner(y)).sum()
}

fn axpy(y: &mut [SymMatrix], alpha: f64, x: &[SymMatrix]) {
    for (yj, xj) in y.iter_mut().zip(x) {
        *yj = yj.add(&xj.scale(alpha));
    }
}

/// `p(L_j(Y_j))_k = <Y_j, L_j*(1_(t >= k))> / 2`.
fn half_spaces(mu: &Spectrum, ords: &[OrderingMap], relax: f64) -> Result<Vec<HalfSpace>> {
    let (m, n) = mu.dims();
    let len = m * n;
    let rhs = partial_sums(&sort_descending(mu));
    let maps = ords
        .iter()
        .map(|o| build_l(o, n))
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::with_capacity(len);
    for (k, b) in rhs.iter().enumerate() {
        let indicator: Vec<f64> = (0..len).map(|t| if t >= k { 1.0 } else { 0.0 }).collect();
        let g = maps
            .iter()
            .map(|map| Ok(map.adjoint(&indicator)?.scale(0.5)))
            .collect::<Result<Vec<_>>>()?;
        let norm_sq = joint_inner(&g, &g);
        out.push(HalfSpace {
            g,
            norm_sq,
            b: b + relax,
        });
    }
    Ok(out)
}

fn max_violation(y: &[SymMatrix], spaces: &[HalfSpace]) -> f64 {
    let psd = y
        .iter()
        .map(|yj| (-min_eig(yj)).max(0.0))
        .fold(0.0, f64::max);
    let lin = spaces
        .iter()
        .map(|h| (joint_inner(&h.g, y) - h.b).max(0.0))
        .fold(0.0, f64::max);
    psd.max(lin)
}

/// Runs at most `cycles` Dykstra cycles from `start` towards the
/// inequalities relaxed by `relax`, stopping once every violation is below
/// `1e-10 * max(1, |mu|_inf)`. The result is projected onto the PSD cones.
pub(super) fn run(
    mu: &Spectrum,
    ords: &[OrderingMap],
    start: Vec<SymMatrix>,
    relax: f64,
    cycles: usize,
) -> Result<Vec<SymMatrix>> {
    let spaces = half_spaces(mu, ords, relax)?;
    let stop = 1e-10 * mu.tolerance_scale();
    let mut y = start;
    let mut p_cone: Vec<SymMatrix> = y.iter().map(|yj| SymMatrix::zeros(yj.size())).collect();
    let mut q = vec![0.0; spaces.len()];

    for cycle in 0..cycles {
        for (yj, pj) in y.iter_mut().zip(p_cone.iter_mut()) {
            let x = yj.add(pj);
            *yj = psd_project(&x);
            *pj = x.sub(yj);
        }
        for (h, qk) in spaces.iter().zip(q.iter_mut()) {
            if h.norm_sq == 0.0 {
                continue;
            }
            // x = y + q_k g; project x onto the half-space
            axpy(&mut y, *qk, &h.g);
            let excess = joint_inner(&h.g, &y) - h.b;
            *qk = (excess / h.norm_sq).max(0.0);
            axpy(&mut y, -*qk, &h.g);
        }
        if cycle % 8 == 7 && max_violation(&y, &spaces) < stop {
            break;
        }
    }
    Ok(y.iter().map(psd_project).collect())
}
