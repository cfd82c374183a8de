use serde::Serialize;

use super::map::TorusMorseMap;
use super::{unit, wrap, FlowError, Tolerances};
use crate::par;

/// A nondegenerate zero of `∇F`, position in `[0, 1)²`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriticalPointNum {
    pub position: [f64; 2],
    pub value: f64,
    pub index: usize,
    /// Hessian eigenvalues, ascending.
    pub eigenvalues: [f64; 2],
    /// Unit eigenvector of the smaller eigenvalue, first nonzero component positive.
    pub e_minus: [f64; 2],
    /// Unit eigenvector of the larger eigenvalue, first nonzero component positive.
    pub e_plus: [f64; 2],
}

/// A critical point lifted into `W = F^{-1}[c, c+1)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LiftedPoint {
    pub name: String,
    pub crit: CriticalPointNum,
    /// Integer `x` offset of the lift.
    pub shift: i64,
}

impl LiftedPoint {
    pub fn position(&self) -> [f64; 2] {
        [self.crit.position[0] + self.shift as f64, self.crit.position[1]]
    }

    pub fn index(&self) -> usize {
        self.crit.index
    }
}

fn orient(v: [f64; 2]) -> [f64; 2] {
    let n = v[0].hypot(v[1]);
    let v = [v[0] / n, v[1] / n];
    let first = if v[0].abs() > 1e-14 { v[0] } else { v[1] };
    if first < 0.0 {
        [-v[0], -v[1]]
    } else {
        v
    }
}

/// Eigen-decomposition of a symmetric 2×2 matrix.
pub(crate) fn sym_eigen(h: [[f64; 2]; 2]) -> ([f64; 2], [f64; 2], [f64; 2]) {
    let (a, b, d) = (h[0][0], h[0][1], h[1][1]);
    let mean = 0.5 * (a + d);
    let r = (0.5 * (a - d)).hypot(b);
    let (l1, l2) = (mean - r, mean + r);
    let vec_for = |l: f64, fallback: [f64; 2]| {
        let u = [b, l - a];
        let w = [l - d, b];
        let (nu, nw) = (u[0].hypot(u[1]), w[0].hypot(w[1]));
        if nu.max(nw) <= 1e-300 {
            fallback
        } else if nu >= nw {
            orient(u)
        } else {
            orient(w)
        }
    };
    let (f1, f2) = if a <= d { ([1.0, 0.0], [0.0, 1.0]) } else { ([0.0, 1.0], [1.0, 0.0]) };
    ([l1, l2], vec_for(l1, f1), vec_for(l2, f2))
}

fn newton(map: &TorusMorseMap, seed: [f64; 2], tol: &Tolerances) -> Option<[f64; 2]> {
    let mut z = seed;
    for _ in 0..60 {
        let g = map.gradient(z);
        if g[0].hypot(g[1]) < 1e-14 {
            break;
        }
        let h = map.hessian(z);
        let det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
        if det.abs() < 1e-14 {
            return None;
        }
        let mut dx = -(h[1][1] * g[0] - h[0][1] * g[1]) / det;
        let mut dy = -(-h[1][0] * g[0] + h[0][0] * g[1]) / det;
        let n = dx.hypot(dy);
        if n > 0.1 {
            dx *= 0.1 / n;
            dy *= 0.1 / n;
        }
        z = [z[0] + dx, z[1] + dy];
        if !(z[0].is_finite() && z[1].is_finite()) {
            return None;
        }
    }
    let z = [unit(z[0]), unit(z[1])];
    let g = map.gradient(z);
    (g[0].hypot(g[1]) < tol.newton).then_some(z)
}

/// Newton from a `seed_grid²` grid, deduplicated and classified by the Hessian.
/// Sorted by index, then `x`, then `y`.
pub fn find_critical_points(map: &TorusMorseMap, tol: &Tolerances) -> Result<Vec<CriticalPointNum>, FlowError> {
    let n = tol.seed_grid;
    let seeds: Vec<[f64; 2]> =
        (0..n * n).map(|k| [((k / n) as f64 + 0.5) / n as f64, ((k % n) as f64 + 0.5) / n as f64]).collect();
    let found = par::map(&seeds, |&s| newton(map, s, tol));
    let mut uniq: Vec<[f64; 2]> = Vec::new();
    for z in found.into_iter().flatten() {
        if !uniq.iter().any(|u| wrap(u[0] - z[0]).hypot(wrap(u[1] - z[1])) < tol.dedupe) {
            uniq.push(z);
        }
    }
    let mut out = Vec::with_capacity(uniq.len());
    for z in uniq {
        let (ev, em, ep) = sym_eigen(map.hessian(z));
        let small = if ev[0].abs() < ev[1].abs() { ev[0] } else { ev[1] };
        if small.abs() < tol.eigen_floor {
            return Err(FlowError::DegenerateCritical { x: z[0], y: z[1], eigenvalue: small });
        }
        let index = ev.iter().filter(|&&l| l < 0.0).count();
        out.push(CriticalPointNum { position: z, value: map.value(z), index, eigenvalues: ev, e_minus: em, e_plus: ep });
    }
    out.sort_by(|a, b| {
        a.index
            .cmp(&b.index)
            .then(a.position[0].total_cmp(&b.position[0]))
            .then(a.position[1].total_cmp(&b.position[1]))
    });
    Ok(out)
}

/// Lifts into `F ∈ [cut, cut + 1)` and names the points `c<index>_<k>`.
pub fn lift_critical_points(points: &[CriticalPointNum], cut: f64) -> Vec<LiftedPoint> {
    let mut counters = [0usize; 3];
    let width = points.len().to_string().len();
    points
        .iter()
        .map(|p| {
            let k = counters[p.index];
            counters[p.index] += 1;
            let shift = (cut - p.value).ceil() as i64;
            LiftedPoint { name: format!("c{}_{:0width$}", p.index, k), crit: p.clone(), shift }
        })
        .collect()
}
