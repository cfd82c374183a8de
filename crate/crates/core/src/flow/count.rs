//! Direct counting: separatrices followed copy by copy through the cover.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use super::spheres::det;
use super::trace::{Dir, Tracer};
use super::FlowError;
use crate::laurent::LaurentSeries;

/// `n_k(x, y)` for `-1 ≤ k ≤ k_max` (lifts: `x̄ ∈ W`, `ȳ ∈ W t`).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeometricTable {
    pub k_max: i64,
    pub counts: BTreeMap<(String, String), Vec<i64>>,
}

impl GeometricTable {
    pub fn get(&self, x: &str, y: &str, k: i64) -> i64 {
        if k < -1 || k > self.k_max {
            return 0;
        }
        self.counts.get(&(x.to_string(), y.to_string())).map_or(0, |v| v[(k + 1) as usize])
    }

    /// The counts as a series starting at `t^{-1}`, known through `t^{k_max}`.
    pub fn series(&self, x: &str, y: &str) -> LaurentSeries {
        let coeffs = (-1..=self.k_max).map(|k| BigInt::from(self.get(x, y, k))).collect();
        LaurentSeries::new(-1, coeffs, self.k_max)
    }
}

/// All adjacent-index incidences up to `t^{k_max}`.
///
/// A flow line from `x̄` to `ȳ_W t^j` (with `ȳ_W ∈ W`) contributes at
/// `k = j - 1`. Saddle-to-minimum lines carry the sign of the `e_-` side;
/// maximum-to-saddle lines carry `sign det(-σ e_+, e_-)`.
pub fn geometric_incidences(tracer: &Tracer, cut: f64, k_max: i64) -> Result<GeometricTable, FlowError> {
    let pts = tracer.points;
    let mut counts: BTreeMap<(String, String), Vec<i64>> = BTreeMap::new();
    let width = (k_max + 2).max(0) as usize;
    for x in pts.iter().filter(|p| p.index() >= 1) {
        for y in pts.iter().filter(|p| p.index() + 1 == x.index()) {
            counts.insert((x.name.clone(), y.name.clone()), vec![0; width]);
        }
    }
    let saddles: Vec<usize> = (0..pts.len()).filter(|&i| pts[i].index() == 1).collect();
    let max_crossings = (k_max + 2).max(1) as usize;
    let jobs: Vec<(usize, f64, Dir)> = saddles
        .iter()
        .flat_map(|&i| [(i, 1.0, Dir::Down), (i, -1.0, Dir::Down), (i, 1.0, Dir::Up), (i, -1.0, Dir::Up)])
        .collect();
    let traces = crate::par::map(&jobs, |&(i, sigma, dir)| {
        let level = if dir == Dir::Down { cut } else { cut + 1.0 };
        tracer.separatrix(i, sigma, dir, level, max_crossings, false)
    });
    for (&(i, sigma, dir), tr) in jobs.iter().zip(traces) {
        let tr = tr?;
        let Some((j, deck)) = tr.captured() else { continue };
        let s = &pts[i];
        let other = &pts[j];
        if other.index() == 1 {
            return Err(FlowError::NonTransversal(format!(
                "{} separatrix {:+} of {} reaches {} (deck {deck})",
                if dir == Dir::Down { "descending" } else { "ascending" },
                sigma as i64,
                s.name,
                other.name
            )));
        }
        let (key, j_copy, sign) = match dir {
            Dir::Down => ((s.name.clone(), other.name.clone()), deck, sigma as i64),
            Dir::Up => (
                (other.name.clone(), s.name.clone()),
                -deck,
                if det([-sigma * s.crit.e_plus[0], -sigma * s.crit.e_plus[1]], s.crit.e_minus) > 0.0 { 1 } else { -1 },
            ),
        };
        let k = j_copy - 1;
        if k >= -1 && k <= k_max {
            if let Some(v) = counts.get_mut(&key) {
                v[(k + 1) as usize] += sign;
            }
        }
    }
    Ok(GeometricTable { k_max, counts })
}

/// `n_k(p, q)` by direct counting.
pub fn count_intersections(tracer: &Tracer, cut: f64, p: &str, q: &str, k: i64) -> Result<i64, FlowError> {
    Ok(geometric_incidences(tracer, cut, k.max(0))?.get(p, q, k))
}
