use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::count::{geometric_incidences, GeometricTable};
use super::critical::LiftedPoint;
use super::map::{Bump, Field, TorusMorseMap};
use super::trace::Tracer;
use super::{wrap, FlowError, Tolerances};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PerturbationReport {
    pub bumps: Vec<Bump>,
    pub k_max: i64,
    pub identical: bool,
    /// `(x, y, k, before, after)`.
    pub differences: Vec<(String, String, i64, i64, i64)>,
    /// Some bump exceeds the sup-norm bound.
    pub outside_hypothesis: bool,
    pub before: GeometricTable,
    pub after: GeometricTable,
}

/// Checks support clearance and `dF(w) > 0` on the support; returns whether
/// the sup-norm stays within the hypothesis.
pub fn validate_bump(index: usize, b: &Bump, map: &TorusMorseMap, points: &[LiftedPoint], tol: &Tolerances) -> Result<bool, FlowError> {
    let fail = |reason: String| FlowError::BumpTouchesCriticalSet { index, reason };
    if !(b.radius > 0.0 && b.radius < 0.5 && b.amp.is_finite() && b.angle.is_finite()) {
        return Err(fail(format!("radius {} / amplitude {} out of range", b.radius, b.amp)));
    }
    for p in points {
        let c = p.crit.position;
        let d = wrap(c[0] - b.cx).hypot(wrap(c[1] - b.cy));
        if d < b.radius + tol.bump_clearance {
            return Err(fail(format!("support within {:.4} of {}", d - b.radius, p.name)));
        }
    }
    let dir = b.direction();
    let n = 40;
    for i in 0..=n {
        for j in 0..=n {
            let z = [b.cx + b.radius * (2.0 * i as f64 / n as f64 - 1.0), b.cy + b.radius * (2.0 * j as f64 / n as f64 - 1.0)];
            let w = b.weight(z);
            if w == 0.0 {
                continue;
            }
            let g = map.gradient(z);
            let df = g[0] * g[0] + g[1] * g[1] + w * (g[0] * dir[0] + g[1] * dir[1]);
            if df <= 0.0 {
                return Err(fail(format!("dF(w) = {df:e} at ({:.4}, {:.4})", z[0], z[1])));
            }
        }
    }
    Ok(b.amp.abs() <= tol.bump_sup)
}

/// Recounts `n_k`, `k ≤ k_max`, for `∇F + Σ bumps` and compares.
pub fn perturb_and_recount(
    map: &TorusMorseMap,
    points: &[LiftedPoint],
    tol: &Tolerances,
    cut: f64,
    bumps: &[Bump],
    k_max: i64,
    before: Option<&GeometricTable>,
) -> Result<PerturbationReport, FlowError> {
    let mut outside_hypothesis = false;
    for (i, b) in bumps.iter().enumerate() {
        outside_hypothesis |= !validate_bump(i, b, map, points, tol)?;
    }
    let base = Field::gradient_of(map);
    let before = match before {
        Some(t) if t.k_max == k_max => t.clone(),
        _ => geometric_incidences(&Tracer::new(&base, points, tol), cut, k_max)?,
    };
    let bumped = Field { map: map.clone(), bumps: bumps.to_vec() };
    let after = geometric_incidences(&Tracer::new(&bumped, points, tol), cut, k_max)?;
    let mut differences = Vec::new();
    for ((x, y), v) in &before.counts {
        for k in -1..=k_max {
            let (a, b) = (v[(k + 1) as usize], after.get(x, y, k));
            if a != b {
                differences.push((x.clone(), y.clone(), k, a, b));
            }
        }
    }
    Ok(PerturbationReport {
        bumps: bumps.to_vec(),
        k_max,
        identical: differences.is_empty(),
        differences,
        outside_hypothesis,
        before,
        after,
    })
}

/// `count` admissible bumps drawn from a seeded stream.
pub fn random_admissible_bumps(map: &TorusMorseMap, points: &[LiftedPoint], tol: &Tolerances, seed: u64, count: usize) -> Vec<Bump> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut tries = 0usize;
    while out.len() < count && tries < 100_000 {
        tries += 1;
        let b = Bump {
            cx: rng.gen::<f64>(),
            cy: rng.gen::<f64>(),
            radius: rng.gen_range(0.05..0.15),
            amp: tol.bump_sup * rng.gen_range(0.5..1.0),
            angle: rng.gen_range(0.0..std::f64::consts::TAU),
        };
        if let Ok(true) = validate_bump(out.len(), &b, map, points, tol) {
            out.push(b);
        }
    }
    out
}
