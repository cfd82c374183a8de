//! Condition (C) on the circle fiber and the homological descent data.
//!
//! The fiber carries an auxiliary height with one maximum `M` and one
//! minimum `m`. Its filtration is `arc_δ(m) ⊂ V`, so
//! `H_0(V^{≤0}) = Z` (point class) and `H_1(V, V^{≤0}) = Z` (circle class,
//! oriented by `+y`).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::critical::LiftedPoint;
use super::ode::Step;
use super::spheres::det;
use super::trace::{Dir, Trace, TraceEnd, Tracer};
use super::{circle_dist, unit, wrap, FlowError};
use crate::complex::{CritPoint, CyclicMorseData};
use crate::laurent::{IntCovector, IntMatrix, IntVector};

/// Auxiliary height on the fiber circle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiberHeight {
    pub max: f64,
    pub min: f64,
}

/// One inclusion check: every reached landing point must lie in the target arc.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ArcCheck {
    pub name: String,
    pub pass: bool,
    pub samples: usize,
    pub reached: usize,
    /// `δ - dist(landing, center)`, minimized; `None` when nothing reached.
    pub worst_margin: Option<f64>,
    /// `(start y, landing y)` of the worst sample.
    pub witness: Option<(f64, f64)>,
}

impl ArcCheck {
    fn new(name: &str) -> Self {
        ArcCheck { name: name.to_string(), pass: true, samples: 0, reached: 0, worst_margin: None, witness: None }
    }

    fn add(&mut self, start: f64, landing: Option<f64>, center: f64, delta: f64) {
        self.samples += 1;
        let Some(l) = landing else { return };
        self.reached += 1;
        let margin = delta - circle_dist(l, center);
        if self.worst_margin.is_none_or(|w| margin < w) {
            self.worst_margin = Some(margin);
            self.witness = Some((start, l));
        }
        if margin <= 0.0 {
            self.pass = false;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConditionCWitness {
    pub delta: f64,
    pub fiber: FiberHeight,
    pub arcs_disjoint: bool,
    /// Descent of `V_1 \ arc_δ(M)` lands in `arc_δ(m)`.
    pub b1: ArcCheck,
    /// Descending saddle soles on `V_0` lie in `arc_δ(m)`.
    pub b1_soles: ArcCheck,
    /// Ascent of `V_0 \ arc_δ(m)` lands in `arc_δ(M)`.
    pub b0: ArcCheck,
    /// Ascending saddle soles on `V_1` lie in `arc_δ(M)`.
    pub b0_soles: ArcCheck,
    pub pass: bool,
}

impl ConditionCWitness {
    pub fn summary(&self) -> String {
        let mut bad = Vec::new();
        if !self.arcs_disjoint {
            bad.push("arcs overlap".to_string());
        }
        for c in [&self.b1, &self.b1_soles, &self.b0, &self.b0_soles] {
            if !c.pass {
                let (s, l) = c.witness.unwrap_or((f64::NAN, f64::NAN));
                bad.push(format!("{}: y={s:.6} lands at {l:.6}, margin {:.3e}", c.name, c.worst_margin.unwrap_or(f64::NAN)));
            }
        }
        if bad.is_empty() {
            "pass".into()
        } else {
            bad.join("; ")
        }
    }
}

fn landing(tr: &Trace) -> Option<f64> {
    (tr.end == TraceEnd::LevelLimit).then(|| tr.crossings[0].y)
}

fn start_on(tracer: &Tracer, level: f64, y: f64) -> Result<[f64; 2], FlowError> {
    tracer.field.map.fiber_point(level, y)
}

/// One copy of `W`: from `F = start_level` to `F = start_level ∓ 1`.
fn cross(tracer: &Tracer, level: f64, y: f64, dir: Dir) -> Result<Trace, FlowError> {
    let z = start_on(tracer, level, y)?;
    let target = if dir == Dir::Down { level - 1.0 } else { level + 1.0 };
    tracer.trace(z, dir, target, 1, None, false)
}

fn saddles(points: &[LiftedPoint]) -> Vec<usize> {
    (0..points.len()).filter(|&i| points[i].index() == 1).collect()
}

/// Samples the fiber at `fiber_samples` points and checks the (B1)/(B0)
/// inclusions for `δ`.
pub fn check_condition_c(tracer: &Tracer, cut: f64, delta: f64, fiber: FiberHeight) -> Result<ConditionCWitness, FlowError> {
    let n = tracer.tol.fiber_samples;
    let (top, bottom) = (cut + 1.0, cut);
    let ys: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) / n as f64).collect();
    let down_starts: Vec<f64> = ys.iter().copied().filter(|&y| circle_dist(y, fiber.max) > delta).collect();
    let up_starts: Vec<f64> = ys.iter().copied().filter(|&y| circle_dist(y, fiber.min) > delta).collect();
    let downs = crate::par::map(&down_starts, |&y| cross(tracer, top, y, Dir::Down));
    let ups = crate::par::map(&up_starts, |&y| cross(tracer, bottom, y, Dir::Up));
    let mut b1 = ArcCheck::new("B1");
    for (y, tr) in down_starts.iter().zip(downs) {
        b1.add(*y, landing(&tr?), fiber.min, delta);
    }
    let mut b0 = ArcCheck::new("B0");
    for (y, tr) in up_starts.iter().zip(ups) {
        b0.add(*y, landing(&tr?), fiber.max, delta);
    }
    let mut b1_soles = ArcCheck::new("B1 soles");
    let mut b0_soles = ArcCheck::new("B0 soles");
    for i in saddles(tracer.points) {
        let py = tracer.points[i].crit.position[1];
        for sigma in [1.0, -1.0] {
            let d = tracer.separatrix(i, sigma, Dir::Down, bottom, 1, false)?;
            b1_soles.add(py, landing(&d), fiber.min, delta);
            let u = tracer.separatrix(i, sigma, Dir::Up, top, 1, false)?;
            b0_soles.add(py, landing(&u), fiber.max, delta);
        }
    }
    let arcs_disjoint = circle_dist(fiber.max, fiber.min) > 2.0 * delta;
    let pass = arcs_disjoint && b1.pass && b0.pass && b1_soles.pass && b0_soles.pass;
    Ok(ConditionCWitness { delta, fiber, arcs_disjoint, b1, b1_soles, b0, b0_soles, pass })
}

/// `h_s`, `[X_x]`, `λ_y` and the direct counts, ready for the algebraic side.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReturnData {
    pub h0: i64,
    pub h1: i64,
    pub x_class: BTreeMap<String, i64>,
    pub lambda: BTreeMap<String, i64>,
    pub direct: BTreeMap<(String, String), i64>,
    pub witness: ConditionCWitness,
}

impl ReturnData {
    pub fn to_cyclic(&self, points: &[LiftedPoint]) -> CyclicMorseData {
        let mut pts: Vec<CritPoint> = points.iter().map(|p| CritPoint { name: p.name.clone(), index: p.index() }).collect();
        pts.sort();
        let one = |v: i64| IntMatrix::from_i64(&[&[v]]);
        let h = BTreeMap::from([(0usize, one(self.h0)), (1usize, one(self.h1))]);
        let x_class = self.x_class.iter().map(|(k, &v)| (k.clone(), IntVector::from_i64(&[v]))).collect();
        let lambda = self.lambda.iter().map(|(k, &v)| (k.clone(), IntCovector::from_i64(&[v]))).collect();
        let direct = self.direct.iter().filter(|(_, &v)| v != 0).map(|(k, &v)| (k.clone(), BigInt::from(v))).collect();
        CyclicMorseData { points: pts, h, x_class, lambda, direct }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Fate {
    Passed(f64),
    Captured(usize, i64),
}

fn fate(tr: &Trace) -> Result<Fate, FlowError> {
    match tr.end {
        TraceEnd::LevelLimit => Ok(Fate::Passed(tr.crossings[0].y)),
        TraceEnd::Captured { point, deck } => Ok(Fate::Captured(point, deck)),
        TraceEnd::TimeLimit => Err(FlowError::MaxStepsExceeded(tr.steps)),
    }
}

/// Fates of points spread over `arc_δ(center)`.
fn arc_fates(tracer: &Tracer, level: f64, center: f64, delta: f64, dir: Dir) -> Result<Vec<Fate>, FlowError> {
    let ys: Vec<f64> = (-8..=8).map(|i| unit(center + 0.999 * delta * i as f64 / 8.0)).collect();
    crate::par::map(&ys, |&y| cross(tracer, level, y, dir).and_then(|t| fate(&t))).into_iter().collect()
}

/// `1` if every fate satisfies `pred`, `0` if none does.
fn uniform(fates: &[Fate], pred: impl Fn(&Fate) -> bool, what: &str) -> Result<i64, FlowError> {
    let hits = fates.iter().filter(|f| pred(f)).count();
    match hits {
        0 => Ok(0),
        h if h == fates.len() => Ok(1),
        _ => Err(FlowError::ConditionCNotVerified(format!("{what} is not uniform over the arc"))),
    }
}

/// Side of `e_-` on which a trajectory started near an ascending sole
/// leaves the saddle `points[i]`.
fn exit_side(tracer: &Tracer, z0: [f64; 2], i: usize) -> Result<i64, FlowError> {
    let p = &tracer.points[i];
    let pz = p.position();
    let (em, ep) = (p.crit.e_minus, p.crit.e_plus);
    let floor = tracer.field.value(pz) - 2.0;
    let mut approached = false;
    let mut side = 0i64;
    let f = |z: [f64; 2]| {
        let v = tracer.field.velocity(z);
        [-v[0], -v[1]]
    };
    tracer.ode.run(&f, z0, f64::INFINITY, |st: &Step| {
        let d = [st.z1[0] - pz[0], wrap(st.z1[1] - pz[1])];
        let a = d[0] * ep[0] + d[1] * ep[1];
        let b = d[0] * em[0] + d[1] * em[1];
        if d[0].hypot(d[1]) < 0.25 {
            if b.abs() < a.abs() {
                approached = true;
            } else if approached && b.abs() > 2.0 * a.abs() {
                side = if b > 0.0 { 1 } else { -1 };
                return false;
            }
        }
        let captured = tracer.nearest(st.z1).is_some_and(|(j, deck, r)| r < tracer.tol.capture_radius && (j, deck) != (i, 0));
        !captured && tracer.field.value(st.z1) > floor
    })?;
    if side == 0 {
        return Err(FlowError::NonTransversal(format!("trajectory near the ascending sole of {} misses it", p.name)));
    }
    Ok(side)
}

/// Homological descent across `W` for the fiber filtration, after
/// verifying condition (C).
pub fn compute_return_endomorphism(tracer: &Tracer, cut: f64, delta: f64, fiber: FiberHeight) -> Result<ReturnData, FlowError> {
    let witness = check_condition_c(tracer, cut, delta, fiber)?;
    if !witness.pass {
        return Err(FlowError::ConditionCNotVerified(witness.summary()));
    }
    let pts = tracer.points;
    let (top, bottom) = (cut + 1.0, cut);
    let passed = |f: &Fate| matches!(f, Fate::Passed(_));
    let saddle_hit = |fs: &[Fate]| fs.iter().any(|f| matches!(f, Fate::Captured(j, _) if pts[*j].index() == 1));

    let mins = arc_fates(tracer, top, fiber.min, delta, Dir::Down)?;
    let maxs = arc_fates(tracer, bottom, fiber.max, delta, Dir::Up)?;
    if saddle_hit(&mins) || saddle_hit(&maxs) {
        return Err(FlowError::NonTransversal("fiber extremum arc meets a saddle".into()));
    }
    let h0 = uniform(&mins, passed, "descent of arc(m)")?;
    let h1 = uniform(&maxs, passed, "ascent of arc(M)")?;

    let mut x_class = BTreeMap::new();
    let mut lambda = BTreeMap::new();
    let mut direct: BTreeMap<(String, String), i64> = BTreeMap::new();
    for (j, p) in pts.iter().enumerate() {
        match p.index() {
            0 => {
                let v = uniform(&mins, |f| *f == Fate::Captured(j, 0), &format!("capture by {}", p.name))?;
                lambda.insert(p.name.clone(), v);
            }
            2 => {
                let v = uniform(&maxs, |f| *f == Fate::Captured(j, 0), &format!("capture by {}", p.name))?;
                x_class.insert(p.name.clone(), -v);
            }
            _ => {}
        }
    }
    for i in saddles(pts) {
        let s = &pts[i];
        let mut x = 0i64;
        let mut lam = 0i64;
        for sigma in [1.0, -1.0] {
            let d = tracer.separatrix(i, sigma, Dir::Down, bottom, 1, false)?;
            match fate(&d)? {
                Fate::Passed(_) => x += sigma as i64,
                Fate::Captured(j, 0) if pts[j].index() == 0 => {
                    *direct.entry((s.name.clone(), pts[j].name.clone())).or_default() += sigma as i64
                }
                Fate::Captured(j, deck) => {
                    return Err(FlowError::NonTransversal(format!("{} descends to {} (deck {deck}) inside W", s.name, pts[j].name)))
                }
            }
            let u = tracer.separatrix(i, sigma, Dir::Up, top, 1, false)?;
            match fate(&u)? {
                Fate::Passed(w) => {
                    let eps = 1e-8;
                    let plus = exit_side(tracer, start_on(tracer, top, w + eps)?, i)?;
                    let minus = exit_side(tracer, start_on(tracer, top, w - eps)?, i)?;
                    if plus != -minus {
                        return Err(FlowError::NonTransversal(format!("both sides of the sole of {} exit alike", s.name)));
                    }
                    lam += plus;
                }
                Fate::Captured(j, 0) if pts[j].index() == 2 => {
                    let e = s.crit.e_plus;
                    let sign = if det([-sigma * e[0], -sigma * e[1]], s.crit.e_minus) > 0.0 { 1 } else { -1 };
                    *direct.entry((pts[j].name.clone(), s.name.clone())).or_default() += sign;
                }
                Fate::Captured(j, deck) => {
                    return Err(FlowError::NonTransversal(format!("{} ascends to {} (deck {deck}) inside W", s.name, pts[j].name)))
                }
            }
        }
        x_class.insert(s.name.clone(), x);
        lambda.insert(s.name.clone(), lam);
    }
    Ok(ReturnData { h0, h1, x_class, lambda, direct, witness })
}
