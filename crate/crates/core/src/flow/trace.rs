use serde::Serialize;

use super::critical::LiftedPoint;
use super::map::Field;
use super::ode::{Dp45, Step};
use super::{circle_dist, unit, wrap, FlowError, Tolerances};

/// `Down` integrates `-v`, `Up` integrates `v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Dir {
    Down,
    Up,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Crossing {
    pub level: f64,
    /// Fiber coordinate in `[0, 1)`.
    pub y: f64,
    pub z: [f64; 2],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TraceEnd {
    /// Entered the capture disc of `points[point]·t^deck`.
    Captured { point: usize, deck: i64 },
    LevelLimit,
    TimeLimit,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Trace {
    pub crossings: Vec<Crossing>,
    pub end: TraceEnd,
    pub end_point: [f64; 2],
    pub time: f64,
    pub steps: usize,
    pub path: Vec<[f64; 2]>,
}

impl Trace {
    pub fn captured(&self) -> Option<(usize, i64)> {
        match self.end {
            TraceEnd::Captured { point, deck } => Some((point, deck)),
            _ => None,
        }
    }
}

/// Integrates trajectories of a field against a lifted critical set.
pub struct Tracer<'a> {
    pub field: &'a Field,
    pub points: &'a [LiftedPoint],
    pub tol: &'a Tolerances,
    pub ode: Dp45,
}

impl<'a> Tracer<'a> {
    pub fn new(field: &'a Field, points: &'a [LiftedPoint], tol: &'a Tolerances) -> Self {
        Tracer { field, points, tol, ode: Dp45 { tol: tol.ode, h_max: tol.max_step, max_steps: tol.max_steps } }
    }

    fn rhs(&self, dir: Dir) -> impl Fn([f64; 2]) -> [f64; 2] + '_ {
        let s = if dir == Dir::Down { -1.0 } else { 1.0 };
        move |z| {
            let v = self.field.velocity(z);
            [s * v[0], s * v[1]]
        }
    }

    /// Nearest image `(point, deck, distance)` among the lifted critical points.
    pub fn nearest(&self, z: [f64; 2]) -> Option<(usize, i64, f64)> {
        let mut best: Option<(usize, i64, f64)> = None;
        for (i, p) in self.points.iter().enumerate() {
            let pz = p.position();
            let n = (z[0] - pz[0]).round();
            let d = (z[0] - pz[0] - n).hypot(wrap(z[1] - pz[1]));
            if best.is_none_or(|b| d < b.2) {
                best = Some((i, -(n as i64), d));
            }
        }
        best
    }

    /// Follows the trajectory from `z0`, recording crossings of `first_level`,
    /// `first_level ∓ 1`, … (at most `max_crossings`) until capture.
    /// `exclude` names a critical image that does not capture.
    pub fn trace(
        &self,
        z0: [f64; 2],
        dir: Dir,
        first_level: f64,
        max_crossings: usize,
        exclude: Option<(usize, i64)>,
        record: bool,
    ) -> Result<Trace, FlowError> {
        let f = self.rhs(dir);
        let step_sign = if dir == Dir::Down { -1.0 } else { 1.0 };
        let mut next = first_level;
        let mut crossings = Vec::new();
        let mut end = TraceEnd::TimeLimit;
        let mut path = if record { vec![z0] } else { Vec::new() };
        let r0 = self.tol.capture_radius;
        let eps = self.tol.event * 1e-2;
        let monitor = |st: &Step| {
            if record {
                path.push(st.z1);
            }
            while crossings.len() < max_crossings {
                let past = if dir == Dir::Down {
                    self.field.value(st.z1) <= next
                } else {
                    self.field.value(st.z1) >= next
                };
                if !past {
                    break;
                }
                let lvl = next;
                let (_, z) = self.ode.locate(&f, st, |z| self.field.value(z) - lvl, eps);
                crossings.push(Crossing { level: lvl, y: unit(z[1]), z });
                next += step_sign;
            }
            if crossings.len() >= max_crossings && max_crossings > 0 {
                end = TraceEnd::LevelLimit;
                return false;
            }
            for probe in [st.hermite(0.5), st.z1] {
                if let Some((i, deck, d)) = self.nearest(probe) {
                    if d < r0 && exclude != Some((i, deck)) {
                        end = TraceEnd::Captured { point: i, deck };
                        return false;
                    }
                }
            }
            true
        };
        let (z, t, steps) = self.ode.run(&f, z0, f64::INFINITY, monitor)?;
        Ok(Trace { crossings, end, end_point: z, time: t, steps, path })
    }

    /// The separatrix of lifted point `i` leaving along `sign·e_∓` in direction `dir`.
    pub fn separatrix(&self, i: usize, sign: f64, dir: Dir, first_level: f64, max_crossings: usize, record: bool) -> Result<Trace, FlowError> {
        let p = &self.points[i];
        let e = if dir == Dir::Down { p.crit.e_minus } else { p.crit.e_plus };
        let pz = p.position();
        let eps = self.tol.shoot_eps;
        let z0 = [pz[0] + sign * eps * e[0], pz[1] + sign * eps * e[1]];
        self.trace(z0, dir, first_level, max_crossings, Some((i, 0)), record)
    }

    /// The flow for time `t` (no capture).
    pub fn flow_for(&self, z0: [f64; 2], dir: Dir, t: f64) -> Result<[f64; 2], FlowError> {
        let f = self.rhs(dir);
        Ok(self.ode.run(&f, z0, t, |_| true)?.0)
    }
}

/// Integrates from `z0` until the level `target` is crossed (if given) or a
/// critical point captures the trajectory.
pub fn integrate_flow(tracer: &Tracer, z0: [f64; 2], dir: Dir, target: Option<f64>, record: bool) -> Result<Trace, FlowError> {
    match target {
        Some(l) => tracer.trace(z0, dir, l, 1, None, record),
        None => {
            let far = if dir == Dir::Down { f64::NEG_INFINITY } else { f64::INFINITY };
            tracer.trace(z0, dir, far, 0, None, record)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TransversalityReport {
    pub transverse: bool,
    /// Smallest fiber distance between a descending and an ascending sole.
    pub min_gap: f64,
    pub witness: Option<String>,
}

/// Saddle separatrices followed through `k_max + 1` fibers in both
/// directions; soles at a common fiber must stay `transversality` apart.
pub fn check_transversality(tracer: &Tracer, cut: f64, k_max: usize) -> Result<TransversalityReport, FlowError> {
    let saddles: Vec<usize> = (0..tracer.points.len()).filter(|&i| tracer.points[i].index() == 1).collect();
    let mut down: Vec<(String, f64)> = Vec::new();
    let mut up: Vec<(String, f64)> = Vec::new();
    let mut witness = None;
    for &i in &saddles {
        for sign in [1.0, -1.0] {
            let name = &tracer.points[i].name;
            for (dir, level, soles) in [(Dir::Down, cut, &mut down), (Dir::Up, cut + 1.0, &mut up)] {
                let tr = tracer.separatrix(i, sign, dir, level, k_max + 1, false)?;
                if let Some((j, deck)) = tr.captured() {
                    if tracer.points[j].index() == 1 && witness.is_none() {
                        witness = Some(format!(
                            "separatrix {name} {dir:?} {sign:+} reaches saddle {} (deck {deck})",
                            tracer.points[j].name
                        ));
                    }
                }
                soles.extend(tr.crossings.iter().map(|c| (name.clone(), c.y)));
            }
        }
    }
    let mut min_gap = f64::INFINITY;
    for (pn, py) in &down {
        for (qn, qy) in &up {
            let d = circle_dist(*py, *qy);
            if d < min_gap {
                min_gap = d;
                if d < tracer.tol.transversality && witness.is_none() {
                    witness = Some(format!("descending sole of {pn} at y={py:.9} meets ascending sole of {qn} at y={qy:.9}"));
                }
            }
        }
    }
    Ok(TransversalityReport { transverse: witness.is_none(), min_gap, witness })
}
