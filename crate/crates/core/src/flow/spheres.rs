use serde::Serialize;

use super::trace::{Dir, Tracer};
use super::FlowError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    Descending,
    Ascending,
}

/// Signed fiber points of `S(p)` on a level.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SphereInLevel {
    pub level: f64,
    /// `(y, sign)`; a descending sole carries the sign of its side of `e_-`,
    /// an ascending sole the sign of its coorientation against `+y`.
    pub points: Vec<(f64, i64)>,
    pub source: String,
    pub side: Side,
    /// Separatrices captured before reaching the level.
    pub captured: usize,
}

pub(crate) fn det(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

/// Coorientation sign of the ascending sole on side `sigma` of `e_+`.
pub(crate) fn ascending_sign(e_plus: [f64; 2], e_minus: [f64; 2], sigma: f64) -> i64 {
    if sigma * det(e_plus, e_minus) > 0.0 {
        1
    } else {
        -1
    }
}

fn sphere(tracer: &Tracer, i: usize, level: f64, side: Side) -> Result<SphereInLevel, FlowError> {
    let p = &tracer.points[i];
    if p.index() != 1 {
        return Err(FlowError::InvalidMap(format!("{} has index {}, spheres are shot from index-1 points", p.name, p.index())));
    }
    let value = tracer.field.value(p.position());
    let (dir, ok) = match side {
        Side::Descending => (Dir::Down, level < value),
        Side::Ascending => (Dir::Up, level > value),
    };
    if !ok {
        return Err(FlowError::InvalidMap(format!("level {level} is on the wrong side of {} (F = {value})", p.name)));
    }
    let mut points = Vec::new();
    let mut captured = 0;
    for sigma in [1.0, -1.0] {
        let tr = tracer.separatrix(i, sigma, dir, level, 1, false)?;
        match tr.crossings.first() {
            Some(c) => {
                let sign = match side {
                    Side::Descending => sigma as i64,
                    Side::Ascending => ascending_sign(p.crit.e_plus, p.crit.e_minus, sigma),
                };
                points.push((c.y, sign));
            }
            None => captured += 1,
        }
    }
    points.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(SphereInLevel { level, points, source: p.name.clone(), side, captured })
}

/// `S(p) = D(p, v) ∩ F^{-1}(level)` for an index-1 point above `level`.
pub fn descending_sphere(tracer: &Tracer, i: usize, level: f64) -> Result<SphereInLevel, FlowError> {
    sphere(tracer, i, level, Side::Descending)
}

/// `D(q, -v) ∩ F^{-1}(level)` for an index-1 point below `level`.
pub fn ascending_sphere(tracer: &Tracer, i: usize, level: f64) -> Result<SphereInLevel, FlowError> {
    sphere(tracer, i, level, Side::Ascending)
}
