//! Gradient flows of circle-valued Morse maps on the flat torus.
//!
//! The cover is `R × S¹` with `F(x + 1, y) = F(x, y) + 1`; the deck
//! generator `t` is `x ↦ x - 1`. Level sets `F = c` are graphs over `y`,
//! so fiber points are recorded by their `y` coordinate. `W = F^{-1}[c, c+1]`.
//!
//! `D(p, v)` is the set of points flowing forward under `v` into `p`, so
//! for a saddle it is the pair of separatrices leaving `p` downhill.

mod condition;
mod count;
mod critical;
mod map;
mod ode;
mod perturb;
mod scenario;
mod spheres;
mod standard;
mod svg;
mod tolerances;
mod trace;

pub use condition::{check_condition_c, compute_return_endomorphism, ArcCheck, ConditionCWitness, FiberHeight, ReturnData};
pub use count::{count_intersections, geometric_incidences, GeometricTable};
pub use critical::{find_critical_points, lift_critical_points, CriticalPointNum, LiftedPoint};
pub use map::{Bump, Field, FourierMode, TorusMorseMap};
pub use ode::{Dp45, Step};
pub use perturb::{perturb_and_recount, random_admissible_bumps, validate_bump, PerturbationReport};
pub use scenario::Scenario;
pub use spheres::{ascending_sphere, descending_sphere, Side, SphereInLevel};
pub use standard::{annulus_bound, quadratic_slice_time, standard_gradient_times, AnnulusTimes, SliceTime};
pub use svg::render_svg;
pub use tolerances::Tolerances;
pub use trace::{check_transversality, integrate_flow, Crossing, Dir, Trace, TraceEnd, Tracer, TransversalityReport};

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum FlowError {
    #[error("degenerate critical point at ({x:.6}, {y:.6}): eigenvalue {eigenvalue:e}")]
    DegenerateCritical { x: f64, y: f64, eigenvalue: f64 },
    #[error("integration exceeded {0} steps")]
    MaxStepsExceeded(usize),
    #[error("non-transversal: {0}")]
    NonTransversal(String),
    #[error("condition (C) not verified: {0}")]
    ConditionCNotVerified(String),
    #[error("bump {index} touches the critical set: {reason}")]
    BumpTouchesCriticalSet { index: usize, reason: String },
    #[error("level {level} is not a graph over the fiber circle: {reason}")]
    FiberNotGraph { level: f64, reason: String },
    #[error("invalid tolerance {name} = {value}")]
    InvalidTolerance { name: String, value: f64 },
    #[error("invalid map: {0}")]
    InvalidMap(String),
}

/// Signed distance on `R/Z`, in `[-1/2, 1/2)`.
pub fn wrap(d: f64) -> f64 {
    d - (d + 0.5).floor()
}

/// Representative in `[0, 1)`.
pub fn unit(y: f64) -> f64 {
    let r = y - y.floor();
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

pub fn circle_dist(a: f64, b: f64) -> f64 {
    wrap(a - b).abs()
}
