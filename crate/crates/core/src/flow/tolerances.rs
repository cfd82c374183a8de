use serde::{Deserialize, Serialize};

use super::FlowError;

/// Every numerical threshold of the flow laboratory.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub newton: f64,
    pub dedupe: f64,
    pub eigen_floor: f64,
    pub ode: f64,
    pub event: f64,
    pub capture_radius: f64,
    pub linear_radius: f64,
    pub coincidence: f64,
    pub transversality: f64,
    pub shoot_eps: f64,
    pub seed_grid: usize,
    pub fiber_samples: usize,
    pub max_steps: usize,
    pub max_step: f64,
    pub bump_clearance: f64,
    pub bump_sup: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            newton: 1e-10,
            dedupe: 1e-8,
            eigen_floor: 1e-6,
            ode: 1e-10,
            event: 1e-10,
            capture_radius: 1e-4,
            linear_radius: 1e-3,
            coincidence: 1e-6,
            transversality: 1e-5,
            shoot_eps: 1e-6,
            seed_grid: 64,
            fiber_samples: 2048,
            max_steps: 200_000,
            max_step: 0.1,
            bump_clearance: 0.05,
            bump_sup: 1e-3,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<(), FlowError> {
        let reals = [
            ("newton", self.newton),
            ("dedupe", self.dedupe),
            ("eigen_floor", self.eigen_floor),
            ("ode", self.ode),
            ("event", self.event),
            ("capture_radius", self.capture_radius),
            ("linear_radius", self.linear_radius),
            ("coincidence", self.coincidence),
            ("transversality", self.transversality),
            ("shoot_eps", self.shoot_eps),
            ("max_step", self.max_step),
            ("bump_clearance", self.bump_clearance),
            ("bump_sup", self.bump_sup),
        ];
        for (name, value) in reals {
            if !(value.is_finite() && value > 0.0) {
                return Err(FlowError::InvalidTolerance { name: name.to_string(), value });
            }
        }
        let ints = [
            ("seed_grid", self.seed_grid),
            ("fiber_samples", self.fiber_samples),
            ("max_steps", self.max_steps),
        ];
        for (name, value) in ints {
            if value == 0 {
                return Err(FlowError::InvalidTolerance { name: name.to_string(), value: 0.0 });
            }
        }
        if self.shoot_eps >= self.capture_radius {
            return Err(FlowError::InvalidTolerance { name: "shoot_eps".into(), value: self.shoot_eps });
        }
        Ok(())
    }

    /// Integrator tolerance halved, sampling doubled.
    pub fn refined(&self) -> Self {
        Tolerances { ode: self.ode / 2.0, event: self.event / 2.0, fiber_samples: self.fiber_samples * 2, ..self.clone() }
    }
}
