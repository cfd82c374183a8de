use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::condition::FiberHeight;
use super::map::{Bump, FourierMode, TorusMorseMap};
use super::{FlowError, Tolerances};

fn default_k_max() -> i64 {
    6
}

/// A flow experiment as read from JSON.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default)]
    pub name: String,
    pub winding: i64,
    #[serde(default)]
    pub fourier: Vec<FourierMode>,
    /// The cut level `c`: `W = F^{-1}[c, c+1]`.
    #[serde(default)]
    pub cut: f64,
    #[serde(default)]
    pub fiber: Option<FiberHeight>,
    #[serde(default)]
    pub delta: Option<f64>,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub bumps: Vec<Bump>,
    #[serde(default = "default_k_max")]
    pub k_max: i64,
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn map(&self) -> TorusMorseMap {
        TorusMorseMap { winding: self.winding, fourier: self.fourier.clone() }
    }

    pub fn validate(&self) -> Result<(), FlowError> {
        self.tolerances.validate()?;
        self.map().validate()?;
        if !self.cut.is_finite() {
            return Err(FlowError::InvalidMap(format!("cut {}", self.cut)));
        }
        if let Some(d) = self.delta {
            if !(d > 0.0 && d < 0.25) {
                return Err(FlowError::InvalidTolerance { name: "delta".into(), value: d });
            }
        }
        if !(0..=64).contains(&self.k_max) {
            return Err(FlowError::InvalidTolerance { name: "k_max".into(), value: self.k_max as f64 });
        }
        Ok(())
    }

    fn base(name: &str, fourier: Vec<FourierMode>, fiber: Option<(f64, f64)>, delta: Option<f64>) -> Self {
        Scenario {
            name: name.to_string(),
            winding: 1,
            fourier,
            cut: 0.0,
            fiber: fiber.map(|(max, min)| FiberHeight { max, min }),
            delta,
            tolerances: Tolerances::default(),
            bumps: Vec::new(),
            k_max: 6,
        }
    }

    /// `F = x + (1/2π) sin 2πx (1 + cos 2π(y - x))`: one minimum, two
    /// saddles, one maximum.
    pub fn torus_four_point() -> Self {
        let c = 1.0 / TAU;
        Self::base(
            "torus-four-point",
            vec![
                FourierMode { mx: 1, my: 0, ac: 0.0, as_: c },
                FourierMode { mx: 0, my: 1, ac: 0.0, as_: c / 2.0 },
                FourierMode { mx: 2, my: -1, ac: 0.0, as_: c / 2.0 },
            ],
            Some((0.31, 0.69)),
            Some(0.15),
        )
    }

    /// `F = x + 0.1 cos 2πy`, a fibration with fiber heights aligned to
    /// the descent.
    pub fn fibration() -> Self {
        Self::base("fibration", vec![FourierMode { mx: 0, my: 1, ac: 0.1, as_: 0.0 }], Some((0.0, 0.5)), Some(0.1))
    }

    /// The fibration with the fiber maximum and minimum swapped.
    pub fn fibration_swapped() -> Self {
        let mut s = Self::fibration();
        s.name = "fibration-swapped".into();
        s.fiber = Some(FiberHeight { max: 0.5, min: 0.0 });
        s.delta = Some(0.05);
        s
    }

    /// `F = x + a sin 2πx + b sin 2πx cos 2πy` with `2πa = 1.5`, `2πb = 0.3`:
    /// the reflection `y ↦ -y` forces a saddle connection along `y = 1/2`.
    pub fn symmetric_connection() -> Self {
        let (a, b) = (1.5 / TAU, 0.3 / TAU);
        Self::base(
            "symmetric-connection",
            vec![
                FourierMode { mx: 1, my: 0, ac: 0.0, as_: a },
                FourierMode { mx: 1, my: 1, ac: 0.0, as_: b / 2.0 },
                FourierMode { mx: 1, my: -1, ac: 0.0, as_: b / 2.0 },
            ],
            None,
            None,
        )
    }

    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "torus-four-point" => Some(Self::torus_four_point()),
            "fibration" => Some(Self::fibration()),
            "fibration-swapped" => Some(Self::fibration_swapped()),
            "symmetric-connection" => Some(Self::symmetric_connection()),
            _ => None,
        }
    }
}
