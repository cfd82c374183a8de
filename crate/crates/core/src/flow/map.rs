use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::{wrap, FlowError};

/// One term `ac·cos 2π(mx·x + my·y) + as·sin 2π(mx·x + my·y)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FourierMode {
    pub mx: i64,
    pub my: i64,
    #[serde(default)]
    pub ac: f64,
    #[serde(rename = "as", default)]
    pub as_: f64,
}

/// Lift `F(x, y) = winding·x + Σ fourier` of a map `T² → S¹`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TorusMorseMap {
    pub winding: i64,
    #[serde(default)]
    pub fourier: Vec<FourierMode>,
}

impl TorusMorseMap {
    pub fn new(winding: i64, fourier: Vec<FourierMode>) -> Result<Self, FlowError> {
        let m = TorusMorseMap { winding, fourier };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<(), FlowError> {
        for f in &self.fourier {
            if !(f.ac.is_finite() && f.as_.is_finite()) {
                return Err(FlowError::InvalidMap(format!("non-finite amplitude in mode ({}, {})", f.mx, f.my)));
            }
        }
        Ok(())
    }

    /// Sum of absolute amplitudes, a bound for `|F - winding·x|`.
    pub fn amplitude_bound(&self) -> f64 {
        self.fourier.iter().map(|f| f.ac.abs() + f.as_.abs()).sum()
    }

    pub fn value(&self, z: [f64; 2]) -> f64 {
        let mut s = self.winding as f64 * z[0];
        for f in &self.fourier {
            let th = TAU * (f.mx as f64 * z[0] + f.my as f64 * z[1]);
            s += f.ac * th.cos() + f.as_ * th.sin();
        }
        s
    }

    pub fn gradient(&self, z: [f64; 2]) -> [f64; 2] {
        let mut g = [self.winding as f64, 0.0];
        for f in &self.fourier {
            let th = TAU * (f.mx as f64 * z[0] + f.my as f64 * z[1]);
            let d = TAU * (-f.ac * th.sin() + f.as_ * th.cos());
            g[0] += f.mx as f64 * d;
            g[1] += f.my as f64 * d;
        }
        g
    }

    pub fn hessian(&self, z: [f64; 2]) -> [[f64; 2]; 2] {
        let mut h = [[0.0; 2]; 2];
        for f in &self.fourier {
            let th = TAU * (f.mx as f64 * z[0] + f.my as f64 * z[1]);
            let d2 = -TAU * TAU * (f.ac * th.cos() + f.as_ * th.sin());
            let (a, b) = (f.mx as f64, f.my as f64);
            h[0][0] += a * a * d2;
            h[0][1] += a * b * d2;
            h[1][1] += b * b * d2;
        }
        h[1][0] = h[0][1];
        h
    }

    /// The point of `F = level` above fiber coordinate `y`.
    pub fn fiber_point(&self, level: f64, y: f64) -> Result<[f64; 2], FlowError> {
        if self.winding <= 0 {
            return Err(FlowError::FiberNotGraph { level, reason: format!("winding {} is not positive", self.winding) });
        }
        let w = self.winding as f64;
        let a = self.amplitude_bound();
        let (mut lo, mut hi) = ((level - a) / w - 1.0, (level + a) / w + 1.0);
        let g = |x: f64| self.value([x, y]) - level;
        let mut x = 0.5 * (lo + hi);
        for _ in 0..200 {
            let gx = g(x);
            if gx == 0.0 {
                break;
            }
            if gx > 0.0 {
                hi = x;
            } else {
                lo = x;
            }
            let d = self.gradient([x, y])[0];
            let newton = x - gx / d;
            x = if d > 0.0 && newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
            if hi - lo < 1e-15 * (1.0 + x.abs()) || gx.abs() < 1e-15 {
                break;
            }
        }
        let fx = self.gradient([x, y])[0];
        if fx <= 0.0 {
            return Err(FlowError::FiberNotGraph { level, reason: format!("dF/dx = {fx:e} at y = {y}") });
        }
        Ok([x, y])
    }

    /// Checks that `F = level` is a graph `x = g(y)` with `∂F/∂x > 0`.
    pub fn check_fiber(&self, level: f64, samples: usize) -> Result<(), FlowError> {
        let mut prev: Option<f64> = None;
        let n = samples.max(8);
        for i in 0..=n {
            let y = i as f64 / n as f64;
            let p = self.fiber_point(level, y)?;
            if let Some(px) = prev {
                if (p[0] - px).abs() > 0.25 {
                    return Err(FlowError::FiberNotGraph { level, reason: format!("jump near y = {y}") });
                }
            }
            prev = Some(p[0]);
        }
        Ok(())
    }
}

/// Smooth bump `amp·exp(1 - 1/(1 - r²))·(cos angle, sin angle)` of the given radius.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bump {
    pub cx: f64,
    pub cy: f64,
    pub radius: f64,
    pub amp: f64,
    #[serde(default)]
    pub angle: f64,
}

impl Bump {
    pub fn weight(&self, z: [f64; 2]) -> f64 {
        let dx = wrap(z[0] - self.cx);
        let dy = wrap(z[1] - self.cy);
        let r2 = (dx * dx + dy * dy) / (self.radius * self.radius);
        if r2 >= 1.0 {
            0.0
        } else {
            self.amp * (1.0 - 1.0 / (1.0 - r2)).exp()
        }
    }

    pub fn direction(&self) -> [f64; 2] {
        [self.angle.cos(), self.angle.sin()]
    }
}

/// The vector field `v = ∇F + Σ bumps`, with `F` kept for levels.
#[derive(Clone, Debug, PartialEq)]
pub struct Field {
    pub map: TorusMorseMap,
    pub bumps: Vec<Bump>,
}

impl Field {
    pub fn gradient_of(map: &TorusMorseMap) -> Self {
        Field { map: map.clone(), bumps: Vec::new() }
    }

    pub fn velocity(&self, z: [f64; 2]) -> [f64; 2] {
        let mut v = self.map.gradient(z);
        for b in &self.bumps {
            let w = b.weight(z);
            if w != 0.0 {
                let d = b.direction();
                v[0] += w * d[0];
                v[1] += w * d[1];
            }
        }
        v
    }

    pub fn value(&self, z: [f64; 2]) -> f64 {
        self.map.value(z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sheared() -> TorusMorseMap {
        let c = 1.0 / TAU;
        TorusMorseMap::new(
            1,
            vec![
                FourierMode { mx: 1, my: 0, ac: 0.0, as_: c },
                FourierMode { mx: 0, my: 1, ac: 0.0, as_: c / 2.0 },
                FourierMode { mx: 2, my: -1, ac: 0.0, as_: c / 2.0 },
            ],
        )
        .unwrap()
    }

    #[test]
    fn periodicity() {
        let m = sheared();
        for &(x, y) in &[(0.1, 0.2), (0.7, 0.35), (-1.3, 2.9)] {
            assert!((m.value([x + 1.0, y]) - m.value([x, y]) - 1.0).abs() < 1e-12);
            assert!((m.value([x, y + 1.0]) - m.value([x, y])).abs() < 1e-12);
        }
    }

    #[test]
    fn derivatives_match_differences() {
        let m = sheared();
        let z = [0.37, 0.81];
        let h = 1e-6;
        let g = m.gradient(z);
        let gx = (m.value([z[0] + h, z[1]]) - m.value([z[0] - h, z[1]])) / (2.0 * h);
        let gy = (m.value([z[0], z[1] + h]) - m.value([z[0], z[1] - h])) / (2.0 * h);
        assert!((g[0] - gx).abs() < 1e-7 && (g[1] - gy).abs() < 1e-7);
        let hs = m.hessian(z);
        let hxy = (m.gradient([z[0], z[1] + h])[0] - m.gradient([z[0], z[1] - h])[0]) / (2.0 * h);
        assert!((hs[0][1] - hxy).abs() < 1e-6);
    }

    #[test]
    fn fiber_of_sheared_map_is_x_zero() {
        let m = sheared();
        for i in 0..10 {
            let y = i as f64 / 10.0;
            let p = m.fiber_point(0.0, y).unwrap();
            assert!(p[0].abs() < 1e-13);
        }
        m.check_fiber(0.0, 256).unwrap();
    }

    #[test]
    fn bump_vanishes_outside_support() {
        let b = Bump { cx: 0.9, cy: 0.05, radius: 0.1, amp: 1e-3, angle: 0.0 };
        assert_eq!(b.weight([0.5, 0.5]), 0.0);
        assert!((b.weight([-0.1, 1.05]) - 1e-3).abs() < 1e-15);
    }
}
