//! Dormand–Prince 5(4) for planar autonomous systems.

use super::FlowError;

const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] =
    [5179.0 / 57600.0, 0.0, 7571.0 / 16695.0, 393.0 / 640.0, -92097.0 / 339200.0, 187.0 / 2100.0, 1.0 / 40.0];

/// One accepted step `z0 → z1` over `[t0, t1]`, with end slopes.
#[derive(Clone, Copy, Debug)]
pub struct Step {
    pub t0: f64,
    pub z0: [f64; 2],
    pub f0: [f64; 2],
    pub t1: f64,
    pub z1: [f64; 2],
    pub f1: [f64; 2],
}

impl Step {
    /// Cubic Hermite interpolant at `θ ∈ [0, 1]`.
    pub fn hermite(&self, th: f64) -> [f64; 2] {
        let h = self.t1 - self.t0;
        let h00 = 2.0 * th.powi(3) - 3.0 * th * th + 1.0;
        let h10 = th.powi(3) - 2.0 * th * th + th;
        let h01 = -2.0 * th.powi(3) + 3.0 * th * th;
        let h11 = th.powi(3) - th * th;
        let mut z = [0.0; 2];
        for i in 0..2 {
            z[i] = h00 * self.z0[i] + h10 * h * self.f0[i] + h01 * self.z1[i] + h11 * h * self.f1[i];
        }
        z
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dp45 {
    pub tol: f64,
    pub h_max: f64,
    pub max_steps: usize,
}

impl Dp45 {
    /// One trial step: fifth-order value and error estimate.
    pub fn trial<F: Fn([f64; 2]) -> [f64; 2]>(f: &F, z: [f64; 2], fz: [f64; 2], h: f64) -> ([f64; 2], [f64; 2], [f64; 2]) {
        let mut k = [[0.0f64; 2]; 7];
        k[0] = fz;
        for s in 1..7 {
            let mut y = z;
            for (j, kj) in k.iter().enumerate().take(s) {
                let a = A[s][j];
                if a != 0.0 {
                    y[0] += h * a * kj[0];
                    y[1] += h * a * kj[1];
                }
            }
            k[s] = f(y);
        }
        let mut z5 = z;
        let mut err = [0.0; 2];
        for s in 0..7 {
            for i in 0..2 {
                z5[i] += h * B5[s] * k[s][i];
                err[i] += h * (B5[s] - B4[s]) * k[s][i];
            }
        }
        (z5, err, k[6])
    }

    fn error_ratio(&self, z: [f64; 2], z5: [f64; 2], err: [f64; 2]) -> f64 {
        let mut r: f64 = 0.0;
        for i in 0..2 {
            let sc = self.tol * (1.0 + z[i].abs().max(z5[i].abs()));
            r = r.max(err[i].abs() / sc);
        }
        r
    }

    /// Integrates from `z0` until `monitor` returns `false` or `t_end` is reached.
    /// Returns the final point, time and step count.
    pub fn run<F, M>(&self, f: &F, z0: [f64; 2], t_end: f64, mut monitor: M) -> Result<([f64; 2], f64, usize), FlowError>
    where
        F: Fn([f64; 2]) -> [f64; 2],
        M: FnMut(&Step) -> bool,
    {
        let mut z = z0;
        let mut t = 0.0;
        let mut fz = f(z);
        let speed = fz[0].hypot(fz[1]);
        let mut h = if speed > 0.0 { (1e-2 / speed).min(self.h_max) } else { self.h_max };
        let mut steps = 0usize;
        while t < t_end {
            if steps >= self.max_steps {
                return Err(FlowError::MaxStepsExceeded(self.max_steps));
            }
            h = h.min(t_end - t);
            let (z5, err, f5) = Self::trial(f, z, fz, h);
            let r = self.error_ratio(z, z5, err);
            steps += 1;
            if r <= 1.0 {
                let st = Step { t0: t, z0: z, f0: fz, t1: t + h, z1: z5, f1: f5 };
                t += h;
                z = z5;
                fz = f5;
                if !monitor(&st) {
                    return Ok((z, t, steps));
                }
            }
            let fac = if r == 0.0 { 5.0 } else { (0.9 * r.powf(-0.2)).clamp(0.2, 5.0) };
            h = (h * fac).min(self.h_max);
            if h < 1e-14 {
                return Err(FlowError::MaxStepsExceeded(steps));
            }
        }
        Ok((z, t, steps))
    }

    /// The flow from `z0` over a time `tau` no longer than an accepted step.
    pub fn advance<F: Fn([f64; 2]) -> [f64; 2]>(&self, f: &F, z0: [f64; 2], f0: [f64; 2], tau: f64) -> [f64; 2] {
        if tau == 0.0 {
            return z0;
        }
        Self::trial(f, z0, f0, tau).0
    }

    /// Root of `g` along the step, given opposite signs at its ends.
    /// Returns the offset from `t0` and the point.
    pub fn locate<F, G>(&self, f: &F, st: &Step, g: G, eps: f64) -> (f64, [f64; 2])
    where
        F: Fn([f64; 2]) -> [f64; 2],
        G: Fn([f64; 2]) -> f64,
    {
        let h = st.t1 - st.t0;
        let (mut a, mut b) = (0.0, h);
        let (mut ga, mut gb) = (g(st.z0), g(st.z1));
        let mut best = if ga.abs() < gb.abs() { (a, st.z0, ga) } else { (b, st.z1, gb) };
        let mut side = 0i8;
        for _ in 0..100 {
            if best.2.abs() <= eps || (b - a).abs() <= 1e-15 * (1.0 + h) {
                break;
            }
            let mut c = (a * gb - b * ga) / (gb - ga);
            if !(c > a && c < b) {
                c = 0.5 * (a + b);
            }
            let zc = self.advance(f, st.z0, st.f0, c);
            let gc = g(zc);
            if gc.abs() < best.2.abs() {
                best = (c, zc, gc);
            }
            if (gc > 0.0) == (ga > 0.0) {
                a = c;
                ga = gc;
                if side == -1 {
                    gb *= 0.5;
                }
                side = -1;
            } else {
                b = c;
                gb = gc;
                if side == 1 {
                    ga *= 0.5;
                }
                side = 1;
            }
        }
        (best.0, best.1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_decay_is_accurate() {
        let ode = Dp45 { tol: 1e-10, h_max: 0.1, max_steps: 100_000 };
        let f = |z: [f64; 2]| [-z[0], 2.0 * z[1]];
        let (z, t, _) = ode.run(&f, [1.0, 1e-3], 3.0, |_| true).unwrap();
        assert!((t - 3.0).abs() < 1e-14);
        assert!((z[0] - (-3.0f64).exp()).abs() < 1e-9);
        assert!((z[1] - 1e-3 * 6.0f64.exp()).abs() < 1e-9 * 400.0);
    }

    #[test]
    fn event_location() {
        let ode = Dp45 { tol: 1e-10, h_max: 0.5, max_steps: 100_000 };
        let f = |z: [f64; 2]| [-z[0], 0.0];
        let mut hit = None;
        ode.run(&f, [1.0, 0.0], 10.0, |st| {
            if st.z1[0] < 0.25 {
                hit = Some(ode.locate(&f, st, |z| z[0] - 0.25, 1e-13));
                false
            } else {
                true
            }
        })
        .unwrap();
        let (_, z) = hit.unwrap();
        assert!((z[0] - 0.25).abs() < 1e-12);
    }
}
