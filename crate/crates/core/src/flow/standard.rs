//! Passage times for the standard gradient `v = (-x, y)` of `Q = (y² - x²)/2`,
//! whose trajectories are `(x₀e^{-t}, y₀e^{t})`.

use serde::Serialize;

use super::ode::{Dp45, Step};

/// `ln((R/r)² + √((R/r)⁴ - 1))`.
pub fn annulus_bound(big_r: f64, r: f64) -> f64 {
    let q = (big_r / r).powi(2);
    (q + (q * q - 1.0).sqrt()).ln()
}

fn rhs(z: [f64; 2]) -> [f64; 2] {
    [-z[0], z[1]]
}

fn ode(tol: f64) -> Dp45 {
    Dp45 { tol, h_max: 0.05, max_steps: 1_000_000 }
}

/// Time and length inside `B(0,R) \ B(0,r)`, measured by integration.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnnulusTimes {
    pub time: f64,
    pub length: f64,
    pub closed_form: f64,
    pub bound: f64,
    pub within_bound: bool,
}

/// Closed-form annulus time for a start with invariant `α² = |x₀y₀|`.
fn annulus_closed_form(big_r: f64, r: f64, start: [f64; 2]) -> f64 {
    let a2 = (start[0] * start[1]).abs();
    if a2 == 0.0 {
        return (big_r / r).ln();
    }
    let outer = (big_r * big_r / (2.0 * a2)).acosh();
    let inner = if r * r >= 2.0 * a2 { (r * r / (2.0 * a2)).acosh() } else { 0.0 };
    outer - inner
}

/// Integrates from `start` on `|z| = R` (entering, `|x₀| > |y₀|`) until the
/// trajectory leaves `B(0,R)` or `t_max` passes.
pub fn standard_gradient_times(big_r: f64, r: f64, start: [f64; 2], tol: f64) -> AnnulusTimes {
    let t_max = 80.0;
    let ode = ode(tol);
    let norm = |z: [f64; 2]| z[0].hypot(z[1]);
    let mut time = 0.0;
    let mut length = 0.0;
    let seg = |st: &Step, a: f64, b: f64| -> f64 {
        let m = 16;
        let h = st.t1 - st.t0;
        let mut s = 0.0;
        let mut prev = st.hermite(a / h);
        for i in 1..=m {
            let z = st.hermite((a + (b - a) * i as f64 / m as f64) / h);
            s += (z[0] - prev[0]).hypot(z[1] - prev[1]);
            prev = z;
        }
        s
    };
    let _ = ode.run(&rhs, start, t_max, |st: &Step| {
        let h = st.t1 - st.t0;
        let mut cuts = vec![0.0];
        for rad in [r, big_r] {
            let (g0, g1) = (norm(st.z0) - rad, norm(st.z1) - rad);
            if g0 != 0.0 && g0.signum() != g1.signum() {
                cuts.push(ode.locate(&rhs, st, |z| norm(z) - rad, 1e-15).0);
            }
        }
        cuts.push(h);
        cuts.sort_by(f64::total_cmp);
        let mut leaving = false;
        for w in cuts.windows(2) {
            let mid = st.hermite(0.5 * (w[0] + w[1]) / h);
            let d = norm(mid);
            if d >= r && d <= big_r {
                time += w[1] - w[0];
                length += seg(st, w[0], w[1]);
            } else if d > big_r {
                leaving = true;
            }
        }
        !(leaving && norm(st.z1) > big_r)
    });
    let bound = annulus_bound(big_r, r);
    AnnulusTimes { time, length, closed_form: annulus_closed_form(big_r, r, start), bound, within_bound: time <= bound + 1e-6 }
}

/// Time in the slab `|y² - x²| ≤ r²` outside `B(0, r)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SliceTime {
    pub time: f64,
    pub closed_form: f64,
    pub bound: f64,
    pub within_bound: bool,
}

/// From `start` with `y₀² - x₀² = -r²`, integrates until `y² - x² = r²`,
/// counting only time outside `B(0, r)`.
pub fn quadratic_slice_time(r: f64, start: [f64; 2], tol: f64) -> SliceTime {
    let ode = ode(tol);
    let q = |z: [f64; 2]| z[1] * z[1] - z[0] * z[0];
    let norm = |z: [f64; 2]| z[0].hypot(z[1]);
    let mut time = 0.0;
    let _ = ode.run(&rhs, start, 80.0, |st: &Step| {
        let h = st.t1 - st.t0;
        let mut cuts = vec![0.0];
        let mut end = h;
        let mut done = false;
        if q(st.z1) >= r * r {
            end = ode.locate(&rhs, st, |z| q(z) - r * r, 1e-15).0;
            done = true;
        }
        let (g0, g1) = (norm(st.z0) - r, norm(st.z1) - r);
        if g0 != 0.0 && g0.signum() != g1.signum() {
            let c = ode.locate(&rhs, st, |z| norm(z) - r, 1e-15).0;
            if c < end {
                cuts.push(c);
            }
        }
        cuts.push(end);
        for w in cuts.windows(2) {
            if norm(st.hermite(0.5 * (w[0] + w[1]) / h)) >= r {
                time += w[1] - w[0];
            }
        }
        !done
    });
    let (x0, y0) = (start[0], start[1]);
    let slab = 0.5 * ((r * r + (r.powi(4) + 4.0 * x0 * x0 * y0 * y0).sqrt()) / (2.0 * y0 * y0)).ln();
    let a2 = (x0 * y0).abs();
    let ball = if r * r >= 2.0 * a2 { (r * r / (2.0 * a2)).acosh() } else { 0.0 };
    SliceTime { time, closed_form: slab - ball, bound: 2.0, within_bound: time <= 2.0 + 1e-6 }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_for_ratio_two() {
        assert!((annulus_bound(2.0, 1.0) - (4.0 + 15f64.sqrt()).ln()).abs() < 1e-15);
        assert!((annulus_bound(2.0, 1.0) - 2.0634370688955608).abs() < 1e-12);
    }

    #[test]
    fn axis_start() {
        let a = standard_gradient_times(2.0, 1.0, [2.0, 0.0], 1e-10);
        assert!((a.time - 2f64.ln()).abs() < 1e-7, "{a:?}");
        assert!((a.length - 1.0).abs() < 1e-6);
    }

    #[test]
    fn worst_start_reaches_bound() {
        let r: f64 = 1.0;
        let a2 = r * r / 2.0;
        let x0 = ((4.0 + (16.0 - 4.0 * a2 * a2).sqrt()) / 2.0).sqrt();
        let start = [x0, a2 / x0];
        let a = standard_gradient_times(2.0, r, start, 1e-10);
        assert!((a.time - a.bound).abs() < 1e-6, "{a:?}");
    }
}
