//! Exact rational brackets for `e^x` and exponential growth checks.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::series::LaurentSeries;

/// `lo ≤ e^x ≤ hi` from the Taylor polynomial with `terms` terms and a
/// geometric remainder bound.
pub fn exp_bracket(x: &BigRational, terms: usize) -> (BigRational, BigRational) {
    if x.is_zero() {
        return (BigRational::one(), BigRational::one());
    }
    if x.is_negative() {
        let (lo, hi) = exp_bracket(&-x, terms);
        return (hi.recip(), lo.recip());
    }
    let ceil = x.ceil().to_integer().to_usize().unwrap_or(usize::MAX / 4);
    let n = terms.max(ceil + 2);
    let mut term = BigRational::one();
    let mut sum = BigRational::zero();
    for j in 0..n {
        sum += &term;
        term = term * x / BigRational::from(BigInt::from(j + 1));
    }
    // term = x^n / n!, remaining tail ≤ term · (n+1) / (n+1-x)
    let np1 = BigRational::from(BigInt::from(n + 1));
    let tail = term * &np1 / (&np1 - x);
    let hi = &sum + tail;
    (sum, hi)
}

/// Dyadic bounds `lo ≤ 2^p e^x ≤ hi` for `x ≥ 0`, by halving `x` below
/// `1/2`, summing the Taylor series with directed rounding and squaring back.
pub fn exp_dyadic(x: &BigRational, p: u32) -> (BigInt, BigInt) {
    assert!(!x.is_negative());
    let r = x.ceil().to_integer().bits() as u32 + 1;
    let wp = p + 2 * r + 16;
    let one = BigInt::one() << wp;
    let scaled = x.numer() << (wp - r) as usize;
    let y_lo = scaled.div_floor(x.denom());
    let y_hi = scaled.div_ceil(x.denom());
    let (mut lo, mut hi) = (one.clone(), one.clone());
    let (mut t_lo, mut t_hi) = (one.clone(), one.clone());
    let mut j = 1u32;
    loop {
        t_lo = (&t_lo * &y_lo).div_floor(&(&one * j));
        t_hi = (&t_hi * &y_hi).div_ceil(&(&one * j));
        lo += &t_lo;
        hi += &t_hi;
        j += 1;
        if t_hi.is_zero() || (t_hi.bits() as u32) + 2 < wp - p - r {
            break;
        }
    }
    // y ≤ 1/2, so the tail is at most twice the last term
    hi += &t_hi * 2 + 1;
    for _ in 0..r {
        lo = (&lo * &lo) >> wp as usize;
        hi = ((&hi * &hi) >> wp as usize) + 1;
    }
    let shift = (wp - p) as usize;
    (lo >> shift, (hi >> shift) + 1)
}

/// Decides `v ≤ e^x` exactly, refining precision until the bounds separate.
pub fn le_exp(v: &BigRational, x: &BigRational) -> bool {
    if x.is_zero() {
        return *v <= BigRational::one();
    }
    if !v.is_positive() {
        return true;
    }
    let mut p = 64u32;
    loop {
        let (lo, hi) = exp_dyadic(&x.abs(), p);
        let unit = BigInt::one() << p as usize;
        let (vn, vd) = (v.numer(), v.denom());
        if x.is_positive() {
            // v ≤ lo / 2^p certifies, v > hi / 2^p refutes
            if vn * &unit <= &lo * vd {
                return true;
            }
            if vn * &unit > &hi * vd {
                return false;
            }
        } else {
            // e^x = 1 / e^{-x}: v·hi ≤ 2^p certifies, v·lo > 2^p refutes
            if vn * &hi <= &unit * vd {
                return true;
            }
            if vn * &lo > &unit * vd {
                return false;
            }
        }
        // e^x is irrational for rational x ≠ 0, so refinement terminates
        p *= 2;
    }
}

/// Dyadic rational `B` with `n ≤ e^B ≤ n + 1`, so `ln n ≤ B ≤ ln(n + 1)`.
pub fn log_between(n: &BigInt) -> BigRational {
    assert!(n.is_positive());
    let lo_target = BigRational::from(n.clone());
    let hi_target = &lo_target + BigRational::one();
    let two = BigRational::from(BigInt::from(2));
    let mut low = BigRational::zero();
    let mut high = BigRational::from(BigInt::from(n.bits() + 1));
    loop {
        let mid = (&low + &high) / &two;
        // equality is impossible for mid ≠ 0, so the negation is exact
        let below_hi = !le_exp(&hi_target, &mid);
        if !below_hi {
            high = mid;
        } else if le_exp(&lo_target, &mid) {
            return mid;
        } else {
            low = mid;
        }
    }
}

/// Whether every known coefficient satisfies `|n_k| ≤ C e^{kD}`.
pub fn coefficient_growth_check(s: &LaurentSeries, c: &BigRational, d: &BigRational) -> bool {
    assert!(c.is_positive() && d.is_positive(), "growth constants must be positive");
    s.coeffs().iter().enumerate().all(|(i, n)| {
        if n.is_zero() {
            return true;
        }
        let k = s.min_exp() + i as i64;
        let v = BigRational::from(n.abs()) / c;
        le_exp(&v, &(d * BigRational::from(BigInt::from(k))))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn bracket_contains_e() {
        let (lo, hi) = exp_bracket(&q(1, 1), 20);
        let e = std::f64::consts::E;
        assert!(lo.to_f64().unwrap() <= e && e <= hi.to_f64().unwrap());
        assert!(hi - lo < q(1, 1_000_000_000));
    }

    #[test]
    fn negative_argument() {
        let (lo, hi) = exp_bracket(&q(-3, 2), 30);
        let v = (-1.5f64).exp();
        assert!(lo.to_f64().unwrap() <= v && v <= hi.to_f64().unwrap());
    }

    #[test]
    fn dyadic_bounds_contain_exp() {
        for (n, d) in [(1i64, 1i64), (7, 10), (45, 1), (1, 3)] {
            let x = q(n, d);
            let (lo, hi) = exp_dyadic(&x, 80);
            let v = (n as f64 / d as f64).exp();
            let scale = 2f64.powi(80);
            assert!(lo.to_f64().unwrap() / scale <= v * (1.0 + 1e-12));
            assert!(hi.to_f64().unwrap() / scale >= v * (1.0 - 1e-12));
            assert!((&hi - &lo) << 60usize < lo, "relative width too large for {n}/{d}");
        }
    }

    #[test]
    fn decisions() {
        assert!(le_exp(&q(2, 1), &q(7, 10)));
        assert!(!le_exp(&q(2, 1), &q(69, 100)));
        assert!(!le_exp(&q(10, 1), &q(1, 10)));
    }

    #[test]
    fn growth_examples() {
        let s = LaurentSeries::from_i64(0, &[1, 2, 4, 8], 3);
        assert!(coefficient_growth_check(&s, &q(1, 1), &q(7, 10)));
        let s = LaurentSeries::from_i64(0, &[1, 1, 1], 2);
        assert!(coefficient_growth_check(&s, &q(1, 1), &q(1, 1000)));
        let s = LaurentSeries::from_i64(0, &[1, 10], 1);
        assert!(!coefficient_growth_check(&s, &q(1, 1), &q(1, 10)));
    }

    #[test]
    fn log_between_brackets() {
        for n in [1i64, 2, 3, 5, 17, 1000] {
            let b = log_between(&BigInt::from(n));
            let f = b.to_f64().unwrap();
            assert!(f >= (n as f64).ln() - 1e-12 && f <= ((n + 1) as f64).ln() + 1e-12, "n={n} b={f}");
        }
    }
}
