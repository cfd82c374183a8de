//! Recovering a rational function from a truncated series.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{from_q_integral, Poly};
use super::rational::RationalFn;
use super::series::LaurentSeries;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Failure {
    #[error("insufficient data: {known} known coefficients cannot certify a recurrence of order {order}")]
    InsufficientData { known: usize, order: usize },
    #[error("recurrence denominator is not integral")]
    NotIntegral,
}

/// Minimal connection polynomial `C` (with `C(0) = 1`) and its length `L`, so
/// that `Σ C_i s_{n-i} = 0` for `L ≤ n < len(s)`.
pub fn berlekamp_massey(s: &[BigRational]) -> (Vec<BigRational>, usize) {
    let one = BigRational::one();
    let mut c = vec![one.clone()];
    let mut b = vec![one.clone()];
    let mut l = 0usize;
    let mut m = 1usize;
    let mut bd = one;
    for n in 0..s.len() {
        let mut d = s[n].clone();
        for i in 1..=l.min(c.len() - 1) {
            d += &c[i] * &s[n - i];
        }
        if d.is_zero() {
            m += 1;
            continue;
        }
        let coef = &d / &bd;
        let prev = c.clone();
        if c.len() < b.len() + m {
            c.resize(b.len() + m, BigRational::zero());
        }
        for (i, bi) in b.iter().enumerate() {
            c[i + m] -= &coef * bi;
        }
        if 2 * l <= n {
            l = n + 1 - l;
            b = prev;
            bd = d;
            m = 1;
        } else {
            m += 1;
        }
    }
    while c.len() > 1 && c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    (c, l)
}

/// Fits `t^{-m} P / Q` to the known coefficients of `s`, accepting only fits
/// of recurrence order `d` with `2d + 1` not exceeding the data length and
/// whose re-expansion reproduces every known coefficient.
pub fn reconstruct_rational(s: &LaurentSeries) -> Result<RationalFn, Failure> {
    let start = if s.is_zero() { 0.min(s.trunc()) } else { s.min_exp() };
    let data = s.known_from(start);
    let known = data.len();
    if known < 3 {
        return Err(Failure::InsufficientData { known, order: 0 });
    }
    let q_data: Vec<BigRational> = data.iter().map(|c| BigRational::from(c.clone())).collect();
    let (conn, order) = berlekamp_massey(&q_data);
    if 2 * order + 1 > known {
        return Err(Failure::InsufficientData { known, order });
    }
    let den = from_q_integral(&conn).ok_or(Failure::NotIntegral)?;
    let mut num_c = vec![BigInt::zero(); order];
    for (n, slot) in num_c.iter_mut().enumerate() {
        for (i, ci) in den.coeffs().iter().enumerate().take(n + 1) {
            *slot += ci * &data[n - i];
        }
    }
    let num = Poly::new(num_c);
    let (shift_m, num) = if start < 0 {
        ((-start) as u32, num)
    } else {
        (0, num.shift(start as usize))
    };
    let r = RationalFn::new(shift_m, num, den).map_err(|_| Failure::NotIntegral)?;
    if !r.expand(s.trunc()).agrees_with(s) {
        return Err(Failure::InsufficientData { known, order });
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(c: &[i64]) -> LaurentSeries {
        LaurentSeries::from_i64(0, c, c.len() as i64 - 1)
    }

    #[test]
    fn fibonacci() {
        let r = reconstruct_rational(&s(&[1, 1, 2, 3, 5, 8, 13])).unwrap();
        assert_eq!(r, RationalFn::from_i64(0, &[1], &[1, -1, -1]).unwrap());
    }

    #[test]
    fn constant_and_geometric() {
        let r = reconstruct_rational(&s(&[7, 0, 0, 0, 0])).unwrap();
        assert_eq!(r, RationalFn::from_i64(0, &[7], &[1]).unwrap());
        let r = reconstruct_rational(&s(&[1, 3, 9, 27, 81])).unwrap();
        assert_eq!(r, RationalFn::from_i64(0, &[1], &[1, -3]).unwrap());
    }

    #[test]
    fn refuses_short_data() {
        assert!(matches!(reconstruct_rational(&s(&[1, 2])), Err(Failure::InsufficientData { .. })));
        // 1, 1, 2, 3 needs order 2 which 4 coefficients cannot certify
        assert!(reconstruct_rational(&s(&[1, 1, 2, 3])).is_err());
    }

    #[test]
    fn negative_and_positive_offsets() {
        let r = RationalFn::from_i64(2, &[1, 1], &[1, -2]).unwrap();
        assert_eq!(reconstruct_rational(&r.expand(10)).unwrap(), r);
        let r = RationalFn::from_i64(0, &[0, 0, 0, 5], &[1, 1]).unwrap();
        assert_eq!(reconstruct_rational(&r.expand(12)).unwrap(), r);
    }

    #[test]
    fn zero_series() {
        assert_eq!(reconstruct_rational(&LaurentSeries::zero(6)).unwrap(), RationalFn::zero());
    }
}
