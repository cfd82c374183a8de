//! Rational functions `t^{-m} P(t) / Q(t)` with `Q(0) = 1`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::Poly;
use super::series::LaurentSeries;
use super::LaurentError;

/// Element of the subring of `Z((t))` of fractions with denominator `1 + tR(t)`.
///
/// Kept reduced: `gcd(P, Q) = 1` over `Q[t]`, `Q(0) = 1`, and `t` divides `P`
/// only when `m = 0`. Zero is `0 / 1` with `m = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFn {
    shift_m: u32,
    num: Poly,
    den: Poly,
}

impl RationalFn {
    pub fn new(shift_m: u32, num: Poly, den: Poly) -> Result<Self, LaurentError> {
        let c0 = den.constant_term();
        let (num, den) = if c0.is_one() {
            (num, den)
        } else if c0 == -BigInt::one() {
            (num.neg(), den.neg())
        } else {
            return Err(LaurentError::DenominatorNotUnit(den.to_string()));
        };
        Ok(Self::normalize(shift_m, num, den))
    }

    pub fn from_i64(shift_m: u32, num: &[i64], den: &[i64]) -> Result<Self, LaurentError> {
        Self::new(shift_m, Poly::from_i64(num), Poly::from_i64(den))
    }

    pub fn polynomial(p: Poly) -> Self {
        Self::normalize(0, p, Poly::one())
    }

    pub fn zero() -> Self {
        RationalFn { shift_m: 0, num: Poly::zero(), den: Poly::one() }
    }

    /// Callers guarantee `den(0) = 1`.
    pub(crate) fn normalize(mut shift_m: u32, mut num: Poly, mut den: Poly) -> Self {
        debug_assert!(den.constant_term().is_one());
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd_q(&den);
        if g.degree().unwrap_or(0) > 0 {
            // g(0) = ±1 since g | den and den(0) = 1 (Gauss).
            let g = if g.constant_term().is_one() { g } else { g.neg() };
            num = num.div_poly_exact(&g).expect("gcd divides numerator");
            den = den.div_poly_exact(&g).expect("gcd divides denominator");
        }
        let v = num.t_adic_valuation().unwrap_or(0).min(shift_m as usize);
        if v > 0 {
            num = num.unshift(v);
            shift_m -= v as u32;
        }
        RationalFn { shift_m, num, den }
    }

    pub fn shift_m(&self) -> u32 {
        self.shift_m
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        let m = self.shift_m.max(other.shift_m);
        let a = self.num.shift((m - self.shift_m) as usize).mul(&other.den);
        let b = other.num.shift((m - other.shift_m) as usize).mul(&self.den);
        Self::normalize(m, a.add(&b), self.den.mul(&other.den))
    }

    pub fn neg(&self) -> Self {
        RationalFn { shift_m: self.shift_m, num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::normalize(
            self.shift_m + other.shift_m,
            self.num.mul(&other.num),
            self.den.mul(&other.den),
        )
    }

    /// Coefficients of the expansion up to `t^order`.
    pub fn expand(&self, order: i64) -> LaurentSeries {
        expand_fraction(self.shift_m, &self.num, &self.den, order)
    }
}

/// Power-series long division of `t^{-m} P / Q`, `Q(0) = 1`, up to `t^order`.
pub fn expand_fraction(shift_m: u32, num: &Poly, den: &Poly, order: i64) -> LaurentSeries {
    debug_assert!(den.constant_term().is_one());
    let lo = -(shift_m as i64);
    if order < lo {
        return LaurentSeries::zero(order);
    }
    let len = (order - lo + 1) as usize;
    let q = den.coeffs();
    let mut s: Vec<BigInt> = Vec::with_capacity(len);
    for n in 0..len {
        let mut v = num.coeff(n);
        for i in 1..q.len().min(n + 1) {
            if !q[i].is_zero() {
                v -= &q[i] * &s[n - i];
            }
        }
        s.push(v);
    }
    LaurentSeries::new(lo, s, order)
}

/// `t^{-m} P / Q` expanded through `t^order`.
pub fn expand_rational(r: &RationalFn, order: i64) -> LaurentSeries {
    r.expand(order)
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.shift_m > 0 {
            write!(f, "t^-{} ", self.shift_m)?;
        }
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

impl Default for RationalFn {
    fn default() -> Self {
        Self::zero()
    }
}
