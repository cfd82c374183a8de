//! Truncated Laurent series in `Z((t))`.
//!
//! A value stands for every series agreeing with it up to `t^trunc`; the
//! coefficients past `trunc` are unknown rather than zero.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::poly::{write_terms, Poly};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentSeries {
    /// Exponent of `coeffs[0]`. Equal to `trunc` for the canonical zero.
    min_exp: i64,
    coeffs: Vec<BigInt>,
    /// Highest exponent whose coefficient is known.
    trunc: i64,
}

impl LaurentSeries {
    /// Builds `Σ coeffs[i] t^{min_exp+i}` known up to `t^trunc`; entries past
    /// `trunc` are dropped.
    pub fn new(min_exp: i64, mut coeffs: Vec<BigInt>, trunc: i64) -> Self {
        let keep = (trunc - min_exp + 1).clamp(0, coeffs.len() as i64) as usize;
        coeffs.truncate(keep);
        Self::canonical(min_exp, coeffs, trunc)
    }

    pub fn from_i64(min_exp: i64, coeffs: &[i64], trunc: i64) -> Self {
        Self::new(min_exp, coeffs.iter().map(|&c| BigInt::from(c)).collect(), trunc)
    }

    pub fn zero(trunc: i64) -> Self {
        LaurentSeries { min_exp: trunc, coeffs: Vec::new(), trunc }
    }

    pub fn one(trunc: i64) -> Self {
        Self::monomial(BigInt::from(1), 0, trunc)
    }

    pub fn monomial(c: BigInt, exp: i64, trunc: i64) -> Self {
        Self::new(exp, vec![c], trunc)
    }

    pub fn from_poly(p: &Poly, trunc: i64) -> Self {
        Self::new(0, p.coeffs().to_vec(), trunc)
    }

    fn canonical(mut min_exp: i64, mut coeffs: Vec<BigInt>, trunc: i64) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead = coeffs.iter().position(|c| !c.is_zero()).unwrap_or(coeffs.len());
        if lead == coeffs.len() {
            return Self::zero(trunc);
        }
        coeffs.drain(..lead);
        min_exp += lead as i64;
        LaurentSeries { min_exp, coeffs, trunc }
    }

    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    /// Stored coefficients starting at `min_exp`; trailing known zeros omitted.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Exponent of the first nonzero coefficient, or `trunc + 1` when all
    /// known coefficients vanish.
    pub fn valuation(&self) -> i64 {
        if self.is_zero() {
            self.trunc + 1
        } else {
            self.min_exp
        }
    }

    /// Coefficient of `t^k`; `None` past the truncation order.
    pub fn coeff(&self, k: i64) -> Option<BigInt> {
        if k > self.trunc {
            return None;
        }
        let i = k - self.min_exp;
        if i < 0 || self.is_zero() {
            return Some(BigInt::zero());
        }
        Some(self.coeffs.get(i as usize).cloned().unwrap_or_default())
    }

    /// Known coefficients from `t^from` to `t^trunc`.
    pub fn known_from(&self, from: i64) -> Vec<BigInt> {
        (from..=self.trunc).map(|k| self.coeff(k).unwrap()).collect()
    }

    /// Forget every coefficient past `t^order`.
    pub fn truncate(&self, order: i64) -> Self {
        if order >= self.trunc {
            return self.clone();
        }
        Self::new(self.min_exp, self.coeffs.clone(), order)
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentSeries { min_exp: self.min_exp + k, coeffs: self.coeffs.clone(), trunc: self.trunc + k }
    }

    pub fn neg(&self) -> Self {
        LaurentSeries {
            min_exp: self.min_exp,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            trunc: self.trunc,
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::canonical(self.min_exp, self.coeffs.iter().map(|a| a * c).collect(), self.trunc)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        let trunc = self.trunc.min(other.trunc);
        let lo = self.valuation().min(other.valuation());
        if lo > trunc {
            return Self::zero(trunc);
        }
        let coeffs = (lo..=trunc)
            .map(|k| {
                let a = self.coeff(k).unwrap();
                let b = other.coeff(k).unwrap();
                if negate {
                    a - b
                } else {
                    a + b
                }
            })
            .collect();
        Self::canonical(lo, coeffs, trunc)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (va, vb) = (self.valuation(), other.valuation());
        let trunc = (self.trunc + vb).min(other.trunc + va);
        if self.is_zero() || other.is_zero() {
            return Self::zero(trunc);
        }
        let lo = va + vb;
        if lo > trunc {
            return Self::zero(trunc);
        }
        let len = (trunc - lo + 1) as usize;
        let mut out = vec![BigInt::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len {
                break;
            }
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                out[i + j] += a * b;
            }
        }
        Self::canonical(lo, out, trunc)
    }

    /// Two truncated series agree on their common known range.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.is_zero() {
            let base = self.min_exp;
            write_terms(f, self.coeffs.iter().enumerate().map(|(i, c)| (base + i as i64, c)), "t")?;
            write!(f, " + ")?;
        }
        write!(f, "O(t^{})", self.trunc + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(min: i64, c: &[i64], t: i64) -> LaurentSeries {
        LaurentSeries::from_i64(min, c, t)
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(s(0, &[1, 1], 5).add(&s(0, &[-1, 0, 1], 5)), s(1, &[1, 1], 5));
        assert_eq!(s(0, &[1, 1], 5).mul(&s(0, &[1, -1], 5)), s(0, &[1, 0, -1], 5));
        assert_eq!(s(-1, &[1, 1], 5).mul(&s(1, &[1], 5)), s(0, &[1, 1], 4));
    }

    #[test]
    fn canonical_zero() {
        let z = s(0, &[1], 3).sub(&s(0, &[1], 3));
        assert!(z.is_zero());
        assert_eq!(z, LaurentSeries::zero(3));
        assert_eq!(z.valuation(), 4);
    }

    #[test]
    fn unknown_past_trunc() {
        let a = s(0, &[1, 2, 3], 1);
        assert_eq!(a.coeffs().len(), 2);
        assert_eq!(a.coeff(2), None);
        assert_eq!(a.coeff(-4), Some(BigInt::zero()));
    }

    #[test]
    fn mul_trunc_tracks_valuation() {
        let a = s(2, &[1], 10);
        let b = s(0, &[1, 1], 4);
        assert_eq!(a.mul(&b).trunc(), 6);
    }

    #[test]
    fn display() {
        assert_eq!(s(-1, &[1, 0, -3], 4).to_string(), "t^-1 - 3t + O(t^5)");
        assert_eq!(LaurentSeries::zero(2).to_string(), "O(t^3)");
    }
}
