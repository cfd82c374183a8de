//! Dense integer polynomials in one variable `t`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Polynomial with coefficients `coeffs[i]` of `t^i`; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c t^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![BigInt::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    /// Largest `k` with `t^k | self`; `None` for zero.
    pub fn t_adic_valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Divide by `t^k`; the low `k` coefficients must vanish.
    pub fn unshift(&self, k: usize) -> Poly {
        debug_assert!(self.coeffs.iter().take(k).all(|c| c.is_zero()));
        Poly::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Exact division by an integer dividing every coefficient.
    pub fn div_exact(&self, d: &BigInt) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .map(|c| {
                    debug_assert!((c % d).is_zero());
                    c / d
                })
                .collect(),
        )
    }

    /// Exact division `self / d` in `Z[t]`; `None` if `d` does not divide.
    pub fn div_poly_exact(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = div_rem_q(&to_q(self), &to_q(d));
        if !r.is_empty() {
            return None;
        }
        from_q_integral(&q)
    }

    /// Monic-free gcd over `Q[t]`, returned primitive with positive leading coefficient.
    pub fn gcd_q(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.primitive();
        }
        if other.is_zero() {
            return self.primitive();
        }
        let mut a = to_q(self);
        let mut b = to_q(other);
        while !b.is_empty() {
            let (_, r) = div_rem_q(&a, &b);
            a = b;
            b = r;
        }
        let den = a.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints: Vec<BigInt> = a.iter().map(|c| (c * BigRational::from(den.clone())).to_integer()).collect();
        Poly::new(ints).primitive()
    }

    /// Divide out the content and make the leading coefficient positive.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = self.content();
        if self.coeffs.last().is_some_and(|l| l.is_negative()) {
            c = -c;
        }
        self.div_exact(&c)
    }

    pub fn to_q(&self) -> Vec<BigRational> {
        to_q(self)
    }
}

fn to_q(p: &Poly) -> Vec<BigRational> {
    p.coeffs.iter().map(|c| BigRational::from(c.clone())).collect()
}

fn trim_q(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

pub(crate) fn from_q_integral(v: &[BigRational]) -> Option<Poly> {
    if v.iter().any(|c| !c.is_integer()) {
        return None;
    }
    Some(Poly::new(v.iter().map(|c| c.to_integer()).collect()))
}

/// Long division over `Q[t]`; inputs trimmed, divisor nonzero.
pub(crate) fn div_rem_q(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r = a.to_vec();
    trim_q(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lb = b.last().unwrap().clone();
    let mut q = vec![BigRational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let f = r.last().unwrap() / &lb;
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &f * bc;
        }
        q[shift] = f;
        r.pop();
        trim_q(&mut r);
    }
    trim_q(&mut q);
    (q, r)
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.coeffs.iter().enumerate().map(|(i, c)| (i as i64, c)), "t")
    }
}

/// Shared pretty printer: `1 - 2t + t^3`.
pub(crate) fn write_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (i64, &'a BigInt)>,
    var: &str,
) -> fmt::Result {
    let mut first = true;
    for (e, c) in terms {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { "-" } else { "+" })?;
        }
        first = false;
        let unit = a.is_one();
        match e {
            0 => write!(f, "{a}")?,
            1 if unit => write!(f, "{var}")?,
            1 => write!(f, "{a}{var}")?,
            _ if unit => write!(f, "{var}^{e}")?,
            _ => write!(f, "{a}{var}^{e}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64(c)
    }

    #[test]
    fn trims_and_degree() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert_eq!(p(&[0, 0]).degree(), None);
    }

    #[test]
    fn product_and_exact_division() {
        let a = p(&[1, -1]);
        let b = p(&[1, 1, 1]);
        let c = a.mul(&b);
        assert_eq!(c, p(&[1, 0, 0, -1]));
        assert_eq!(c.div_poly_exact(&a), Some(b));
        assert_eq!(p(&[1, 0, 1]).div_poly_exact(&p(&[1, 1])), None);
    }

    #[test]
    fn gcd_over_q() {
        let g = p(&[1, -1]);
        let a = g.mul(&p(&[2, 3]));
        let b = g.mul(&p(&[1, 0, 5]));
        assert_eq!(a.gcd_q(&b), p(&[-1, 1]));
        assert_eq!(p(&[2, 4]).gcd_q(&p(&[3])), p(&[1]));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, -2, 0, 1]).to_string(), "1 - 2t + t^3");
        assert_eq!(Poly::zero().to_string(), "0");
    }
}
