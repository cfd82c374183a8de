//! Truncated elements `Σ_k a_k θ^k` of the Novikov completion.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::algebra::GroupAlgebraElt;
use super::group::{GroupElt, TwistedGroup};
use super::TwistedError;
use crate::laurent::{le_exp, LaurentSeries};

/// `Σ_{k=start}^{trunc} a_k θ^k` with `a_k ∈ ZH`; powers past `trunc`
/// (levels below `-trunc`) are unknown.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NovikovElt {
    group: Arc<TwistedGroup>,
    /// Power of `θ` carried by `levels[0]`; equals `trunc` for zero.
    start: i64,
    levels: Vec<GroupAlgebraElt>,
    trunc: i64,
}

/// A finite element `Σ a_k θ^k` of `ZG`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZgElement {
    pub start: i64,
    pub levels: Vec<GroupAlgebraElt>,
}

impl ZgElement {
    pub fn l1_norm(&self) -> BigInt {
        self.levels.iter().map(|a| a.l1_norm()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.levels.iter().all(|a| a.is_zero())
    }
}

impl NovikovElt {
    pub fn new(group: Arc<TwistedGroup>, start: i64, mut levels: Vec<GroupAlgebraElt>, trunc: i64) -> Self {
        let m = group.m();
        assert!(levels.iter().all(|a| a.m() == m), "level in a different group ring");
        let keep = (trunc - start + 1).clamp(0, levels.len() as i64) as usize;
        levels.truncate(keep);
        Self::canonical(group, start, levels, trunc)
    }

    pub fn zero(group: Arc<TwistedGroup>, trunc: i64) -> Self {
        NovikovElt { group, start: trunc, levels: Vec::new(), trunc }
    }

    pub fn one(group: Arc<TwistedGroup>, trunc: i64) -> Self {
        let m = group.m();
        Self::new(group, 0, vec![GroupAlgebraElt::one(m)], trunc)
    }

    /// `c · g` for a group element `g = hθ^j`.
    pub fn group_element(group: Arc<TwistedGroup>, g: &GroupElt, c: BigInt, trunc: i64) -> Self {
        Self::new(group, g.j, vec![GroupAlgebraElt::monomial(g.h.clone(), c)], trunc)
    }

    /// `a θ^k`.
    pub fn level_term(group: Arc<TwistedGroup>, a: GroupAlgebraElt, k: i64, trunc: i64) -> Self {
        Self::new(group, k, vec![a], trunc)
    }

    fn canonical(group: Arc<TwistedGroup>, mut start: i64, mut levels: Vec<GroupAlgebraElt>, trunc: i64) -> Self {
        while levels.last().is_some_and(|a| a.is_zero()) {
            levels.pop();
        }
        let lead = levels.iter().position(|a| !a.is_zero()).unwrap_or(levels.len());
        if lead == levels.len() {
            return Self::zero(group, trunc);
        }
        levels.drain(..lead);
        start += lead as i64;
        NovikovElt { group, start, levels, trunc }
    }

    pub fn group(&self) -> &Arc<TwistedGroup> {
        &self.group
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    pub fn levels(&self) -> &[GroupAlgebraElt] {
        &self.levels
    }

    pub fn is_zero(&self) -> bool {
        self.levels.is_empty()
    }

    /// Lowest power of `θ` with nonzero coefficient, `trunc + 1` for zero.
    pub fn valuation(&self) -> i64 {
        if self.is_zero() {
            self.trunc + 1
        } else {
            self.start
        }
    }

    /// Coefficient of `θ^k`; `None` past the truncation.
    pub fn coeff(&self, k: i64) -> Option<GroupAlgebraElt> {
        if k > self.trunc {
            return None;
        }
        let i = k - self.start;
        if i < 0 || i as usize >= self.levels.len() {
            return Some(GroupAlgebraElt::zero(self.group.m()));
        }
        Some(self.levels[i as usize].clone())
    }

    fn same_group(&self, other: &Self) -> Result<(), TwistedError> {
        if Arc::ptr_eq(&self.group, &other.group) || self.group == other.group {
            Ok(())
        } else {
            Err(TwistedError::GroupMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, TwistedError> {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, TwistedError> {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, negate: bool) -> Result<Self, TwistedError> {
        self.same_group(other)?;
        let trunc = self.trunc.min(other.trunc);
        let lo = self.valuation().min(other.valuation());
        if lo > trunc {
            return Ok(Self::zero(self.group.clone(), trunc));
        }
        let levels = (lo..=trunc)
            .map(|k| {
                let a = self.coeff(k).unwrap();
                let b = other.coeff(k).unwrap();
                if negate {
                    a.sub(&b)
                } else {
                    a.add(&b)
                }
            })
            .collect();
        Ok(Self::canonical(self.group.clone(), lo, levels, trunc))
    }

    pub fn neg(&self) -> Self {
        NovikovElt {
            group: self.group.clone(),
            start: self.start,
            levels: self.levels.iter().map(|a| a.neg()).collect(),
            trunc: self.trunc,
        }
    }

    /// Twisted product: `(aθ^i)(bθ^j) = a·Φ^i(b)·θ^{i+j}`.
    pub fn mul(&self, other: &Self) -> Result<Self, TwistedError> {
        self.same_group(other)?;
        let (va, vb) = (self.valuation(), other.valuation());
        let trunc = (self.trunc + vb).min(other.trunc + va);
        let m = self.group.m();
        if self.is_zero() || other.is_zero() || va + vb > trunc {
            return Ok(Self::zero(self.group.clone(), trunc));
        }
        let lo = va + vb;
        let len = (trunc - lo + 1) as usize;
        let mut out = vec![GroupAlgebraElt::zero(m); len];
        for (i, a) in self.levels.iter().enumerate() {
            if i >= len || a.is_zero() {
                continue;
            }
            let power = self.start + i as i64;
            for (j, b) in other.levels.iter().enumerate().take(len - i) {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(&b.conj_pow(&self.group, power)));
            }
        }
        Ok(Self::canonical(self.group.clone(), lo, out, trunc))
    }

    /// Forget powers past `θ^k`.
    pub fn truncate(&self, k: i64) -> Self {
        if k >= self.trunc {
            return self.clone();
        }
        Self::new(self.group.clone(), self.start, self.levels.clone(), k)
    }

    /// `λ_⌊c⌋`: the terms of `ξ`-level at least `c`, i.e. powers `k ≤ -c`.
    pub fn truncate_at_level(&self, c: i64) -> Result<ZgElement, TwistedError> {
        if c < -self.trunc {
            return Err(TwistedError::BelowTruncation { level: c, trunc: self.trunc });
        }
        let top = -c;
        let levels: Vec<GroupAlgebraElt> = self
            .levels
            .iter()
            .enumerate()
            .take_while(|(i, _)| self.start + *i as i64 <= top)
            .map(|(_, a)| a.clone())
            .collect();
        Ok(ZgElement { start: self.start, levels })
    }

    /// Sum of all absolute coefficients that are known.
    pub fn known_l1_norm(&self) -> BigInt {
        self.levels.iter().map(|a| a.l1_norm()).sum()
    }

    /// For `m = 0`: the same series with `θ ↦ t`.
    pub fn to_laurent(&self) -> Result<LaurentSeries, TwistedError> {
        if self.group.m() != 0 {
            return Err(TwistedError::DimensionMismatch("only m = 0 maps to Z((t))".into()));
        }
        let coeffs = self.levels.iter().map(|a| a.augmentation_at_identity()).collect();
        Ok(LaurentSeries::new(self.start, coeffs, self.trunc))
    }

    /// `θ ↦ t` embedding of `Z((t))` for the trivial group.
    pub fn from_laurent(s: &LaurentSeries) -> Self {
        let group = Arc::new(TwistedGroup::trivial());
        let levels = s.coeffs().iter().map(|c| GroupAlgebraElt::integer(0, c.clone())).collect();
        Self::new(group, s.min_exp(), levels, s.trunc())
    }

    /// Image of every `ZH`-coefficient under the augmentation `h ↦ 1`,
    /// giving the abelianized series in `Z((t))`.
    pub fn augment(&self) -> LaurentSeries {
        let coeffs = self.levels.iter().map(|a| a.augmentation()).collect();
        LaurentSeries::new(self.start, coeffs, self.trunc)
    }
}

pub fn check_exponential_growth(lam: &NovikovElt, a: &BigRational, b: &BigRational) -> bool {
    assert!(a.is_positive() && b.is_positive(), "growth constants must be positive");
    // |λ_⌊c⌋| is a step function of c, worst at integers c = -k
    let mut cumulative = BigInt::zero();
    for (i, lev) in lam.levels().iter().enumerate() {
        if lev.is_zero() {
            continue;
        }
        cumulative += lev.l1_norm();
        let k = lam.start() + i as i64;
        let v = BigRational::from(cumulative.clone()) / a;
        if !le_exp(&v, &(b * BigRational::from(BigInt::from(k)))) {
            return false;
        }
    }
    true
}

impl fmt::Display for NovikovElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, a) in self.levels.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let k = self.start + i as i64;
            match k {
                0 => write!(f, "({a})")?,
                1 => write!(f, "({a})θ")?,
                _ => write!(f, "({a})θ^{k}")?,
            }
        }
        if !first {
            write!(f, " + ")?;
        }
        write!(f, "O(θ^{})", self.trunc + 1)
    }
}
