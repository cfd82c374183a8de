//! Closed-form Novikov elements `g1 (Σ_s Y A^s X) g2`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::algebra::GroupAlgebraElt;
use super::group::{GroupElt, TwistedGroup};
use super::matrix::{nov_from_level, nov_identity, nov_matmul, nov_sandwich};
use super::novikov::NovikovElt;
use super::TwistedError;
use crate::laurent::log_between;

/// Type-(L) data. Entry `(i, j)` of `A` is `a[i][j]·θ`, so every entry sits
/// at `ξ`-level `-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeLElement {
    pub group: Arc<TwistedGroup>,
    pub g1: GroupElt,
    pub y: Vec<GroupAlgebraElt>,
    pub a: Vec<Vec<GroupAlgebraElt>>,
    pub x: Vec<GroupAlgebraElt>,
    pub g2: GroupElt,
}

impl TypeLElement {
    pub fn new(
        group: Arc<TwistedGroup>,
        g1: GroupElt,
        y: Vec<GroupAlgebraElt>,
        a: Vec<Vec<GroupAlgebraElt>>,
        x: Vec<GroupAlgebraElt>,
        g2: GroupElt,
    ) -> Result<Self, TwistedError> {
        let n = a.len();
        if a.iter().any(|r| r.len() != n) || y.len() != n || x.len() != n {
            return Err(TwistedError::DimensionMismatch(format!(
                "A is {n}x?, Y has length {}, X has length {}",
                y.len(),
                x.len()
            )));
        }
        group.check_elt(&g1)?;
        group.check_elt(&g2)?;
        let m = group.m();
        if a.iter().flatten().chain(&y).chain(&x).any(|e| e.m() != m) {
            return Err(TwistedError::DimensionMismatch("entry in a different group ring".into()));
        }
        Ok(TypeLElement { group, g1, y, a, x, g2 })
    }

    /// Builds `A` from full Novikov entries, each of which must be a single
    /// level `αθ`.
    pub fn from_novikov_entries(
        group: Arc<TwistedGroup>,
        g1: GroupElt,
        y: Vec<GroupAlgebraElt>,
        a: &[Vec<NovikovElt>],
        x: Vec<GroupAlgebraElt>,
        g2: GroupElt,
    ) -> Result<Self, TwistedError> {
        let m = group.m();
        let coeffs = a
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| {
                        if e.is_zero() {
                            return Ok(GroupAlgebraElt::zero(m));
                        }
                        if e.start() != 1 || e.levels().len() != 1 {
                            return Err(TwistedError::WrongLevel);
                        }
                        Ok(e.levels()[0].clone())
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(group, g1, y, coeffs, x, g2)
    }

    pub fn rank(&self) -> usize {
        self.a.len()
    }

    /// `max_{ij} |a_ij|`.
    pub fn matrix_norm(&self) -> BigInt {
        self.a.iter().flatten().map(|e| e.l1_norm()).max().unwrap_or_default()
    }

    /// `θ`-power of `g1·g2`.
    pub fn shift(&self) -> i64 {
        self.g1.j + self.g2.j
    }
}

/// Terms `s = 0..=n` of the type-(L) sum, with `A^s` formed by matrix
/// products in the Novikov ring; the result is known through
/// `θ^{n + j1 + j2}`.
pub fn expand_type_l(t: &TypeLElement, n: usize) -> NovikovElt {
    let group = &t.group;
    let trunc = n as i64;
    let a = nov_from_level(group, &t.a, 1, trunc);
    let lift = |v: &[GroupAlgebraElt]| -> Vec<NovikovElt> {
        v.iter().map(|c| NovikovElt::level_term(group.clone(), c.clone(), 0, trunc)).collect()
    };
    let (y, x) = (lift(&t.y), lift(&t.x));
    let mut power = nov_identity(group, t.rank(), trunc);
    let mut core = NovikovElt::zero(group.clone(), trunc);
    for s in 0..=n {
        if t.rank() > 0 {
            core = core.add(&nov_sandwich(&y, &power, &x).expect("consistent shapes")).expect("same group");
        }
        if s < n {
            power = nov_matmul(&power, &a).expect("square");
        }
    }
    let big = trunc + t.g1.j.abs() + t.g2.j.abs() + 1;
    let g1 = NovikovElt::group_element(group.clone(), &t.g1, BigInt::one(), t.g1.j + big);
    let g2 = NovikovElt::group_element(group.clone(), &t.g2, BigInt::one(), t.g2.j + big);
    let out = g1.mul(&core).and_then(|p| p.mul(&g2)).expect("same group");
    out.truncate(trunc + t.shift())
}

/// Certificate `(A, B)` with `|λ_⌊c⌋| ≤ A e^{-Bc}` for every `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthCertificate {
    /// Smallest natural number exceeding `max(2, ‖A‖·rank)`.
    pub n: BigInt,
    pub a: BigInt,
    /// Rational with `ln N ≤ B ≤ ln(N + 1)`.
    pub b: BigRational,
}

pub fn growth_constants_for_type_l(t: &TypeLElement) -> GrowthCertificate {
    let two = BigInt::from(2);
    let na = t.matrix_norm() * BigInt::from(t.rank());
    let n = na.max(two) + BigInt::one();
    let b = log_between(&n);
    let ynorm: BigInt = t.y.iter().map(|e| e.l1_norm()).sum();
    let xnorm: BigInt = t.x.iter().map(|e| e.l1_norm()).sum();
    // ‖Σ_{s≤k} A^s‖ ≤ N^{k+1}; the g-shift σ moves levels by -σ
    let sigma = t.shift();
    let up = (1 - sigma).max(0) as u32;
    let down = (-sigma).max(0) as u32;
    let a = (ynorm * xnorm * num_traits::pow(n.clone(), up as usize) * num_traits::pow(&n + BigInt::one(), down as usize))
        .max(BigInt::one());
    GrowthCertificate { n, a, b }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(m: usize, c: i64) -> GroupAlgebraElt {
        GroupAlgebraElt::integer(m, BigInt::from(c))
    }

    #[test]
    fn zero_matrix_gives_one() {
        let g = Arc::new(TwistedGroup::trivial());
        let t = TypeLElement::new(g.clone(), g.identity(), vec![int(0, 1)], vec![vec![int(0, 0)]], vec![int(0, 1)], g.identity()).unwrap();
        assert_eq!(expand_type_l(&t, 10), NovikovElt::one(g, 10));
    }

    #[test]
    fn flip_monodromy_collapses() {
        let g = Arc::new(TwistedGroup::new(vec![vec![-1]]).unwrap());
        let t = TypeLElement::new(g.clone(), g.identity(), vec![int(1, 1)], vec![vec![int(1, 1)]], vec![int(1, 1)], g.identity()).unwrap();
        let e = expand_type_l(&t, 6);
        assert_eq!(e.levels().len(), 7);
        assert!(e.levels().iter().all(|a| *a == int(1, 1)));
    }

    #[test]
    fn wrong_level_rejected() {
        let g = Arc::new(TwistedGroup::trivial());
        let bad = NovikovElt::level_term(g.clone(), int(0, 1), 2, 10);
        let r = TypeLElement::from_novikov_entries(g.clone(), g.identity(), vec![int(0, 1)], &[vec![bad]], vec![int(0, 1)], g.identity());
        assert_eq!(r.unwrap_err(), TwistedError::WrongLevel);
    }

    #[test]
    fn certificate_scalar_two() {
        let g = Arc::new(TwistedGroup::trivial());
        let t = TypeLElement::new(g.clone(), g.identity(), vec![int(0, 1)], vec![vec![int(0, 2)]], vec![int(0, 1)], g.identity()).unwrap();
        let c = growth_constants_for_type_l(&t);
        assert_eq!(c.n, BigInt::from(3));
        assert_eq!(c.a, BigInt::from(3));
    }
}
