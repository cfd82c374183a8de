//! The group ring `ZH` for `H = Z^m`, stored sparsely.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::group::TwistedGroup;

/// `Σ c_h h` with `h ∈ Z^m` written multiplicatively.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupAlgebraElt {
    m: usize,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConjDir {
    /// `λ ↦ θλθ^{-1}`, exponents through `Φ`.
    Fwd,
    /// `λ ↦ θ^{-1}λθ`, exponents through `Φ^{-1}`.
    Inv,
}

impl GroupAlgebraElt {
    pub fn zero(m: usize) -> Self {
        GroupAlgebraElt { m, terms: BTreeMap::new() }
    }

    pub fn one(m: usize) -> Self {
        Self::integer(m, BigInt::one())
    }

    pub fn integer(m: usize, c: BigInt) -> Self {
        Self::monomial(vec![0; m], c)
    }

    pub fn monomial(h: Vec<i64>, c: BigInt) -> Self {
        let m = h.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(h, c);
        }
        GroupAlgebraElt { m, terms }
    }

    /// Panics if an exponent vector has the wrong length.
    pub fn from_terms(m: usize, terms: impl IntoIterator<Item = (Vec<i64>, BigInt)>) -> Self {
        let mut out = Self::zero(m);
        for (h, c) in terms {
            assert_eq!(h.len(), m, "exponent vector length");
            out.add_term(h, c);
        }
        out
    }

    fn add_term(&mut self, h: Vec<i64>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(h) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the identity.
    pub fn augmentation_at_identity(&self) -> BigInt {
        self.terms.get(&vec![0; self.m]).cloned().unwrap_or_default()
    }

    /// Sum of all coefficients.
    pub fn augmentation(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.m, other.m);
        let mut out = self.clone();
        for (h, c) in &other.terms {
            out.add_term(h.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        GroupAlgebraElt { m: self.m, terms: self.terms.iter().map(|(h, c)| (h.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(self.m);
        }
        GroupAlgebraElt { m: self.m, terms: self.terms.iter().map(|(h, c)| (h.clone(), c * k)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.m, other.m);
        let mut out = Self::zero(self.m);
        for (ha, ca) in &self.terms {
            for (hb, cb) in &other.terms {
                let h = ha
                    .iter()
                    .zip(hb)
                    .map(|(x, y)| x.checked_add(*y).expect("exponent overflow"))
                    .collect();
                out.add_term(h, ca * cb);
            }
        }
        out
    }

    /// Multiply by the group element `h`.
    pub fn shift(&self, h: &[i64]) -> Self {
        GroupAlgebraElt {
            m: self.m,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(h).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Replace every exponent vector `h` by `f(h)`; `f` must be injective.
    pub fn map_exponents(&self, f: impl Fn(&[i64]) -> Vec<i64>) -> Self {
        GroupAlgebraElt { m: self.m, terms: self.terms.iter().map(|(h, c)| (f(h), c.clone())).collect() }
    }

    /// `θ^k λ θ^{-k}`, i.e. exponents through `Φ^k`.
    pub fn conj_pow(&self, group: &TwistedGroup, k: i64) -> Self {
        if k == 0 || self.m == 0 {
            return self.clone();
        }
        self.map_exponents(|h| group.phi_pow(k, h))
    }

    /// Antipode `Σ c_h h^{-1}`.
    pub fn antipode(&self) -> Self {
        self.map_exponents(|h| h.iter().map(|x| -x).collect())
    }

    pub fn l1_norm(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).sum()
    }
}

pub fn conj_by_theta(group: &TwistedGroup, lam: &GroupAlgebraElt, dir: ConjDir) -> GroupAlgebraElt {
    match dir {
        ConjDir::Fwd => lam.conj_pow(group, 1),
        ConjDir::Inv => lam.conj_pow(group, -1),
    }
}

pub fn l1_norm(lam: &GroupAlgebraElt) -> BigInt {
    lam.l1_norm()
}

impl fmt::Display for GroupAlgebraElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (h, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mono: Vec<String> = h
                .iter()
                .enumerate()
                .filter(|(_, e)| **e != 0)
                .map(|(k, e)| if *e == 1 { format!("h{}", k + 1) } else { format!("h{}^{}", k + 1, e) })
                .collect();
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", mono.join(""))?;
            } else {
                write!(f, "{a}{}", mono.join(""))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(m: usize, t: &[(&[i64], i64)]) -> GroupAlgebraElt {
        GroupAlgebraElt::from_terms(m, t.iter().map(|(h, c)| (h.to_vec(), BigInt::from(*c))))
    }

    #[test]
    fn conj_examples() {
        let id = TwistedGroup::identity_monodromy(2);
        let lam = e(2, &[(&[1, 0], 3), (&[0, -2], 1)]);
        assert_eq!(conj_by_theta(&id, &lam, ConjDir::Fwd), lam);
        let swap = TwistedGroup::new(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(conj_by_theta(&swap, &e(2, &[(&[1, 0], 1)]), ConjDir::Fwd), e(2, &[(&[0, 1], 1)]));
        let flip = TwistedGroup::new(vec![vec![-1]]).unwrap();
        assert_eq!(conj_by_theta(&flip, &e(1, &[(&[1], 2), (&[0], 3)]), ConjDir::Fwd), e(1, &[(&[-1], 2), (&[0], 3)]));
    }

    #[test]
    fn norms() {
        assert_eq!(GroupAlgebraElt::zero(2).l1_norm(), BigInt::zero());
        assert_eq!(e(2, &[(&[1, 0], 2), (&[0, 1], -3)]).l1_norm(), BigInt::from(5));
        let x = e(1, &[(&[1], 1), (&[0], 1)]);
        assert_eq!(x.mul(&x).l1_norm(), BigInt::from(4));
    }

    #[test]
    fn cancellation_removes_terms() {
        let x = e(1, &[(&[1], 1)]);
        assert!(x.sub(&x).is_zero());
        assert_eq!(x.sub(&x), GroupAlgebraElt::zero(1));
    }

    #[test]
    fn display() {
        assert_eq!(e(2, &[(&[1, 0], 2), (&[0, 1], -3), (&[0, 0], 1)]).to_string(), "1 - 3h2 + 2h1");
        assert_eq!(e(1, &[(&[-1], 1)]).to_string(), "h1^-1");
    }
}
