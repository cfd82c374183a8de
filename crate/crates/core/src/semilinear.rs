//! θ-semilinear endomorphisms of free right `ZH`-modules.
//!
//! Vectors are columns with scalars on the right; column `i` of `xi_hat`
//! holds the coordinates of the image of `e_i`.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::twisted::{
    expand_type_l, nov_from_level, GroupElt, nov_identity, nov_matmul, GroupAlgebraElt, NovikovElt, TwistedError, TwistedGroup,
    TypeLElement,
};

pub type ZhVector = Vec<GroupAlgebraElt>;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SemilinearError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("negative power {0}")]
    NegativePower(i64),
    #[error(transparent)]
    Twisted(#[from] TwistedError),
}

/// `ξ(x λ) = ξ(x)·θλθ^{-1}`, `ξ(e_i) = Σ_j e_j ξ_ji`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemilinearEndo {
    pub group: Arc<TwistedGroup>,
    /// `xi_hat[j][i] = ξ_ji`.
    pub xi_hat: Vec<Vec<GroupAlgebraElt>>,
}

/// `l(e_i h) = value` on finitely many module generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerFunctionalData {
    pub rank: usize,
    pub m: usize,
    pub values: Vec<(usize, Vec<i64>, BigInt)>,
}

impl SemilinearEndo {
    pub fn new(group: Arc<TwistedGroup>, xi_hat: Vec<Vec<GroupAlgebraElt>>) -> Result<Self, SemilinearError> {
        let n = xi_hat.len();
        if xi_hat.iter().any(|r| r.len() != n) {
            return Err(SemilinearError::DimensionMismatch("xi_hat must be square".into()));
        }
        if xi_hat.iter().flatten().any(|e| e.m() != group.m()) {
            return Err(SemilinearError::DimensionMismatch("entry in a different group ring".into()));
        }
        Ok(SemilinearEndo { group, xi_hat })
    }

    pub fn rank(&self) -> usize {
        self.xi_hat.len()
    }

    fn check_vec(&self, x: &[GroupAlgebraElt]) -> Result<(), SemilinearError> {
        if x.len() != self.rank() || x.iter().any(|e| e.m() != self.group.m()) {
            return Err(SemilinearError::DimensionMismatch(format!(
                "vector of length {} for rank {}",
                x.len(),
                self.rank()
            )));
        }
        Ok(())
    }

    /// `ξ(x)_j = Σ_i ξ_ji · θ x_i θ^{-1}`.
    pub fn apply(&self, x: &[GroupAlgebraElt]) -> Result<ZhVector, SemilinearError> {
        self.check_vec(x)?;
        let m = self.group.m();
        let moved: Vec<GroupAlgebraElt> = x.iter().map(|c| c.conj_pow(&self.group, 1)).collect();
        Ok(self
            .xi_hat
            .iter()
            .map(|row| row.iter().zip(&moved).fold(GroupAlgebraElt::zero(m), |acc, (a, b)| acc.add(&a.mul(b))))
            .collect())
    }

    /// `ξ^n(x) = Σ_{ij} e_j η^{(n)}_ji x_i θ^{-n}` with `η^{(n)}` the entries
    /// of `(ξ̂θ)^n`, all products taken in the Novikov ring.
    pub fn apply_power(&self, x: &[GroupAlgebraElt], n: i64) -> Result<ZhVector, SemilinearError> {
        if n < 0 {
            return Err(SemilinearError::NegativePower(n));
        }
        self.check_vec(x)?;
        let g = &self.group;
        let trunc = n;
        let a = nov_from_level(g, &self.xi_hat, 1, trunc);
        let mut eta = nov_identity(g, self.rank(), trunc);
        for _ in 0..n {
            eta = nov_matmul(&eta, &a)?;
        }
        let theta_neg_n = NovikovElt::group_element(g.clone(), &GroupElt { h: vec![0; g.m()], j: -n }, BigInt::from(1), 0);
        let mut out = Vec::with_capacity(self.rank());
        for row in &eta {
            let mut acc = NovikovElt::zero(g.clone(), 0);
            for (eta_ji, xi) in row.iter().zip(x) {
                let xi = NovikovElt::level_term(g.clone(), xi.clone(), 0, trunc);
                acc = acc.add(&eta_ji.mul(&xi)?.mul(&theta_neg_n)?)?;
            }
            if acc.levels().len() > 1 || (!acc.is_zero() && acc.start() != 0) {
                return Err(TwistedError::WrongLevel.into());
            }
            out.push(acc.coeff(0).expect("level 0 is known"));
        }
        Ok(out)
    }

    /// `ξ^n(x)` by `n` successive applications.
    pub fn apply_iterated(&self, x: &[GroupAlgebraElt], n: usize) -> Result<ZhVector, SemilinearError> {
        let mut v = x.to_vec();
        for _ in 0..n {
            v = self.apply(&v)?;
        }
        Ok(v)
    }
}

/// `Λ(x) = Σ_i Λ_i x_i`.
pub fn pair(lam: &[GroupAlgebraElt], x: &[GroupAlgebraElt]) -> Result<GroupAlgebraElt, SemilinearError> {
    if lam.len() != x.len() {
        return Err(SemilinearError::DimensionMismatch(format!(
            "covector of length {} against vector of length {}",
            lam.len(),
            x.len()
        )));
    }
    let m = lam.first().map_or(0, |e| e.m());
    Ok(lam.iter().zip(x).fold(GroupAlgebraElt::zero(m), |acc, (a, b)| acc.add(&a.mul(b))))
}

/// `l(x)` for `x = Σ e_i x_i`.
pub fn eval_functional(d: &IntegerFunctionalData, x: &[GroupAlgebraElt]) -> BigInt {
    let mut total = BigInt::from(0);
    for (i, h, v) in &d.values {
        if let Some(c) = x.get(*i).and_then(|xi| xi.terms().get(h)) {
            total += c * v;
        }
    }
    total
}

/// `Λ` with `Λ(e_i) = Σ_h l(e_i h^{-1}) h`.
pub fn underline_hom(d: &IntegerFunctionalData) -> ZhVector {
    let mut out = vec![GroupAlgebraElt::zero(d.m); d.rank];
    for (i, h, v) in &d.values {
        let inv: Vec<i64> = h.iter().map(|e| -e).collect();
        out[*i] = out[*i].add(&GroupAlgebraElt::monomial(inv, v.clone()));
    }
    out
}

/// Closed form of `Σ_k λ(ξ^k(x)) θ^k` as a type-(L) element with
/// `A = ξ̂θ`, `Y = λ`, `X = x`, together with its expansion through `θ^n`.
pub fn summed_series(
    xi: &SemilinearEndo,
    lam: &[GroupAlgebraElt],
    x: &[GroupAlgebraElt],
    n: usize,
) -> Result<(TypeLElement, NovikovElt), SemilinearError> {
    xi.check_vec(x)?;
    xi.check_vec(lam)?;
    let g = &xi.group;
    let t = TypeLElement::new(g.clone(), g.identity(), lam.to_vec(), xi.xi_hat.clone(), x.to_vec(), g.identity())?;
    let e = expand_type_l(&t, n);
    Ok((t, e))
}

/// `Σ_{k≤n} λ(ξ^k(x)) θ^k` by repeated application.
pub fn summed_series_direct(
    xi: &SemilinearEndo,
    lam: &[GroupAlgebraElt],
    x: &[GroupAlgebraElt],
    n: usize,
) -> Result<NovikovElt, SemilinearError> {
    let mut v = x.to_vec();
    let mut levels = Vec::with_capacity(n + 1);
    for k in 0..=n {
        levels.push(pair(lam, &v)?);
        if k < n {
            v = xi.apply(&v)?;
        }
    }
    Ok(NovikovElt::new(xi.group.clone(), 0, levels, n as i64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(h: &[i64], c: i64) -> GroupAlgebraElt {
        GroupAlgebraElt::monomial(h.to_vec(), BigInt::from(c))
    }

    #[test]
    fn apply_examples() {
        let id = Arc::new(TwistedGroup::identity_monodromy(1));
        let flip = Arc::new(TwistedGroup::new(vec![vec![-1]]).unwrap());
        let e = SemilinearEndo::new(id.clone(), vec![vec![mono(&[0], 1)]]).unwrap();
        assert_eq!(e.apply(&[mono(&[3], 2)]).unwrap(), vec![mono(&[3], 2)]);
        let e = SemilinearEndo::new(flip, vec![vec![mono(&[0], 1)]]).unwrap();
        assert_eq!(e.apply(&[mono(&[1], 1)]).unwrap(), vec![mono(&[-1], 1)]);
        let e = SemilinearEndo::new(id, vec![vec![mono(&[1], 1)]]).unwrap();
        assert_eq!(e.apply(&[mono(&[0], 1)]).unwrap(), vec![mono(&[1], 1)]);
    }

    #[test]
    fn power_route_matches_iteration() {
        let flip = Arc::new(TwistedGroup::new(vec![vec![-1]]).unwrap());
        let e = SemilinearEndo::new(flip, vec![vec![mono(&[0], 1).add(&mono(&[1], 1))]]).unwrap();
        let x = vec![mono(&[0], 1)];
        for n in 0..6 {
            assert_eq!(e.apply_power(&x, n).unwrap(), e.apply_iterated(&x, n as usize).unwrap());
        }
        assert_eq!(e.apply_power(&x, 0).unwrap(), x);
        assert!(e.apply_power(&x, -1).is_err());
    }

    #[test]
    fn underline_examples() {
        let d = IntegerFunctionalData { rank: 2, m: 1, values: vec![(0, vec![0], BigInt::from(1))] };
        assert_eq!(underline_hom(&d), vec![mono(&[0], 1), GroupAlgebraElt::zero(1)]);
        let d = IntegerFunctionalData { rank: 2, m: 1, values: vec![(0, vec![-1], BigInt::from(2))] };
        assert_eq!(underline_hom(&d)[0], mono(&[1], 2));
        let d = IntegerFunctionalData { rank: 1, m: 1, values: vec![] };
        assert!(underline_hom(&d)[0].is_zero());
    }

    #[test]
    fn zero_endomorphism_series() {
        let g = Arc::new(TwistedGroup::identity_monodromy(1));
        let xi = SemilinearEndo::new(g.clone(), vec![vec![GroupAlgebraElt::zero(1)]]).unwrap();
        let (_, e) = summed_series(&xi, &[mono(&[0], 3)], &[mono(&[1], 1)], 8).unwrap();
        assert_eq!(e, NovikovElt::level_term(g, mono(&[1], 3), 0, 8));
    }
}
