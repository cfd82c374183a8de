//! The split extension `G = Z^m ⋊_Φ Z` with `θ h θ^{-1} = Φ(h)`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::TwistedError;
use crate::laurent::{det_and_adjugate, IntMatrix};

/// `G = H ⋊ <θ>` with `H = Z^m`, `ξ(θ) = -1` and `ξ(H) = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwistedGroup {
    m: usize,
    phi: Vec<Vec<i64>>,
    phi_inv: Vec<Vec<i64>>,
}

/// `h θ^j`, so `ξ(hθ^j) = -j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElt {
    pub h: Vec<i64>,
    pub j: i64,
}

impl TwistedGroup {
    pub fn new(phi: Vec<Vec<i64>>) -> Result<Self, TwistedError> {
        let m = phi.len();
        if phi.iter().any(|r| r.len() != m) {
            return Err(TwistedError::DimensionMismatch("monodromy must be square".into()));
        }
        if m == 0 {
            return Ok(Self::trivial());
        }
        let a = IntMatrix::from_rows(phi.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
            .map_err(|e| TwistedError::DimensionMismatch(e.to_string()))?;
        let (charp, adj) = det_and_adjugate(&a).expect("square");
        // det(1 - Φt) has t^m coefficient (-1)^m det Φ; adj(-Φ) is the last Faddeev matrix
        let sign = if m.is_multiple_of(2) { 1 } else { -1 };
        let det: BigInt = charp.coeff(m) * BigInt::from(sign);
        let det = det.to_i64().filter(|d| d.abs() == 1).ok_or(TwistedError::NotInvertible)?;
        let adj_neg = &adj[m - 1];
        let inv_sign = (if (m - 1).is_multiple_of(2) { 1 } else { -1 }) * det;
        let phi_inv = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| (adj_neg.get(i, j) * inv_sign).to_i64().ok_or(TwistedError::Overflow))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TwistedGroup { m, phi, phi_inv })
    }

    /// `m = 0`: `G = Z`, `H` trivial.
    pub fn trivial() -> Self {
        TwistedGroup { m: 0, phi: Vec::new(), phi_inv: Vec::new() }
    }

    pub fn identity_monodromy(m: usize) -> Self {
        let phi = (0..m).map(|i| (0..m).map(|j| i64::from(i == j)).collect()).collect();
        Self::new(phi).expect("identity is invertible")
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn phi(&self) -> &[Vec<i64>] {
        &self.phi
    }

    pub fn phi_inv(&self) -> &[Vec<i64>] {
        &self.phi_inv
    }

    fn apply(mat: &[Vec<i64>], h: &[i64]) -> Vec<i64> {
        mat.iter()
            .map(|row| {
                row.iter()
                    .zip(h)
                    .try_fold(0i64, |acc, (a, b)| a.checked_mul(*b).and_then(|p| acc.checked_add(p)))
                    .expect("exponent overflow under monodromy")
            })
            .collect()
    }

    /// `Φ^k(h)` for any integer `k`.
    pub fn phi_pow(&self, k: i64, h: &[i64]) -> Vec<i64> {
        let mat = if k >= 0 { &self.phi } else { &self.phi_inv };
        let mut v = h.to_vec();
        for _ in 0..k.unsigned_abs() {
            v = Self::apply(mat, &v);
        }
        v
    }

    pub fn identity(&self) -> GroupElt {
        GroupElt { h: vec![0; self.m], j: 0 }
    }

    pub fn theta(&self) -> GroupElt {
        GroupElt { h: vec![0; self.m], j: 1 }
    }

    /// `(h1 θ^{j1})(h2 θ^{j2}) = (h1 + Φ^{j1} h2) θ^{j1+j2}`.
    pub fn mul(&self, a: &GroupElt, b: &GroupElt) -> GroupElt {
        let moved = self.phi_pow(a.j, &b.h);
        GroupElt {
            h: a.h.iter().zip(&moved).map(|(x, y)| x.checked_add(*y).expect("exponent overflow")).collect(),
            j: a.j + b.j,
        }
    }

    /// `(hθ^j)^{-1} = Φ^{-j}(-h) θ^{-j}`.
    pub fn inv(&self, a: &GroupElt) -> GroupElt {
        let neg: Vec<i64> = a.h.iter().map(|x| -x).collect();
        GroupElt { h: self.phi_pow(-a.j, &neg), j: -a.j }
    }

    pub fn check_elt(&self, g: &GroupElt) -> Result<(), TwistedError> {
        if g.h.len() != self.m {
            return Err(TwistedError::DimensionMismatch(format!(
                "group element has {} exponents, group has m = {}",
                g.h.len(),
                self.m
            )));
        }
        Ok(())
    }
}

impl GroupElt {
    pub fn xi(&self) -> i64 {
        -self.j
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_monodromy() {
        let g = TwistedGroup::new(vec![vec![2, 1], vec![1, 1]]).unwrap();
        assert_eq!(g.phi_inv(), &[vec![1, -1], vec![-1, 2]]);
        assert_eq!(g.phi_pow(-3, &g.phi_pow(3, &[5, -7])), vec![5, -7]);
        assert!(TwistedGroup::new(vec![vec![2]]).is_err());
    }

    #[test]
    fn semidirect_relation() {
        let g = TwistedGroup::new(vec![vec![-1]]).unwrap();
        let h1 = GroupElt { h: vec![1], j: 0 };
        let th = g.theta();
        // θ h θ^{-1} = Φ(h) = h^{-1}
        let conj = g.mul(&g.mul(&th, &h1), &g.inv(&th));
        assert_eq!(conj, GroupElt { h: vec![-1], j: 0 });
    }

    #[test]
    fn group_axioms_on_samples() {
        let g = TwistedGroup::new(vec![vec![0, 1], vec![-1, 0]]).unwrap();
        let a = GroupElt { h: vec![1, 2], j: 3 };
        let b = GroupElt { h: vec![-4, 0], j: -1 };
        let c = GroupElt { h: vec![0, 5], j: 2 };
        assert_eq!(g.mul(&g.mul(&a, &b), &c), g.mul(&a, &g.mul(&b, &c)));
        assert_eq!(g.mul(&a, &g.inv(&a)), g.identity());
        assert_eq!(g.mul(&g.inv(&a), &a), g.identity());
    }
}
