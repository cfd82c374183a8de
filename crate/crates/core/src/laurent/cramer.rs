//! Generating functions `Σ_k λ(A^k p) t^k` in closed form.

use num_bigint::BigInt;
use num_traits::Zero;

use super::matrix::{IntCovector, IntMatrix, IntVector};
use super::poly::Poly;
use super::rational::{expand_fraction, RationalFn};
use super::series::LaurentSeries;
use super::LaurentError;

/// Unreduced `P / det(1 - At)`, with `P = λ adj(1 - At) p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CramerFraction {
    pub num: Poly,
    pub det: Poly,
}

impl CramerFraction {
    pub fn reduced(&self) -> RationalFn {
        RationalFn::normalize(0, self.num.clone(), self.det.clone())
    }

    pub fn expand(&self, order: i64) -> LaurentSeries {
        expand_fraction(0, &self.num, &self.det, order)
    }
}

/// Coefficients of `det(1 - At)` and the matrices `B_k` with
/// `adj(1 - At) = Σ_{k<n} B_k t^k` (Faddeev–LeVerrier, exact over `Z`).
pub fn det_and_adjugate(a: &IntMatrix) -> Result<(Poly, Vec<IntMatrix>), LaurentError> {
    if !a.is_square() {
        return Err(LaurentError::DimensionMismatch(format!("{}x{} matrix is not square", a.rows(), a.cols())));
    }
    let n = a.rows();
    let mut c = vec![BigInt::from(1)];
    let mut adj = Vec::with_capacity(n);
    let mut m = IntMatrix::zeros(n, n);
    for k in 1..=n {
        m = a.mul(&m)?.add_scaled_identity(&c[k - 1]);
        let tr = a.mul(&m)?.trace();
        let kk = BigInt::from(k);
        debug_assert!((&tr % &kk).is_zero());
        c.push(-(tr / kk));
        adj.push(m.clone());
    }
    Ok((Poly::new(c), adj))
}

/// `det(1 - At)`.
pub fn det_one_minus_at(a: &IntMatrix) -> Result<Poly, LaurentError> {
    det_and_adjugate(a).map(|(d, _)| d)
}

pub fn cramer_fraction(a: &IntMatrix, p: &IntVector, lam: &IntCovector) -> Result<CramerFraction, LaurentError> {
    let n = a.rows();
    if !a.is_square() || p.len() != n || lam.len() != n {
        return Err(LaurentError::DimensionMismatch(format!(
            "A is {}x{}, p has length {}, lambda has length {}",
            a.rows(),
            a.cols(),
            p.len(),
            lam.len()
        )));
    }
    let (det, adj) = det_and_adjugate(a)?;
    let num = adj
        .iter()
        .map(|b| lam.pair(&b.apply(p)?))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CramerFraction { num: Poly::new(num), det })
}

/// `Σ_{k≥0} λ(A^k p) t^k` as a reduced rational function.
pub fn cramer_series(a: &IntMatrix, p: &IntVector, lam: &IntCovector) -> Result<RationalFn, LaurentError> {
    cramer_fraction(a, p, lam).map(|f| f.reduced())
}

/// `λ(A^k p)` for `k = 0..=order` by direct iteration.
pub fn iterate_pairings(a: &IntMatrix, p: &IntVector, lam: &IntCovector, order: usize) -> Result<Vec<BigInt>, LaurentError> {
    let mut v = p.clone();
    let mut out = Vec::with_capacity(order + 1);
    for k in 0..=order {
        out.push(lam.pair(&v)?);
        if k < order {
            v = a.apply(&v)?;
        }
    }
    Ok(out)
}
