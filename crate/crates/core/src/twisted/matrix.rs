//! Square matrices over the Novikov ring.

use std::sync::Arc;

use super::algebra::GroupAlgebraElt;
use super::group::TwistedGroup;
use super::novikov::NovikovElt;
use super::TwistedError;

pub type NovikovMatrix = Vec<Vec<NovikovElt>>;

pub fn nov_identity(group: &Arc<TwistedGroup>, n: usize, trunc: i64) -> NovikovMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        NovikovElt::one(group.clone(), trunc)
                    } else {
                        NovikovElt::zero(group.clone(), trunc)
                    }
                })
                .collect()
        })
        .collect()
}

/// Matrix with entries `coeff[i][j]·θ^level`.
pub fn nov_from_level(group: &Arc<TwistedGroup>, coeff: &[Vec<GroupAlgebraElt>], level: i64, trunc: i64) -> NovikovMatrix {
    coeff
        .iter()
        .map(|row| row.iter().map(|c| NovikovElt::level_term(group.clone(), c.clone(), level, trunc)).collect())
        .collect()
}

pub fn nov_matmul(a: &NovikovMatrix, b: &NovikovMatrix) -> Result<NovikovMatrix, TwistedError> {
    let inner = b.len();
    if a.iter().any(|r| r.len() != inner) {
        return Err(TwistedError::DimensionMismatch("matrix product shapes".into()));
    }
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc: Option<NovikovElt> = None;
                    for (k, x) in row.iter().enumerate() {
                        let p = x.mul(&b[k][j])?;
                        acc = Some(match acc {
                            None => p,
                            Some(s) => s.add(&p)?,
                        });
                    }
                    acc.ok_or_else(|| TwistedError::DimensionMismatch("empty inner dimension".into()))
                })
                .collect()
        })
        .collect()
}

/// `Σ_{ij} y_i m_ij x_j` with `y`, `x` given as Novikov elements.
pub fn nov_sandwich(y: &[NovikovElt], m: &NovikovMatrix, x: &[NovikovElt]) -> Result<NovikovElt, TwistedError> {
    let mut acc: Option<NovikovElt> = None;
    for (i, yi) in y.iter().enumerate() {
        for (j, xj) in x.iter().enumerate() {
            let p = yi.mul(&m[i][j])?.mul(xj)?;
            acc = Some(match acc {
                None => p,
                Some(s) => s.add(&p)?,
            });
        }
    }
    acc.ok_or_else(|| TwistedError::DimensionMismatch("empty vectors".into()))
}
