//! Equivariant Novikov incidences over `Λ̂_ξ` for `G = Z^m ⋊_Φ Z`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;

use super::cyclic::{ChainComplexNov, CritPoint, CyclicMorseData};
use super::ComplexError;
use crate::laurent::{IntCovector, IntMatrix, IntVector};
use crate::semilinear::{summed_series, SemilinearEndo};
use crate::twisted::{GroupAlgebraElt, GroupElt, NovikovElt, TwistedGroup, TypeLElement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantMorseData {
    pub group: Arc<TwistedGroup>,
    pub points: Vec<CritPoint>,
    /// `ĥ_s = θ_*^{-1} ∘ Ĥ_s`, a θ-semilinear endomorphism.
    pub h: BTreeMap<usize, SemilinearEndo>,
    pub x_class: BTreeMap<String, Vec<GroupAlgebraElt>>,
    pub lambda: BTreeMap<String, Vec<GroupAlgebraElt>>,
    /// Coefficient at `θ^{-1}`: trajectories inside the fundamental domain.
    pub direct: BTreeMap<(String, String), GroupAlgebraElt>,
}

impl EquivariantMorseData {
    fn point(&self, name: &str) -> Result<&CritPoint, ComplexError> {
        self.points.iter().find(|p| p.name == name).ok_or_else(|| ComplexError::UnknownPoint(name.to_string()))
    }

    pub fn of_index(&self, s: usize) -> Vec<&CritPoint> {
        self.points.iter().filter(|p| p.index == s).collect()
    }

    pub fn adjacent_pairs(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for x in &self.points {
            for y in &self.points {
                if x.index == y.index + 1 {
                    out.push((x.name.clone(), y.name.clone()));
                }
            }
        }
        out
    }

    fn triple(&self, x: &str, y: &str) -> Result<(&SemilinearEndo, &[GroupAlgebraElt], &[GroupAlgebraElt]), ComplexError> {
        let (px, py) = (self.point(x)?, self.point(y)?);
        if px.index != py.index + 1 {
            return Err(ComplexError::IndexMismatch { x: x.to_string(), y: y.to_string() });
        }
        let s = py.index;
        let h = self.h.get(&s).ok_or(ComplexError::MissingData(format!("h_{s}")))?;
        let xv = self.x_class.get(x).ok_or_else(|| ComplexError::MissingData(format!("X[{x}]")))?;
        let lv = self.lambda.get(y).ok_or_else(|| ComplexError::MissingData(format!("lambda[{y}]")))?;
        Ok((h, xv, lv))
    }

    /// Image under `H → 1`, `θ ↦ t`.
    pub fn abelianize(&self) -> CyclicMorseData {
        let aug = |v: &[GroupAlgebraElt]| -> Vec<BigInt> { v.iter().map(|e| e.augmentation()).collect() };
        CyclicMorseData {
            points: self.points.clone(),
            h: self
                .h
                .iter()
                .map(|(s, e)| {
                    let rows = e.xi_hat.iter().map(|r| aug(r)).collect();
                    (*s, IntMatrix::from_rows(rows).expect("square"))
                })
                .collect(),
            x_class: self.x_class.iter().map(|(k, v)| (k.clone(), IntVector(aug(v)))).collect(),
            lambda: self.lambda.iter().map(|(k, v)| (k.clone(), IntCovector(aug(v)))).collect(),
            direct: self.direct.iter().map(|(k, v)| (k.clone(), v.augmentation())).collect(),
        }
    }
}

/// Closed form `Σ_k λ̂_y(ĥ^k X̂_x) θ^k` and its expansion through `θ^n`,
/// plus the direct term at `θ^{-1}`.
pub fn equivariant_incidence(
    d: &EquivariantMorseData,
    x: &str,
    y: &str,
    n: usize,
) -> Result<(TypeLElement, NovikovElt), ComplexError> {
    let (h, xv, lv) = d.triple(x, y)?;
    let (t, e) = summed_series(h, lv, xv, n)?;
    let direct = d.direct.get(&(x.to_string(), y.to_string()));
    let e = match direct {
        Some(c) if !c.is_zero() => {
            let term = NovikovElt::level_term(d.group.clone(), c.clone(), -1, e.trunc());
            e.add(&term)?
        }
        _ => e,
    };
    Ok((t, e))
}

/// `n̂(x̂g1, ŷg2) = g2^{-1} n̂(x̂, ŷ) g1`, by multiplication in the Novikov ring.
pub fn base_change(n: &NovikovElt, g1: &GroupElt, g2: &GroupElt) -> NovikovElt {
    let g = n.group();
    let big = n.trunc() - n.valuation().min(n.trunc()) + g1.j.abs() + g2.j.abs() + 1;
    let g2inv = g.inv(g2);
    let left = NovikovElt::group_element(g.clone(), &g2inv, BigInt::from(1), g2inv.j + big);
    let right = NovikovElt::group_element(g.clone(), g1, BigInt::from(1), g1.j + big);
    let out = left.mul(n).and_then(|p| p.mul(&right)).expect("same group");
    out.truncate(n.trunc() + g1.j - g2.j)
}

/// Same quantity by reindexing: the coefficient of `γ` for the shifted lifts
/// counts trajectories from `x̂` to `ŷ g2 γ g1^{-1}`.
pub fn shifted_lift_incidence(n: &NovikovElt, g1: &GroupElt, g2: &GroupElt) -> NovikovElt {
    let g = n.group();
    let m = g.m();
    let g2inv = g.inv(g2);
    let mut levels: BTreeMap<i64, GroupAlgebraElt> = BTreeMap::new();
    for (i, lev) in n.levels().iter().enumerate() {
        let k = n.start() + i as i64;
        for (h, c) in lev.terms() {
            let delta = GroupElt { h: h.clone(), j: k };
            let gamma = g.mul(&g.mul(&g2inv, &delta), g1);
            let slot = levels.entry(gamma.j).or_insert_with(|| GroupAlgebraElt::zero(m));
            *slot = slot.add(&GroupAlgebraElt::monomial(gamma.h, c.clone()));
        }
    }
    let trunc = n.trunc() + g1.j - g2.j;
    let start = levels.keys().next().copied().unwrap_or(trunc);
    let dense: Vec<GroupAlgebraElt> = match levels.keys().last() {
        Some(&last) => (start..=last).map(|k| levels.get(&k).cloned().unwrap_or_else(|| GroupAlgebraElt::zero(m))).collect(),
        None => Vec::new(),
    };
    NovikovElt::new(g.clone(), start, dense, trunc)
}

/// Equivariant boundaries with all lifts in the fundamental domain: entry
/// `θ · n̂(x̂, ŷ)`.
pub fn assemble_equivariant_complex(d: &EquivariantMorseData, n: usize) -> Result<ChainComplexNov<NovikovElt>, ComplexError> {
    let top = d.points.iter().map(|p| p.index + 1).max().unwrap_or(0);
    let generators: Vec<Vec<String>> = (0..top).map(|s| d.of_index(s).iter().map(|p| p.name.clone()).collect()).collect();
    let theta = NovikovElt::group_element(d.group.clone(), &d.group.theta(), BigInt::from(1), n as i64 + 2);
    let mut boundaries = vec![Vec::new()];
    for s in 1..top {
        let mut m = Vec::new();
        for y in &generators[s - 1] {
            let mut row = Vec::new();
            for x in &generators[s] {
                let (_, e) = equivariant_incidence(d, x, y, n.saturating_sub(1))?;
                row.push(theta.mul(&e)?);
            }
            m.push(row);
        }
        boundaries.push(m);
    }
    Ok(ChainComplexNov { generators, boundaries })
}
