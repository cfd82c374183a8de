//! Morse complexes over `Z`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::snf;
use super::ComplexError;
use crate::laurent::IntMatrix;

/// Critical points graded by index with signed counts `ν(p, q)` for
/// `ind p = ind q + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MorseData {
    /// `points[s]` lists the index-`s` critical points.
    pub points: Vec<Vec<String>>,
    /// `counts[(p, q)] = ν(p, q)`; missing pairs count zero.
    pub counts: BTreeMap<(String, String), BigInt>,
}

/// `boundaries[s]` is `∂_s : C_s → C_{s-1}`, rows indexed by `C_{s-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplexZ {
    pub ranks: Vec<usize>,
    pub boundaries: Vec<IntMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct D2Witness {
    /// `∂_{degree-1} ∘ ∂_degree` fails.
    pub degree: usize,
    pub row: usize,
    pub col: usize,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<String>,
}

pub fn build_morse_complex(d: &MorseData) -> ChainComplexZ {
    let ranks: Vec<usize> = d.points.iter().map(|p| p.len()).collect();
    let mut boundaries = vec![IntMatrix::zeros(0, ranks.first().copied().unwrap_or(0))];
    for s in 1..d.points.len() {
        let mut m = IntMatrix::zeros(ranks[s - 1], ranks[s]);
        for (c, p) in d.points[s].iter().enumerate() {
            for (r, q) in d.points[s - 1].iter().enumerate() {
                if let Some(v) = d.counts.get(&(p.clone(), q.clone())) {
                    m.set(r, c, v.clone());
                }
            }
        }
        boundaries.push(m);
    }
    ChainComplexZ { ranks, boundaries }
}

impl ChainComplexZ {
    pub fn check_d2(&self) -> Result<(), D2Witness> {
        for s in 2..self.boundaries.len() {
            let p = self.boundaries[s - 1].mul(&self.boundaries[s]).expect("graded shapes");
            for r in 0..p.rows() {
                for c in 0..p.cols() {
                    if !p.get(r, c).is_zero() {
                        return Err(D2Witness { degree: s, row: r, col: c, value: p.get(r, c).to_string() });
                    }
                }
            }
        }
        Ok(())
    }
}

pub fn homology_z(c: &ChainComplexZ) -> Result<Vec<HomologyGroup>, ComplexError> {
    c.check_d2().map_err(ComplexError::D2Violation)?;
    let n = c.ranks.len();
    let ranks: Vec<usize> = c.boundaries.iter().map(snf::rank).collect();
    Ok((0..n)
        .map(|s| {
            let out_rank = ranks[s];
            let (in_rank, tors) = if s + 1 < n {
                (ranks[s + 1], snf::torsion(&c.boundaries[s + 1]))
            } else {
                (0, Vec::new())
            };
            HomologyGroup { betti: c.ranks[s] - out_rank - in_rank, torsion: tors.iter().map(|t| t.to_string()).collect() }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(points: &[&[&str]], counts: &[(&str, &str, i64)]) -> MorseData {
        MorseData {
            points: points.iter().map(|p| p.iter().map(|s| s.to_string()).collect()).collect(),
            counts: counts.iter().map(|(a, b, c)| ((a.to_string(), b.to_string()), BigInt::from(*c))).collect(),
        }
    }

    fn betti(h: &[HomologyGroup]) -> Vec<usize> {
        h.iter().map(|g| g.betti).collect()
    }

    #[test]
    fn sphere() {
        let c = build_morse_complex(&data(&[&["min"], &[], &["max"]], &[]));
        assert!(c.check_d2().is_ok());
        assert_eq!(betti(&homology_z(&c).unwrap()), vec![1, 0, 1]);
    }

    #[test]
    fn torus_height() {
        let d = data(
            &[&["min"], &["s1", "s2"], &["max"]],
            &[("s1", "min", 0), ("s2", "min", 0), ("max", "s1", 0), ("max", "s2", 0)],
        );
        let h = homology_z(&build_morse_complex(&d)).unwrap();
        assert_eq!(betti(&h), vec![1, 2, 1]);
    }

    #[test]
    fn cancelling_pair() {
        let h = homology_z(&build_morse_complex(&data(&[&["q"], &["p"]], &[("p", "q", -1)]))).unwrap();
        assert_eq!(betti(&h), vec![0, 0]);
        assert!(h.iter().all(|g| g.torsion.is_empty()));
    }

    #[test]
    fn projective_plane_torsion() {
        let d = data(
            &[&["a"], &["b"], &["c"]],
            &[("b", "a", 0), ("c", "b", 2)],
        );
        let h = homology_z(&build_morse_complex(&d)).unwrap();
        assert_eq!(betti(&h), vec![1, 0, 0]);
        assert_eq!(h[1].torsion, vec!["2".to_string()]);
    }

    #[test]
    fn inconsistent_matrices_report_witness() {
        let d = data(&[&["a"], &["b"], &["c"]], &[("b", "a", 1), ("c", "b", 1)]);
        let w = build_morse_complex(&d).check_d2().unwrap_err();
        assert_eq!((w.degree, w.row, w.col, w.value.as_str()), (2, 0, 0, "1"));
    }
}
