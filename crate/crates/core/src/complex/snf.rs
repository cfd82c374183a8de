//! Smith normal form invariants over `Z`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::laurent::IntMatrix;

/// Nonzero invariant factors `d_1 | d_2 | ... | d_r`, all positive.
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    let mut a = m.to_rows();
    let rows = m.rows();
    let cols = m.cols();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero |entry| in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, v) in row.iter().enumerate().skip(t) {
                if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut done = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let v = &q * &a[t][j];
                    a[i][j] -= v;
                }
                if !a[i][t].is_zero() {
                    done = false;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let v = &q * &row[t];
                    row[j] -= v;
                }
                if !a[t][j].is_zero() {
                    done = false;
                }
            }
            if done {
                // the pivot must divide the rest of the block
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !(&a[i][j] % &a[t][t]).is_zero());
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in t..cols {
                            let v = a[i][j].clone();
                            a[t][j] += v;
                        }
                        continue;
                    }
                }
            }
            // move the smallest nonzero entry of row/column t into the pivot
            let mut best = (t, t);
            for i in t..rows {
                if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

pub fn rank(m: &IntMatrix) -> usize {
    invariant_factors(m).len()
}

/// Factors greater than one.
pub fn torsion(m: &IntMatrix) -> Vec<BigInt> {
    invariant_factors(m).into_iter().filter(|d| !d.is_one()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(rows: &[&[i64]]) -> Vec<i64> {
        invariant_factors(&IntMatrix::from_i64(rows)).iter().map(|d| i64::try_from(d).unwrap()).collect()
    }

    #[test]
    fn known_forms() {
        assert_eq!(f(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]), vec![2, 6, 12]);
        assert_eq!(f(&[&[0, 0], &[0, 0]]), Vec::<i64>::new());
        assert_eq!(f(&[&[2, 0], &[0, 3]]), vec![1, 6]);
        assert_eq!(f(&[&[1, 1], &[1, 1]]), vec![1]);
    }
}
