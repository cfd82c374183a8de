//! Dense integer matrices, column vectors and covectors.

use num_bigint::BigInt;
use num_traits::Zero;

use super::LaurentError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntVector(pub Vec<BigInt>);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntCovector(pub Vec<BigInt>);

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::from(1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self, LaurentError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(LaurentError::DimensionMismatch("ragged matrix rows".into()));
        }
        Ok(IntMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
            .expect("ragged literal")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, LaurentError> {
        if self.cols != other.rows {
            return Err(LaurentError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &IntVector) -> Result<IntVector, LaurentError> {
        if self.cols != v.0.len() {
            return Err(LaurentError::DimensionMismatch(format!(
                "{}x{} applied to vector of length {}",
                self.rows,
                self.cols,
                v.0.len()
            )));
        }
        Ok(IntVector(
            (0..self.rows)
                .map(|i| self.row(i).iter().zip(&v.0).map(|(a, b)| a * b).sum())
                .collect(),
        ))
    }

    pub fn add_scaled_identity(&self, c: &BigInt) -> IntMatrix {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            m.data[i * self.cols + i] += c;
        }
        m
    }

    pub fn trace(&self) -> BigInt {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }
}

impl IntVector {
    pub fn from_i64(v: &[i64]) -> Self {
        IntVector(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl IntCovector {
    pub fn from_i64(v: &[i64]) -> Self {
        IntCovector(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pair(&self, v: &IntVector) -> Result<BigInt, LaurentError> {
        if self.0.len() != v.0.len() {
            return Err(LaurentError::DimensionMismatch(format!(
                "covector of length {} paired with vector of length {}",
                self.0.len(),
                v.0.len()
            )));
        }
        Ok(self.0.iter().zip(&v.0).map(|(a, b)| a * b).sum())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_trace() {
        let a = IntMatrix::from_i64(&[&[1, 2], &[3, 4]]);
        let b = a.mul(&a).unwrap();
        assert_eq!(b, IntMatrix::from_i64(&[&[7, 10], &[15, 22]]));
        assert_eq!(b.trace(), BigInt::from(29));
    }

    #[test]
    fn mismatch_is_reported() {
        let a = IntMatrix::from_i64(&[&[1, 2]]);
        assert!(a.apply(&IntVector::from_i64(&[1])).is_err());
        assert!(IntCovector::from_i64(&[1]).pair(&IntVector::from_i64(&[1, 2])).is_err());
    }
}
