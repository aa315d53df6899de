//! Small dense matrices over exact rationals.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds from row vectors; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged matrix rows".into()));
        }
        Ok(RatMatrix { rows: rows.len(), cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| Rational::from_integer(v.into())).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let s = (0..self.cols).fold(Rational::zero(), |acc, k| acc + self.get(i, k) * other.get(k, j));
                out.set(i, j, s);
            }
        }
        Ok(out)
    }

    fn zip(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Dimension("matrix shapes differ".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect();
        Ok(RatMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        RatMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| v * k).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Sum of squares of all entries.
    pub fn frobenius_sq(&self) -> Rational {
        self.data.iter().fold(Rational::zero(), |acc, v| acc + v * v)
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            if pivot != col {
                for j in 0..n {
                    a.data.swap(pivot * n + j, col * n + j);
                    inv.data.swap(pivot * n + j, col * n + j);
                }
            }
            let p = a.get(col, col).clone();
            for j in 0..n {
                a.set(col, j, a.get(col, j) / &p);
                inv.set(col, j, inv.get(col, j) / &p);
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col).clone();
                for j in 0..n {
                    a.set(r, j, a.get(r, j) - &f * a.get(col, j));
                    inv.set(r, j, inv.get(r, j) - &f * inv.get(col, j));
                }
            }
        }
        Some(inv)
    }

    /// `(M + Mᵗ)/2`.
    pub fn symmetrize(&self) -> Result<Self> {
        let half = Rational::new(1.into(), 2.into());
        Ok(self.add(&self.transpose())?.scale(&half))
    }

    /// Leading `cols` columns.
    pub fn first_columns(&self, cols: usize) -> Self {
        let mut out = Self::zeros(self.rows, cols);
        for i in 0..self.rows {
            for j in 0..cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        out
    }
}

/// Cayley transform `(I − S)(I + S)⁻¹` of a skew-symmetric `S`; the result is
/// an exact rational orthogonal matrix.
pub fn cayley(s: &RatMatrix) -> Result<RatMatrix> {
    let n = s.rows();
    if !s.is_square() || !s.add(&s.transpose())?.is_zero() {
        return Err(Error::Validation { path: "S".into(), message: "Cayley transform needs a skew-symmetric matrix".into() });
    }
    let id = RatMatrix::identity(n);
    let inv = id.add(s)?.inverse().expect("I + S is invertible for skew-symmetric S");
    id.sub(s)?.mul(&inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn inverse_round_trip() {
        let m = RatMatrix::from_i64(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), RatMatrix::identity(3));
        assert!(RatMatrix::from_i64(&[&[1, 2], &[2, 4]]).unwrap().inverse().is_none());
    }

    #[test]
    fn cayley_is_orthogonal() {
        let mut s = RatMatrix::zeros(2, 2);
        s.set(0, 1, rat(1, 2));
        s.set(1, 0, rat(-1, 2));
        let q = cayley(&s).unwrap();
        assert_eq!(q.transpose().mul(&q).unwrap(), RatMatrix::identity(2));
        // (I − S)(I + S)⁻¹ with S = [[0, ½], [−½, 0]] is [[3/5, −4/5], [4/5, 3/5]]
        assert_eq!(q.row(0), &[rat(3, 5), rat(-4, 5)]);
        assert!(cayley(&RatMatrix::identity(2)).is_err());
    }

    #[test]
    fn symmetric_checks() {
        let a = RatMatrix::from_i64(&[&[0, 1], &[0, 0]]).unwrap();
        assert!(!a.is_symmetric());
        assert!(a.symmetrize().unwrap().is_symmetric());
        assert!(a.mul(&RatMatrix::zeros(3, 1)).is_err());
    }
}
