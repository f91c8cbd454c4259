use std::fmt;

use super::bitmat::ZeroOneMatrix;
use crate::error::MatrixError;

/// Dense integer matrix with overflow-checked arithmetic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        if self.rows <= 30 {
            for r in 0..self.rows {
                writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
            }
        }
        Ok(())
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn ones(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![1; rows * cols] }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        IntMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self, MatrixError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(MatrixError::ShapeMismatch("ragged rows".into()));
        }
        Ok(IntMatrix { rows: r, cols: c, data: rows.concat() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    fn same_shape(&self, other: &Self, op: &str) -> Result<(), MatrixError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(MatrixError::ShapeMismatch(format!(
                "{op}: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, MatrixError> {
        self.same_shape(other, "add")?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.checked_add(*b).ok_or(MatrixError::Overflow("add")))
            .collect::<Result<_, _>>()?;
        Ok(IntMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, MatrixError> {
        self.same_shape(other, "sub")?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.checked_sub(*b).ok_or(MatrixError::Overflow("sub")))
            .collect::<Result<_, _>>()?;
        Ok(IntMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn checked_scale(&self, k: i64) -> Result<Self, MatrixError> {
        let data =
            self.data.iter().map(|a| a.checked_mul(k).ok_or(MatrixError::Overflow("scale"))).collect::<Result<_, _>>()?;
        Ok(IntMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::ShapeMismatch(format!(
                "mul: {}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b == 0 {
                        continue;
                    }
                    let t = a.checked_mul(b).ok_or(MatrixError::Overflow("mul"))?;
                    let v = out.get(i, j).checked_add(t).ok_or(MatrixError::Overflow("mul"))?;
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn kron(&self, other: &Self) -> Result<Self, MatrixError> {
        let (r2, c2) = (other.rows, other.cols);
        let mut out = Self::zeros(self.rows * r2, self.cols * c2);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..r2 {
                    for l in 0..c2 {
                        let v = a.checked_mul(other.get(k, l)).ok_or(MatrixError::Overflow("kron"))?;
                        out.set(i * r2 + k, j * c2 + l, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r))
    }

    pub fn tau(&self) -> Result<i64, MatrixError> {
        self.data.iter().try_fold(0i64, |acc, &x| acc.checked_add(x).ok_or(MatrixError::Overflow("tau")))
    }

    pub fn to_zero_one(&self) -> Result<ZeroOneMatrix, MatrixError> {
        let mut m = ZeroOneMatrix::zeros(self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                match self.get(r, c) {
                    0 => {}
                    1 => m.set(r, c, true),
                    v => return Err(MatrixError::NotBinary { row: r, col: c, value: v }),
                }
            }
        }
        Ok(m)
    }

    /// First cell where the matrices differ, for witnesses.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize, i64, i64)> {
        if self.rows != other.rows || self.cols != other.cols {
            return Some((usize::MAX, usize::MAX, 0, 0));
        }
        (0..self.data.len()).find(|&i| self.data[i] != other.data[i]).map(|i| {
            (i / self.cols, i % self.cols, self.data[i], other.data[i])
        })
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|r| self.data[r * self.cols..(r + 1) * self.cols].to_vec()).collect()
    }
}
