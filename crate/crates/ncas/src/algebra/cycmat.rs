//! Dense matrices over [`CycScalar`].

use std::fmt;

use serde::{Deserialize, Serialize};

use super::cyclo::CycScalar;
use crate::error::ScalarError;

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycMatrix {
    rows: usize,
    cols: usize,
    data: Vec<CycScalar>,
}

impl fmt::Debug for CycMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CycMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl CycMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CycMatrix { rows, cols, data: vec![CycScalar::zero(1); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = CycScalar::one(1);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> CycScalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        CycMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<CycScalar>>) -> Result<Self, ScalarError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(ScalarError::Dimension("ragged rows".into()));
        }
        Ok(CycMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &CycScalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: CycScalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[CycScalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<CycScalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<CycScalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).conj())
    }

    pub fn checked_mul(&self, other: &CycMatrix) -> Result<CycMatrix, ScalarError> {
        if self.cols != other.rows {
            return Err(ScalarError::Dimension(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).checked_add(&a.checked_mul(b)?)?;
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Inverse by Gauss-Jordan elimination over the field.
    pub fn inverse(&self) -> Result<CycMatrix, ScalarError> {
        if self.rows != self.cols {
            return Err(ScalarError::Dimension("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut inv = Self::identity(n).to_rows();
        for col in 0..n {
            let piv = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(ScalarError::Singular)?;
            a.swap(col, piv);
            inv.swap(col, piv);
            let p = a[col][col].inv()?;
            for j in 0..n {
                a[col][j] = a[col][j].checked_mul(&p)?;
                inv[col][j] = inv[col][j].checked_mul(&p)?;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for j in 0..n {
                    if !a[col][j].is_zero() {
                        a[r][j] = a[r][j].checked_sub(&f.checked_mul(&a[col][j])?)?;
                    }
                    if !inv[col][j].is_zero() {
                        inv[r][j] = inv[r][j].checked_sub(&f.checked_mul(&inv[col][j])?)?;
                    }
                }
            }
        }
        Self::from_rows(inv)
    }

    /// Exact rank by row reduction over the field.
    pub fn rank(&self) -> Result<usize, ScalarError> {
        let mut a = self.to_rows();
        let (mut rank, mut row) = (0usize, 0usize);
        for col in 0..self.cols {
            let Some(piv) = (row..self.rows).find(|&r| !a[r][col].is_zero()) else { continue };
            a.swap(row, piv);
            let p = a[row][col].inv()?;
            for r in row + 1..self.rows {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].checked_mul(&p)?;
                for j in col..self.cols {
                    if !a[row][j].is_zero() {
                        a[r][j] = a[r][j].checked_sub(&f.checked_mul(&a[row][j])?)?;
                    }
                }
            }
            row += 1;
            rank += 1;
            if row == self.rows {
                break;
            }
        }
        Ok(rank)
    }

    pub fn scale(&self, s: &CycScalar) -> CycMatrix {
        CycMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.mul(s)).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| (0..self.cols).all(|c| if r == c { self.get(r, c).is_one() } else { self.get(r, c).is_zero() }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_dft() {
        let n = 5;
        let m = CycMatrix::from_fn(n, n, |r, c| CycScalar::root_of_unity(5, (r * c) as i64));
        let inv = m.inverse().unwrap();
        assert!(m.checked_mul(&inv).unwrap().is_identity());
        assert_eq!(m.rank().unwrap(), 5);
    }

    #[test]
    fn rank_of_outer_product() {
        let v: Vec<CycScalar> = (0..4).map(|k| CycScalar::root_of_unity(4, k)).collect();
        let m = CycMatrix::from_fn(4, 4, |r, c| v[r].mul(&v[c].conj()));
        assert_eq!(m.rank().unwrap(), 1);
        assert_eq!(m.inverse(), Err(ScalarError::Singular));
    }
}
