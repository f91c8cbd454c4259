use std::fmt;

use super::intmat::IntMatrix;
use crate::error::MatrixError;

/// Bit-packed (0,1)-matrix, rows padded to whole 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ZeroOneMatrix {
    rows: usize,
    cols: usize,
    wpr: usize,
    bits: Vec<u64>,
}

impl fmt::Debug for ZeroOneMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ZeroOneMatrix {}x{}", self.rows, self.cols)?;
        if self.rows <= 40 && self.cols <= 80 {
            for r in 0..self.rows {
                let s: String = (0..self.cols).map(|c| if self.get(r, c) { '1' } else { '.' }).collect();
                writeln!(f, "  {s}")?;
            }
        }
        Ok(())
    }
}

impl ZeroOneMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let wpr = cols.div_ceil(64);
        ZeroOneMatrix { rows, cols, wpr, bits: vec![0; rows * wpr] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn ones(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| true)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                if f(r, c) {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self, MatrixError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(MatrixError::ShapeMismatch(format!("row {i} has length {}, expected {c}", row.len())));
            }
            for (j, &v) in row.iter().enumerate() {
                match v {
                    0 => {}
                    1 => m.set(i, j, true),
                    _ => return Err(MatrixError::NotBinary { row: i, col: j, value: v as i64 }),
                }
            }
        }
        Ok(m)
    }

    /// Matrix whose row `r` has ones exactly at `rows[r]`.
    pub fn from_row_lists(n_rows: usize, n_cols: usize, rows: &[Vec<usize>]) -> Result<Self, MatrixError> {
        if rows.len() != n_rows {
            return Err(MatrixError::ShapeMismatch(format!("{} row lists for {n_rows} rows", rows.len())));
        }
        let mut m = Self::zeros(n_rows, n_cols);
        for (r, cols) in rows.iter().enumerate() {
            for &c in cols {
                if c >= n_cols {
                    return Err(MatrixError::ShapeMismatch(format!("column {c} out of range in row {r}")));
                }
                m.set(r, c, true);
            }
        }
        Ok(m)
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

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        (self.bits[r * self.wpr + c / 64] >> (c % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        let w = &mut self.bits[r * self.wpr + c / 64];
        if v {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        self.bits[r * self.wpr + c / 64] ^= 1 << (c % 64);
    }

    pub fn row_words(&self, r: usize) -> &[u64] {
        &self.bits[r * self.wpr..(r + 1) * self.wpr]
    }

    /// Column indices of the ones in row `r`, increasing.
    pub fn row_ones(&self, r: usize) -> impl Iterator<Item = usize> + '_ {
        self.row_words(r).iter().enumerate().flat_map(|(w, &word)| {
            let mut x = word;
            std::iter::from_fn(move || {
                if x == 0 {
                    return None;
                }
                let t = x.trailing_zeros() as usize;
                x &= x - 1;
                Some(w * 64 + t)
            })
        })
    }

    pub fn row_weight(&self, r: usize) -> usize {
        self.row_words(r).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Sum of all entries.
    pub fn tau(&self) -> u64 {
        self.bits.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.row_ones(r) {
                t.set(c, r, true);
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
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

    fn zip(&self, other: &Self, op: &str, f: impl Fn(u64, u64) -> u64) -> Result<Self, MatrixError> {
        self.same_shape(other, op)?;
        let bits = self.bits.iter().zip(other.bits.iter()).map(|(&a, &b)| f(a, b)).collect();
        Ok(ZeroOneMatrix { rows: self.rows, cols: self.cols, wpr: self.wpr, bits })
    }

    pub fn and(&self, other: &Self) -> Result<Self, MatrixError> {
        self.zip(other, "and", |a, b| a & b)
    }
    pub fn or(&self, other: &Self) -> Result<Self, MatrixError> {
        self.zip(other, "or", |a, b| a | b)
    }
    pub fn and_not(&self, other: &Self) -> Result<Self, MatrixError> {
        self.zip(other, "and_not", |a, b| a & !b)
    }

    /// `self - other` where the support of `other` lies inside that of `self`.
    pub fn checked_sub(&self, other: &Self) -> Result<Self, MatrixError> {
        self.same_shape(other, "sub")?;
        for r in 0..self.rows {
            for (a, b) in self.row_words(r).iter().zip(other.row_words(r)) {
                if b & !a != 0 {
                    let c = (0..self.cols).find(|&c| other.get(r, c) && !self.get(r, c)).unwrap();
                    return Err(MatrixError::NotBinary { row: r, col: c, value: -1 });
                }
            }
        }
        self.and_not(other)
    }

    /// `self + other` for matrices with disjoint support.
    pub fn checked_add(&self, other: &Self) -> Result<Self, MatrixError> {
        self.same_shape(other, "add")?;
        for r in 0..self.rows {
            for (a, b) in self.row_words(r).iter().zip(other.row_words(r)) {
                if a & b != 0 {
                    let c = (0..self.cols).find(|&c| other.get(r, c) && self.get(r, c)).unwrap();
                    return Err(MatrixError::NotBinary { row: r, col: c, value: 2 });
                }
            }
        }
        self.or(other)
    }

    /// Integer product by popcount of row/column word intersections.
    pub fn mul(&self, other: &Self) -> Result<IntMatrix, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::ShapeMismatch(format!(
                "mul: {}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let t = other.transpose();
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let a = self.row_words(r);
            for c in 0..other.cols {
                let b = t.row_words(c);
                let s: u32 = a.iter().zip(b).map(|(x, y)| (x & y).count_ones()).sum();
                out.set(r, c, s as i64);
            }
        }
        Ok(out)
    }

    pub fn to_int(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.rows, self.cols);
        for r in 0..self.rows {
            for c in self.row_ones(r) {
                out.set(r, c, 1);
            }
        }
        out
    }

    pub fn kron(&self, other: &Self) -> Self {
        let (r2, c2) = (other.rows, other.cols);
        let mut out = Self::zeros(self.rows * r2, self.cols * c2);
        for i in 0..self.rows {
            for j in self.row_ones(i) {
                for k in 0..r2 {
                    for l in other.row_ones(k) {
                        out.set(i * r2 + k, j * c2 + l, true);
                    }
                }
            }
        }
        out
    }

    /// Square block matrix from a grid of equally sized blocks.
    pub fn from_blocks(blocks: &[Vec<ZeroOneMatrix>]) -> Result<Self, MatrixError> {
        let br = blocks.len();
        let bc = blocks.first().map_or(0, |r| r.len());
        let (h, w) = blocks
            .first()
            .and_then(|r| r.first())
            .map(|b| (b.rows, b.cols))
            .ok_or_else(|| MatrixError::ShapeMismatch("empty block grid".into()))?;
        let mut out = Self::zeros(br * h, bc * w);
        for (i, row) in blocks.iter().enumerate() {
            if row.len() != bc {
                return Err(MatrixError::ShapeMismatch("ragged block grid".into()));
            }
            for (j, b) in row.iter().enumerate() {
                if b.rows != h || b.cols != w {
                    return Err(MatrixError::ShapeMismatch(format!("block ({i}, {j})")));
                }
                for r in 0..h {
                    for c in b.row_ones(r) {
                        out.set(i * h + r, j * w + c, true);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Row lists of the ones, the natural sparse form for serialisation.
    pub fn to_row_lists(&self) -> Vec<Vec<usize>> {
        (0..self.rows).map(|r| self.row_ones(r).collect()).collect()
    }
}
