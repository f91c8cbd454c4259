//! Association schemes: axiom verification with pinpoint witnesses, the
//! intersection tensor, classification, and fusions.

mod fusion;

pub use fusion::{bm_search, fuse, CanonicalPartition, FusionPartition};

use rayon::prelude::*;

use crate::error::SchemeError;
use crate::matrixkit::ZeroOneMatrix;

/// A verified association scheme. Immutable; only [`scheme_verify`] constructs it.
#[derive(Clone, Debug)]
pub struct AssociationScheme {
    v: usize,
    basis: Vec<ZeroOneMatrix>,
    labels: Vec<String>,
    relation: Vec<u16>,
    tensor: Vec<u64>,
    valencies: Vec<u64>,
    transpose: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SchemeClass {
    Symmetric,
    CommutativeNonsymmetric,
    Noncommutative,
}

impl SchemeClass {
    pub fn name(&self) -> &'static str {
        match self {
            SchemeClass::Symmetric => "symmetric",
            SchemeClass::CommutativeNonsymmetric => "commutative-nonsymmetric",
            SchemeClass::Noncommutative => "noncommutative",
        }
    }
}

impl AssociationScheme {
    pub fn vertices(&self) -> usize {
        self.v
    }

    /// Number of relations `d + 1`, including the diagonal.
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Class count `d`.
    pub fn classes(&self) -> usize {
        self.basis.len() - 1
    }

    pub fn basis(&self) -> &[ZeroOneMatrix] {
        &self.basis
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Index of the relation containing `(x, y)`.
    pub fn relation_of(&self, x: usize, y: usize) -> usize {
        self.relation[x * self.v + y] as usize
    }

    /// Relation indices for all cells, row-major.
    pub fn relation_table(&self) -> &[u16] {
        &self.relation
    }

    /// Intersection number `p_{ij}^k`: `A_i A_j = sum_k p_{ij}^k A_k`.
    pub fn p(&self, i: usize, j: usize, k: usize) -> u64 {
        let r = self.rank();
        self.tensor[(i * r + j) * r + k]
    }

    pub fn valencies(&self) -> &[u64] {
        &self.valencies
    }

    /// Index `i'` with `A_i^T = A_{i'}`.
    pub fn transpose_of(&self, i: usize) -> usize {
        self.transpose[i]
    }

    pub fn transpose_map(&self) -> &[usize] {
        &self.transpose
    }

    pub fn is_commutative(&self) -> bool {
        let r = self.rank();
        (0..r).all(|i| (0..i).all(|j| (0..r).all(|k| self.p(i, j, k) == self.p(j, i, k))))
    }

    pub fn is_symmetric(&self) -> bool {
        self.transpose.iter().enumerate().all(|(i, &t)| i == t)
    }

    pub fn classify(&self) -> SchemeClass {
        if self.is_symmetric() {
            SchemeClass::Symmetric
        } else if self.is_commutative() {
            SchemeClass::CommutativeNonsymmetric
        } else {
            SchemeClass::Noncommutative
        }
    }

    /// Commutativity by explicit matrix products, independent of the tensor.
    pub fn commutes_by_products(&self) -> bool {
        let r = self.rank();
        (0..r).all(|i| {
            (0..i).all(|j| {
                let a = self.basis[i].mul(&self.basis[j]).unwrap();
                let b = self.basis[j].mul(&self.basis[i]).unwrap();
                a == b
            })
        })
    }
}

/// Classification from the intersection tensor.
pub fn classify(s: &AssociationScheme) -> SchemeClass {
    s.classify()
}

/// Verifies the four axioms and extracts the intersection tensor.
///
/// Checks run in order: identity first, nonempty relations, partition of the
/// cells, transpose closure, then closure under products. For the last, the
/// count `#{z : (x,z) in R_i, (z,y) in R_j}` must be constant on each `R_k`; the
/// reference value comes from the first cell of `R_k` in row-major order and the
/// reported witness is the first failing cell.
pub fn scheme_verify(mats: Vec<ZeroOneMatrix>, labels: Option<Vec<String>>) -> Result<AssociationScheme, SchemeError> {
    if mats.is_empty() {
        return Err(SchemeError::Empty);
    }
    let v = mats[0].rows();
    let r = mats.len();
    if r > u16::MAX as usize {
        return Err(SchemeError::ShapeMismatch(format!("{r} relations")));
    }
    for (i, m) in mats.iter().enumerate() {
        if m.rows() != v || m.cols() != v {
            return Err(SchemeError::ShapeMismatch(format!("A_{i} is {}x{}, expected {v}x{v}", m.rows(), m.cols())));
        }
    }
    let labels = match labels {
        Some(l) if l.len() != r => {
            return Err(SchemeError::ShapeMismatch(format!("{} labels for {r} relations", l.len())));
        }
        Some(l) => l,
        None => (0..r).map(|i| format!("R{i}")).collect(),
    };
    for x in 0..v {
        let row = &mats[0];
        if !row.get(x, x) {
            return Err(SchemeError::NotIdentityFirst { row: x, col: x });
        }
        if row.row_weight(x) != 1 {
            let col = row.row_ones(x).find(|&c| c != x).unwrap();
            return Err(SchemeError::NotIdentityFirst { row: x, col });
        }
    }
    if let Some(index) = mats.iter().position(|m| m.is_zero()) {
        return Err(SchemeError::EmptyRelation { index });
    }
    let mut relation = vec![u16::MAX; v * v];
    let mut cover = vec![0u32; v * v];
    for (i, m) in mats.iter().enumerate() {
        for x in 0..v {
            for y in m.row_ones(x) {
                cover[x * v + y] += 1;
                relation[x * v + y] = i as u16;
            }
        }
    }
    if let Some(cell) = cover.iter().position(|&c| c != 1) {
        return Err(SchemeError::NotPartition { row: cell / v, col: cell % v, count: cover[cell] as usize });
    }
    drop(cover);
    let mut transpose = vec![usize::MAX; r];
    for (i, m) in mats.iter().enumerate() {
        let mut target = None;
        for x in 0..v {
            for y in m.row_ones(x) {
                let t = relation[y * v + x] as usize;
                match target {
                    None => target = Some(t),
                    Some(t0) if t0 != t => return Err(SchemeError::NotTransposeClosed { index: i, row: x, col: y }),
                    _ => {}
                }
            }
        }
        transpose[i] = target.unwrap();
    }
    let rel_t: Vec<u16> = (0..v * v).map(|c| relation[(c % v) * v + c / v]).collect();
    let count_cell = |x: usize, y: usize, buf: &mut [u64]| {
        buf.iter_mut().for_each(|b| *b = 0);
        let row = &relation[x * v..(x + 1) * v];
        let col = &rel_t[y * v..(y + 1) * v];
        for (a, b) in row.iter().zip(col.iter()) {
            buf[*a as usize * r + *b as usize] += 1;
        }
    };
    // reference pattern from the first cell of each relation
    let mut reference = vec![0u64; r * r * r];
    let mut ref_cell = vec![(0usize, 0usize); r];
    let mut buf = vec![0u64; r * r];
    for (k, m) in mats.iter().enumerate() {
        let x = (0..v).find(|&x| m.row_weight(x) > 0).unwrap();
        let y = m.row_ones(x).next().unwrap();
        ref_cell[k] = (x, y);
        count_cell(x, y, &mut buf);
        for ij in 0..r * r {
            reference[ij * r + k] = buf[ij];
        }
    }
    let failure = (0..v).into_par_iter().find_map_first(|x| {
        let mut buf = vec![0u64; r * r];
        for y in 0..v {
            count_cell(x, y, &mut buf);
            let k = relation[x * v + y] as usize;
            if let Some(ij) = (0..r * r).find(|&ij| buf[ij] != reference[ij * r + k]) {
                return Some((x, y, ij, k, buf[ij]));
            }
        }
        None
    });
    if let Some((x, y, ij, k, found)) = failure {
        let (ref_row, ref_col) = ref_cell[k];
        return Err(SchemeError::NotClosedUnderProduct {
            i: ij / r,
            j: ij % r,
            k,
            row: x,
            col: y,
            found,
            expected: reference[ij * r + k],
            ref_row,
            ref_col,
        });
    }
    let valencies = mats.iter().map(|m| m.row_weight(0) as u64).collect();
    Ok(AssociationScheme { v, basis: mats, labels, relation, tensor: reference, valencies, transpose })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrixkit::circulant_power;

    fn cyclic_scheme(n: usize) -> Vec<ZeroOneMatrix> {
        (0..n).map(|l| circulant_power(n, l as i64)).collect()
    }

    #[test]
    fn trivial_scheme() {
        let n = 4;
        let s = scheme_verify(
            vec![ZeroOneMatrix::identity(n), ZeroOneMatrix::ones(n, n).and_not(&ZeroOneMatrix::identity(n)).unwrap()],
            None,
        )
        .unwrap();
        assert_eq!(s.p(1, 1, 0), 3);
        assert_eq!(s.p(1, 1, 1), 2);
        assert_eq!(s.classify(), SchemeClass::Symmetric);
    }

    #[test]
    fn cyclic_group_scheme_is_commutative_nonsymmetric() {
        let s = scheme_verify(cyclic_scheme(5), None).unwrap();
        assert_eq!(s.classify(), SchemeClass::CommutativeNonsymmetric);
        assert_eq!(s.p(2, 4, 1), 1);
        assert_eq!(s.transpose_of(2), 3);
    }

    #[test]
    fn witnesses() {
        let mut m = cyclic_scheme(5);
        m[0].set(0, 1, true);
        assert_eq!(scheme_verify(m, None).unwrap_err(), SchemeError::NotIdentityFirst { row: 0, col: 1 });
        let mut m = cyclic_scheme(5);
        m[2].flip(3, 0);
        assert_eq!(scheme_verify(m, None).unwrap_err(), SchemeError::NotPartition { row: 3, col: 0, count: 0 });
        let mut m = cyclic_scheme(5);
        m[1].set(0, 3, true);
        assert_eq!(scheme_verify(m, None).unwrap_err(), SchemeError::NotPartition { row: 0, col: 3, count: 2 });
        let m = vec![ZeroOneMatrix::identity(3), ZeroOneMatrix::zeros(3, 3)];
        assert_eq!(scheme_verify(m, None).unwrap_err(), SchemeError::EmptyRelation { index: 1 });
        assert_eq!(scheme_verify(vec![], None).unwrap_err(), SchemeError::Empty);
    }

    #[test]
    fn closure_failure_names_axiom_iv() {
        // path-like 3-class split of K_4 edges breaks closure
        let n = 4;
        let a1 = ZeroOneMatrix::from_fn(n, n, |x, y| (x, y) == (0, 1) || (x, y) == (1, 0));
        let a2 = ZeroOneMatrix::ones(n, n).and_not(&ZeroOneMatrix::identity(n)).unwrap().and_not(&a1).unwrap();
        let err = scheme_verify(vec![ZeroOneMatrix::identity(n), a1, a2], None).unwrap_err();
        assert!(matches!(err, SchemeError::NotClosedUnderProduct { .. }), "{err:?}");
    }
}
