use super::{BgwScheme, GhScheme};
use crate::algebra::{AbelianGroup, CycMatrix, CycScalar, FiniteField};
use crate::error::{BuildError, SchemeError};
use crate::schemes::{fuse, AssociationScheme, FusionPartition};
use crate::spectra::{bgw_block_labels, fused_eigensystem, gh_index, wedderburn_bgw, wedderburn_gh, Eigensystem};

/// A symmetric fusion together with the spectral data of both schemes.
#[derive(Clone, Debug)]
pub struct Fusion {
    pub partition: FusionPartition,
    pub scheme: AssociationScheme,
    pub parent: Eigensystem,
    pub eigensystem: Eigensystem,
}

impl Fusion {
    pub fn q_matrix(&self) -> &CycMatrix {
        self.eigensystem.q_matrix()
    }
}

/// `{0}`, `{l, m-l}`, `{m/2}` for each type, type 0 first.
pub fn fusion_partition_bgw(m: usize) -> FusionPartition {
    let mut blocks = Vec::new();
    for t in 0..2 {
        blocks.push(vec![t * m]);
        for l in bgw_block_labels(m) {
            blocks.push(vec![t * m + l, t * m + m - l]);
        }
        if m % 2 == 0 {
            blocks.push(vec![t * m + m / 2]);
        }
    }
    FusionPartition::new(blocks, 2 * m).expect("valid partition")
}

/// `{(0,t)}`, `{(a,t), (-a,t)}` over the half transversal for each type, then `{2}`.
pub fn fusion_partition_gh(field: &FiniteField) -> FusionPartition {
    let q = field.order() as usize;
    let mut blocks = Vec::new();
    for t in 0..2 {
        blocks.push(vec![gh_index(q, 0, t)]);
        for a in field.half_transversal() {
            blocks.push(vec![gh_index(q, a as usize, t), gh_index(q, field.neg(a) as usize, t)]);
        }
    }
    blocks.push(vec![2 * q]);
    FusionPartition::new(blocks, 2 * q + 1).expect("valid partition")
}

fn finish(s: &AssociationScheme, parent: Eigensystem, partition: FusionPartition) -> Result<Fusion, BuildError> {
    let scheme = fuse(s, &partition)?;
    if !scheme.is_symmetric() {
        return Err(SchemeError::ShapeMismatch(format!("fusion {} is not symmetric", scheme.labels().join(","))).into());
    }
    let eigensystem = fused_eigensystem(&parent, &scheme, &partition)?;
    Ok(Fusion { partition, scheme, parent, eigensystem })
}

/// Pairs `(l,t)` with `(m-l,t)`.
pub fn fusion_bgw(b: &BgwScheme) -> Result<Fusion, BuildError> {
    let parent = wedderburn_bgw(&b.scheme, b.spec.q, b.spec.m)?;
    finish(&b.scheme, parent, fusion_partition_bgw(b.spec.m))
}

/// Pairs `(a,t)` with `(-a,t)`.
pub fn fusion_gh(g: &GhScheme) -> Result<Fusion, BuildError> {
    let parent = wedderburn_gh(&g.scheme, &g.field)?;
    finish(&g.scheme, parent, fusion_partition_gh(&g.field))
}

fn int(x: i64) -> CycScalar {
    CycScalar::from_int(1, x)
}

fn transpose(cols: Vec<Vec<CycScalar>>) -> Vec<Vec<CycScalar>> {
    let rows = cols.first().map_or(0, |c| c.len());
    (0..rows).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect()
}

/// Displayed second eigenmatrix of the BGW fusion, rows in fused relation order.
/// One column per displayed entry: `E0`, `E1`, the two `m/2` columns when `m` is even,
/// then one column per pair `{k, m-k}`.
pub fn stated_fused_q_bgw(q: usize, m: usize) -> Vec<Vec<CycScalar>> {
    let part = fusion_partition_bgw(m);
    let n = q as i64;
    let g = AbelianGroup::cyclic(m as u32);
    // value on each fused relation from per-type functions of a representative
    let col = |f: &dyn Fn(usize, usize) -> CycScalar| -> Vec<CycScalar> {
        part.blocks().iter().map(|b| f(b[0] % m, b[0] / m)).collect()
    };
    let mut cols = vec![col(&|_, _| int(1)), col(&|_, t| int(if t == 0 { n } else { -1 }))];
    let half = CycScalar::from_ratio(1, n + 1, 2);
    if m % 2 == 0 {
        let chi = g.character((m / 2) as u32);
        let rt_inv = CycScalar::sqrt(m as u32, q as u64).inv().expect("n > 0");
        for sign in [1, -1] {
            cols.push(col(&|l, t| {
                let x = chi.value(l as u32).mul(&half);
                if t == 0 {
                    x
                } else {
                    x.mul(&rt_inv).scale_int(sign)
                }
            }));
        }
    }
    for k in bgw_block_labels(m) {
        let (a, b) = (g.character(k as u32), g.character((m - k) as u32));
        cols.push(col(&|l, _| a.value(l as u32).add(&b.value(l as u32)).mul(&half)));
    }
    transpose(cols)
}

/// Displayed second eigenmatrix of the GH fusion, rows in fused relation order.
/// Columns `E0`, `E1`, `E2`, then one per pair `{a, -a}` of the half transversal.
pub fn stated_fused_q_gh(field: &FiniteField) -> Vec<Vec<CycScalar>> {
    let part = fusion_partition_gh(field);
    let q = field.order() as usize;
    let qi = q as i64;
    let g = AbelianGroup::additive(field);
    // t = 2 marks A_2
    let col = |f: &dyn Fn(usize, usize) -> CycScalar| -> Vec<CycScalar> {
        part.blocks().iter().map(|b| if b[0] == 2 * q { f(0, 2) } else { f(b[0] % q, b[0] / q) }).collect()
    };
    let by_type = |x: [i64; 3]| move |_: usize, t: usize| int(x[t]);
    let mut cols = vec![col(&by_type([1, 1, 1])), col(&by_type([qi * qi - 1, 0, -(qi + 1)])), col(&by_type([qi, -1, qi]))];
    for a in field.half_transversal() {
        let (x, y) = (g.character(a), g.character(field.neg(a)));
        cols.push(col(&|c, t| {
            let s = x.value(c as u32).add(&y.value(c as u32));
            match t {
                0 => s.mul(&CycScalar::from_ratio(1, qi * (qi + 1), 2)),
                1 => s.mul(&CycScalar::from_ratio(1, qi + 1, 2)),
                _ => int(0),
            }
        }));
    }
    transpose(cols)
}

#[cfg(test)]
mod tests {
    use super::super::{bgw_scheme, gh_scheme};
    use super::*;
    use crate::schemes::SchemeClass;

    fn columns(m: &CycMatrix) -> Vec<Vec<CycScalar>> {
        (0..m.cols()).map(|c| m.column(c)).collect()
    }

    fn stated_columns(rows: &[Vec<CycScalar>]) -> Vec<Vec<CycScalar>> {
        (0..rows[0].len()).map(|c| rows.iter().map(|r| r[c].clone()).collect()).collect()
    }

    #[test]
    fn bgw_7_3_fusion() {
        let f = fusion_bgw(&bgw_scheme(7, 3).unwrap()).unwrap();
        assert_eq!(f.partition.blocks(), &[vec![0], vec![1, 2], vec![3], vec![4, 5]]);
        assert_eq!(f.scheme.classify(), SchemeClass::Symmetric);
        assert_eq!(f.eigensystem.rank(), 4);
        let got = columns(f.q_matrix());
        let want = stated_columns(&stated_fused_q_bgw(7, 3));
        assert!(got.contains(&want[0]) && got.contains(&want[1]));
        // the displayed type-1 entry lacks a 1/sqrt(n) factor
        assert!(!got.contains(&want[2]));
    }

    #[test]
    fn bgw_5_2_fusion_matches_display() {
        let f = fusion_bgw(&bgw_scheme(5, 2).unwrap()).unwrap();
        let got = columns(f.q_matrix());
        for c in stated_columns(&stated_fused_q_bgw(5, 2)) {
            assert!(got.contains(&c));
        }
    }

    #[test]
    fn gh_3_fusion_matches_display() {
        let g = gh_scheme(3).unwrap();
        let f = fusion_gh(&g).unwrap();
        assert_eq!(f.scheme.classes(), 4);
        assert_eq!(f.scheme.classify(), SchemeClass::Symmetric);
        let got = columns(f.q_matrix());
        for c in stated_columns(&stated_fused_q_gh(&g.field)) {
            assert!(got.contains(&c), "{c:?}");
        }
    }
}
