//! Difference matrices BGW(q+1, q, q-1) and GH(q, 1), the symmetric idempotent
//! Latin square from a round-robin one-factorization, and the SGDD check.

mod latin;

pub use latin::{latin_build, verify_latin, LatinSquare, LatinSymbol};

use crate::algebra::{AbelianGroup, FiniteField};
use crate::error::DesignError;
use crate::matrixkit::{GroupMatrix, IntMatrix, ZeroOneMatrix};

/// Symmetric BGW(q+1, q, q-1) over `Z_m` from discrete logarithms on the projective line.
///
/// Points are the field elements in canonical order followed by infinity. Entries
/// involving infinity (off the diagonal) are the group identity.
pub fn bgw_build(field: &FiniteField, m: u32) -> Result<GroupMatrix, DesignError> {
    let q = field.order();
    if m == 0 || (q - 1) % m != 0 {
        return Err(DesignError::DivisibilityFailure { m: m as u64, q_minus_one: (q - 1) as u64 });
    }
    let phi_minus_one = field.dlog(field.minus_one())? % m;
    if phi_minus_one != 0 {
        return Err(DesignError::SymmetryObstruction { m: m as u64, phi_minus_one: phi_minus_one as u64 });
    }
    let inf = q as usize;
    let log = |x: u32| field.dlog(x).map(|d| d % m);
    let mut entries = Vec::with_capacity((inf + 1) * (inf + 1));
    for r in 0..=inf {
        for c in 0..=inf {
            entries.push(if r == c {
                None
            } else if r == inf || c == inf {
                Some(0)
            } else {
                Some(log(field.sub(r as u32, c as u32))?)
            });
        }
    }
    Ok(GroupMatrix::new(AbelianGroup::cyclic(m), inf + 1, entries)?)
}

/// Multiplication table of GF(q), a GH(q, 1) over the additive group.
pub fn gh_build(field: &FiniteField) -> GroupMatrix {
    let q = field.order() as usize;
    GroupMatrix::from_fn(AbelianGroup::additive(field), q, |a, b| Some(field.mul(a as u32, b as u32)))
}

/// Parameters recovered by [`verify_bgw`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DesignParams {
    pub v: usize,
    pub k: usize,
    /// Common overlap of the supports of two distinct rows.
    pub lambda: usize,
    /// Number of times each group element occurs among row differences, `lambda / |G|`.
    pub multiplicity: usize,
    pub symmetric: bool,
    pub zero_diagonal: bool,
}

/// Checks the balanced generalized weighing property over the matrix's group.
///
/// Every row has the same weight `k`, distinct rows overlap in `lambda` columns,
/// and over the overlap each difference `w_rj - w_sj` occurs `lambda / |G|` times.
pub fn verify_bgw(w: &GroupMatrix) -> Result<DesignParams, DesignError> {
    let n = w.order();
    let g = w.group;
    let order = g.order();
    for r in 0..n {
        for c in 0..n {
            if let Some(x) = w.get(r, c) {
                if x >= order {
                    return Err(DesignError::BadEntry { row: r, col: c, order });
                }
            }
        }
    }
    if n < 2 {
        return Err(DesignError::OrderTooSmall(n));
    }
    let weights: Vec<usize> = (0..n).map(|r| (0..n).filter(|&c| w.get(r, c).is_some()).count()).collect();
    let mut tally = std::collections::BTreeMap::new();
    for &x in &weights {
        *tally.entry(x).or_insert(0usize) += 1;
    }
    let k = tally.iter().max_by_key(|(w, c)| (**c, std::cmp::Reverse(**w))).map(|(w, _)| *w).unwrap();
    if let Some(row) = (0..n).find(|&r| weights[r] != k) {
        return Err(DesignError::RowWeightVaries { row, weight: weights[row], expected: k });
    }
    let mut lambda = None;
    let mut counts = vec![0usize; order as usize];
    for a in 0..n {
        for b in a + 1..n {
            counts.iter_mut().for_each(|c| *c = 0);
            let mut overlap = 0usize;
            for c in 0..n {
                if let (Some(x), Some(y)) = (w.get(a, c), w.get(b, c)) {
                    overlap += 1;
                    counts[g.sub(x, y) as usize] += 1;
                }
            }
            let expected = *lambda.get_or_insert(overlap);
            if overlap != expected {
                return Err(DesignError::SupportOverlap { row_a: a, row_b: b, count: overlap, expected });
            }
            let per = expected / order as usize;
            if let Some(e) = (0..order as usize).find(|&e| counts[e] * order as usize != expected) {
                return Err(DesignError::NotBalanced { row_a: a, row_b: b, element: e as u32, count: counts[e], expected: per });
            }
        }
    }
    let lambda = lambda.unwrap();
    Ok(DesignParams {
        v: n,
        k,
        lambda,
        multiplicity: lambda / order as usize,
        symmetric: w.is_symmetric(),
        zero_diagonal: (0..n).all(|i| w.get(i, i).is_none()),
    })
}

/// Checks the generalized Hadamard property, i.e. a BGW with no zero entries.
pub fn verify_gh(h: &GroupMatrix) -> Result<DesignParams, DesignError> {
    let p = verify_bgw(h)?;
    if p.k != p.v {
        let row = (0..h.order()).find(|&r| (0..h.order()).any(|c| h.get(r, c).is_none())).unwrap_or(0);
        return Err(DesignError::RowWeightVaries { row, weight: p.k, expected: p.v });
    }
    Ok(p)
}

/// Parameters of a symmetric group divisible design on `m` classes of size `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SgddParams {
    pub v: usize,
    pub k: usize,
    pub m: usize,
    pub n: usize,
    pub lambda1: i64,
    pub lambda2: i64,
}

/// Failing cell of an SGDD product check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SgddWitness {
    pub product: &'static str,
    pub row: usize,
    pub col: usize,
    pub expected: i64,
    pub found: i64,
}

fn sgdd_target(p: &SgddParams) -> Result<IntMatrix, DesignError> {
    let blocks = IntMatrix::identity(p.m).kron(&IntMatrix::ones(p.n, p.n))?;
    let within = blocks.checked_sub(&IntMatrix::identity(p.v))?;
    let across = IntMatrix::ones(p.v, p.v).checked_sub(&blocks)?;
    Ok(IntMatrix::identity(p.v)
        .checked_scale(p.k as i64)?
        .checked_add(&within.checked_scale(p.lambda1)?)?
        .checked_add(&across.checked_scale(p.lambda2)?)?)
}

/// `N N^T = N^T N = k I + lambda1 (I_m ⊗ J_n - I) + lambda2 (J - I_m ⊗ J_n)`.
///
/// Returns `Ok(None)` when both products match, or the first failing cell.
pub fn verify_sgdd(nmat: &ZeroOneMatrix, p: &SgddParams) -> Result<Option<SgddWitness>, DesignError> {
    if p.m * p.n != p.v {
        return Err(DesignError::ShapeMismatch(format!("{} classes of size {} for v = {}", p.m, p.n, p.v)));
    }
    if nmat.rows() != p.v || nmat.cols() != p.v {
        return Err(DesignError::ShapeMismatch(format!("N is {}x{}, expected order {}", nmat.rows(), nmat.cols(), p.v)));
    }
    let target = sgdd_target(p)?;
    let t = nmat.transpose();
    for (name, prod) in [("N N^T", nmat.mul(&t)?), ("N^T N", t.mul(nmat)?)] {
        if let Some((row, col, found, expected)) = prod.first_difference(&target) {
            return Ok(Some(SgddWitness { product: name, row, col, expected, found }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bgw_7_3_is_balanced() {
        let f = FiniteField::new(7, 1).unwrap();
        let w = bgw_build(&f, 3).unwrap();
        let p = verify_bgw(&w).unwrap();
        assert_eq!((p.v, p.k, p.lambda, p.multiplicity), (8, 7, 6, 2));
        assert!(p.symmetric && p.zero_diagonal);
    }

    #[test]
    fn bgw_preconditions() {
        let f = FiniteField::new(7, 1).unwrap();
        assert!(matches!(bgw_build(&f, 4), Err(DesignError::DivisibilityFailure { .. })));
        let f5 = FiniteField::new(5, 1).unwrap();
        assert_eq!(bgw_build(&f5, 4), Err(DesignError::SymmetryObstruction { m: 4, phi_minus_one: 2 }));
        let f13 = FiniteField::new(13, 1).unwrap();
        assert!(matches!(bgw_build(&f13, 4), Err(DesignError::SymmetryObstruction { .. })));
    }

    #[test]
    fn bgw_extension_fields() {
        for (p, e, m) in [(2u64, 2u32, 3u32), (3, 2, 2), (2, 3, 7), (3, 2, 4)] {
            let f = FiniteField::new(p, e).unwrap();
            let w = bgw_build(&f, m).unwrap();
            let d = verify_bgw(&w).unwrap();
            assert_eq!(d.k, f.order() as usize);
            assert_eq!(d.lambda, f.order() as usize - 1);
            assert!(d.symmetric);
        }
    }

    #[test]
    fn gh_tables() {
        for q in [3u64, 5, 7, 9, 4] {
            let f = FiniteField::of_order(q).unwrap();
            let p = verify_gh(&gh_build(&f)).unwrap();
            assert_eq!(p.multiplicity, 1);
        }
    }

    #[test]
    fn bgw_mutation_names_row() {
        let f = FiniteField::new(7, 1).unwrap();
        let mut w = bgw_build(&f, 3).unwrap();
        let old = w.get(2, 5).unwrap();
        w.set(2, 5, Some((old + 1) % 3));
        match verify_bgw(&w) {
            Err(DesignError::NotBalanced { row_a, row_b, .. }) => assert!(row_a == 2 || row_b == 2),
            other => panic!("{other:?}"),
        }
        w.set(2, 5, None);
        assert!(matches!(verify_bgw(&w), Err(DesignError::RowWeightVaries { row: 2, .. })));
    }

    #[test]
    fn sgdd_rejects_all_ones() {
        let p = SgddParams { v: 6, k: 2, m: 3, n: 2, lambda1: 0, lambda2: 1 };
        let w = verify_sgdd(&ZeroOneMatrix::ones(6, 6), &p).unwrap().unwrap();
        assert_eq!((w.row, w.col, w.expected, w.found), (0, 0, 2, 6));
        assert!(verify_sgdd(&ZeroOneMatrix::ones(5, 5), &p).is_err());
    }
}
