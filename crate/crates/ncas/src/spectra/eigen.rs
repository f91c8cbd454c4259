//! Dual bases of adjacency algebras and the data derived from them.

use serde::Serialize;

use super::algebra::{AdjacencyAlgebra, AlgElem};
use super::rank::{certified_ranks, RankJob};
use crate::algebra::{CycMatrix, CycScalar};
use crate::error::SpectraError;
use crate::schemes::AssociationScheme;

/// Candidate matrix units of one simple block, `d x d` in lexicographic `(i, j)` order.
#[derive(Clone, Debug)]
pub struct BlockSpec {
    pub label: String,
    pub degree: usize,
    pub units: Vec<AlgElem>,
}

impl BlockSpec {
    pub fn linear(label: impl Into<String>, e: AlgElem) -> Self {
        BlockSpec { label: label.into(), degree: 1, units: vec![e] }
    }
}

/// A verified simple block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    pub label: String,
    pub degree: usize,
    pub multiplicity: usize,
    /// Index of the unit `(0, 0)` of this block in the global unit order.
    pub offset: usize,
}

/// Outcome of the eigenmatrix duality and trace checks.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    /// `(unit, relation)` cells where `m_k P != v_l conj(Q)`.
    pub duality_mismatches: Vec<(usize, usize)>,
    /// Units whose trace is not `delta_ij rank`.
    pub trace_mismatches: Vec<usize>,
    /// Blocks whose units do not share one rank.
    pub rank_mismatches: Vec<usize>,
}

impl DualityReport {
    pub fn holds(&self) -> bool {
        self.duality_mismatches.is_empty() && self.trace_mismatches.is_empty() && self.rank_mismatches.is_empty()
    }
}

/// Wedderburn data: matrix units `E_{i,j}^{(k)}` with `A_l = sum P[u][l] E_u` and
/// `E_u = (1/v) sum_l Q[l][u] A_l`.
#[derive(Clone, Debug)]
pub struct Eigensystem {
    v: usize,
    labels: Vec<String>,
    valencies: Vec<u64>,
    transpose: Vec<usize>,
    algebra: AdjacencyAlgebra,
    blocks: Vec<Block>,
    units: Vec<AlgElem>,
    unit_names: Vec<String>,
    q: CycMatrix,
    p: CycMatrix,
    ranks: Vec<usize>,
}

fn unit_name(label: &str, degree: usize, i: usize, j: usize) -> String {
    if degree == 1 {
        label.to_string()
    } else {
        format!("{label}[{},{}]", i + 1, j + 1)
    }
}

impl Eigensystem {
    /// Verifies the dual-basis relations, the star relation and completeness,
    /// then derives `Q`, `P`, the ranks, and checks the reconstruction of every `A_l`.
    pub fn from_units(s: &AssociationScheme, specs: Vec<BlockSpec>) -> Result<Self, SpectraError> {
        let alg = AdjacencyAlgebra::new(s);
        let r = s.rank();
        let count: usize = specs.iter().map(|b| b.degree * b.degree).sum();
        if count != r || specs.iter().any(|b| b.units.len() != b.degree * b.degree) {
            return Err(SpectraError::DimensionMismatch { found: count, expected: r });
        }
        let mut blocks = Vec::with_capacity(specs.len());
        let mut units = Vec::with_capacity(r);
        let mut names = Vec::with_capacity(r);
        // (block, i, j) per unit
        let mut coords = Vec::with_capacity(r);
        for (k, b) in specs.into_iter().enumerate() {
            blocks.push(Block { label: b.label.clone(), degree: b.degree, multiplicity: 0, offset: units.len() });
            for (idx, e) in b.units.into_iter().enumerate() {
                let (i, j) = (idx / b.degree, idx % b.degree);
                if e.0.len() != r {
                    return Err(SpectraError::DimensionMismatch { found: e.0.len(), expected: r });
                }
                names.push(unit_name(&b.label, b.degree, i, j));
                coords.push((k, i, j));
                units.push(e);
            }
        }
        let unit_at = |k: usize, i: usize, j: usize| blocks[k].offset + i * blocks[k].degree + j;
        for a in 0..r {
            let (k, i, j) = coords[a];
            for b in 0..r {
                let (k2, i2, j2) = coords[b];
                let prod = alg.mul(&units[a], &units[b]);
                let ok = if k == k2 && j == i2 { prod == units[unit_at(k, i, j2)] } else { prod.is_zero() };
                if !ok {
                    return Err(SpectraError::DualBasisViolation { left: names[a].clone(), right: names[b].clone() });
                }
            }
            if alg.star(&units[a]) != units[unit_at(k, j, i)] {
                return Err(SpectraError::StarViolation(names[a].clone()));
            }
        }
        let mut total = AlgElem::zero(r);
        for blk in &blocks {
            for i in 0..blk.degree {
                total = total.add(&units[blk.offset + i * blk.degree + i]);
            }
        }
        if total != alg.one() {
            return Err(SpectraError::Incomplete);
        }
        let v = s.vertices();
        let q = CycMatrix::from_fn(r, r, |l, u| units[u].0[l].scale_int(v as i64));
        let p = q.inverse()?.scale(&CycScalar::from_int(1, v as i64));
        for l in 0..r {
            let mut acc = AlgElem::zero(r);
            for (u, e) in units.iter().enumerate() {
                acc = acc.add(&e.scale(p.get(u, l)));
            }
            if acc != AlgElem::basis(r, l) {
                return Err(SpectraError::IdentityViolation {
                    identity: "reconstruction".into(),
                    detail: format!("sum_u P[u][{l}] E_u != A_{l}"),
                });
            }
        }
        let hint = |e: &AlgElem| alg.trace(e).as_integer().filter(|&t| t >= 0).map_or(v, |t| t as usize);
        let jobs: Vec<RankJob<'_>> = (0..r)
            .map(|u| {
                let (k, i, _) = coords[u];
                RankJob { name: names[u].clone(), elem: &units[u], diag: unit_at(k, i, i), hint: hint(&units[u]) }
            })
            .collect();
        let ranks = certified_ranks(s, &jobs)?;
        for blk in &mut blocks {
            blk.multiplicity = ranks[blk.offset];
        }
        Ok(Eigensystem {
            v,
            labels: s.labels().to_vec(),
            valencies: s.valencies().to_vec(),
            transpose: s.transpose_map().to_vec(),
            algebra: alg,
            blocks,
            units,
            unit_names: names,
            q,
            p,
            ranks,
        })
    }

    pub fn vertices(&self) -> usize {
        self.v
    }

    /// Number of relations, which equals the number of units.
    pub fn rank(&self) -> usize {
        self.units.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn valencies(&self) -> &[u64] {
        &self.valencies
    }

    pub fn transpose_of(&self, l: usize) -> usize {
        self.transpose[l]
    }

    pub fn algebra(&self) -> &AdjacencyAlgebra {
        &self.algebra
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.degree).collect()
    }

    pub fn multiplicities(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.multiplicity).collect()
    }

    /// Global index of the unit `(i, j)` (0-based) of block `k`.
    pub fn unit_index(&self, k: usize, i: usize, j: usize) -> usize {
        let b = &self.blocks[k];
        b.offset + i * b.degree + j
    }

    pub fn units(&self) -> &[AlgElem] {
        &self.units
    }

    pub fn unit(&self, k: usize, i: usize, j: usize) -> &AlgElem {
        &self.units[self.unit_index(k, i, j)]
    }

    pub fn unit_names(&self) -> &[String] {
        &self.unit_names
    }

    /// Rank of every unit as a `v x v` matrix.
    pub fn unit_ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Second eigenmatrix, rows indexed by relations and columns by units.
    pub fn q_matrix(&self) -> &CycMatrix {
        &self.q
    }

    /// First eigenmatrix, rows indexed by units and columns by relations.
    pub fn p_matrix(&self) -> &CycMatrix {
        &self.p
    }

    /// `p_{(i,j),l}^{(k)}` with 0-based `i, j`.
    pub fn p_entry(&self, k: usize, i: usize, j: usize, l: usize) -> &CycScalar {
        self.p.get(self.unit_index(k, i, j), l)
    }

    /// Irreducible character values: `T[k][l] = sum_i p_{(i,i),l}^{(k)}`.
    pub fn character_table(&self) -> Vec<Vec<CycScalar>> {
        (0..self.blocks.len())
            .map(|k| {
                (0..self.rank())
                    .map(|l| {
                        (0..self.blocks[k].degree)
                            .fold(CycScalar::zero(1), |acc, i| acc.add(self.p_entry(k, i, i, l)))
                    })
                    .collect()
            })
            .collect()
    }

    /// Character table with each row scaled by the multiplicity `m_k`.
    pub fn weighted_character_table(&self) -> Vec<Vec<CycScalar>> {
        self.character_table()
            .into_iter()
            .zip(&self.blocks)
            .map(|(row, b)| row.into_iter().map(|x| x.scale_int(b.multiplicity as i64)).collect())
            .collect()
    }

    /// Checks `m_k P[u][l] = v_l conj(Q[l][u])`, `tr E_{i,j} = delta_ij rank`,
    /// and that the units of each block share one rank.
    pub fn check_pq_duality(&self) -> DualityReport {
        let mut rep = DualityReport::default();
        for (k, b) in self.blocks.iter().enumerate() {
            for i in 0..b.degree {
                for j in 0..b.degree {
                    let u = self.unit_index(k, i, j);
                    for l in 0..self.rank() {
                        let lhs = self.p.get(u, l).scale_int(b.multiplicity as i64);
                        let rhs = self.q.get(l, u).conj().scale_int(self.valencies[l] as i64);
                        if lhs != rhs {
                            rep.duality_mismatches.push((u, l));
                        }
                    }
                    let expected = if i == j { self.ranks[u] as i64 } else { 0 };
                    if self.algebra.trace(&self.units[u]) != CycScalar::from_int(1, expected) {
                        rep.trace_mismatches.push(u);
                    }
                }
            }
            let r0 = self.ranks[b.offset];
            if (0..b.degree * b.degree).any(|t| self.ranks[b.offset + t] != r0) {
                rep.rank_mismatches.push(k);
            }
        }
        rep
    }
}

/// Exact rank of an algebra element as a dense matrix over the cyclotomic field.
pub fn exact_rank(s: &AssociationScheme, e: &AlgElem) -> Result<usize, SpectraError> {
    let alg = AdjacencyAlgebra::new(s);
    Ok(alg.to_dense(s, e).rank()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrixkit::ZeroOneMatrix;
    use crate::schemes::scheme_verify;

    fn trivial(n: usize) -> AssociationScheme {
        let i = ZeroOneMatrix::identity(n);
        let a = ZeroOneMatrix::ones(n, n).and_not(&i).unwrap();
        scheme_verify(vec![i, a], None).unwrap()
    }

    #[test]
    fn trivial_scheme_eigenmatrices() {
        let n = 5i64;
        let s = trivial(n as usize);
        let e0 = AlgElem(vec![CycScalar::from_ratio(1, 1, n), CycScalar::from_ratio(1, 1, n)]);
        let e1 = AlgElem(vec![CycScalar::from_ratio(1, n - 1, n), CycScalar::from_ratio(1, -1, n)]);
        let eig = Eigensystem::from_units(&s, vec![BlockSpec::linear("E0", e0), BlockSpec::linear("E1", e1)]).unwrap();
        let p = eig.p_matrix();
        let want = [[1, n - 1], [1, -1]];
        for (r, row) in want.iter().enumerate() {
            for (c, &x) in row.iter().enumerate() {
                assert_eq!(p.get(r, c), &CycScalar::from_int(1, x));
            }
        }
        assert_eq!(eig.multiplicities(), vec![1, n as usize - 1]);
        assert!(eig.check_pq_duality().holds());
        for (u, e) in eig.units().iter().enumerate() {
            assert_eq!(exact_rank(&s, e).unwrap(), eig.unit_ranks()[u]);
        }
    }

    #[test]
    fn rejects_non_idempotent() {
        let s = trivial(4);
        let e0 = AlgElem(vec![CycScalar::from_ratio(1, 1, 2), CycScalar::from_ratio(1, 1, 4)]);
        let e1 = AlgElem(vec![CycScalar::from_ratio(1, 1, 2), CycScalar::from_ratio(1, -1, 4)]);
        let err = Eigensystem::from_units(&s, vec![BlockSpec::linear("E0", e0), BlockSpec::linear("E1", e1)]).unwrap_err();
        assert!(matches!(err, SpectraError::DualBasisViolation { .. }), "{err:?}");
    }
}
