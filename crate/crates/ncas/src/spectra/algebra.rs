//! The adjacency algebra in the basis `A_0, .., A_d`, with products from the tensor.

use num_rational::BigRational;

use crate::algebra::{CycMatrix, CycScalar};
use crate::schemes::AssociationScheme;

/// Element `sum_l c_l A_l` of an adjacency algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgElem(pub Vec<CycScalar>);

impl AlgElem {
    pub fn zero(rank: usize) -> Self {
        AlgElem(vec![CycScalar::zero(1); rank])
    }

    pub fn basis(rank: usize, l: usize) -> Self {
        let mut e = Self::zero(rank);
        e.0[l] = CycScalar::one(1);
        e
    }

    pub fn coeffs(&self) -> &[CycScalar] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, o: &AlgElem) -> AlgElem {
        AlgElem(self.0.iter().zip(&o.0).map(|(a, b)| a.add(b)).collect())
    }

    pub fn sub(&self, o: &AlgElem) -> AlgElem {
        AlgElem(self.0.iter().zip(&o.0).map(|(a, b)| a.sub(b)).collect())
    }

    pub fn scale(&self, s: &CycScalar) -> AlgElem {
        AlgElem(self.0.iter().map(|a| a.mul(s)).collect())
    }

    pub fn scale_rat(&self, r: &BigRational) -> AlgElem {
        AlgElem(self.0.iter().map(|a| a.scale(r)).collect())
    }

    pub fn scale_ratio(&self, num: i64, den: i64) -> AlgElem {
        self.scale_rat(&BigRational::new(num.into(), den.into()))
    }
}

/// Multiplication table of an adjacency algebra.
#[derive(Clone, Debug)]
pub struct AdjacencyAlgebra {
    rank: usize,
    v: usize,
    transpose: Vec<usize>,
    /// For each `(i, j)`, the nonzero `(k, p_{ij}^k)`.
    terms: Vec<Vec<(usize, i64)>>,
}

impl AdjacencyAlgebra {
    pub fn new(s: &AssociationScheme) -> Self {
        let r = s.rank();
        let mut terms = vec![Vec::new(); r * r];
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    let p = s.p(i, j, k);
                    if p != 0 {
                        terms[i * r + j].push((k, p as i64));
                    }
                }
            }
        }
        AdjacencyAlgebra { rank: r, v: s.vertices(), transpose: s.transpose_map().to_vec(), terms }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertices(&self) -> usize {
        self.v
    }

    pub fn one(&self) -> AlgElem {
        AlgElem::basis(self.rank, 0)
    }

    pub fn mul(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        let r = self.rank;
        let mut out = vec![CycScalar::zero(1); r];
        for i in 0..r {
            if a.0[i].is_zero() {
                continue;
            }
            for j in 0..r {
                if b.0[j].is_zero() {
                    continue;
                }
                let t = a.0[i].mul(&b.0[j]);
                for &(k, p) in &self.terms[i * r + j] {
                    out[k] = out[k].add(&t.scale_int(p));
                }
            }
        }
        AlgElem(out)
    }

    /// Conjugate transpose: `(sum c_l A_l)^* = sum conj(c_l) A_{l'}`.
    pub fn star(&self, a: &AlgElem) -> AlgElem {
        let mut out = vec![CycScalar::zero(1); self.rank];
        for (l, c) in a.0.iter().enumerate() {
            out[self.transpose[l]] = c.conj();
        }
        AlgElem(out)
    }

    /// Trace as a `v x v` matrix: only `A_0` has nonzero diagonal.
    pub fn trace(&self, a: &AlgElem) -> CycScalar {
        a.0[0].scale_int(self.v as i64)
    }

    /// Dense matrix, for small exact cross-checks.
    pub fn to_dense(&self, s: &AssociationScheme, a: &AlgElem) -> CycMatrix {
        CycMatrix::from_fn(self.v, self.v, |x, y| a.0[s.relation_of(x, y)].clone())
    }
}
