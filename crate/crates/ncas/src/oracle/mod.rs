//! Independent cross-checks: a closure checker with its own product path and a
//! floating-point block decomposition of the adjacency algebra.
//!
//! Nothing here calls into `schemes` or `spectra`; inputs are plain 0/1 matrices.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{OracleError, SchemeError};
use crate::matrixkit::ZeroOneMatrix;

/// Intersection numbers from the closure oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleTensor {
    rank: usize,
    p: Vec<u64>,
}

impl OracleTensor {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn p(&self, i: usize, j: usize, k: usize) -> u64 {
        self.p[(i * self.rank + j) * self.rank + k]
    }

    /// First `(i, j, k, oracle, other)` where `other(i, j, k)` disagrees.
    pub fn first_disagreement(&self, other: impl Fn(usize, usize, usize) -> u64) -> Option<(usize, usize, usize, u64, u64)> {
        let r = self.rank;
        (0..r * r * r).find_map(|x| {
            let (i, j, k) = (x / (r * r), x / r % r, x % r);
            let o = other(i, j, k);
            (self.p(i, j, k) != o).then_some((i, j, k, self.p(i, j, k), o))
        })
    }
}

/// Checks the four axioms with row-list products and returns every `p_{ij}^k`.
pub fn oracle_closure(mats: &[ZeroOneMatrix]) -> Result<OracleTensor, OracleError> {
    let r = mats.len();
    if r == 0 {
        return Err(SchemeError::Empty.into());
    }
    let v = mats[0].rows();
    if let Some(m) = mats.iter().find(|m| m.rows() != v || m.cols() != v) {
        return Err(SchemeError::ShapeMismatch(format!("{}x{} relation among {v}x{v}", m.rows(), m.cols())).into());
    }
    for x in 0..v {
        for y in 0..v {
            if mats[0].get(x, y) != (x == y) {
                return Err(SchemeError::NotIdentityFirst { row: x, col: y }.into());
            }
        }
    }
    let rows: Vec<Vec<Vec<usize>>> = mats.iter().map(|m| (0..v).map(|x| (0..v).filter(|&y| m.get(x, y)).collect()).collect()).collect();
    let mut rel = vec![usize::MAX; v * v];
    let mut cover = vec![0usize; v * v];
    for (l, rl) in rows.iter().enumerate() {
        if rl.iter().all(|row| row.is_empty()) {
            return Err(SchemeError::EmptyRelation { index: l }.into());
        }
        for (x, row) in rl.iter().enumerate() {
            for &y in row {
                rel[x * v + y] = l;
                cover[x * v + y] += 1;
            }
        }
    }
    if let Some(c) = cover.iter().position(|&c| c != 1) {
        return Err(SchemeError::NotPartition { row: c / v, col: c % v, count: cover[c] }.into());
    }
    for l in 0..r {
        let (x0, y0) = rows[l].iter().enumerate().find_map(|(x, row)| row.first().map(|&y| (x, y))).unwrap();
        let t = rel[y0 * v + x0];
        for x in 0..v {
            for y in 0..v {
                if (rel[x * v + y] == l) != (rel[y * v + x] == t) {
                    return Err(SchemeError::NotTransposeClosed { index: l, row: x, col: y }.into());
                }
            }
        }
    }
    // p[i][j][k] fixed at the first cell of relation k, then compared at every other cell
    let slabs: Vec<Result<Vec<u64>, SchemeError>> = (0..r)
        .into_par_iter()
        .map(|i| {
            let mut slab = vec![u64::MAX; r * r];
            let mut at = vec![(0usize, 0usize); r * r];
            let mut cnt = vec![0u64; r * v];
            for x in 0..v {
                cnt.iter_mut().for_each(|c| *c = 0);
                for &z in &rows[i][x] {
                    for y in 0..v {
                        cnt[rel[z * v + y] * v + y] += 1;
                    }
                }
                for y in 0..v {
                    let k = rel[x * v + y];
                    for j in 0..r {
                        let c = cnt[j * v + y];
                        let s = &mut slab[j * r + k];
                        if *s == u64::MAX {
                            *s = c;
                            at[j * r + k] = (x, y);
                        } else if *s != c {
                            let (ref_row, ref_col) = at[j * r + k];
                            return Err(SchemeError::NotClosedUnderProduct {
                                i,
                                j,
                                k,
                                row: x,
                                col: y,
                                found: c,
                                expected: *s,
                                ref_row,
                                ref_col,
                            });
                        }
                    }
                }
            }
            Ok(slab)
        })
        .collect();
    let mut p = Vec::with_capacity(r * r * r);
    for s in slabs {
        p.extend(s?);
    }
    Ok(OracleTensor { rank: r, p })
}

/// Numeric block structure: `(degree, multiplicity)` pairs in sorted order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleSpectrum {
    pub seed: u64,
    pub attempts: usize,
    pub blocks: Vec<(usize, usize)>,
}

pub const CLUSTER_TOL: f64 = 1e-6;
pub const MAX_ATTEMPTS: usize = 5;

fn dense(mats: &[ZeroOneMatrix], coeff: impl Fn(usize) -> f64) -> DMatrix<f64> {
    let v = mats[0].rows();
    let mut h = DMatrix::zeros(v, v);
    for (l, m) in mats.iter().enumerate() {
        for x in 0..v {
            for y in m.row_ones(x) {
                h[(x, y)] += coeff(l);
            }
        }
    }
    h
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    parent[x] = r;
    r
}

fn attempt(mats: &[ZeroOneMatrix], transpose: &[usize], rng: &mut ChaCha8Rng) -> Result<Vec<(usize, usize)>, String> {
    let r = mats.len();
    let v = mats[0].rows();
    let c: Vec<f64> = (0..r).map(|_| rng.gen_range(-1.0..1.0)).collect();
    // sum_l c_l (A_l + A_l^T): relation l at (y, x) is transpose[l]
    let h = dense(mats, |l| c[l] + c[transpose[l]]);
    let eig = SymmetricEigen::new(h);
    let mut order: Vec<usize> = (0..v).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let scale = eig.eigenvalues.iter().fold(1.0f64, |s, x| s.max(x.abs()));
    let mut clusters: Vec<Vec<usize>> = vec![vec![order[0]]];
    for w in order.windows(2) {
        if eig.eigenvalues[w[1]] - eig.eigenvalues[w[0]] <= CLUSTER_TOL * scale {
            clusters.last_mut().unwrap().push(w[1]);
        } else {
            clusters.push(vec![w[1]]);
        }
    }
    let basis: Vec<DMatrix<f64>> = clusters.iter().map(|cl| DMatrix::from_columns(&cl.iter().map(|&i| eig.eigenvectors.column(i)).collect::<Vec<_>>())).collect();
    // a generic element couples exactly the clusters that share a simple block
    let k: Vec<f64> = (0..r).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let kmat = dense(mats, |l| k[l]);
    let w = DVector::from_fn(v, |_, _| rng.gen_range(-1.0..1.0));
    let n = clusters.len();
    let mut parent: Vec<usize> = (0..n).collect();
    let mut images = Vec::with_capacity(n);
    for (a, ua) in basis.iter().enumerate() {
        let u = ua * (ua.transpose() * &w);
        let y = &kmat * &u;
        let norm = y.norm();
        if norm == 0.0 {
            return Err(format!("generic element vanishes on cluster {a}"));
        }
        for (b, ub) in basis.iter().enumerate() {
            if (ub.transpose() * &y).norm() > CLUSTER_TOL * norm {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra] = rb;
            }
        }
        images.push((u, y));
    }
    // a cluster alone in its block must be acted on by scalars
    for (a, (u, y)) in images.iter().enumerate() {
        let root = find(&mut parent, a);
        if (0..n).any(|b| b != a && find(&mut parent, b) == root) {
            continue;
        }
        let lambda = u.dot(y) / u.norm_squared();
        if (y - u * lambda).norm() > CLUSTER_TOL * y.norm() {
            return Err(format!("cluster {a} of size {} is not a single linear block", clusters[a].len()));
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for (a, cluster) in clusters.iter().enumerate() {
        let root = find(&mut parent, a);
        groups.entry(root).or_default().push(cluster.len());
    }
    let mut blocks = Vec::new();
    for sizes in groups.values() {
        if sizes.iter().any(|&s| s != sizes[0]) {
            return Err(format!("coupled clusters of unequal sizes {sizes:?}"));
        }
        blocks.push((sizes.len(), sizes[0]));
    }
    blocks.sort_unstable();
    Ok(blocks)
}

/// Clusters the spectrum of a random self-adjoint element and groups the clusters
/// into simple blocks; re-samples up to [`MAX_ATTEMPTS`] times.
pub fn oracle_spectrum(mats: &[ZeroOneMatrix], seed: u64) -> Result<OracleSpectrum, OracleError> {
    let tensor = oracle_closure(mats)?;
    let r = tensor.rank();
    let transpose: Vec<usize> = (0..r).map(|l| (0..r).find(|&t| tensor.p(l, t, 0) > 0).expect("closure checked")).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut detail = String::new();
    for a in 1..=MAX_ATTEMPTS {
        match attempt(mats, &transpose, &mut rng) {
            Ok(blocks) => return Ok(OracleSpectrum { seed, attempts: a, blocks }),
            Err(e) => detail = e,
        }
    }
    Err(OracleError::Ambiguous { attempts: MAX_ATTEMPTS, detail })
}
