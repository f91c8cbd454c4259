use serde::{Deserialize, Serialize};

use super::{scheme_verify, AssociationScheme};
use crate::error::SchemeError;
use crate::spectra::Eigensystem;

/// Partition `{Λ_0, .., Λ_e}` of the relation indices with `Λ_0 = {0}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionPartition {
    blocks: Vec<Vec<usize>>,
}

impl FusionPartition {
    pub fn new(blocks: Vec<Vec<usize>>, rank: usize) -> Result<Self, SchemeError> {
        if blocks.first().map(|b| b.as_slice()) != Some(&[0]) {
            return Err(SchemeError::InvalidPartition("first block must be {0}".into()));
        }
        let mut seen = vec![false; rank];
        for (bi, b) in blocks.iter().enumerate() {
            if b.is_empty() {
                return Err(SchemeError::InvalidPartition(format!("block {bi} is empty")));
            }
            for &i in b {
                if i >= rank {
                    return Err(SchemeError::InvalidPartition(format!("index {i} out of range")));
                }
                if std::mem::replace(&mut seen[i], true) {
                    return Err(SchemeError::InvalidPartition(format!("index {i} repeated")));
                }
            }
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(SchemeError::InvalidPartition(format!("index {i} not covered")));
        }
        Ok(FusionPartition { blocks })
    }

    pub fn singletons(rank: usize) -> Self {
        FusionPartition { blocks: (0..rank).map(|i| vec![i]).collect() }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Fused class count `e`.
    pub fn classes(&self) -> usize {
        self.blocks.len() - 1
    }

    pub fn block_of(&self, i: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(&i))
    }
}

/// Sums the basis over each block and verifies the result.
pub fn fuse(s: &AssociationScheme, part: &FusionPartition) -> Result<AssociationScheme, SchemeError> {
    if part.blocks.iter().flatten().any(|&i| i >= s.rank()) {
        return Err(SchemeError::InvalidPartition("index out of range".into()));
    }
    let mut mats = Vec::with_capacity(part.blocks.len());
    let mut labels = Vec::with_capacity(part.blocks.len());
    for b in &part.blocks {
        let mut m = s.basis()[b[0]].clone();
        for &i in &b[1..] {
            m = m.checked_add(&s.basis()[i])?;
        }
        mats.push(m);
        let names: Vec<&str> = b.iter().map(|&i| s.labels()[i].as_str()).collect();
        labels.push(if names.len() == 1 { names[0].to_string() } else { format!("{{{}}}", names.join("+")) });
    }
    scheme_verify(mats, Some(labels))
}

/// Certificate for the sufficient fusion criterion: per simple block, a
/// partition of `{0, .., d_k - 1}` (0-based) with `sum f_k^2 = e + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalPartition {
    pub parts: Vec<Vec<Vec<usize>>>,
    pub f: Vec<usize>,
}

impl CanonicalPartition {
    pub fn sum_f_squared(&self) -> usize {
        self.f.iter().map(|f| f * f).sum()
    }
}

/// Set partitions of `0..n` as restricted growth strings, in lexicographic order.
fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn rec(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        let max = prefix.iter().copied().max().map_or(0, |m| m + 1);
        for c in 0..=max {
            prefix.push(c);
            rec(prefix, n, out);
            prefix.pop();
        }
    }
    let mut rgs = Vec::new();
    rec(&mut Vec::new(), n, &mut rgs);
    rgs.into_iter()
        .map(|g| {
            let f = g.iter().max().map_or(0, |m| m + 1);
            (0..f).map(|p| (0..n).filter(|&i| g[i] == p).collect()).collect()
        })
        .collect()
}

fn condition_a(eig: &Eigensystem, part: &FusionPartition) -> Result<(), SchemeError> {
    for (bi, b) in part.blocks.iter().enumerate() {
        let mut t: Vec<usize> = b.iter().map(|&i| eig.transpose_of(i)).collect();
        t.sort_unstable();
        let ok = part.blocks.iter().any(|c| {
            let mut c = c.clone();
            c.sort_unstable();
            c == t
        });
        if !ok {
            return Err(SchemeError::ConditionAViolated { block: bi });
        }
    }
    Ok(())
}

/// Exhaustive search for a canonical partition satisfying condition (b).
///
/// Condition (a) (transpose closure of the blocks) is checked first. Returns
/// `Ok(None)` when no canonical partition has `sum f_k^2 = e + 1`.
pub fn bm_search(eig: &Eigensystem, part: &FusionPartition) -> Result<Option<CanonicalPartition>, SchemeError> {
    if part.blocks.iter().flatten().any(|&i| i >= eig.rank()) {
        return Err(SchemeError::InvalidPartition("index out of range".into()));
    }
    condition_a(eig, part)?;
    let target = part.blocks.len();
    let mut admissible: Vec<Vec<Vec<Vec<usize>>>> = Vec::new();
    for (k, blk) in eig.blocks().iter().enumerate() {
        let d = blk.degree;
        let ok: Vec<Vec<Vec<usize>>> = set_partitions(d)
            .into_iter()
            .filter(|parts| {
                part.blocks.iter().all(|lam| {
                    let c = |i: usize, j: usize| {
                        lam.iter().fold(crate::algebra::CycScalar::zero(1), |acc, &l| acc.add(eig.p_entry(k, i, j, l)))
                    };
                    parts.iter().all(|ia| {
                        parts.iter().all(|ib| {
                            let first = c(ia[0], ib[0]);
                            ia.iter().all(|&i| ib.iter().all(|&j| c(i, j) == first))
                        })
                    })
                })
            })
            .collect();
        admissible.push(ok);
    }
    // first combination in lexicographic order reaching the target
    fn dfs(
        k: usize,
        adm: &[Vec<Vec<Vec<usize>>>],
        left: usize,
        chosen: &mut Vec<usize>,
    ) -> bool {
        if k == adm.len() {
            return left == 0;
        }
        let min_rest = adm.len() - k - 1;
        for (idx, p) in adm[k].iter().enumerate() {
            let f2 = p.len() * p.len();
            if f2 + min_rest > left {
                continue;
            }
            chosen.push(idx);
            if dfs(k + 1, adm, left - f2, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut chosen = Vec::new();
    if !dfs(0, &admissible, target, &mut chosen) {
        return Ok(None);
    }
    let parts: Vec<Vec<Vec<usize>>> = chosen.iter().enumerate().map(|(k, &i)| admissible[k][i].clone()).collect();
    let f = parts.iter().map(|p| p.len()).collect();
    Ok(Some(CanonicalPartition { parts, f }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions_in_rgs_order() {
        assert_eq!(set_partitions(2), vec![vec![vec![0, 1]], vec![vec![0], vec![1]]]);
        assert_eq!(set_partitions(3).len(), 5);
    }

    #[test]
    fn partition_validation() {
        assert!(FusionPartition::new(vec![vec![0], vec![1, 2]], 3).is_ok());
        assert!(FusionPartition::new(vec![vec![0, 1], vec![2]], 3).is_err());
        assert!(FusionPartition::new(vec![vec![0], vec![1]], 3).is_err());
        assert!(FusionPartition::new(vec![vec![0], vec![1, 1], vec![2]], 3).is_err());
    }
}
