//! Bit-packed (0,1)-matrices, checked integer matrices, group-valued matrices
//! and the standard building blocks (circulants, back identity, permutations).

mod bitmat;
mod intmat;

pub use bitmat::ZeroOneMatrix;
pub use intmat::IntMatrix;

use crate::algebra::AbelianGroup;
use crate::error::MatrixError;

/// Square matrix over `G ∪ {0}`; `None` is the zero symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupMatrix {
    pub group: AbelianGroup,
    n: usize,
    entries: Vec<Option<u32>>,
}

impl GroupMatrix {
    pub fn new(group: AbelianGroup, n: usize, entries: Vec<Option<u32>>) -> Result<Self, MatrixError> {
        if entries.len() != n * n {
            return Err(MatrixError::ShapeMismatch(format!("{} entries for order {n}", entries.len())));
        }
        Ok(GroupMatrix { group, n, entries })
    }

    pub fn from_fn(group: AbelianGroup, n: usize, mut f: impl FnMut(usize, usize) -> Option<u32>) -> Self {
        let entries = (0..n * n).map(|i| f(i / n, i % n)).collect();
        GroupMatrix { group, n, entries }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> Option<u32> {
        self.entries[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Option<u32>) {
        self.entries[r * self.n + c] = v;
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|r| (0..r).all(|c| self.get(r, c) == self.get(c, r)))
    }

    /// Expand each entry `g` to `f(g)` and the zero symbol to a zero block.
    pub fn expand(&self, block: usize, f: impl Fn(usize, usize, u32) -> ZeroOneMatrix) -> Result<ZeroOneMatrix, MatrixError> {
        let blocks: Vec<Vec<ZeroOneMatrix>> = (0..self.n)
            .map(|r| {
                (0..self.n)
                    .map(|c| match self.get(r, c) {
                        Some(g) => f(r, c, g),
                        None => ZeroOneMatrix::zeros(block, block),
                    })
                    .collect()
            })
            .collect();
        ZeroOneMatrix::from_blocks(&blocks)
    }
}

/// `U^l` for the `m x m` basic circulant `U` with `U[i][i+1] = 1`.
pub fn circulant_power(m: usize, l: i64) -> ZeroOneMatrix {
    let l = l.rem_euclid(m as i64) as usize;
    ZeroOneMatrix::from_fn(m, m, |r, c| c == (r + l) % m)
}

/// Back identity: ones on the anti-diagonal.
pub fn back_identity(s: usize) -> ZeroOneMatrix {
    ZeroOneMatrix::from_fn(s, s, |r, c| r + c + 1 == s)
}

/// Matrix of the map `e_j -> e_{pi(j)}`, so `P(pi) P(sigma) = P(pi ∘ sigma)`.
pub fn perm_matrix(pi: &[usize]) -> Result<ZeroOneMatrix, MatrixError> {
    let n = pi.len();
    let mut seen = vec![false; n];
    for &x in pi {
        if x >= n || std::mem::replace(&mut seen[x], true) {
            return Err(MatrixError::ShapeMismatch(format!("{pi:?} is not a permutation")));
        }
    }
    let mut m = ZeroOneMatrix::zeros(n, n);
    for (j, &x) in pi.iter().enumerate() {
        m.set(x, j, true);
    }
    Ok(m)
}

/// Regular representation `phi(x)` of an element of `Z_m` or `Z_p^e`:
/// the permutation matrix with `phi(x)[r][s] = 1` iff `s = r + x`.
/// For `Z_p^e` this is the Kronecker product of circulant powers, most significant digit first.
pub fn phi_rep(group: &AbelianGroup, x: u32) -> ZeroOneMatrix {
    let n = group.order() as usize;
    let mut m = ZeroOneMatrix::zeros(n, n);
    for r in 0..n as u32 {
        m.set(r as usize, group.add(r, x) as usize, true);
    }
    m
}

pub fn kron_all(mats: &[ZeroOneMatrix]) -> ZeroOneMatrix {
    mats.iter().skip(1).fold(mats[0].clone(), |acc, m| acc.kron(m))
}
