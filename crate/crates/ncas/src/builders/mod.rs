//! End-to-end assembly of the two scheme families from their design ingredients.
//!
//! Every block-matrix identity the construction relies on is checked exactly
//! while building, and the intersection tensor is compared with its closed form.

mod bgw;
mod fusion;
mod gh;

pub use bgw::{bgw_scheme, bgw_sgdd_params, build_n_bgw, tensor_closed_form_bgw, BgwScheme, BgwSchemeSpec};
pub use fusion::{fusion_bgw, fusion_gh, fusion_partition_bgw, fusion_partition_gh, stated_fused_q_bgw, stated_fused_q_gh, Fusion};
pub use gh::{build_c, build_c_x, build_n_gh, gh_scheme, tensor_closed_form_gh, GhScheme, GhSchemeSpec};

use crate::error::BuildError;
use crate::matrixkit::IntMatrix;
use crate::schemes::AssociationScheme;

fn expect_eq(identity: &str, found: &IntMatrix, expected: &IntMatrix) -> Result<(), BuildError> {
    match found.first_difference(expected) {
        None => Ok(()),
        Some((row, col, found, expected)) => {
            Err(BuildError::IdentityViolation { identity: identity.to_string(), row, col, expected, found })
        }
    }
}

/// Compares every `p_{ij}^k` with `closed(i, j)`, given as `(k, value)` pairs.
fn expect_tensor(s: &AssociationScheme, closed: impl Fn(usize, usize) -> Vec<(usize, u64)>) -> Result<(), BuildError> {
    let r = s.rank();
    for i in 0..r {
        for j in 0..r {
            let mut want = vec![0u64; r];
            for (k, x) in closed(i, j) {
                want[k] += x;
            }
            for (k, &w) in want.iter().enumerate() {
                let found = s.p(i, j, k);
                if found != w {
                    return Err(BuildError::TensorMismatch { i, j, k, expected: w, found });
                }
            }
        }
    }
    Ok(())
}
