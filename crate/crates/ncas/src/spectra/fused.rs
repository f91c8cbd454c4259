//! Primitive idempotents of a commutative fusion, split from a parent dual basis.

use super::algebra::AlgElem;
use super::eigen::{BlockSpec, Eigensystem};
use crate::error::SpectraError;
use crate::schemes::{AssociationScheme, FusionPartition};

/// Rewrites a parent algebra element in the fused basis, if it lies in the fused algebra.
fn restrict(e: &AlgElem, part: &FusionPartition) -> Option<AlgElem> {
    part.blocks()
        .iter()
        .map(|b| {
            let c = &e.0[b[0]];
            b.iter().all(|&l| &e.0[l] == c).then(|| c.clone())
        })
        .collect::<Option<Vec<_>>>()
        .map(AlgElem)
}

/// Fused eigensystem whose idempotents are the linear parent units together with
/// `(C +- Z) / 2` for each degree-2 block, where `C = E_{1,1} + E_{2,2}` and
/// `Z = E_{1,2} + E_{2,1}`. The `+` idempotent of each pair comes first.
pub fn fused_eigensystem(parent: &Eigensystem, fused: &AssociationScheme, part: &FusionPartition) -> Result<Eigensystem, SpectraError> {
    let mut specs = Vec::new();
    for (k, b) in parent.blocks().iter().enumerate() {
        match b.degree {
            1 => {
                let e = restrict(parent.unit(k, 0, 0), part).ok_or_else(|| SpectraError::SplitFailed(b.label.clone()))?;
                specs.push(BlockSpec::linear(b.label.clone(), e));
            }
            2 => {
                let c = parent.unit(k, 0, 0).add(parent.unit(k, 1, 1));
                let z = parent.unit(k, 0, 1).add(parent.unit(k, 1, 0));
                for (sign, e) in [("+", c.add(&z)), ("-", c.sub(&z))] {
                    let e = restrict(&e.scale_ratio(1, 2), part).ok_or_else(|| SpectraError::SplitFailed(b.label.clone()))?;
                    specs.push(BlockSpec::linear(format!("{}{sign}", b.label), e));
                }
            }
            _ => return Err(SpectraError::SplitFailed(b.label.clone())),
        }
    }
    let ev = Eigensystem::from_units(fused, specs)?;
    if !fused.is_commutative() {
        return Err(SpectraError::NotCommutative(fused.labels().join(",")));
    }
    Ok(ev)
}
