//! Closed-form F-matrices and Wedderburn systems for the two scheme families,
//! plus the tables as stated for comparison with the computed ones.
//!
//! BGW relation `(l, t)` has index `t m + l`; GH relation `(a, t)` has index
//! `t q + a` and `A_2` has index `2q`.

use super::algebra::{AdjacencyAlgebra, AlgElem};
use super::eigen::{BlockSpec, Eigensystem};
use crate::algebra::{AbelianGroup, CycScalar, FiniteField};
use crate::error::SpectraError;
use crate::schemes::AssociationScheme;

pub fn bgw_index(m: usize, l: usize, t: usize) -> usize {
    t * m + l
}

pub fn gh_index(q: usize, a: usize, t: usize) -> usize {
    t * q + a
}

/// `F_{a,0}` and `F_{a,1}` for every group element `a`.
#[derive(Clone, Debug)]
pub struct FMatrices {
    pub f0: Vec<AlgElem>,
    pub f1: Vec<AlgElem>,
}

fn f_matrices(g: &AbelianGroup, rank: usize, index: impl Fn(usize, usize) -> usize) -> FMatrices {
    let n = g.order() as usize;
    let make = |t: usize| -> Vec<AlgElem> {
        g.characters()
            .iter()
            .map(|chi| {
                let mut e = AlgElem::zero(rank);
                for c in 0..n {
                    e.0[index(c, t)] = chi.value(c as u32);
                }
                e
            })
            .collect()
    };
    FMatrices { f0: make(0), f1: make(1) }
}

/// Structural check that `s` has the shape of the BGW scheme with group order `m`; returns `n`.
fn expect_bgw(s: &AssociationScheme, m: usize) -> Result<usize, SpectraError> {
    let wrong = |why: String| Err(SpectraError::WrongSchemeFamily(why));
    if m == 0 || s.rank() != 2 * m || s.vertices() % m != 0 {
        return wrong(format!("expected {} relations on a multiple of {m} vertices", 2 * m));
    }
    let n = s.vertices() / m - 1;
    for l in 0..m {
        if s.valencies()[l] != 1 || s.valencies()[m + l] != n as u64 {
            return wrong(format!("valency pattern differs at l = {l}"));
        }
        if s.transpose_of(l) != (m - l) % m || s.transpose_of(m + l) != m + l {
            return wrong(format!("transpose pattern differs at l = {l}"));
        }
    }
    Ok(n)
}

fn expect_gh(s: &AssociationScheme, f: &FiniteField) -> Result<(), SpectraError> {
    let q = f.order() as usize;
    let wrong = |why: String| Err(SpectraError::WrongSchemeFamily(why));
    if q % 2 == 0 || s.rank() != 2 * q + 1 || s.vertices() != (q + 1) * q * q {
        return wrong(format!("expected {} relations on {} vertices", 2 * q + 1, (q + 1) * q * q));
    }
    for a in 0..q {
        if s.valencies()[a] != 1 || s.valencies()[q + a] != (q * q) as u64 {
            return wrong(format!("valency pattern differs at a = {a}"));
        }
        if s.transpose_of(a) != f.neg(a as u32) as usize || s.transpose_of(q + a) != q + a {
            return wrong(format!("transpose pattern differs at a = {a}"));
        }
    }
    if s.valencies()[2 * q] != (q * q - q) as u64 {
        return wrong("valency of A_2".into());
    }
    Ok(())
}

pub fn f_matrices_bgw(s: &AssociationScheme, m: usize) -> Result<FMatrices, SpectraError> {
    expect_bgw(s, m)?;
    Ok(f_matrices(&AbelianGroup::cyclic(m as u32), s.rank(), |c, t| bgw_index(m, c, t)))
}

pub fn f_matrices_gh(s: &AssociationScheme, f: &FiniteField) -> Result<FMatrices, SpectraError> {
    expect_gh(s, f)?;
    let q = f.order() as usize;
    Ok(f_matrices(&AbelianGroup::additive(f), s.rank(), |c, t| gh_index(q, c, t)))
}

fn check(name: String, lhs: AlgElem, rhs: AlgElem) -> Result<(), SpectraError> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(SpectraError::IdentityViolation { identity: name, detail: format!("{:?} != {:?}", lhs.0, rhs.0) })
    }
}

fn delta(a: bool) -> i64 {
    a as i64
}

/// The four F-matrix product rules of the BGW family.
pub fn check_f_identities_bgw(s: &AssociationScheme, m: usize) -> Result<(), SpectraError> {
    let n = expect_bgw(s, m)? as i64;
    let f = f_matrices_bgw(s, m)?;
    let alg = AdjacencyAlgebra::new(s);
    let mi = m as i64;
    let neg = |a: usize| (m - a) % m;
    for a in 0..m {
        for b in 0..m {
            check(
                format!("F_{{{a},0}}F_{{{b},0}}"),
                alg.mul(&f.f0[a], &f.f0[b]),
                f.f0[a].scale_ratio(delta(a == b) * mi, 1),
            )?;
            let extra = f.f1[0].scale_ratio(delta(a == 0 && b == 0) * mi * (n - 1), 1);
            check(
                format!("F_{{{a},1}}F_{{{b},1}}"),
                alg.mul(&f.f1[a], &f.f1[b]),
                f.f0[a].scale_ratio(delta(a == neg(b)) * n * mi, 1).add(&extra),
            )?;
            check(
                format!("F_{{{a},0}}F_{{{b},1}}"),
                alg.mul(&f.f0[a], &f.f1[b]),
                f.f1[a].scale_ratio(delta(a == b) * mi, 1),
            )?;
            check(
                format!("F_{{{a},1}}F_{{{b},0}}"),
                alg.mul(&f.f1[a], &f.f0[b]),
                f.f1[a].scale_ratio(delta(a == neg(b)) * mi, 1),
            )?;
        }
    }
    Ok(())
}

/// The F-matrix product rules of the GH family as they hold for the computed tensor.
///
/// In the products with a type-1 factor on the left the Kronecker delta pairs
/// `a` with `-b`; with `a = b` the rules fail.
pub fn check_f_identities_gh(s: &AssociationScheme, field: &FiniteField) -> Result<(), SpectraError> {
    let f = f_matrices_gh(s, field)?;
    let alg = AdjacencyAlgebra::new(s);
    let q = field.order() as usize;
    let qi = q as i64;
    let a2 = AlgElem::basis(s.rank(), 2 * q);
    let neg = |a: usize| field.neg(a as u32) as usize;
    for a in 0..q {
        for b in 0..q {
            check(
                format!("F_{{{a},0}}F_{{{b},0}}"),
                alg.mul(&f.f0[a], &f.f0[b]),
                f.f0[a].scale_ratio(delta(a == b) * qi, 1),
            )?;
            check(
                format!("F_{{{a},0}}F_{{{b},1}}"),
                alg.mul(&f.f0[a], &f.f1[b]),
                f.f1[a].scale_ratio(delta(a == b) * qi, 1),
            )?;
            check(
                format!("F_{{{a},1}}F_{{{b},0}}"),
                alg.mul(&f.f1[a], &f.f0[b]),
                f.f1[a].scale_ratio(delta(a == neg(b)) * qi, 1),
            )?;
            let zero = delta(a == 0 && b == 0);
            let extra = f.f1[0].scale_ratio(zero * (qi - 1) * qi * qi, 1).add(&a2.scale_ratio(zero * qi * qi * qi, 1));
            check(
                format!("F_{{{a},1}}F_{{{b},1}}"),
                alg.mul(&f.f1[a], &f.f1[b]),
                f.f0[a].scale_ratio(delta(a == neg(b)) * qi * qi * qi, 1).add(&extra),
            )?;
        }
        let (l0, r0) = (alg.mul(&f.f0[a], &a2), alg.mul(&a2, &f.f0[a]));
        let (l1, r1) = (alg.mul(&f.f1[a], &a2), alg.mul(&a2, &f.f1[a]));
        if a == 0 {
            check("F_{0,0}A_2".into(), l0, a2.scale_ratio(qi, 1))?;
            check("A_2F_{0,0}".into(), r0, a2.scale_ratio(qi, 1))?;
            check("F_{0,1}A_2".into(), l1, f.f1[0].scale_ratio(qi * qi - qi, 1))?;
            check("A_2F_{0,1}".into(), r1, f.f1[0].scale_ratio(qi * qi - qi, 1))?;
        } else {
            for (name, x) in [("F_{a,0}A_2", l0), ("A_2F_{a,0}", r0), ("F_{a,1}A_2", l1), ("A_2F_{a,1}", r1)] {
                check(name.replace('a', &a.to_string()), x, AlgElem::zero(s.rank()))?;
            }
        }
    }
    Ok(())
}

/// Products of the GH F-matrices whose stated forms (with `delta_{a,b}`) fail, as `(a, b, rule)`.
pub fn gh_stated_f_failures(s: &AssociationScheme, field: &FiniteField) -> Result<Vec<(usize, usize, &'static str)>, SpectraError> {
    let f = f_matrices_gh(s, field)?;
    let alg = AdjacencyAlgebra::new(s);
    let q = field.order() as usize;
    let qi = q as i64;
    let a2 = AlgElem::basis(s.rank(), 2 * q);
    let mut out = Vec::new();
    for a in 0..q {
        for b in 0..q {
            if alg.mul(&f.f1[a], &f.f0[b]) != f.f1[a].scale_ratio(delta(a == b) * qi, 1) {
                out.push((a, b, "F_{a,1}F_{b,0}"));
            }
            let zero = delta(a == 0 && b == 0);
            let extra = f.f1[0].scale_ratio(zero * (qi - 1) * qi * qi, 1).add(&a2.scale_ratio(zero * qi * qi * qi, 1));
            if alg.mul(&f.f1[a], &f.f1[b]) != f.f0[a].scale_ratio(delta(a == b) * qi * qi * qi, 1).add(&extra) {
                out.push((a, b, "F_{a,1}F_{b,1}"));
            }
        }
    }
    Ok(out)
}

/// Half of the nonzero group elements of `Z_m`, one from each pair `{a, -a}` with `a != -a`.
pub fn bgw_block_labels(m: usize) -> Vec<usize> {
    (1..m).filter(|&a| 2 * a < m).collect()
}

fn bgw_units(s: &AssociationScheme, q: usize, m: usize, off_scale: &CycScalar) -> Result<Vec<BlockSpec>, SpectraError> {
    let n = expect_bgw(s, m)?;
    if n != q {
        return Err(SpectraError::WrongSchemeFamily(format!("vertex count gives n = {n}, expected {q}")));
    }
    let f = f_matrices_bgw(s, m)?;
    let r = s.rank();
    let v = s.vertices() as i64;
    let ni = n as i64;
    let mi = m as i64;
    let j: AlgElem = AlgElem(vec![CycScalar::one(1); r]);
    let mut specs = vec![
        BlockSpec::linear("E0", j.scale_ratio(1, v)),
        BlockSpec::linear("E1", f.f0[0].scale_ratio(ni, v).sub(&f.f1[0].scale_ratio(1, v))),
    ];
    if m % 2 == 0 {
        let h = m / 2;
        let root_inv = CycScalar::sqrt(m as u32, n as u64).inv()?;
        let a = f.f0[h].scale_ratio(1, 2 * mi);
        let b = f.f1[h].scale(&root_inv).scale_ratio(1, 2 * mi);
        specs.push(BlockSpec::linear("E2", a.add(&b)));
        specs.push(BlockSpec::linear("E3", a.sub(&b)));
    }
    for a in bgw_block_labels(m) {
        let na = (m - a) % m;
        specs.push(BlockSpec {
            label: format!("E({a})"),
            degree: 2,
            units: vec![
                f.f0[a].scale_ratio(1, mi),
                f.f1[a].scale(off_scale),
                f.f1[na].scale(off_scale),
                f.f0[na].scale_ratio(1, mi),
            ],
        });
    }
    Ok(specs)
}

/// BGW units with the off-diagonal scale `1/m` as stated; these fail the product rule when `n > 1`.
pub fn bgw_stated_units(s: &AssociationScheme, q: usize, m: usize) -> Result<Vec<BlockSpec>, SpectraError> {
    bgw_units(s, q, m, &CycScalar::from_ratio(1, 1, m as i64))
}

/// Wedderburn system of the BGW scheme: `E0, E1, [E2, E3], E(a)` for `a` in [`bgw_block_labels`].
///
/// Off-diagonal units are `F_{a,1} / (m sqrt(n))`, the scale at which
/// `E_{1,2} E_{2,1} = E_{1,1}` and `E_{1,2}^* = E_{2,1}` both hold.
pub fn wedderburn_bgw(s: &AssociationScheme, q: usize, m: usize) -> Result<Eigensystem, SpectraError> {
    check_f_identities_bgw(s, m)?;
    let scale = CycScalar::sqrt(m as u32, q as u64).scale_int(m as i64).inv()?;
    Eigensystem::from_units(s, bgw_units(s, q, m, &scale)?)
}

/// Wedderburn system of the GH scheme: `E0, E1, E2, E(a)` for `a` in the half transversal.
pub fn wedderburn_gh(s: &AssociationScheme, field: &FiniteField) -> Result<Eigensystem, SpectraError> {
    check_f_identities_gh(s, field)?;
    let f = f_matrices_gh(s, field)?;
    let q = field.order() as i64;
    let r = s.rank();
    let v = s.vertices() as i64;
    let a2 = AlgElem::basis(r, 2 * q as usize);
    let j: AlgElem = AlgElem(vec![CycScalar::one(1); r]);
    let mut specs = vec![
        BlockSpec::linear("E0", j.scale_ratio(1, v)),
        BlockSpec::linear("E1", f.f0[0].scale_ratio(q * q - 1, v).sub(&a2.scale_ratio(q + 1, v))),
        BlockSpec::linear("E2", f.f0[0].scale_ratio(q, v).sub(&f.f1[0].scale_ratio(1, v)).add(&a2.scale_ratio(q, v))),
    ];
    for a in field.half_transversal() {
        let na = field.neg(a) as usize;
        let a = a as usize;
        specs.push(BlockSpec {
            label: format!("E({a})"),
            degree: 2,
            units: vec![
                f.f0[a].scale_ratio(1, q),
                f.f1[a].scale_ratio(1, q * q),
                f.f1[na].scale_ratio(1, q * q),
                f.f0[na].scale_ratio(1, q),
            ],
        });
    }
    Eigensystem::from_units(s, specs)
}

fn chi(m: u32, a: usize, g: usize) -> CycScalar {
    AbelianGroup::cyclic(m).character(a as u32).value(g as u32)
}

fn int(x: i64) -> CycScalar {
    CycScalar::from_int(1, x)
}

/// Character table of the BGW scheme as stated, rows in block order.
pub fn stated_character_table_bgw(q: usize, m: usize) -> Vec<Vec<CycScalar>> {
    let n = q as i64;
    let mu = m as u32;
    let row = |f0: &dyn Fn(usize) -> CycScalar, f1: &dyn Fn(usize) -> CycScalar| -> Vec<CycScalar> {
        (0..m).map(f0).chain((0..m).map(f1)).collect()
    };
    let mut t = vec![row(&|_| int(1), &|_| int(n)), row(&|_| int(1), &|_| int(-1))];
    if m % 2 == 0 {
        let h = m / 2;
        let rt = CycScalar::sqrt(mu, q as u64);
        t.push(row(&|g| chi(mu, h, g), &|g| chi(mu, h, g).mul(&rt)));
        t.push(row(&|g| chi(mu, h, g), &|g| chi(mu, h, g).mul(&rt).neg()));
    }
    for a in bgw_block_labels(m) {
        t.push(row(&|g| chi(mu, a, g).add(&chi(mu, m - a, g)), &|_| int(0)));
    }
    t
}

/// Character table of the GH scheme as stated, rows in block order.
pub fn stated_character_table_gh(field: &FiniteField) -> Vec<Vec<CycScalar>> {
    let q = field.order() as usize;
    let qi = q as i64;
    let g = AbelianGroup::additive(field);
    let row = |f0: &dyn Fn(usize) -> CycScalar, f1: &dyn Fn(usize) -> CycScalar, last: CycScalar| -> Vec<CycScalar> {
        (0..q).map(f0).chain((0..q).map(f1)).chain(std::iter::once(last)).collect()
    };
    let mut t = vec![
        row(&|_| int(1), &|_| int(qi * qi), int(qi * qi - qi)),
        row(&|_| int(1), &|_| int(-qi * qi), CycScalar::from_ratio(1, -(qi * qi - qi), qi + 1)),
        row(&|_| int(1), &|_| int(-qi), int(qi * qi - qi)),
    ];
    for a in field.half_transversal() {
        let na = field.neg(a);
        let sum = |c: usize| g.character(a).value(c as u32).add(&g.character(na).value(c as u32));
        t.push(row(&sum, &|_| int(0), int(0)));
    }
    t
}

/// Second eigenmatrix of the BGW scheme as stated, columns in lexicographic unit order.
pub fn stated_q_bgw(q: usize, m: usize) -> Vec<Vec<CycScalar>> {
    let n = q as i64;
    let mu = m as u32;
    let col = |f0: &dyn Fn(usize) -> CycScalar, f1: &dyn Fn(usize) -> CycScalar| -> Vec<CycScalar> {
        (0..m).map(f0).chain((0..m).map(f1)).collect()
    };
    let mut cols = vec![col(&|_| int(1), &|_| int(1)), col(&|_| int(n), &|_| int(-1))];
    if m % 2 == 0 {
        let h = m / 2;
        let half = CycScalar::from_ratio(1, n + 1, 2);
        let rt_inv = CycScalar::sqrt(mu, q as u64).inv().expect("n > 0");
        for sign in [1, -1] {
            cols.push(col(&|g| chi(mu, h, g).mul(&half), &|g| chi(mu, h, g).mul(&half).mul(&rt_inv).scale_int(sign)));
        }
    }
    for a in bgw_block_labels(m) {
        let z = |_: usize| int(0);
        let x = |b: usize| move |g: usize| chi(mu, b, g).scale_int(n + 1);
        // lexicographic order (1,1), (1,2), (2,1), (2,2)
        cols.push(col(&x(a), &z));
        cols.push(col(&z, &x(a)));
        cols.push(col(&z, &x(m - a)));
        cols.push(col(&x(m - a), &z));
    }
    transpose(cols)
}

/// Second eigenmatrix of the GH scheme as stated, columns in lexicographic unit order.
pub fn stated_q_gh(field: &FiniteField) -> Vec<Vec<CycScalar>> {
    let q = field.order() as usize;
    let qi = q as i64;
    let g = AbelianGroup::additive(field);
    let col = |f0: &dyn Fn(usize) -> CycScalar, f1: &dyn Fn(usize) -> CycScalar, last: CycScalar| -> Vec<CycScalar> {
        (0..q).map(f0).chain((0..q).map(f1)).chain(std::iter::once(last)).collect()
    };
    let mut cols = vec![
        col(&|_| int(1), &|_| int(1), int(1)),
        col(&|_| int(qi * qi - 1), &|_| int(0), int(-(qi + 1))),
        col(&|_| int(qi), &|_| int(-1), int(qi)),
    ];
    for a in field.half_transversal() {
        let na = field.neg(a);
        let z = |_: usize| int(0);
        let x = |b: u32, k: i64| move |c: usize| g.character(b).value(c as u32).scale_int(k);
        cols.push(col(&x(a, (qi + 1) * qi), &z, int(0)));
        cols.push(col(&z, &x(a, qi + 1), int(0)));
        cols.push(col(&z, &x(na, qi + 1), int(0)));
        cols.push(col(&x(na, (qi + 1) * qi), &z, int(0)));
    }
    transpose(cols)
}

fn transpose(cols: Vec<Vec<CycScalar>>) -> Vec<Vec<CycScalar>> {
    let rows = cols.first().map_or(0, |c| c.len());
    (0..rows).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect()
}
