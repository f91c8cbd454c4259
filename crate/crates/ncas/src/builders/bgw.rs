use super::{expect_eq, expect_tensor};
use crate::algebra::FiniteField;
use crate::designs::{bgw_build, verify_bgw, SgddParams};
use crate::error::{BuildError, DesignError};
use crate::matrixkit::{back_identity, circulant_power, GroupMatrix, IntMatrix, ZeroOneMatrix};
use crate::schemes::{scheme_verify, AssociationScheme};
use crate::spectra::bgw_index;

/// Parameters of the BGW scheme: a symmetric BGW(n+1, n, n-1) over `Z_m` with `n = q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BgwSchemeSpec {
    pub q: usize,
    pub m: usize,
    pub n: usize,
    pub v: usize,
    pub classes: usize,
}

impl BgwSchemeSpec {
    pub fn new(q: usize, m: usize) -> Self {
        BgwSchemeSpec { q, m, n: q, v: (q + 1) * m, classes: 2 * m - 1 }
    }
}

/// The verified scheme together with its ingredients.
#[derive(Clone, Debug)]
pub struct BgwScheme {
    pub spec: BgwSchemeSpec,
    pub field: FiniteField,
    pub w: GroupMatrix,
    pub n_mats: Vec<ZeroOneMatrix>,
    pub scheme: AssociationScheme,
}

/// `N_l`: diagonal blocks `J_m`, off-diagonal blocks `U^{w_ij + l} R`.
pub fn build_n_bgw(w: &GroupMatrix, l: usize) -> Result<ZeroOneMatrix, BuildError> {
    let m = w.group.order() as usize;
    let n1 = w.order();
    if !w.is_symmetric() {
        let (row, col) = (0..n1)
            .flat_map(|r| (0..n1).map(move |c| (r, c)))
            .find(|&(r, c)| w.get(r, c) != w.get(c, r))
            .unwrap();
        return Err(DesignError::NotSymmetric { row, col }.into());
    }
    if let Some(i) = (0..n1).find(|&i| w.get(i, i).is_some()) {
        return Err(DesignError::DiagonalNotConstant { index: i, found: format!("{:?}", w.get(i, i)) }.into());
    }
    let r = back_identity(m);
    let blocks: Vec<Vec<ZeroOneMatrix>> = (0..n1)
        .map(|i| {
            (0..n1)
                .map(|j| match w.get(i, j) {
                    _ if i == j => ZeroOneMatrix::ones(m, m),
                    Some(g) => circulant_power(m, (g as usize + l) as i64).mul(&r).unwrap().to_zero_one().unwrap(),
                    None => ZeroOneMatrix::zeros(m, m),
                })
                .collect()
        })
        .collect();
    Ok(ZeroOneMatrix::from_blocks(&blocks)?)
}

/// SGDD parameters of every `N_l`: `((n+1)m, n+m, n+1, m, m, 2+(n-1)/m)`.
pub fn bgw_sgdd_params(n: usize, m: usize) -> SgddParams {
    SgddParams { v: (n + 1) * m, k: n + m, m: n + 1, n: m, lambda1: m as i64, lambda2: 2 + (n as i64 - 1) / m as i64 }
}

fn check_n_identities(ns: &[ZeroOneMatrix], n: usize, m: usize) -> Result<(), BuildError> {
    let n1 = n + 1;
    let i_n1 = IntMatrix::identity(n1);
    let off = IntMatrix::ones(n1, n1).checked_sub(&i_n1)?;
    let jm = IntMatrix::ones(m, m);
    let i_jm = i_n1.kron(&jm)?;
    let off_jm = off.kron(&jm)?;
    let mu = (n as i64 - 1) / m as i64;
    let want_side = i_jm.checked_scale(m as i64)?.checked_add(&off_jm)?;
    for (l, nl) in ns.iter().enumerate() {
        if !nl.is_symmetric() {
            let t = nl.transpose();
            let (row, col, found, expected) = t.to_int().first_difference(&nl.to_int()).unwrap();
            return Err(BuildError::IdentityViolation { identity: format!("N_{l} symmetric"), row, col, expected, found });
        }
        let ij = i_jm.to_zero_one()?;
        expect_eq(&format!("N_{l}(I⊗J_m)"), &nl.mul(&ij)?, &want_side)?;
        for (l2, nl2) in ns.iter().enumerate() {
            let u = circulant_power(m, l as i64 - l2 as i64).to_int().checked_scale(n as i64)?;
            let diag = jm.checked_scale(m as i64)?.checked_add(&u)?;
            let want = i_n1.kron(&diag)?.checked_add(&off_jm.checked_scale(2 + mu)?)?;
            expect_eq(&format!("N_{l}N_{l2}"), &nl.mul(nl2)?, &want)?;
        }
    }
    Ok(())
}

/// Closed form of the BGW tensor: `A_i A_j` as `(k, p_{ij}^k)` pairs.
pub fn tensor_closed_form_bgw(n: usize, m: usize) -> impl Fn(usize, usize) -> Vec<(usize, u64)> {
    move |i, j| {
        let (l, t) = (i % m, i / m);
        let (l2, t2) = (j % m, j / m);
        let plus = (l + l2) % m;
        let minus = (l + m - l2) % m;
        match (t, t2) {
            (0, 0) => vec![(bgw_index(m, plus, 0), 1)],
            (0, 1) => vec![(bgw_index(m, plus, 1), 1)],
            (1, 0) => vec![(bgw_index(m, minus, 1), 1)],
            _ => {
                let mut out = vec![(bgw_index(m, minus, 0), n as u64)];
                out.extend((0..m).map(|g| (bgw_index(m, g, 1), ((n - 1) / m) as u64)));
                out
            }
        }
    }
}

/// Relation labels `(l,0)` then `(l,1)`.
pub fn bgw_labels(m: usize) -> Vec<String> {
    (0..2).flat_map(|t| (0..m).map(move |l| format!("({l},{t})"))).collect()
}

/// The class `2m - 1` scheme `A_{l,0} = I ⊗ U^l`, `A_{l,1} = N_l - I ⊗ J_m`.
pub fn bgw_scheme(q: usize, m: usize) -> Result<BgwScheme, BuildError> {
    let field = FiniteField::of_order(q as u64)?;
    let w = bgw_build(&field, m as u32)?;
    let d = verify_bgw(&w)?;
    if (d.v, d.k, d.lambda) != (q + 1, q, q - 1) || !d.symmetric || !d.zero_diagonal {
        return Err(BuildError::Design(DesignError::ShapeMismatch(format!("BGW parameters {d:?}"))));
    }
    let spec = BgwSchemeSpec::new(q, m);
    let n = spec.n;
    let n_mats: Vec<ZeroOneMatrix> = (0..m).map(|l| build_n_bgw(&w, l)).collect::<Result<_, _>>()?;
    check_n_identities(&n_mats, n, m)?;
    let i_n1 = ZeroOneMatrix::identity(n + 1);
    let i_jm = i_n1.kron(&ZeroOneMatrix::ones(m, m));
    let mut mats: Vec<ZeroOneMatrix> = (0..m).map(|l| i_n1.kron(&circulant_power(m, l as i64))).collect();
    for nl in &n_mats {
        mats.push(nl.checked_sub(&i_jm)?);
    }
    let scheme = scheme_verify(mats, Some(bgw_labels(m)))?;
    if scheme.vertices() != spec.v || scheme.classes() != spec.classes {
        return Err(BuildError::Design(DesignError::ShapeMismatch(format!(
            "{} vertices and {} classes",
            scheme.vertices(),
            scheme.classes()
        ))));
    }
    expect_tensor(&scheme, tensor_closed_form_bgw(n, m))?;
    Ok(BgwScheme { spec, field, w, n_mats, scheme })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::verify_sgdd;
    use crate::schemes::SchemeClass;

    #[test]
    fn scheme_7_3() {
        let b = bgw_scheme(7, 3).unwrap();
        let s = &b.scheme;
        assert_eq!(s.vertices(), 24);
        assert_eq!(s.rank(), 6);
        assert_eq!(s.valencies(), &[1, 1, 1, 7, 7, 7]);
        assert_eq!(s.classify(), SchemeClass::Noncommutative);
        // A_{1,1} A_{2,1} = 7 A_{2,0} + 2 (A_{0,1} + A_{1,1} + A_{2,1})
        assert_eq!(s.p(4, 5, 2), 7);
        for k in 3..6 {
            assert_eq!(s.p(4, 5, k), 2);
        }
        for nl in &b.n_mats {
            assert_eq!(verify_sgdd(nl, &bgw_sgdd_params(7, 3)).unwrap(), None);
        }
        assert_eq!(bgw_sgdd_params(7, 3), SgddParams { v: 24, k: 10, m: 8, n: 3, lambda1: 3, lambda2: 4 });
    }

    #[test]
    fn n0_n1_diagonal_block() {
        let b = bgw_scheme(7, 3).unwrap();
        let p = b.n_mats[0].mul(&b.n_mats[1]).unwrap();
        let u2 = circulant_power(3, 2).to_int().checked_scale(7).unwrap();
        let want = IntMatrix::ones(3, 3).checked_scale(3).unwrap().checked_add(&u2).unwrap();
        for r in 0..3 {
            for c in 0..3 {
                assert_eq!(p.get(r, c), want.get(r, c));
            }
        }
    }

    #[test]
    fn small_cases() {
        let b = bgw_scheme(5, 2).unwrap();
        assert_eq!(b.scheme.vertices(), 12);
        assert_eq!(b.scheme.classify(), SchemeClass::Symmetric);
        let b = bgw_scheme(4, 3).unwrap();
        assert_eq!(b.scheme.vertices(), 15);
        let p = SgddParams { v: 15, k: 7, m: 5, n: 3, lambda1: 3, lambda2: 3 };
        for nl in &b.n_mats {
            assert_eq!(verify_sgdd(nl, &p).unwrap(), None);
        }
        assert!(matches!(bgw_scheme(5, 4), Err(BuildError::Design(DesignError::SymmetryObstruction { .. }))));
    }
}
