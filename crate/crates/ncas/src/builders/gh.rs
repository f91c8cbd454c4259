use super::{expect_eq, expect_tensor};
use crate::algebra::{AbelianGroup, FiniteField};
use crate::designs::{gh_build, latin_build, verify_gh, verify_latin, LatinSquare, LatinSymbol};
use crate::error::BuildError;
use crate::matrixkit::{back_identity, phi_rep, IntMatrix, ZeroOneMatrix};
use crate::schemes::{scheme_verify, AssociationScheme};
use crate::spectra::gh_index;

/// Parameters of the GH scheme over `GF(q)`, `q` odd.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GhSchemeSpec {
    pub q: usize,
    pub v: usize,
    pub classes: usize,
}

impl GhSchemeSpec {
    pub fn new(q: usize) -> Self {
        GhSchemeSpec { q, v: (q + 1) * q * q, classes: 2 * q }
    }
}

/// The verified scheme together with its ingredients.
#[derive(Clone, Debug)]
pub struct GhScheme {
    pub spec: GhSchemeSpec,
    pub field: FiniteField,
    pub latin: LatinSquare,
    pub n_mats: Vec<ZeroOneMatrix>,
    pub scheme: AssociationScheme,
}

/// `C_{a,a'}`: the `q x q` block matrix with blocks `phi(a (b' - b) + a')`.
pub fn build_c(field: &FiniteField, a: u32, a2: u32) -> ZeroOneMatrix {
    let g = AbelianGroup::additive(field);
    let q = field.order();
    let blocks: Vec<Vec<ZeroOneMatrix>> = (0..q)
        .map(|b| (0..q).map(|b2| phi_rep(&g, field.add(field.mul(a, field.sub(b2, b)), a2))).collect())
        .collect();
    ZeroOneMatrix::from_blocks(&blocks).expect("blocks share one order")
}

/// `C_{x,a} = J_{q^2} - I_q ⊗ J_q`, the same for every `a`.
pub fn build_c_x(q: usize) -> ZeroOneMatrix {
    ZeroOneMatrix::ones(q * q, q * q).and_not(&ZeroOneMatrix::identity(q).kron(&ZeroOneMatrix::ones(q, q))).expect("same shape")
}

/// `N_a`: block `(s, s')` is `C_{x,a}` on the diagonal and `C_{L(s,s'),a} R` elsewhere.
pub fn build_n_gh(field: &FiniteField, latin: &LatinSquare, a: u32) -> Result<ZeroOneMatrix, BuildError> {
    let q = field.order() as usize;
    if latin.order() != q + 1 {
        return Err(BuildError::Design(crate::error::DesignError::ShapeMismatch(format!(
            "Latin square of order {} for q = {q}",
            latin.order()
        ))));
    }
    let r = back_identity(q * q);
    let cr: Vec<ZeroOneMatrix> = (0..q as u32).map(|s| build_c(field, s, a).mul(&r)?.to_zero_one()).collect::<Result<_, _>>()?;
    let cx = build_c_x(q);
    let blocks: Vec<Vec<ZeroOneMatrix>> = (0..=q)
        .map(|s| {
            (0..=q)
                .map(|s2| match latin.get(s, s2) {
                    LatinSymbol::Indeterminate => cx.clone(),
                    LatinSymbol::Field(sym) => cr[sym as usize].clone(),
                })
                .collect()
        })
        .collect();
    Ok(ZeroOneMatrix::from_blocks(&blocks)?)
}

fn check_c_identities(field: &FiniteField, latin: &LatinSquare) -> Result<(), BuildError> {
    let q = field.order() as usize;
    let qi = q as i64;
    let g = AbelianGroup::additive(field);
    let c: Vec<Vec<ZeroOneMatrix>> = (0..q as u32).map(|a| (0..q as u32).map(|a2| build_c(field, a, a2)).collect()).collect();
    let iq = IntMatrix::identity(q);
    let jq = IntMatrix::ones(q, q);
    let j = IntMatrix::ones(q * q, q * q);
    let off = jq.checked_sub(&iq)?.kron(&jq)?;
    let cx = build_c_x(q);
    let r = back_identity(q * q);
    for al in 0..q {
        let mut sum = IntMatrix::zeros(q * q, q * q);
        for row in &c {
            sum = sum.checked_add(&row[al].to_int())?;
        }
        let want = iq.kron(&phi_rep(&g, al as u32).to_int())?.checked_scale(qi)?.checked_add(&off)?;
        expect_eq(&format!("sum_a C_{{a,{al}}}"), &sum, &want)?;
    }
    for a in 0..q {
        for al in 0..q {
            let ca = &c[a][al];
            for al2 in 0..q {
                let sum = field.add(al as u32, al2 as u32) as usize;
                expect_eq(&format!("C_{{{a},{al}}}C_{{{a},{al2}}}"), &ca.mul(&c[a][al2])?, &c[a][sum].to_int().checked_scale(qi)?)?;
                for (a2, row) in c.iter().enumerate().filter(|&(a2, _)| a2 != a) {
                    expect_eq(&format!("C_{{{a},{al}}}C_{{{a2},{al2}}}"), &ca.mul(&row[al2])?, &j)?;
                }
            }
            let qj = j.checked_scale(qi - 1)?;
            expect_eq(&format!("C_xC_{{{a},{al}}}"), &cx.mul(ca)?, &qj)?;
            expect_eq(&format!("C_{{{a},{al}}}C_x"), &ca.mul(&cx)?, &qj)?;
            let neg = field.neg(al as u32) as usize;
            expect_eq(&format!("C_{{{a},{al}}}R"), &ca.mul(&r)?, &r.mul(&c[a][neg])?)?;
        }
    }
    let p: Vec<ZeroOneMatrix> = (0..q as u32).map(|a| latin.symbol_matrix(LatinSymbol::Field(a))).collect();
    let mut sum = IntMatrix::zeros(q + 1, q + 1);
    for (a, pa) in p.iter().enumerate() {
        for (b, pb) in p.iter().enumerate() {
            if a != b {
                sum = sum.checked_add(&pa.mul(pb)?)?;
            }
        }
    }
    let want = IntMatrix::ones(q + 1, q + 1).checked_sub(&IntMatrix::identity(q + 1))?.checked_scale(qi - 1)?;
    expect_eq("sum_{a != b} P_aP_b", &sum, &want)
}

fn check_n_identities(field: &FiniteField, ns: &[ZeroOneMatrix]) -> Result<(), BuildError> {
    let q = field.order() as usize;
    let qi = q as i64;
    let g = AbelianGroup::additive(field);
    let v = (q + 1) * q * q;
    let i_q1 = IntMatrix::identity(q + 1);
    let i_q1q = IntMatrix::identity((q + 1) * q);
    let tail = i_q1
        .kron(&IntMatrix::ones(q * q, q * q))?
        .checked_scale(qi * qi - 4 * qi + 3)?
        .checked_add(&IntMatrix::ones(v, v).checked_scale(3 * (qi - 1))?)?;
    for (a, na) in ns.iter().enumerate() {
        if !na.is_symmetric() {
            let (row, col, found, expected) = na.transpose().to_int().first_difference(&na.to_int()).unwrap();
            return Err(BuildError::IdentityViolation { identity: format!("N_{a} symmetric"), row, col, expected, found });
        }
        for (b, nb) in ns.iter().enumerate() {
            let d = field.sub(a as u32, b as u32);
            let want = i_q1q.kron(&phi_rep(&g, d).to_int())?.checked_scale(qi * qi)?.checked_add(&tail)?;
            expect_eq(&format!("N_{a}N_{b}"), &na.mul(nb)?, &want)?;
        }
    }
    Ok(())
}

/// Closed form of the GH tensor: `A_i A_j` as `(k, p_{ij}^k)` pairs.
pub fn tensor_closed_form_gh(field: &FiniteField) -> impl Fn(usize, usize) -> Vec<(usize, u64)> + '_ {
    let q = field.order() as usize;
    let two = 2 * q;
    let qu = q as u64;
    let all = move |t: usize, x: u64| (0..q).map(move |g| (gh_index(q, g, t), x));
    move |i, j| {
        let split = |x: usize| (x % q, x / q);
        match (i == two, j == two) {
            (true, true) => all(0, qu * qu - qu).chain(std::iter::once((two, qu * qu - 2 * qu))).collect(),
            (true, false) | (false, true) => {
                let (_, t) = split(if i == two { j } else { i });
                if t == 0 {
                    vec![(two, 1)]
                } else {
                    all(1, qu - 1).collect()
                }
            }
            (false, false) => {
                let ((a, t), (b, t2)) = (split(i), split(j));
                let plus = field.add(a as u32, b as u32) as usize;
                let minus = field.sub(a as u32, b as u32) as usize;
                match (t, t2) {
                    (0, 0) => vec![(gh_index(q, plus, 0), 1)],
                    (0, _) => vec![(gh_index(q, plus, 1), 1)],
                    (_, 0) => vec![(gh_index(q, minus, 1), 1)],
                    _ => {
                        let mut out = vec![(gh_index(q, minus, 0), qu * qu), (two, qu)];
                        out.extend(all(1, qu - 1));
                        out
                    }
                }
            }
        }
    }
}

/// Relation labels `(a,0)`, then `(a,1)`, then `2`.
pub fn gh_labels(q: usize) -> Vec<String> {
    let mut out: Vec<String> = (0..2).flat_map(|t| (0..q).map(move |a| format!("({a},{t})"))).collect();
    out.push("2".into());
    out
}

/// The class `2q` scheme `A_{a,0} = I ⊗ phi(a)`, `A_{a,1} = N_a - A_2`,
/// `A_2 = I_{q+1} ⊗ (J_{q^2} - I_q ⊗ J_q)`.
pub fn gh_scheme(q: usize) -> Result<GhScheme, BuildError> {
    let field = FiniteField::of_order(q as u64)?;
    if field.characteristic() == 2 {
        return Err(BuildError::EvenCharacteristic(2));
    }
    verify_gh(&gh_build(&field))?;
    let latin = latin_build(q + 1)?;
    verify_latin(&latin)?;
    check_c_identities(&field, &latin)?;
    let n_mats: Vec<ZeroOneMatrix> = (0..q as u32).map(|a| build_n_gh(&field, &latin, a)).collect::<Result<_, _>>()?;
    check_n_identities(&field, &n_mats)?;
    let g = AbelianGroup::additive(&field);
    let i_outer = ZeroOneMatrix::identity((q + 1) * q);
    let a2 = ZeroOneMatrix::identity(q + 1).kron(&build_c_x(q));
    let mut mats: Vec<ZeroOneMatrix> = (0..q as u32).map(|a| i_outer.kron(&phi_rep(&g, a))).collect();
    for na in &n_mats {
        mats.push(na.checked_sub(&a2)?);
    }
    mats.push(a2);
    let spec = GhSchemeSpec::new(q);
    let scheme = scheme_verify(mats, Some(gh_labels(q)))?;
    expect_tensor(&scheme, tensor_closed_form_gh(&field))?;
    Ok(GhScheme { spec, field, latin, n_mats, scheme })
}
