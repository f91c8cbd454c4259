//! Finite abelian groups `Z_m` and `Z_p^e` with their characters.
//!
//! Elements are integers in `0..order`; for `Z_p^e` the base-`p` digits are the
//! coordinates, matching the additive group of [`FiniteField`](super::FiniteField).

use super::cyclo::CycScalar;
use super::field::FiniteField;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AbelianGroup {
    Cyclic { m: u32 },
    Elementary { p: u32, e: u32 },
}

impl AbelianGroup {
    pub fn cyclic(m: u32) -> Self {
        AbelianGroup::Cyclic { m }
    }

    /// Additive group of a finite field.
    pub fn additive(f: &FiniteField) -> Self {
        if f.degree() == 1 {
            AbelianGroup::Cyclic { m: f.order() }
        } else {
            AbelianGroup::Elementary { p: f.characteristic(), e: f.degree() }
        }
    }

    pub fn order(&self) -> u32 {
        match *self {
            AbelianGroup::Cyclic { m } => m,
            AbelianGroup::Elementary { p, e } => p.pow(e),
        }
    }

    /// Exponent, which is also the conductor of the character values.
    pub fn exponent(&self) -> u32 {
        match *self {
            AbelianGroup::Cyclic { m } => m,
            AbelianGroup::Elementary { p, .. } => p,
        }
    }

    fn digitwise(&self, a: u32, b: u32, op: impl Fn(u32, u32, u32) -> u32) -> u32 {
        match *self {
            AbelianGroup::Cyclic { m } => op(a, b, m),
            AbelianGroup::Elementary { p, e } => {
                let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
                for _ in 0..e {
                    out += op(a % p, b % p, p) * place;
                    a /= p;
                    b /= p;
                    place *= p;
                }
                out
            }
        }
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.digitwise(a, b, |x, y, n| (x + y) % n)
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.digitwise(a, b, |x, y, n| (x + n - y) % n)
    }

    pub fn neg(&self, a: u32) -> u32 {
        self.sub(0, a)
    }

    /// Scalar multiple `k a`.
    pub fn times(&self, k: i64, a: u32) -> u32 {
        self.digitwise(a, 0, |x, _, n| ((x as i64 * k).rem_euclid(n as i64)) as u32)
    }

    /// Bilinear pairing into `Z_exp`, so `chi_b(a) = zeta_exp^pairing(a, b)`.
    pub fn pairing(&self, a: u32, b: u32) -> u32 {
        match *self {
            AbelianGroup::Cyclic { m } => ((a as u64 * b as u64) % m as u64) as u32,
            AbelianGroup::Elementary { p, e } => {
                let (mut a, mut b, mut s) = (a, b, 0u64);
                for _ in 0..e {
                    s += (a % p) as u64 * (b % p) as u64;
                    a /= p;
                    b /= p;
                }
                (s % p as u64) as u32
            }
        }
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.order()
    }

    pub fn character(&self, label: u32) -> Character {
        Character { group: *self, label }
    }

    /// All characters, indexed by group elements in canonical order.
    pub fn characters(&self) -> Vec<Character> {
        self.elements().map(|b| self.character(b)).collect()
    }
}

/// The character `chi_b(a) = zeta^<a, b>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Character {
    pub group: AbelianGroup,
    pub label: u32,
}

impl Character {
    pub fn exponent_at(&self, a: u32) -> u32 {
        self.group.pairing(a, self.label)
    }

    pub fn value(&self, a: u32) -> CycScalar {
        CycScalar::root_of_unity(self.group.exponent(), self.exponent_at(a) as i64)
    }

    pub fn conj(&self) -> Character {
        Character { group: self.group, label: self.group.neg(self.label) }
    }

    pub fn mul(&self, other: &Character) -> Character {
        Character { group: self.group, label: self.group.add(self.label, other.label) }
    }
}

/// Character table `T[b][a] = chi_b(a)`.
pub fn char_table(g: &AbelianGroup) -> Vec<Vec<CycScalar>> {
    g.characters().iter().map(|c| g.elements().map(|a| c.value(a)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn z3_table_has_zeta() {
        let t = char_table(&AbelianGroup::cyclic(3));
        assert_eq!(t[1][1], CycScalar::root_of_unity(3, 1));
        assert_eq!(t[1][2], CycScalar::root_of_unity(3, 2));
        assert!(t[0].iter().all(|x| x.is_one()));
    }

    #[test]
    fn orthogonality() {
        for g in [AbelianGroup::cyclic(4), AbelianGroup::Elementary { p: 3, e: 2 }] {
            let t = char_table(&g);
            let n = g.order() as usize;
            for i in 0..n {
                for j in 0..n {
                    let s = (0..n).fold(CycScalar::zero(g.exponent()), |acc, a| acc + t[i][a].mul(&t[j][a].conj()));
                    let expect = if i == j { n as i64 } else { 0 };
                    assert_eq!(s, CycScalar::from_int(1, expect));
                }
            }
        }
    }

    fn group() -> impl Strategy<Value = AbelianGroup> {
        prop_oneof![
            (2u32..9).prop_map(AbelianGroup::cyclic),
            Just(AbelianGroup::Elementary { p: 2, e: 3 }),
            Just(AbelianGroup::Elementary { p: 3, e: 2 })
        ]
    }

    proptest! {
        #[test]
        fn character_symmetry(g in group(), a in 0u32..64, b in 0u32..64) {
            let (a, b) = (a % g.order(), b % g.order());
            prop_assert_eq!(g.character(b).value(a), g.character(a).value(b));
            prop_assert_eq!(g.character(b).value(g.neg(a)), g.character(b).value(a).conj());
            let c = g.character(b);
            prop_assert_eq!(c.value(g.add(a, b)), c.value(a).mul(&c.value(b)));
        }
    }
}
