//! Finite fields GF(p^e) with log/antilog tables.
//!
//! An element is stored as the integer `sum c_i p^i` of its coefficient vector
//! over the polynomial basis `1, x, ..., x^(e-1)`. That integer is also the
//! canonical ordering of the field used everywhere else in the crate.

use crate::error::FieldError;

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 20;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns `(p, e)` with `q = p^e`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let (mut r, mut e) = (q, 0u32);
    while r % p == 0 {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p, e))
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteField {
    p: u32,
    e: u32,
    q: u32,
    /// Low coefficients `c_0..c_{e-1}` of the monic modulus.
    modulus: Vec<u32>,
    generator: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

fn digits(mut x: u32, p: u32, e: u32) -> Vec<u32> {
    (0..e)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0u32, |acc, &c| acc * p + c)
}

/// Remainder of `a` modulo the monic polynomial with low coefficients `m`.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let e = m.len();
    let mut r = a.to_vec();
    while r.len() > e {
        let lead = r.pop().unwrap() as u64;
        if lead == 0 {
            continue;
        }
        let off = r.len() - e;
        for (i, &c) in m.iter().enumerate() {
            let sub = (lead * c as u64) % p as u64;
            r[off + i] = ((r[off + i] as u64 + p as u64 - sub) % p as u64) as u32;
        }
    }
    r.resize(e, 0);
    r
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut c = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            c[i + j] = (c[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    c.into_iter().map(|v| v as u32).collect()
}

fn is_irreducible(low: &[u32], p: u32) -> bool {
    let e = low.len() as u32;
    let mut f = low.to_vec();
    f.push(1);
    for d in 1..=e / 2 {
        for idx in 0..(p as u64).pow(d) {
            let g = digits(idx as u32, p, d);
            if poly_rem(&f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FiniteField {
    /// GF(p^e) with the lowest irreducible monic modulus and the smallest primitive element.
    pub fn new(p: u64, e: u32) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if e == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let q = (p as u128).checked_pow(e).filter(|&q| q <= MAX_ORDER as u128);
        let q = match q {
            Some(q) => q as u32,
            None => return Err(FieldError::OrderTooLarge(p.saturating_pow(e))),
        };
        let p = p as u32;
        let modulus = (0..(p as u64).pow(e))
            .map(|idx| digits(idx as u32, p, e))
            .find(|low| e == 1 || is_irreducible(low, p))
            .expect("irreducible polynomials exist in every degree");
        let mul_raw = |a: u32, b: u32| -> u32 {
            let prod = poly_mul(&digits(a, p, e), &digits(b, p, e), p);
            undigits(&poly_rem(&prod, &modulus, p), p)
        };
        let pow_raw = |a: u32, mut k: u64| -> u32 {
            let (mut base, mut acc) = (a, 1u32);
            while k > 0 {
                if k & 1 == 1 {
                    acc = mul_raw(acc, base);
                }
                base = mul_raw(base, base);
                k >>= 1;
            }
            acc
        };
        let n = (q - 1) as u64;
        let primes = prime_divisors(n);
        let generator = (1..q)
            .find(|&g| primes.iter().all(|&r| pow_raw(g, n / r) != 1))
            .expect("the multiplicative group is cyclic");
        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut log = vec![u32::MAX; q as usize];
        let mut cur = 1u32;
        for k in 0..q - 1 {
            exp.push(cur);
            log[cur as usize] = k;
            cur = mul_raw(cur, generator);
        }
        Ok(FiniteField { p, e, q, modulus, generator, exp, log })
    }

    /// GF(q) for a prime power `q`.
    pub fn of_order(q: u64) -> Result<Self, FieldError> {
        let (p, e) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        Self::new(p, e)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }
    pub fn degree(&self) -> u32 {
        self.e
    }
    pub fn order(&self) -> u32 {
        self.q
    }
    /// Full coefficient list of the modulus, constant term first, leading 1 last.
    pub fn modulus(&self) -> Vec<u32> {
        let mut m = self.modulus.clone();
        m.push(1);
        m
    }
    pub fn generator(&self) -> u32 {
        self.generator
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.q
    }

    pub fn check(&self, x: u32) -> Result<u32, FieldError> {
        if x < self.q {
            Ok(x)
        } else {
            Err(FieldError::NotAnElement { value: x as u64, order: self.q as u64 })
        }
    }

    pub fn coeffs(&self, x: u32) -> Vec<u32> {
        digits(x, self.p, self.e)
    }

    pub fn from_coeffs(&self, c: &[u32]) -> u32 {
        let mut d: Vec<u32> = c.iter().map(|&v| v % self.p).collect();
        d.resize(self.e as usize, 0);
        undigits(&d, self.p)
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.e == 1 {
            return (a + b) % self.p;
        }
        let (mut a, mut b, mut out, mut place) = (a, b, 0u32, 1u32);
        for _ in 0..self.e {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.e == 1 {
            return (self.p - a % self.p) % self.p;
        }
        let (mut a, mut out, mut place) = (a, 0u32, 1u32);
        for _ in 0..self.e {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let k = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % (self.q as u64 - 1);
        self.exp[k as usize]
    }

    pub fn inv(&self, a: u32) -> Result<u32, FieldError> {
        if a == 0 {
            return Err(FieldError::ZeroArgument);
        }
        let n = self.q - 1;
        Ok(self.exp[((n - self.log[a as usize]) % n) as usize])
    }

    pub fn pow(&self, a: u32, k: u64) -> u32 {
        if k == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = self.q as u64 - 1;
        self.exp[((self.log[a as usize] as u64 * (k % n)) % n) as usize]
    }

    /// `g^k` for the fixed generator `g`.
    pub fn exp(&self, k: u64) -> u32 {
        self.exp[(k % (self.q as u64 - 1)) as usize]
    }

    /// Discrete logarithm base the fixed generator, in `0..q-1`.
    pub fn dlog(&self, a: u32) -> Result<u32, FieldError> {
        self.check(a)?;
        if a == 0 {
            return Err(FieldError::ZeroArgument);
        }
        Ok(self.log[a as usize])
    }

    /// The element `-1`.
    pub fn minus_one(&self) -> u32 {
        self.neg(1)
    }

    /// Standard bilinear pairing of the additive group, `sum a_i b_i mod p`.
    pub fn trace_pairing(&self, a: u32, b: u32) -> u32 {
        let (mut a, mut b, mut s) = (a, b, 0u64);
        for _ in 0..self.e {
            s += (a % self.p) as u64 * (b % self.p) as u64;
            a /= self.p;
            b /= self.p;
        }
        (s % self.p as u64) as u32
    }

    /// One representative from each pair `{x, -x}` of nonzero elements, chosen greedily in canonical order.
    pub fn half_transversal(&self) -> Vec<u32> {
        let mut taken = vec![false; self.q as usize];
        let mut out = Vec::new();
        for x in 1..self.q {
            let nx = self.neg(x);
            if taken[x as usize] || taken[nx as usize] {
                continue;
            }
            taken[x as usize] = true;
            out.push(x);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn gf3_generator_two() {
        let f = FiniteField::new(3, 1).unwrap();
        assert_eq!(f.generator(), 2);
    }

    #[test]
    fn gf4_generator_squares() {
        let f = FiniteField::new(2, 2).unwrap();
        assert_eq!(f.modulus(), vec![1, 1, 1]);
        let g = f.generator();
        assert_eq!(g, 2);
        assert_eq!(f.mul(g, g), f.add(g, 1));
    }

    #[test]
    fn gf7_dlog_of_six() {
        let f = FiniteField::new(7, 1).unwrap();
        assert_eq!(f.generator(), 3);
        assert_eq!(f.dlog(6).unwrap(), 3);
    }

    #[test]
    fn gf9_modulus_and_generator() {
        let f = FiniteField::new(3, 2).unwrap();
        assert_eq!(f.modulus(), vec![1, 0, 1]);
        assert_eq!(f.generator(), 4);
        assert_eq!(f.half_transversal(), vec![1, 3, 4, 5]);
    }

    #[test]
    fn gf8_modulus() {
        let f = FiniteField::new(2, 3).unwrap();
        assert_eq!(f.modulus(), vec![1, 1, 0, 1]);
    }

    #[test]
    fn errors() {
        assert_eq!(FiniteField::new(6, 1), Err(FieldError::NotPrime(6)));
        assert!(matches!(FiniteField::new(2, 21), Err(FieldError::OrderTooLarge(_))));
        let f = FiniteField::new(5, 1).unwrap();
        assert_eq!(f.dlog(0), Err(FieldError::ZeroArgument));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(13), Some((13, 1)));
    }

    #[test]
    fn half_transversal_prime() {
        let f = FiniteField::new(7, 1).unwrap();
        assert_eq!(f.half_transversal(), vec![1, 2, 3]);
    }

    fn small_field() -> impl Strategy<Value = FiniteField> {
        prop_oneof![
            Just((2u64, 1u32)),
            Just((2, 3)),
            Just((3, 2)),
            Just((5, 1)),
            Just((5, 2)),
            Just((7, 1)),
            Just((2, 4)),
            Just((13, 1))
        ]
        .prop_map(|(p, e)| FiniteField::new(p, e).unwrap())
    }

    proptest! {
        #[test]
        fn dlog_is_homomorphism(f in small_field(), a in 1u32..1000, b in 1u32..1000) {
            let q = f.order();
            let (a, b) = (1 + a % (q - 1), 1 + b % (q - 1));
            let lhs = f.dlog(f.mul(a, b)).unwrap();
            let rhs = (f.dlog(a).unwrap() + f.dlog(b).unwrap()) % (q - 1);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn field_axioms(f in small_field(), a in 0u32..1000, b in 0u32..1000, c in 0u32..1000) {
            let q = f.order();
            let (a, b, c) = (a % q, b % q, c % q);
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
            prop_assert_eq!(f.from_coeffs(&f.coeffs(a)), a);
        }
    }
}
