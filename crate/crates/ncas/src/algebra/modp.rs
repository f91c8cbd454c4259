//! Ring maps `Z_(l)[zeta_M, sqrt(n)] -> GF(l)` for primes `l = 1 mod M`.
//!
//! Used to get cheap rank lower bounds: the rank of a reduced matrix never
//! exceeds the rank over the cyclotomic field.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::cyclo::{mod_pow, CycScalar};
use super::field::{is_prime, prime_divisors};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularEmbedding {
    ell: u64,
    m: u32,
    zeta: u64,
    sqrt: Option<(u64, u64)>,
}

fn is_qr(a: u64, p: u64) -> bool {
    a % p == 0 || mod_pow(a, (p - 1) / 2, p) == 1
}

/// Square root modulo an odd prime by Tonelli-Shanks.
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if !is_qr(a, p) {
        return None;
    }
    let (mut q, mut s) = (p - 1, 0u32);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| !is_qr(z, p))?;
    let mul = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    let (mut m, mut c, mut t, mut r) = (s, mod_pow(z, q, p), mod_pow(a, q, p), mod_pow(a, q.div_ceil(2), p));
    while t != 1 {
        let mut i = 0u32;
        let mut tt = t;
        while tt != 1 {
            tt = mul(tt, tt);
            i += 1;
        }
        let b = mod_pow(c, 1u64 << (m - i - 1), p);
        m = i;
        c = mul(b, b);
        t = mul(t, c);
        r = mul(r, b);
    }
    Some(r)
}

impl ModularEmbedding {
    /// The `skip`-th suitable prime above `2^30`.
    pub fn find(m: u32, radicand: Option<u64>, skip: usize) -> ModularEmbedding {
        let m = m.max(1);
        let mut found = 0usize;
        let start = (1u64 << 30) / m as u64 + 1;
        let mut k = start;
        loop {
            let ell = k * m as u64 + 1;
            k += 1;
            if ell % 2 == 0 || !is_prime(ell) {
                continue;
            }
            if let Some(n) = radicand {
                if !is_qr(n, ell) {
                    continue;
                }
            }
            if found < skip {
                found += 1;
                continue;
            }
            let primes = prime_divisors(m as u64);
            let zeta = (2..ell)
                .map(|g| mod_pow(g, (ell - 1) / m as u64, ell))
                .find(|&r| primes.iter().all(|&p| mod_pow(r, m as u64 / p, ell) != 1))
                .expect("primitive root exists");
            let sqrt = radicand.map(|n| (n, sqrt_mod(n, ell).unwrap()));
            return ModularEmbedding { ell, m, zeta, sqrt };
        }
    }

    pub fn prime(&self) -> u64 {
        self.ell
    }

    fn rational(&self, num: &BigInt, den: &BigInt) -> Option<u64> {
        let l = BigInt::from(self.ell);
        let d = den.mod_floor(&l).to_u64()?;
        if d == 0 {
            return None;
        }
        let n = num.mod_floor(&l).to_u64()?;
        Some(((n as u128 * mod_pow(d, self.ell - 2, self.ell) as u128) % self.ell as u128) as u64)
    }

    fn poly(&self, c: u32, coeffs: &[num_rational::BigRational]) -> Option<u64> {
        let z = mod_pow(self.zeta, (self.m / c) as u64, self.ell);
        let (mut acc, mut zk) = (0u64, 1u64);
        for a in coeffs {
            if !a.is_zero() {
                let v = self.rational(a.numer(), a.denom())?;
                acc = ((acc as u128 + v as u128 * zk as u128) % self.ell as u128) as u64;
            }
            zk = ((zk as u128 * z as u128) % self.ell as u128) as u64;
        }
        Some(acc)
    }

    /// Image of `x`, or `None` if `x` does not live in the domain of this map.
    pub fn reduce(&self, x: &CycScalar) -> Option<u64> {
        let c = x.conductor();
        if self.m % c != 0 {
            return None;
        }
        let (a, rad) = x.parts();
        let mut v = self.poly(c, a)?;
        if let Some((n, b)) = rad {
            let (n0, s) = self.sqrt?;
            if n0 != n {
                return None;
            }
            let w = self.poly(c, b)?;
            v = ((v as u128 + w as u128 * s as u128) % self.ell as u128) as u64;
        }
        Some(v)
    }
}

/// Rank of a dense `rows x cols` matrix over `GF(ell)`; the buffer is destroyed.
pub fn rank_mod(mat: &mut [u64], rows: usize, cols: usize, ell: u64) -> usize {
    let mut rank = 0usize;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| mat[r * cols + col] != 0) else { continue };
        if piv != rank {
            for j in 0..cols {
                mat.swap(piv * cols + j, rank * cols + j);
            }
        }
        let inv = mod_pow(mat[rank * cols + col], ell - 2, ell);
        for j in col..cols {
            mat[rank * cols + j] = mat[rank * cols + j] * inv % ell;
        }
        let (head, tail) = mat.split_at_mut((rank + 1) * cols);
        let pivot_row = &head[rank * cols..];
        for r in 0..rows - rank - 1 {
            let row = &mut tail[r * cols..(r + 1) * cols];
            let f = row[col];
            if f == 0 {
                continue;
            }
            let nf = ell - f;
            for j in col..cols {
                if pivot_row[j] != 0 {
                    row[j] = (row[j] + nf * pivot_row[j]) % ell;
                }
            }
        }
        rank += 1;
    }
    rank
}
