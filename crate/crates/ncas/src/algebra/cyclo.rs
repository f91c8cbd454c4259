//! Exact arithmetic in `Q(zeta_M)[sqrt(n)]`.
//!
//! A scalar is `a + b sqrt(n)` with `a, b` polynomials in `zeta_M` reduced modulo
//! the cyclotomic polynomial, coefficients in `Q`. The radicand is squarefree and
//! `sqrt(n)` is only kept symbolic when it does not already lie in `Q(zeta_M)`;
//! otherwise it is rewritten through Gauss sums. With that normalisation the
//! representation is canonical for a fixed conductor, and equality across
//! conductors lifts both sides to the lcm.

use std::borrow::Cow;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ScalarError;

type Poly = Vec<BigRational>;

/// Reduction data for one cyclotomic field.
#[derive(Debug)]
pub struct CycloField {
    m: u32,
    phi: usize,
    /// `x^k mod Phi_m` for `k < max(m, 2 phi - 1)`.
    powers: Vec<Vec<i64>>,
}

fn poly_divexact(num: &[i128], den: &[i128]) -> Vec<i128> {
    // den is monic
    let mut r = num.to_vec();
    let dl = den.len();
    let mut q = vec![0i128; num.len() + 1 - dl];
    for i in (0..q.len()).rev() {
        let c = r[i + dl - 1];
        q[i] = c;
        for (j, &d) in den.iter().enumerate() {
            r[i + j] -= c * d;
        }
    }
    debug_assert!(r.iter().all(|&c| c == 0));
    q
}

/// Integer coefficients of the `m`-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_polynomial(m: u32) -> Vec<i64> {
    fn rec(m: u32, memo: &mut HashMap<u32, Vec<i128>>) -> Vec<i128> {
        if let Some(p) = memo.get(&m) {
            return p.clone();
        }
        let mut num = vec![0i128; m as usize + 1];
        num[0] = -1;
        num[m as usize] = 1;
        for d in 1..m {
            if m % d == 0 {
                let f = rec(d, memo);
                num = poly_divexact(&num, &f);
            }
        }
        memo.insert(m, num.clone());
        num
    }
    let mut memo = HashMap::new();
    rec(m, &mut memo).into_iter().map(|c| c as i64).collect()
}

impl CycloField {
    fn build(m: u32) -> CycloField {
        let phi_poly = cyclotomic_polynomial(m);
        let phi = phi_poly.len() - 1;
        let count = (m as usize).max(2 * phi).max(1);
        let mut powers = Vec::with_capacity(count);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..count {
            powers.push(cur.clone());
            // multiply by x
            let top = cur[phi - 1];
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1] - top * phi_poly[i];
            }
            cur[0] = -top * phi_poly[0];
        }
        CycloField { m, phi, powers }
    }

    pub fn get(m: u32) -> Arc<CycloField> {
        static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CycloField>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().unwrap();
        guard.entry(m).or_insert_with(|| Arc::new(CycloField::build(m))).clone()
    }

    pub fn conductor(&self) -> u32 {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.phi
    }

    fn power(&self, k: usize) -> &[i64] {
        &self.powers[k % self.m as usize]
    }

    fn zero_poly(&self) -> Poly {
        vec![BigRational::zero(); self.phi]
    }

    fn reduce(&self, c: &[BigRational]) -> Poly {
        let mut out = self.zero_poly();
        for (k, ck) in c.iter().enumerate() {
            if ck.is_zero() {
                continue;
            }
            if k < self.phi {
                out[k] += ck;
                continue;
            }
            for (j, &t) in self.powers[k].iter().enumerate() {
                if t != 0 {
                    out[j] += ck * BigRational::from_integer(BigInt::from(t));
                }
            }
        }
        out
    }

    fn mul(&self, a: &[BigRational], b: &[BigRational]) -> Poly {
        let nza: Vec<usize> = (0..a.len()).filter(|&i| !a[i].is_zero()).collect();
        if nza.is_empty() {
            return self.zero_poly();
        }
        let nzb: Vec<usize> = (0..b.len()).filter(|&i| !b[i].is_zero()).collect();
        if nzb.is_empty() {
            return self.zero_poly();
        }
        let mut c = vec![BigRational::zero(); 2 * self.phi - 1];
        for &i in &nza {
            for &j in &nzb {
                c[i + j] += &a[i] * &b[j];
            }
        }
        self.reduce(&c)
    }

    fn conj(&self, a: &[BigRational]) -> Poly {
        let mut out = self.zero_poly();
        for (k, ak) in a.iter().enumerate() {
            if ak.is_zero() {
                continue;
            }
            let idx = (self.m as usize - k % self.m as usize) % self.m as usize;
            for (j, &t) in self.power(idx).iter().enumerate() {
                if t != 0 {
                    out[j] += ak * BigRational::from_integer(BigInt::from(t));
                }
            }
        }
        out
    }

    /// Image of `a` under `zeta_m -> zeta_l^(l/m)`.
    fn lift_to(&self, a: &[BigRational], target: &CycloField) -> Poly {
        let step = (target.m / self.m) as usize;
        let mut out = target.zero_poly();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, &t) in target.power(i * step).iter().enumerate() {
                if t != 0 {
                    out[j] += ai * BigRational::from_integer(BigInt::from(t));
                }
            }
        }
        out
    }

    fn inv(&self, a: &[BigRational]) -> Result<Poly, ScalarError> {
        if a.iter().all(|c| c.is_zero()) {
            return Err(ScalarError::DivisionByZero);
        }
        if a[1..].iter().all(|c| c.is_zero()) {
            let mut out = self.zero_poly();
            out[0] = a[0].recip();
            return Ok(out);
        }
        // Solve (mult-by-a) x = 1 over Q.
        let n = self.phi;
        let mut mat: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); n + 1]; n];
        for j in 0..n {
            let mut basis = self.zero_poly();
            basis[j] = BigRational::one();
            let col = self.mul(a, &basis);
            for i in 0..n {
                mat[i][j] = col[i].clone();
            }
        }
        mat[0][n] = BigRational::one();
        let sol = solve_dense(mat).ok_or(ScalarError::DivisionByZero)?;
        Ok(sol)
    }
}

/// Gauss-Jordan solve of an augmented square system; `None` if singular.
fn solve_dense(mut mat: Vec<Vec<BigRational>>) -> Option<Vec<BigRational>> {
    let n = mat.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !mat[r][col].is_zero())?;
        mat.swap(col, piv);
        let inv = mat[col][col].recip();
        for v in mat[col].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n {
            if r != col && !mat[r][col].is_zero() {
                let f = mat[r][col].clone();
                let (src, dst) = if r < col {
                    let (lo, hi) = mat.split_at_mut(col);
                    (&hi[0], &mut lo[r])
                } else {
                    let (lo, hi) = mat.split_at_mut(r);
                    (&lo[col], &mut hi[0])
                };
                for (d, s) in dst.iter_mut().zip(src.iter()) {
                    if !s.is_zero() {
                        *d -= &f * s;
                    }
                }
            }
        }
    }
    Some(mat.into_iter().map(|row| row[n].clone()).collect())
}

fn squarefree_split(n: u64) -> (u64, u64) {
    // n = k^2 s with s squarefree
    let (mut k, mut s, mut r) = (1u64, 1u64, n);
    let mut d = 2u64;
    while d * d <= r {
        let mut e = 0;
        while r % d == 0 {
            r /= d;
            e += 1;
        }
        k *= d.pow(e / 2);
        if e % 2 == 1 {
            s *= d;
        }
        d += 1;
    }
    (k, s * r)
}

/// Discriminant of `Q(sqrt(s))` for squarefree `s > 1`.
fn quadratic_discriminant(s: u64) -> u64 {
    if s % 4 == 1 {
        s
    } else {
        4 * s
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Radical {
    n: u64,
    b: Poly,
}

/// Element of `Q(zeta_M)[sqrt(n)]`.
#[derive(Clone)]
pub struct CycScalar {
    field: Arc<CycloField>,
    a: Poly,
    rad: Option<Radical>,
}

impl fmt::Debug for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycScalar({self})")
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl CycScalar {
    fn from_parts(field: Arc<CycloField>, a: Poly, rad: Option<Radical>) -> CycScalar {
        let rad = rad.filter(|r| r.b.iter().any(|c| !c.is_zero()));
        CycScalar { field, a, rad }
    }

    pub fn zero(m: u32) -> CycScalar {
        let field = CycloField::get(m.max(1));
        let a = field.zero_poly();
        CycScalar { field, a, rad: None }
    }

    pub fn one(m: u32) -> CycScalar {
        Self::from_int(m, 1)
    }

    pub fn from_int(m: u32, v: i64) -> CycScalar {
        Self::from_rational(m, rat(v))
    }

    pub fn from_ratio(m: u32, num: i64, den: i64) -> CycScalar {
        Self::from_rational(m, BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(m: u32, v: BigRational) -> CycScalar {
        let mut s = Self::zero(m);
        s.a[0] = v;
        s
    }

    /// `zeta_m^k`.
    pub fn root_of_unity(m: u32, k: i64) -> CycScalar {
        let m = m.max(1);
        let field = CycloField::get(m);
        let k = k.rem_euclid(m as i64) as usize;
        let a = field.power(k).iter().map(|&c| rat(c)).collect();
        CycScalar { field, a, rad: None }
    }

    /// `sqrt(n)` for `n >= 0`, viewed in conductor `m`.
    pub fn sqrt(m: u32, n: u64) -> CycScalar {
        let (k, s) = squarefree_split(n);
        let kk = Self::from_int(m, k as i64);
        if n == 0 {
            return Self::zero(m);
        }
        if s == 1 {
            return kk;
        }
        let field = CycloField::get(m.max(1));
        if let Some(inner) = sqrt_in_field(s, &field) {
            return CycScalar { field, a: inner, rad: None }.mul(&kk);
        }
        let mut b = field.zero_poly();
        b[0] = rat(k as i64);
        let a = field.zero_poly();
        CycScalar { field, a, rad: Some(Radical { n: s, b }) }
    }

    pub fn conductor(&self) -> u32 {
        self.field.m
    }

    pub fn radicand(&self) -> Option<u64> {
        self.rad.as_ref().map(|r| r.n)
    }

    pub fn is_zero(&self) -> bool {
        self.rad.is_none() && self.a.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_one())
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        (self.rad.is_none() && self.a[1..].iter().all(|c| c.is_zero())).then(|| self.a[0].clone())
    }

    pub fn as_integer(&self) -> Option<i64> {
        self.as_rational().filter(|r| r.is_integer()).and_then(|r| r.to_integer().to_i64())
    }

    /// Coefficients of the rational part and of the radical part.
    pub fn parts(&self) -> (&[BigRational], Option<(u64, &[BigRational])>) {
        (&self.a, self.rad.as_ref().map(|r| (r.n, r.b.as_slice())))
    }

    /// View of `self` in conductor `l`, a multiple of the current conductor.
    pub fn lift(&self, l: u32) -> Result<CycScalar, ScalarError> {
        if l == 0 {
            return Err(ScalarError::ZeroConductor);
        }
        if l % self.field.m != 0 {
            return Err(ScalarError::Dimension(format!("{} does not divide {}", self.field.m, l)));
        }
        if l == self.field.m {
            return Ok(self.clone());
        }
        let target = CycloField::get(l);
        let a = self.field.lift_to(&self.a, &target);
        match &self.rad {
            None => Ok(CycScalar { field: target, a, rad: None }),
            Some(r) => {
                let b = self.field.lift_to(&r.b, &target);
                if let Some(root) = sqrt_in_field(r.n, &target) {
                    let br = target.mul(&b, &root);
                    let a = a.iter().zip(br.iter()).map(|(x, y)| x + y).collect();
                    Ok(CycScalar { field: target, a, rad: None })
                } else {
                    Ok(CycScalar { field: target, a, rad: Some(Radical { n: r.n, b }) })
                }
            }
        }
    }

    fn align<'a>(&'a self, other: &'a CycScalar) -> (Cow<'a, CycScalar>, Cow<'a, CycScalar>) {
        if self.field.m == other.field.m {
            return (Cow::Borrowed(self), Cow::Borrowed(other));
        }
        let l = self.field.m.lcm(&other.field.m);
        let lift = |x: &'a CycScalar| if x.field.m == l { Cow::Borrowed(x) } else { Cow::Owned(x.lift(l).expect("lcm lift")) };
        (lift(self), lift(other))
    }

    fn radical_pair(x: &CycScalar, y: &CycScalar) -> Result<Option<u64>, ScalarError> {
        match (&x.rad, &y.rad) {
            (Some(a), Some(b)) if a.n != b.n => Err(ScalarError::IncompatibleRadical { left: a.n, right: b.n }),
            (Some(a), _) => Ok(Some(a.n)),
            (_, Some(b)) => Ok(Some(b.n)),
            _ => Ok(None),
        }
    }

    pub fn checked_add(&self, other: &CycScalar) -> Result<CycScalar, ScalarError> {
        let (x, y) = self.align(other);
        let n = Self::radical_pair(&x, &y)?;
        let a = x.a.iter().zip(y.a.iter()).map(|(p, q)| p + q).collect();
        let rad = n.map(|n| {
            let f = &x.field;
            let bx = x.rad.as_ref().map(|r| r.b.clone()).unwrap_or_else(|| f.zero_poly());
            let by = y.rad.as_ref().map(|r| r.b.clone()).unwrap_or_else(|| f.zero_poly());
            Radical { n, b: bx.iter().zip(by.iter()).map(|(p, q)| p + q).collect() }
        });
        Ok(Self::from_parts(x.field.clone(), a, rad))
    }

    pub fn checked_sub(&self, other: &CycScalar) -> Result<CycScalar, ScalarError> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &CycScalar) -> Result<CycScalar, ScalarError> {
        let (x, y) = self.align(other);
        let n = Self::radical_pair(&x, &y)?;
        let f = x.field.clone();
        let mut a = f.mul(&x.a, &y.a);
        let rad = match (&x.rad, &y.rad) {
            (None, None) => None,
            (Some(r), None) => Some(Radical { n: r.n, b: f.mul(&r.b, &y.a) }),
            (None, Some(r)) => Some(Radical { n: r.n, b: f.mul(&x.a, &r.b) }),
            (Some(r1), Some(r2)) => {
                let bb = f.mul(&r1.b, &r2.b);
                let nn = rat(n.unwrap() as i64);
                for (ai, bi) in a.iter_mut().zip(bb.iter()) {
                    *ai += bi * &nn;
                }
                let b1 = f.mul(&x.a, &r2.b);
                let b2 = f.mul(&r1.b, &y.a);
                Some(Radical { n: r1.n, b: b1.iter().zip(b2.iter()).map(|(p, q)| p + q).collect() })
            }
        };
        Ok(Self::from_parts(f, a, rad))
    }

    pub fn inv(&self) -> Result<CycScalar, ScalarError> {
        let f = self.field.clone();
        match &self.rad {
            None => Ok(CycScalar { a: f.inv(&self.a)?, field: f, rad: None }),
            Some(r) => {
                // (a + b s)^{-1} = (a - b s) / (a^2 - n b^2)
                let aa = f.mul(&self.a, &self.a);
                let bb = f.mul(&r.b, &r.b);
                let nn = rat(r.n as i64);
                let norm: Poly = aa.iter().zip(bb.iter()).map(|(x, y)| x - y * &nn).collect();
                let ninv = f.inv(&norm)?;
                let a = f.mul(&self.a, &ninv);
                let b: Poly = f.mul(&r.b, &ninv).into_iter().map(|c| -c).collect();
                Ok(Self::from_parts(f, a, Some(Radical { n: r.n, b })))
            }
        }
    }

    pub fn checked_div(&self, other: &CycScalar) -> Result<CycScalar, ScalarError> {
        self.checked_mul(&other.inv()?)
    }

    pub fn neg(&self) -> CycScalar {
        CycScalar {
            field: self.field.clone(),
            a: self.a.iter().map(|c| -c).collect(),
            rad: self.rad.as_ref().map(|r| Radical { n: r.n, b: r.b.iter().map(|c| -c).collect() }),
        }
    }

    /// Complex conjugate; `sqrt(n)` is real.
    pub fn conj(&self) -> CycScalar {
        let f = self.field.clone();
        let a = f.conj(&self.a);
        let rad = self.rad.as_ref().map(|r| Radical { n: r.n, b: f.conj(&r.b) });
        CycScalar { field: f, a, rad }
    }

    pub fn mul(&self, other: &CycScalar) -> CycScalar {
        self.checked_mul(other).expect("incompatible radicals")
    }

    pub fn add(&self, other: &CycScalar) -> CycScalar {
        self.checked_add(other).expect("incompatible radicals")
    }

    pub fn sub(&self, other: &CycScalar) -> CycScalar {
        self.checked_sub(other).expect("incompatible radicals")
    }

    pub fn scale(&self, r: &BigRational) -> CycScalar {
        CycScalar {
            field: self.field.clone(),
            a: self.a.iter().map(|c| c * r).collect(),
            rad: self.rad.as_ref().map(|x| Radical { n: x.n, b: x.b.iter().map(|c| c * r).collect() }),
        }
        .canonical()
    }

    pub fn scale_int(&self, k: i64) -> CycScalar {
        self.scale(&rat(k))
    }

    fn canonical(self) -> CycScalar {
        let CycScalar { field, a, rad } = self;
        Self::from_parts(field, a, rad)
    }

    pub fn pow(&self, k: i64) -> Result<CycScalar, ScalarError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = CycScalar::one(self.field.m);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&b)?;
            }
            b = b.checked_mul(&b)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Value in the standard complex embedding `zeta_M = exp(2 pi i / M)`.
    pub fn to_complex(&self) -> (f64, f64) {
        let m = self.field.m as f64;
        let eval = |p: &Poly| {
            p.iter().enumerate().fold((0.0, 0.0), |(re, im), (k, c)| {
                let c = c.to_f64().unwrap_or(f64::NAN);
                let t = 2.0 * std::f64::consts::PI * k as f64 / m;
                (re + c * t.cos(), im + c * t.sin())
            })
        };
        let (mut re, mut im) = eval(&self.a);
        if let Some(r) = &self.rad {
            let (br, bi) = eval(&r.b);
            let s = (r.n as f64).sqrt();
            re += s * br;
            im += s * bi;
        }
        (re, im)
    }

    /// Denominators of all coefficients.
    pub fn denominators(&self) -> Vec<BigInt> {
        let mut out: Vec<BigInt> = self.a.iter().map(|c| c.denom().clone()).collect();
        if let Some(r) = &self.rad {
            out.extend(r.b.iter().map(|c| c.denom().clone()));
        }
        out
    }
}

/// Exact embedding of `sqrt(s)` (squarefree) into `Q(zeta_m)` when it lies there.
fn sqrt_in_field(s: u64, field: &Arc<CycloField>) -> Option<Poly> {
    let m = field.m;
    if s <= 1 || m as u64 % quadratic_discriminant(s) != 0 {
        return None;
    }
    // r^2 = +-(odd part) from Gauss sums, then fix the factor of 2 and the sign.
    let mut r = CycScalar { field: field.clone(), a: field.zero_poly(), rad: None };
    r.a[0] = BigRational::one();
    let mut sign = 1i64;
    let mut t = s;
    if t % 2 == 0 {
        t /= 2;
    }
    for p in crate::algebra::field::prime_divisors(t) {
        let mut g = CycScalar::zero(p as u32);
        for a in 1..p {
            let leg = if mod_pow(a, (p - 1) / 2, p) == 1 { 1 } else { -1 };
            g = g.add(&CycScalar::root_of_unity(p as u32, a as i64).scale_int(leg));
        }
        if p % 4 == 3 {
            sign = -sign;
        }
        r = r.mul(&g.lift(m).ok()?);
    }
    // r^2 = sign * t
    let fix = match (s % 2 == 0, sign) {
        (false, 1) => CycScalar::one(m),
        (false, _) => CycScalar::root_of_unity(m, (m / 4) as i64),
        (true, 1) => CycScalar::root_of_unity(m, (m / 8) as i64).add(&CycScalar::root_of_unity(m, -((m / 8) as i64))),
        (true, _) => CycScalar::root_of_unity(m, (m / 8) as i64).add(&CycScalar::root_of_unity(m, (3 * m / 8) as i64)),
    };
    let mut root = r.mul(&fix);
    if root.mul(&root).as_rational() != Some(rat(s as i64)) {
        return None;
    }
    if root.to_complex().0 < 0.0 {
        root = root.neg();
    }
    Some(root.a)
}

pub(crate) fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    acc
}

impl PartialEq for CycScalar {
    fn eq(&self, other: &Self) -> bool {
        let (x, y) = self.align(other);
        x.a == y.a && x.rad == y.rad
    }
}
impl Eq for CycScalar {}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl std::ops::$tr<&CycScalar> for &CycScalar {
            type Output = CycScalar;
            fn $m(self, rhs: &CycScalar) -> CycScalar {
                CycScalar::$f(self, rhs)
            }
        }
        impl std::ops::$tr<CycScalar> for CycScalar {
            type Output = CycScalar;
            fn $m(self, rhs: CycScalar) -> CycScalar {
                CycScalar::$f(&self, &rhs)
            }
        }
    };
}
binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);

impl std::ops::Neg for &CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        CycScalar::neg(self)
    }
}
impl std::ops::Neg for CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        CycScalar::neg(&self)
    }
}

fn fmt_poly(f: &mut fmt::Formatter<'_>, m: u32, p: &Poly) -> fmt::Result {
    if p[1..].iter().all(|c| c.is_zero()) {
        return write!(f, "{}", p[0]);
    }
    write!(f, "cyc({m};")?;
    for (i, c) in p.iter().enumerate() {
        write!(f, "{}{}", if i == 0 { " " } else { ", " }, c)?;
    }
    write!(f, ")")
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.rad {
            None => fmt_poly(f, self.field.m, &self.a),
            Some(r) => {
                fmt_poly(f, self.field.m, &self.a)?;
                write!(f, " + sqrt({})*", r.n)?;
                fmt_poly(f, self.field.m, &r.b)
            }
        }
    }
}

fn parse_poly(s: &str) -> Result<CycScalar, ScalarError> {
    let s = s.trim();
    let err = || ScalarError::Parse(s.to_string());
    if let Some(body) = s.strip_prefix("cyc(").and_then(|b| b.strip_suffix(')')) {
        let (m, rest) = body.split_once(';').ok_or_else(err)?;
        let m: u32 = m.trim().parse().map_err(|_| err())?;
        if m == 0 {
            return Err(ScalarError::ZeroConductor);
        }
        let field = CycloField::get(m);
        let coeffs: Vec<BigRational> =
            rest.split(',').map(|c| BigRational::from_str(c.trim()).map_err(|_| err())).collect::<Result<_, _>>()?;
        if coeffs.len() > field.phi {
            return Err(err());
        }
        let mut a = field.zero_poly();
        for (i, c) in coeffs.into_iter().enumerate() {
            a[i] = c;
        }
        Ok(CycScalar { field, a, rad: None })
    } else {
        let r = BigRational::from_str(s).map_err(|_| err())?;
        Ok(CycScalar::from_rational(1, r))
    }
}

impl FromStr for CycScalar {
    type Err = ScalarError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.split_once(" + sqrt(") {
            None => parse_poly(s),
            Some((a, rest)) => {
                let err = || ScalarError::Parse(s.to_string());
                let (n, b) = rest.split_once(")*").ok_or_else(err)?;
                let n: u64 = n.trim().parse().map_err(|_| err())?;
                let a = parse_poly(a)?;
                let b = parse_poly(b)?;
                let m = a.conductor().lcm(&b.conductor());
                a.checked_add(&b.checked_mul(&CycScalar::sqrt(m, n))?)
            }
        }
    }
}

impl Serialize for CycScalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CycScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Sign of a real scalar, using the embedding; `None` if not real.
pub fn real_sign(x: &CycScalar) -> Option<i32> {
    if *x != x.conj() {
        return None;
    }
    if x.is_zero() {
        return Some(0);
    }
    if let Some(r) = x.as_rational() {
        return Some(if r.is_positive() { 1 } else { -1 });
    }
    Some(if x.to_complex().0 > 0.0 { 1 } else { -1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn zeta3_relation() {
        let z = CycScalar::root_of_unity(3, 1);
        let s = CycScalar::one(3) + z.clone() + z.mul(&z);
        assert!(s.is_zero());
    }

    #[test]
    fn sqrt_normalises_squares() {
        let s = CycScalar::sqrt(3, 4);
        assert_eq!(s, CycScalar::from_int(1, 2));
        let s12 = CycScalar::sqrt(1, 12);
        assert_eq!(s12, CycScalar::sqrt(1, 3).scale_int(2));
        assert_eq!(s12.radicand(), Some(3));
    }

    #[test]
    fn radical_squared_is_rational() {
        let r = CycScalar::sqrt(2, 13);
        assert_eq!(r.mul(&r), CycScalar::from_int(1, 13));
    }

    #[test]
    fn incompatible_radicals() {
        let a = CycScalar::sqrt(1, 2);
        let b = CycScalar::sqrt(1, 3);
        assert_eq!(a.checked_add(&b), Err(ScalarError::IncompatibleRadical { left: 2, right: 3 }));
    }

    #[test]
    fn radicals_fold_into_field() {
        // sqrt(5) lies in Q(zeta_5), sqrt(3) in Q(zeta_12), sqrt(2) in Q(zeta_8)
        for (m, n) in [(5u32, 5u64), (12, 3), (8, 2), (24, 6), (7, 7 * 4), (13, 13)] {
            let r = CycScalar::sqrt(m, n);
            if m as u64 % quadratic_discriminant(squarefree_split(n).1) == 0 {
                assert!(r.radicand().is_none(), "sqrt({n}) in Q(zeta_{m})");
            }
            assert_eq!(r.mul(&r), CycScalar::from_int(1, n as i64));
            assert!(r.to_complex().0 > 0.0);
        }
        let symbolic = CycScalar::sqrt(1, 5);
        assert_eq!(symbolic.lift(5).unwrap(), CycScalar::sqrt(5, 5));
    }

    #[test]
    fn division() {
        let z = CycScalar::root_of_unity(7, 2);
        let w = CycScalar::one(7) + z.clone();
        let q = w.inv().unwrap();
        assert!(q.mul(&w).is_one());
        let r = CycScalar::sqrt(4, 13) + CycScalar::root_of_unity(4, 1);
        assert!(r.inv().unwrap().mul(&r).is_one());
        assert_eq!(CycScalar::zero(3).inv(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn equality_across_conductors() {
        let a = CycScalar::root_of_unity(3, 1);
        let b = CycScalar::root_of_unity(6, 2);
        assert_eq!(a, b);
        assert_eq!(CycScalar::root_of_unity(4, 2), CycScalar::from_int(1, -1));
    }

    #[test]
    fn conj_is_inverse_on_roots() {
        for m in [3u32, 4, 5, 7, 8, 12] {
            for k in 0..m as i64 {
                let z = CycScalar::root_of_unity(m, k);
                assert!(z.mul(&z.conj()).is_one());
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let x = CycScalar::root_of_unity(5, 2).scale(&BigRational::new(3.into(), 7.into()))
            + CycScalar::sqrt(5, 2).mul(&CycScalar::root_of_unity(5, 1));
        let s = x.to_string();
        assert_eq!(s.parse::<CycScalar>().unwrap(), x);
        let j = serde_json::to_string(&x).unwrap();
        assert_eq!(serde_json::from_str::<CycScalar>(&j).unwrap(), x);
        assert_eq!("-3/2".parse::<CycScalar>().unwrap(), CycScalar::from_ratio(1, -3, 2));
    }

    fn scalar() -> impl Strategy<Value = CycScalar> {
        (prop_oneof![Just(3u32), Just(4), Just(5), Just(6), Just(7)], proptest::collection::vec(-5i64..6, 6), 0u8..2)
            .prop_map(|(m, cs, r)| {
                let mut x = CycScalar::zero(m);
                for (k, c) in cs.iter().enumerate() {
                    x = x + CycScalar::root_of_unity(m, k as i64).scale_int(*c);
                }
                if r == 1 {
                    x = x.clone() + x.mul(&CycScalar::sqrt(m, 11));
                }
                x
            })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in scalar(), b in scalar(), c in scalar()) {
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
            if !a.is_zero() {
                prop_assert!(a.inv().unwrap().mul(&a).is_one());
            }
        }

        #[test]
        fn reduction_idempotent(a in scalar()) {
            let l = a.conductor() * 2;
            let lifted = a.lift(l).unwrap();
            prop_assert_eq!(&lifted, &a);
            let back: CycScalar = a.to_string().parse().unwrap();
            prop_assert_eq!(back, a);
        }
    }
}
