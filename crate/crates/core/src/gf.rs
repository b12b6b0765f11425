//! Arithmetic in GF(q), q = p^e <= 2^16.
//!
//! Elements are canonical integers in `[0, q)`: the base-p digits of the
//! integer are the coefficients of the polynomial representative, low degree
//! first. Extension fields are built over the lexicographically smallest
//! monic irreducible polynomial (coefficient sequences compared starting at
//! degree 0), so every build picks the same modulus. Multiplication in
//! extension fields goes through exp/log tables; prime fields use plain
//! modular arithmetic.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 16;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(transparent)]
pub struct FieldElem(pub u16);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    #[inline]
    pub fn value(self) -> u32 {
        self.0 as u32
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    /// GF(2)
    Binary,
    /// GF(p), p odd
    Prime,
    /// GF(2^e), e > 1: addition is XOR
    BinaryExt,
    /// GF(p^e), p odd, e > 1: digitwise addition
    OddExt,
}

struct Tables {
    /// exp[i] = g^i for i in [0, 2(q-1)), doubled to skip a reduction.
    exp: Vec<u16>,
    /// log[x] for x != 0; log[0] is unused.
    log: Vec<u32>,
    generator: u32,
}

struct Inner {
    p: u32,
    e: u32,
    q: u32,
    kind: Kind,
    modulus: Vec<u32>,
    tables: Option<Tables>,
}

/// A finite field GF(p^e). Cheap to clone; immutable once built.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.0.q)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.e == other.0.e)
    }
}

impl Eq for Field {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^e` when it is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
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

// Dense polynomials over GF(p), coefficient vectors low degree first.
mod poly {
    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let lead_inv = inv_mod(m[dm], p);
        while r.len() > dm {
            let top = r.len() - 1;
            let c = (r[top] as u64 * lead_inv as u64 % p as u64) as u32;
            let shift = top - dm;
            for (i, &mi) in m.iter().enumerate() {
                let sub = (c as u64 * mi as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let mut out: Vec<u32> = out.into_iter().map(|v| v as u32).collect();
        trim(&mut out);
        out
    }

    pub fn mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        rem(&mul(a, b, p), m, p)
    }

    pub fn powmod(base: &[u32], mut exp: u64, m: &[u32], p: u32) -> Vec<u32> {
        let mut acc = vec![1u32];
        let mut b = rem(base, m, p);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mulmod(&acc, &b, m, p);
            }
            b = mulmod(&b, &b, m, p);
            exp >>= 1;
        }
        acc
    }

    pub fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let n = a.len().max(b.len());
        let mut out: Vec<u32> = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(&mut out);
        out
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    pub fn inv_mod(a: u32, p: u32) -> u32 {
        pow_mod(a, p - 2, p)
    }

    pub fn pow_mod(a: u32, mut e: u32, p: u32) -> u32 {
        let p = p as u64;
        let mut acc = 1u64;
        let mut b = a as u64 % p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        acc as u32
    }
}

/// Rabin's test: f of degree e is irreducible over GF(p) iff t^(p^e) = t mod f
/// and gcd(t^(p^(e/r)) - t, f) = 1 for every prime r dividing e.
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let e = (f.len() - 1) as u32;
    let t = vec![0u32, 1];
    let frob = |k: u32| -> Vec<u32> {
        let mut x = t.clone();
        for _ in 0..k {
            x = poly::powmod(&x, p as u64, f, p);
        }
        x
    };
    if poly::sub(&frob(e), &t, p) != Vec::<u32>::new() {
        return false;
    }
    for r in prime_factors(e as u64) {
        let h = poly::sub(&frob(e / r as u32), &t, p);
        let g = poly::gcd(f, &h, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree `e` over GF(p),
/// comparing coefficient sequences from degree 0 upward.
fn smallest_irreducible(p: u32, e: u32) -> Vec<u32> {
    let e = e as usize;
    // The first coefficient (degree 0) is the most significant digit.
    let mut coeffs = vec![0u32; e];
    loop {
        let mut f = coeffs.clone();
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
        // increment, most significant digit at index 0
        let mut i = e;
        loop {
            i -= 1;
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
            assert!(i > 0, "no irreducible polynomial of degree {e} over GF({p})");
        }
    }
}

fn to_digits(mut x: u32, p: u32, e: u32) -> Vec<u32> {
    let mut d = Vec::with_capacity(e as usize);
    for _ in 0..e {
        d.push(x % p);
        x /= p;
    }
    poly::trim(&mut d);
    d
}

fn from_digits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0u32, |acc, &c| acc * p + c)
}

impl Field {
    /// Builds GF(p^e). Deterministic: the same modulus and tables on every run.
    pub fn new(p: u64, e: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::InvalidArgument("extension degree must be >= 1".into()));
        }
        let q = p.checked_pow(e).filter(|&q| q <= MAX_ORDER).ok_or(Error::FieldTooLarge { p, e })?;
        let (p, q) = (p as u32, q as u32);
        let kind = match (p, e) {
            (2, 1) => Kind::Binary,
            (_, 1) => Kind::Prime,
            (2, _) => Kind::BinaryExt,
            _ => Kind::OddExt,
        };
        let modulus = if e == 1 { vec![0, 1] } else { smallest_irreducible(p, e) };
        let tables = (e > 1).then(|| build_tables(p, e, q, &modulus));
        Ok(Field(Arc::new(Inner { p, e, q, kind, modulus, tables })))
    }

    /// Builds the field of order `q`.
    pub fn with_order(q: u64) -> Result<Field> {
        match prime_power(q) {
            Some((p, e)) => Field::new(p, e),
            None if q > 1 && q <= MAX_ORDER => Err(Error::NotPrimePower(q)),
            None if q > MAX_ORDER => Err(Error::FieldTooLarge { p: q, e: 1 }),
            None => Err(Error::NotPrimePower(q)),
        }
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.0.p
    }

    #[inline]
    pub fn e(&self) -> u32 {
        self.0.e
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.0.q
    }

    pub fn is_binary(&self) -> bool {
        self.0.kind == Kind::Binary
    }

    /// Modulus coefficients, low degree first, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// Generator of the multiplicative group used for the tables (extension
    /// fields only).
    pub fn generator(&self) -> Option<FieldElem> {
        self.0.tables.as_ref().map(|t| FieldElem(t.generator as u16))
    }

    pub fn elem(&self, value: u64) -> Result<FieldElem> {
        if value < self.q() as u64 {
            Ok(FieldElem(value as u16))
        } else {
            Err(Error::ElementOutOfRange { value, q: self.q() })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.q()).map(|v| FieldElem(v as u16))
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElem> {
        (1..self.q()).map(|v| FieldElem(v as u16))
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        match self.0.kind {
            Kind::Binary | Kind::BinaryExt => FieldElem(a.0 ^ b.0),
            Kind::Prime => {
                let s = a.0 as u32 + b.0 as u32;
                let p = self.0.p;
                FieldElem(if s >= p { s - p } else { s } as u16)
            }
            Kind::OddExt => self.digitwise(a, b, |x, y, p| (x + y) % p),
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        match self.0.kind {
            Kind::Binary | Kind::BinaryExt => a,
            Kind::Prime => {
                if a.0 == 0 {
                    a
                } else {
                    FieldElem((self.0.p - a.0 as u32) as u16)
                }
            }
            Kind::OddExt => self.digitwise(FieldElem::ZERO, a, |x, y, p| (x + p - y) % p),
        }
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        match self.0.kind {
            Kind::Binary | Kind::BinaryExt => FieldElem(a.0 ^ b.0),
            Kind::Prime => {
                let p = self.0.p;
                let (x, y) = (a.0 as u32, b.0 as u32);
                FieldElem(if x >= y { x - y } else { x + p - y } as u16)
            }
            Kind::OddExt => self.digitwise(a, b, |x, y, p| (x + p - y) % p),
        }
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        match self.0.kind {
            Kind::Binary => FieldElem(a.0 & b.0),
            Kind::Prime => FieldElem((a.0 as u64 * b.0 as u64 % self.0.p as u64) as u16),
            Kind::BinaryExt | Kind::OddExt => {
                if a.0 == 0 || b.0 == 0 {
                    return FieldElem::ZERO;
                }
                let t = self.0.tables.as_ref().expect("extension field tables");
                let i = t.log[a.0 as usize] + t.log[b.0 as usize];
                FieldElem(t.exp[i as usize])
            }
        }
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self.0.kind {
            Kind::Binary => a,
            Kind::Prime => FieldElem(poly::inv_mod(a.0 as u32, self.0.p) as u16),
            Kind::BinaryExt | Kind::OddExt => {
                let t = self.0.tables.as_ref().expect("extension field tables");
                let order = self.0.q - 1;
                let l = t.log[a.0 as usize];
                FieldElem(t.exp[((order - l) % order) as usize])
            }
        })
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElem, mut n: u64) -> FieldElem {
        let mut acc = FieldElem::ONE;
        let mut b = a;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            n >>= 1;
        }
        acc
    }

    /// `dst[i] -= c * src[i]`.
    #[inline]
    pub fn sub_scaled(&self, dst: &mut [FieldElem], src: &[FieldElem], c: FieldElem) {
        if c.is_zero() {
            return;
        }
        match self.0.kind {
            Kind::Binary => {
                for (d, s) in dst.iter_mut().zip(src) {
                    d.0 ^= s.0;
                }
            }
            Kind::BinaryExt => {
                for (d, s) in dst.iter_mut().zip(src) {
                    d.0 ^= self.mul(c, *s).0;
                }
            }
            _ => {
                for (d, s) in dst.iter_mut().zip(src) {
                    *d = self.sub(*d, self.mul(c, *s));
                }
            }
        }
    }

    /// `row[i] *= c`.
    #[inline]
    pub fn scale(&self, row: &mut [FieldElem], c: FieldElem) {
        if c == FieldElem::ONE {
            return;
        }
        for x in row.iter_mut() {
            *x = self.mul(*x, c);
        }
    }

    #[inline]
    fn digitwise(&self, a: FieldElem, b: FieldElem, f: impl Fn(u32, u32, u32) -> u32) -> FieldElem {
        let p = self.0.p;
        let (mut x, mut y) = (a.0 as u32, b.0 as u32);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.0.e {
            out += f(x % p, y % p, p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        FieldElem(out as u16)
    }
}

/// Polynomial multiplication of canonical representatives modulo `modulus`.
fn mul_slow(a: u32, b: u32, p: u32, e: u32, modulus: &[u32]) -> u32 {
    let prod = poly::mulmod(&to_digits(a, p, e), &to_digits(b, p, e), modulus, p);
    from_digits(&prod, p)
}

fn pow_slow(a: u32, mut n: u64, p: u32, e: u32, modulus: &[u32]) -> u32 {
    let mut acc = 1u32;
    let mut b = a;
    while n > 0 {
        if n & 1 == 1 {
            acc = mul_slow(acc, b, p, e, modulus);
        }
        b = mul_slow(b, b, p, e, modulus);
        n >>= 1;
    }
    acc
}

fn build_tables(p: u32, e: u32, q: u32, modulus: &[u32]) -> Tables {
    let order = (q - 1) as u64;
    let factors = prime_factors(order);
    // smallest element of full multiplicative order
    let generator = (2..q)
        .find(|&g| factors.iter().all(|&r| pow_slow(g, order / r, p, e, modulus) != 1))
        .expect("multiplicative group is cyclic");
    let mut exp = vec![0u16; 2 * (q as usize - 1)];
    let mut log = vec![0u32; q as usize];
    let mut x = 1u32;
    for i in 0..(q - 1) {
        exp[i as usize] = x as u16;
        exp[(i + q - 1) as usize] = x as u16;
        log[x as usize] = i;
        x = mul_slow(x, generator, p, e, modulus);
    }
    debug_assert_eq!(x, 1);
    Tables { exp, log, generator }
}
