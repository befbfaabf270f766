//! Finite fields GF(p^m) and their towers GF((p^m)^k).
//!
//! An element is stored as a `u32` index whose base-`s` digits (constant term
//! least significant) are the coefficient indices over the coefficient field
//! of order `s`. Flattened, these are base-`p` digits, so addition is digitwise
//! modulo `p` at every level of the tower. Multiplication goes through
//! log/antilog tables built from a primitive element.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::poly;
use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

/// A field element, identified by its coefficient-vector index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Serializable description of a field: the prime and the degrees of each
/// extension step above GF(p).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldDesc {
    pub p: u32,
    #[serde(default)]
    pub tower: Vec<usize>,
}

impl FieldDesc {
    pub fn build(&self) -> Result<Field> {
        let mut f = Field::prime(self.p)?;
        for &d in &self.tower {
            f = f.extend(d)?;
        }
        Ok(f)
    }
}

struct Inner {
    p: u32,
    order: u32,
    /// Number of base-p digits of an element index.
    p_digits: u32,
    base: Option<Field>,
    degree: usize,
    modulus: Vec<Elem>,
    generator: Elem,
    /// exp[i] = g^i, stored twice over so that log sums need no reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
    tower: Vec<usize>,
}

/// A finite field. Cheap to clone; immutable after construction.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}; p={}, tower={:?})", self.order(), self.0.p, self.0.tower)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.tower == other.0.tower)
    }
}

impl Eq for Field {}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors of `n`, ascending.
pub(crate) fn prime_factors(mut n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut d: u128 = 2;
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

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

impl Field {
    /// GF(p^m) with the lexicographically lowest irreducible modulus.
    pub fn new(p: u32, m: usize) -> Result<Field> {
        if m == 0 {
            return Err(Error::InvalidParameter("extension degree must be at least 1".into()));
        }
        let prime = Field::prime(p)?;
        if m == 1 {
            Ok(prime)
        } else {
            prime.extend(m)
        }
    }

    /// The prime field GF(p).
    pub fn prime(p: u32) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if p as u64 > MAX_FIELD_ORDER {
            return Err(Error::FieldTooLarge { order: p as u64, limit: MAX_FIELD_ORDER });
        }
        let p64 = p as u64;
        let factors = prime_factors((p64 - 1) as u128);
        let g = (1..p64)
            .find(|&g| factors.iter().all(|&r| pow_mod(g, (p64 - 1) / r as u64, p64) != 1))
            .expect("every prime field has a primitive root");
        let n = (p - 1) as usize;
        let mut exp = vec![0u32; 2 * n];
        let mut log = vec![0u32; p as usize];
        let mut cur = 1u64;
        for i in 0..n {
            exp[i] = cur as u32;
            exp[i + n] = cur as u32;
            log[cur as usize] = i as u32;
            cur = cur * g % p64;
        }
        Ok(Field(Arc::new(Inner {
            p,
            order: p,
            p_digits: 1,
            base: None,
            degree: 1,
            modulus: vec![Elem(0), Elem(1)],
            generator: Elem(g as u32),
            exp,
            log,
            tower: Vec::new(),
        })))
    }

    /// Degree-`d` extension of `self`, with the lowest monic irreducible
    /// modulus (coefficients read as a base-`|self|` integer, constant term
    /// least significant) and the lowest-index primitive element as generator.
    pub fn extend(&self, d: usize) -> Result<Field> {
        if d == 0 {
            return Err(Error::InvalidParameter("extension degree must be at least 1".into()));
        }
        let s = self.order() as u64;
        let order =
            crate::error::checked_pow(s, d).filter(|&o| o <= MAX_FIELD_ORDER as u128).ok_or(Error::FieldTooLarge {
                order: crate::error::checked_pow(s, d).map_or(u64::MAX, |o| o.min(u64::MAX as u128) as u64),
                limit: MAX_FIELD_ORDER,
            })? as u64;

        let modulus = poly::lowest_irreducible(self, d);
        let group = (order - 1) as u128;
        let factors = prime_factors(group);
        let as_poly = |idx: u64| -> Vec<Elem> {
            let mut c = Vec::with_capacity(d);
            let mut v = idx;
            for _ in 0..d {
                c.push(Elem((v % s) as u32));
                v /= s;
            }
            poly::trim(c)
        };
        let one = vec![Elem::ONE];
        let generator = (1..order)
            .find(|&g| {
                let gp = as_poly(g);
                factors.iter().all(|&r| poly::pow_mod(self, &gp, group / r, &modulus) != one)
            })
            .expect("the multiplicative group of a finite field is cyclic");

        let to_index = |c: &[Elem]| -> u32 { c.iter().rev().fold(0u64, |acc, e| acc * s + e.0 as u64) as u32 };
        let n = (order - 1) as usize;
        let mut exp = vec![0u32; 2 * n];
        let mut log = vec![0u32; order as usize];
        let gp = as_poly(generator);
        let mut cur = one.clone();
        for i in 0..n {
            let idx = to_index(&cur);
            exp[i] = idx;
            exp[i + n] = idx;
            log[idx as usize] = i as u32;
            cur = poly::mul_mod(self, &cur, &gp, &modulus);
        }
        debug_assert_eq!(cur, one);

        let mut tower = self.0.tower.clone();
        tower.push(d);
        let mut padded = modulus.clone();
        padded.resize(d + 1, Elem::ZERO);
        Ok(Field(Arc::new(Inner {
            p: self.0.p,
            order: order as u32,
            p_digits: self.0.p_digits * d as u32,
            base: Some(self.clone()),
            degree: d,
            modulus: padded,
            generator: Elem(generator as u32),
            exp,
            log,
            tower,
        })))
    }

    pub fn desc(&self) -> FieldDesc {
        FieldDesc { p: self.0.p, tower: self.0.tower.clone() }
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.0.order
    }

    /// Degree over the coefficient field (1 for prime fields).
    pub fn degree(&self) -> usize {
        self.0.degree
    }

    /// The coefficient field, `None` for a prime field.
    pub fn base(&self) -> Option<&Field> {
        self.0.base.as_ref()
    }

    /// Modulus over the coefficient field, constant term first, monic.
    pub fn modulus(&self) -> &[Elem] {
        &self.0.modulus
    }

    pub fn generator(&self) -> Elem {
        self.0.generator
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.order()).map(Elem)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let p = self.0.p;
        if p == 2 {
            return Elem(a.0 ^ b.0);
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.0.p_digits {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place = place.wrapping_mul(p);
        }
        Elem(out)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        let p = self.0.p;
        if p == 2 {
            return a;
        }
        let mut x = a.0;
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.0.p_digits {
            out += ((p - x % p) % p) * place;
            x /= p;
            place = place.wrapping_mul(p);
        }
        Elem(out)
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        let l = self.0.log[a.0 as usize] + self.0.log[b.0 as usize];
        Elem(self.0.exp[l as usize])
    }

    /// Multiplicative inverse; panics on zero.
    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        assert!(!a.is_zero(), "inverse of zero");
        let n = self.order() - 1;
        Elem(self.0.exp[((n - self.0.log[a.0 as usize]) % n) as usize])
    }

    #[inline]
    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Elem, e: u128) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.is_zero() {
            return Elem::ZERO;
        }
        let n = (self.order() - 1) as u128;
        let l = (self.0.log[a.0 as usize] as u128 * (e % n)) % n;
        Elem(self.0.exp[l as usize])
    }

    /// g^i for the field generator g.
    pub fn exp(&self, i: u64) -> Elem {
        let n = (self.order() - 1) as u64;
        Elem(self.0.exp[(i % n) as usize])
    }

    /// Discrete log to the generator; `None` for zero.
    pub fn log(&self, a: Elem) -> Option<u32> {
        (!a.is_zero()).then(|| self.0.log[a.0 as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: Elem) -> u64 {
        let n = (self.order() - 1) as u64;
        let l = self.0.log[a.0 as usize] as u64;
        n / gcd(n, l)
    }

    /// Power-of-generator code: 0 for zero, `i + 1` for g^i.
    pub fn to_power_code(&self, a: Elem) -> u32 {
        self.log(a).map_or(0, |l| l + 1)
    }

    pub fn from_power_code(&self, code: u32) -> Result<Elem> {
        if code == 0 {
            Ok(Elem::ZERO)
        } else if code < self.order() {
            Ok(Elem(self.0.exp[(code - 1) as usize]))
        } else {
            Err(Error::InvalidParameter(format!("power code {code} out of range for GF({})", self.order())))
        }
    }

    /// Element from its integer value mod p (the image of an integer).
    pub fn from_int(&self, v: i64) -> Elem {
        let p = self.0.p as i64;
        Elem(v.rem_euclid(p) as u32)
    }

    /// Coefficients over the coefficient field, constant term first.
    pub fn coeffs(&self, a: Elem) -> Vec<Elem> {
        let s = self.base().map_or(self.order(), |b| b.order());
        let mut v = a.0;
        (0..self.degree())
            .map(|_| {
                let c = v % s;
                v /= s;
                Elem(c)
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[Elem]) -> Elem {
        let s = self.base().map_or(self.order(), |b| b.order());
        Elem(coeffs.iter().rev().fold(0u32, |acc, c| acc * s + c.0))
    }

    /// Whether `a` lies in the embedded coefficient field.
    pub fn in_base(&self, a: Elem) -> bool {
        self.base().is_none_or(|b| a.0 < b.order())
    }

    /// Dot product of two equal-length vectors.
    pub fn dot(&self, a: &[Elem], b: &[Elem]) -> Elem {
        debug_assert_eq!(a.len(), b.len());
        a.iter().zip(b).fold(Elem::ZERO, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }

    /// `acc += c * v` coordinatewise.
    pub fn axpy(&self, acc: &mut [Elem], c: Elem, v: &[Elem]) {
        if c.is_zero() {
            return;
        }
        for (a, &x) in acc.iter_mut().zip(v) {
            *a = self.add(*a, self.mul(c, x));
        }
    }

    pub fn add_vec(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        a.iter().zip(b).map(|(&x, &y)| self.add(x, y)).collect()
    }

    pub fn sub_vec(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        a.iter().zip(b).map(|(&x, &y)| self.sub(x, y)).collect()
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
