//! Dense univariate polynomials over a finite field.
//!
//! Coefficient vectors are constant-term first and kept trimmed: the zero
//! polynomial is the empty vector.

use serde::{Deserialize, Serialize};

use super::field::{prime_factors, Elem, Field};
use crate::error::{checked_pow, Error, Result};

/// A polynomial together with its coefficient field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    pub field: Field,
    pub coeffs: Vec<Elem>,
}

/// JSON form: coefficient indices, constant term first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyRepr(pub Vec<u32>);

impl Poly {
    pub fn new(field: &Field, coeffs: Vec<Elem>) -> Self {
        Poly { field: field.clone(), coeffs: trim(coeffs) }
    }

    /// Parse from integer coefficients (each reduced mod p), constant first.
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn degree(&self) -> Option<usize> {
        degree(&self.coeffs)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&Elem::ONE)
    }

    pub fn is_irreducible(&self) -> bool {
        is_irreducible(&self.field, &self.coeffs)
    }

    pub fn is_primitive(&self) -> bool {
        is_primitive(&self.field, &self.coeffs)
    }

    pub fn eval(&self, x: Elem) -> Elem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn repr(&self) -> PolyRepr {
        PolyRepr(self.coeffs.iter().map(|e| e.0).collect())
    }

    pub fn from_repr(field: &Field, repr: &PolyRepr) -> Result<Self> {
        if repr.0.iter().any(|&c| c >= field.order()) {
            return Err(Error::InvalidParameter("polynomial coefficient out of range".into()));
        }
        Ok(Self::new(field, repr.0.iter().map(|&c| Elem(c)).collect()))
    }
}

pub fn trim(mut v: Vec<Elem>) -> Vec<Elem> {
    while v.last() == Some(&Elem::ZERO) {
        v.pop();
    }
    v
}

pub fn degree(a: &[Elem]) -> Option<usize> {
    a.iter().rposition(|c| !c.is_zero())
}

pub fn mul(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Elem::ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(out)
}

/// Quotient and remainder of `a / m`; `m` must be nonzero.
pub fn div_rem(f: &Field, a: &[Elem], m: &[Elem]) -> (Vec<Elem>, Vec<Elem>) {
    let dm = degree(m).expect("division by the zero polynomial");
    let lead_inv = f.inv(m[dm]);
    let mut r = trim(a.to_vec());
    let mut q = vec![Elem::ZERO; r.len().saturating_sub(dm).max(1)];
    while let Some(dr) = degree(&r) {
        if dr < dm {
            break;
        }
        let c = f.mul(r[dr], lead_inv);
        let shift = dr - dm;
        q[shift] = c;
        for (i, &mc) in m.iter().enumerate().take(dm + 1) {
            r[i + shift] = f.sub(r[i + shift], f.mul(c, mc));
        }
        r = trim(r);
    }
    (trim(q), r)
}

pub fn rem(f: &Field, a: &[Elem], m: &[Elem]) -> Vec<Elem> {
    div_rem(f, a, m).1
}

pub fn mul_mod(f: &Field, a: &[Elem], b: &[Elem], m: &[Elem]) -> Vec<Elem> {
    rem(f, &mul(f, a, b), m)
}

pub fn pow_mod(f: &Field, base: &[Elem], mut e: u128, m: &[Elem]) -> Vec<Elem> {
    let mut acc = rem(f, &[Elem::ONE], m);
    let mut b = rem(f, base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(f, &acc, &b, m);
        }
        b = mul_mod(f, &b, &b, m);
        e >>= 1;
    }
    acc
}

/// Monic polynomial of degree `d` whose lower coefficients are the base-`s`
/// digits of `idx`.
fn monic_from_index(s: u64, d: usize, mut idx: u64) -> Vec<Elem> {
    let mut c = Vec::with_capacity(d + 1);
    for _ in 0..d {
        c.push(Elem((idx % s) as u32));
        idx /= s;
    }
    c.push(Elem::ONE);
    c
}

/// Irreducibility by exhaustive trial division with every monic polynomial
/// of degree 1..=deg/2.
pub fn is_irreducible(f: &Field, a: &[Elem]) -> bool {
    let d = match degree(a) {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    let s = f.order() as u64;
    for e in 1..=d / 2 {
        let count = s.pow(e as u32);
        for idx in 0..count {
            let cand = monic_from_index(s, e, idx);
            if rem(f, a, &cand).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Irreducible of degree d with x of multiplicative order |F|^d - 1 modulo it.
pub fn is_primitive(f: &Field, a: &[Elem]) -> bool {
    let d = match degree(a) {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    if !is_irreducible(f, a) {
        return false;
    }
    let group = match checked_pow(f.order() as u64, d) {
        Some(o) => o - 1,
        None => return false,
    };
    let x = vec![Elem::ZERO, Elem::ONE];
    let one = rem(f, &[Elem::ONE], a);
    if pow_mod(f, &x, group, a) != one {
        return false;
    }
    prime_factors(group).into_iter().all(|r| pow_mod(f, &x, group / r, a) != one)
}

/// Lowest monic irreducible polynomial of degree `d` in lexicographic
/// coefficient order (constant term least significant).
pub fn lowest_irreducible(f: &Field, d: usize) -> Vec<Elem> {
    let s = f.order() as u64;
    (0..s.pow(d as u32))
        .map(|idx| monic_from_index(s, d, idx))
        .find(|c| is_irreducible(f, c))
        .expect("irreducible polynomials exist in every degree")
}

/// Lowest monic primitive polynomial of degree `d` over `f`.
pub fn lowest_primitive(f: &Field, d: usize) -> Result<Poly> {
    if d == 0 {
        return Err(Error::InvalidParameter("degree must be at least 1".into()));
    }
    let s = f.order() as u64;
    let count = checked_pow(s, d)
        .filter(|&c| c <= u32::MAX as u128)
        .ok_or_else(|| Error::InvalidParameter(format!("|F|^{d} too large")))? as u64;
    (0..count)
        .map(|idx| monic_from_index(s, d, idx))
        .find(|c| is_primitive(f, c))
        .map(|c| Poly::new(f, c))
        .ok_or(Error::NotPrimitive)
}
