//! Exact arithmetic over GF(p^m) and its extensions: fields, polynomials,
//! matrices, companion matrices, traces and trace-dual bases.

mod field;
mod matrix;
mod poly;

pub use field::{Elem, Field, FieldDesc, MAX_FIELD_ORDER};
pub use matrix::{Matrix, Rref};
pub use poly::{lowest_primitive, Poly, PolyRepr};

use crate::error::{checked_pow, Error, Result};
use field::prime_factors;

/// Companion matrix of a monic primitive polynomial of degree n >= 1.
///
/// The result has multiplicative order |F|^n - 1, which is checked.
pub fn companion_matrix(poly: &Poly) -> Result<Matrix> {
    let n = poly
        .degree()
        .filter(|&d| d >= 1)
        .ok_or_else(|| Error::InvalidParameter("companion matrix needs degree >= 1".into()))?;
    if !poly.is_monic() {
        return Err(Error::InvalidParameter("polynomial must be monic".into()));
    }
    if !poly.is_primitive() {
        return Err(Error::NotPrimitive);
    }
    let t = matrix::companion_of(&poly.field, &poly.coeffs);
    let order = checked_pow(poly.field.order() as u64, n).ok_or_else(|| Error::Overflow("|F|^n".into()))? - 1;
    if !has_multiplicative_order(&t, order)? {
        return Err(Error::NotPrimitive);
    }
    Ok(t)
}

/// Whether the square matrix `m` has multiplicative order exactly `order`.
pub fn has_multiplicative_order(m: &Matrix, order: u128) -> Result<bool> {
    let id = Matrix::identity(m.field(), m.rows());
    let pow = |e: u128| -> Result<Matrix> {
        let e = i64::try_from(e).map_err(|_| Error::Overflow("matrix exponent".into()))?;
        m.pow(e)
    };
    if pow(order)? != id {
        return Ok(false);
    }
    for r in prime_factors(order) {
        if pow(order / r)? == id {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Multiplicative order by repeated multiplication, up to `limit` steps.
pub fn multiplicative_order_naive(m: &Matrix, limit: u64) -> Option<u64> {
    let id = Matrix::identity(m.field(), m.rows());
    let mut cur = m.clone();
    for k in 1..=limit {
        if cur == id {
            return Some(k);
        }
        cur = cur.mul(m).ok()?;
    }
    None
}

/// Absolute trace of `x` down to the coefficient field: the sum of
/// x^(s^i) for i < k, where s is the coefficient-field order. For a prime
/// field this is the identity.
pub fn trace(field: &Field, x: Elem) -> Elem {
    let Some(base) = field.base() else {
        return x;
    };
    let s = base.order() as u128;
    let mut acc = Elem::ZERO;
    let mut cur = x;
    for _ in 0..field.degree() {
        acc = field.add(acc, cur);
        cur = field.pow(cur, s);
    }
    debug_assert!(field.in_base(acc));
    acc
}

/// The polynomial basis 1, x, ..., x^(k-1) of a field over its coefficient field.
pub fn polynomial_basis(field: &Field) -> Vec<Elem> {
    let s = field.base().map_or(field.order(), |b| b.order());
    let k = field.degree();
    if field.base().is_none() {
        return vec![Elem::ONE];
    }
    (0..k).map(|c| Elem(s.pow(c as u32))).collect()
}

/// A basis of GF(q^k) over GF(q) and its trace-dual basis:
/// Tr(basis[a] * dual[b]) = 1 if a == b, else 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualBasisPair {
    pub field: Field,
    pub basis: Vec<Elem>,
    pub dual: Vec<Elem>,
}

impl DualBasisPair {
    pub fn k(&self) -> usize {
        self.basis.len()
    }

    fn base_field(&self) -> Field {
        self.field.base().cloned().unwrap_or_else(|| self.field.clone())
    }

    /// Coordinates of `x` with respect to `basis`.
    pub fn coords(&self, x: Elem) -> Vec<Elem> {
        self.dual.iter().map(|&d| trace(&self.field, self.field.mul(x, d))).collect()
    }

    /// Coordinates of `y` with respect to `dual`.
    pub fn dual_coords(&self, y: Elem) -> Vec<Elem> {
        self.basis.iter().map(|&b| trace(&self.field, self.field.mul(y, b))).collect()
    }

    pub fn from_coords(&self, c: &[Elem]) -> Elem {
        combine(&self.field, c, &self.basis)
    }

    pub fn from_dual_coords(&self, c: &[Elem]) -> Elem {
        combine(&self.field, c, &self.dual)
    }

    /// Matrix of Tr(basis[a] * dual[b]) over the coefficient field.
    pub fn pairing_matrix(&self) -> Matrix {
        let base = self.base_field();
        let rows: Vec<Vec<Elem>> = self
            .basis
            .iter()
            .map(|&b| self.dual.iter().map(|&d| trace(&self.field, self.field.mul(b, d))).collect())
            .collect();
        Matrix::from_rows(&base, self.k(), &rows).expect("square pairing matrix")
    }
}

fn combine(field: &Field, c: &[Elem], basis: &[Elem]) -> Elem {
    c.iter().zip(basis).fold(Elem::ZERO, |acc, (&ci, &b)| field.add(acc, field.mul(ci, b)))
}

/// Trace-dual of a basis of `field` over its coefficient field.
pub fn dual_basis(field: &Field, basis: &[Elem]) -> Result<DualBasisPair> {
    let k = field.degree();
    if basis.len() != k {
        return Err(Error::DimensionMismatch(format!("basis has {} elements, extension degree is {k}", basis.len())));
    }
    let base = field.base().cloned().unwrap_or_else(|| field.clone());
    let gamma = polynomial_basis(field);
    let rows: Vec<Vec<Elem>> =
        basis.iter().map(|&b| gamma.iter().map(|&g| trace(field, field.mul(b, g))).collect()).collect();
    let m = Matrix::from_rows(&base, k, &rows)?;
    let x = m.inverse().map_err(|_| Error::DependentBasis)?;
    let dual = (0..k)
        .map(|b| {
            let col: Vec<Elem> = (0..k).map(|c| x.get(c, b)).collect();
            if field.base().is_some() {
                field.from_coeffs(&col)
            } else {
                col[0]
            }
        })
        .collect();
    Ok(DualBasisPair { field: field.clone(), basis: basis.to_vec(), dual })
}
