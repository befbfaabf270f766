//! Dense matrices over a finite field.

use std::fmt;

use super::field::{Elem, Field};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|e| e.0.to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Reduced row echelon form together with its rank and pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: vec![Elem::ZERO; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Elem::ONE);
        }
        m
    }

    /// Build from rows; all rows must have length `cols`.
    pub fn from_rows(field: &Field, cols: usize, rows: &[Vec<Elem>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a matrix with {cols} columns",
                    r.len()
                )));
            }
            if r.iter().any(|e| e.0 >= field.order()) {
                return Err(Error::InvalidParameter("matrix entry out of field range".into()));
            }
            data.extend_from_slice(r);
        }
        Ok(Matrix { field: field.clone(), rows: rows.len(), cols, data })
    }

    /// Build from integer entries reduced mod p.
    pub fn from_ints(field: &Field, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<Elem>> = rows.iter().map(|r| r.iter().map(|&v| field.from_int(v)).collect()).collect();
        Self::from_rows(field, cols, &rows).expect("rectangular integer matrix")
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            let dst = &mut out.data[r * other.cols..(r + 1) * other.cols];
            for k in 0..self.cols {
                f.axpy(dst, self.get(r, k), other.row(k));
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[Elem]) -> Vec<Elem> {
        debug_assert_eq!(v.len(), self.rows);
        let mut out = vec![Elem::ZERO; self.cols];
        for (r, &c) in v.iter().enumerate() {
            self.field.axpy(&mut out, c, self.row(r));
        }
        out
    }

    /// Matrix times column vector (`M v^t`).
    pub fn mul_vec(&self, v: &[Elem]) -> Vec<Elem> {
        debug_assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|r| self.field.dot(self.row(r), v)).collect()
    }

    /// First `m` rows.
    pub fn top(&self, m: usize) -> Matrix {
        assert!(m <= self.rows);
        Matrix { field: self.field.clone(), rows: m, cols: self.cols, data: self.data[..m * self.cols].to_vec() }
    }

    /// Last `m` rows.
    pub fn bottom(&self, m: usize) -> Matrix {
        assert!(m <= self.rows);
        Matrix {
            field: self.field.clone(),
            rows: m,
            cols: self.cols,
            data: self.data[(self.rows - m) * self.cols..].to_vec(),
        }
    }

    /// Rows `start..end`.
    pub fn row_range(&self, start: usize, end: usize) -> Matrix {
        assert!(start <= end && end <= self.rows);
        Matrix {
            field: self.field.clone(),
            rows: end - start,
            cols: self.cols,
            data: self.data[start * self.cols..end * self.cols].to_vec(),
        }
    }

    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch("vstack of different widths".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn rref(&self) -> Rref {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = f.inv(m.get(r, c));
            for x in &mut m.data[r * m.cols..(r + 1) * m.cols] {
                *x = f.mul(*x, inv);
            }
            let pivot_row = m.row(r).to_vec();
            for i in 0..m.rows {
                if i != r {
                    let factor = m.get(i, c);
                    if !factor.is_zero() {
                        let neg = f.neg(factor);
                        let cols = m.cols;
                        f.axpy(&mut m.data[i * cols..(i + 1) * cols], neg, &pivot_row);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, rank: r, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Row basis of the right null space `{x : M x^t = 0}`.
    pub fn kernel(&self) -> Matrix {
        let f = &self.field;
        let Rref { matrix: m, rank, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(f, free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            out.set(k, fc, Elem::ONE);
            for (i, &pc) in pivots.iter().enumerate().take(rank) {
                out.set(k, pc, f.neg(m.get(i, fc)));
            }
        }
        out
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let f = &self.field;
        let mut aug = Matrix::zeros(f, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, Elem::ONE);
        }
        let Rref { matrix, pivots, .. } = aug.rref();
        if n > 0 && (pivots.len() < n || pivots[n - 1] != n - 1) {
            return Err(Error::Singular);
        }
        let mut inv = Matrix::zeros(f, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, matrix.get(r, n + c));
            }
        }
        Ok(inv)
    }

    /// `M^e` by square-and-multiply; negative exponents use the inverse.
    pub fn pow(&self, e: i64) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("power of a non-square matrix".into()));
        }
        let mut base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Matrix::identity(&self.field, self.rows);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    /// Entries in power-of-generator code, row-major.
    pub fn to_power_codes(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).iter().map(|&e| self.field.to_power_code(e)).collect()).collect()
    }

    pub fn from_power_codes(field: &Field, cols: usize, rows: &[Vec<u32>]) -> Result<Matrix> {
        let rows: Vec<Vec<Elem>> = rows
            .iter()
            .map(|r| r.iter().map(|&c| field.from_power_code(c)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        Matrix::from_rows(field, cols, &rows)
    }

    /// Plain-text rows: one line per row, space-separated power codes.
    pub fn to_text(&self) -> String {
        let mut s = format!("# {} {}\n", self.rows, self.cols);
        for row in self.to_power_codes() {
            let line: Vec<String> = row.iter().map(u32::to_string).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    /// Inverse of [`to_text`](Self::to_text).
    pub fn from_text(field: &Field, text: &str) -> Result<Matrix> {
        let bad = |m: &str| Error::InvalidParameter(format!("matrix text: {m}"));
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| bad("empty"))?;
        let dims: Vec<usize> = header
            .strip_prefix('#')
            .ok_or_else(|| bad("missing header"))?
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| bad("bad header")))
            .collect::<Result<_>>()?;
        let [rows, cols] = dims[..] else { return Err(bad("bad header")) };
        let codes: Vec<Vec<u32>> = lines
            .filter(|l| !l.trim().is_empty())
            .map(|l| l.split_whitespace().map(|t| t.parse().map_err(|_| bad("bad entry"))).collect())
            .collect::<Result<_>>()?;
        if codes.len() != rows || codes.iter().any(|r| r.len() != cols) {
            return Err(bad("shape differs from header"));
        }
        Matrix::from_power_codes(field, cols, &codes)
    }
}

/// Companion matrix of a monic polynomial: ones on the superdiagonal and the
/// negated low coefficients in the last row.
pub(crate) fn companion_of(field: &Field, coeffs: &[Elem]) -> Matrix {
    let n = coeffs.len() - 1;
    let mut t = Matrix::zeros(field, n, n);
    for i in 0..n.saturating_sub(1) {
        t.set(i, i + 1, Elem::ONE);
    }
    for (c, &a) in coeffs.iter().take(n).enumerate() {
        t.set(n - 1, c, field.neg(a));
    }
    t
}
