//! Linear codes kept in canonical (rref) form.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{Elem, Field, FieldDesc, Matrix};
use crate::error::{checked_pow, Budget, Error, Result};

/// A linear [n, k] code over GF(q). The generator is stored in reduced row
/// echelon form without zero rows, so two codes are equal exactly when their
/// generators are.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearCode {
    gen: Matrix,
    pivots: Vec<usize>,
    /// Generator of the dual code.
    check: Matrix,
}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}] code, generator {:?}", self.n(), self.k(), self.gen)
    }
}

impl LinearCode {
    /// Row span of `m`.
    pub fn from_generator(m: &Matrix) -> Self {
        let r = m.rref();
        let gen = r.matrix.top(r.rank);
        let check = m.kernel();
        LinearCode { gen, pivots: r.pivots, check }
    }

    pub fn from_rows(field: &Field, n: usize, rows: &[Vec<Elem>]) -> Result<Self> {
        Ok(Self::from_generator(&Matrix::from_rows(field, n, rows)?))
    }

    pub fn full(field: &Field, n: usize) -> Self {
        Self::from_generator(&Matrix::identity(field, n))
    }

    pub fn zero(field: &Field, n: usize) -> Self {
        Self::from_generator(&Matrix::zeros(field, 0, n))
    }

    pub fn field(&self) -> &Field {
        self.gen.field()
    }

    pub fn n(&self) -> usize {
        self.gen.cols()
    }

    pub fn k(&self) -> usize {
        self.gen.rows()
    }

    /// Canonical k x n generator.
    pub fn generator(&self) -> &Matrix {
        &self.gen
    }

    /// (n - k) x n parity-check matrix (a generator of the dual).
    pub fn parity_check(&self) -> &Matrix {
        &self.check
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn dual(&self) -> LinearCode {
        LinearCode::from_generator(&self.check)
    }

    /// Membership by reduction against the rref generator.
    pub fn contains(&self, w: &[Elem]) -> bool {
        if w.len() != self.n() {
            return false;
        }
        let f = self.field();
        let mut r = w.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = r[p];
            if !c.is_zero() {
                f.axpy(&mut r, f.neg(c), self.gen.row(i));
            }
        }
        r.iter().all(|e| e.is_zero())
    }

    /// Whether `other` is a subcode of `self`.
    pub fn contains_code(&self, other: &LinearCode) -> bool {
        other.n() == self.n() && (0..other.k()).all(|i| self.contains(other.gen.row(i)))
    }

    /// Sum of two codes of equal length.
    pub fn sum(&self, other: &LinearCode) -> Result<LinearCode> {
        Ok(LinearCode::from_generator(&self.gen.vstack(&other.gen)?))
    }

    pub fn encode(&self, msg: &[Elem]) -> Result<Vec<Elem>> {
        if msg.len() != self.k() {
            return Err(Error::DimensionMismatch(format!(
                "message of length {} for a code of dimension {}",
                msg.len(),
                self.k()
            )));
        }
        Ok(self.gen.vec_mul(msg))
    }

    /// H y^t; zero exactly on codewords.
    pub fn syndrome(&self, y: &[Elem]) -> Vec<Elem> {
        self.check.mul_vec(y)
    }

    /// Number of codewords, checked against `budget`.
    pub fn size(&self, budget: Budget) -> Result<u128> {
        let q = self.field().order() as u64;
        let size = checked_pow(q, self.k()).ok_or_else(|| Error::Overflow("code size".into()))?;
        budget.check(size)?;
        Ok(size)
    }

    /// Visit every codeword once (in no particular order).
    pub fn for_each_codeword(&self, budget: Budget, mut visit: impl FnMut(&[Elem])) -> Result<()> {
        self.size(budget)?;
        let f = self.field();
        let q = f.order();
        let k = self.k();
        let n = self.n();
        // walk coefficient vectors in mixed-radix order, updating the word
        // by the difference of consecutive multiples of one row
        let diffs: Vec<Vec<Vec<Elem>>> = (0..k)
            .map(|i| {
                let row = self.gen.row(i);
                (0..q)
                    .map(|a| {
                        let next = Elem((a + 1) % q);
                        row.iter().map(|&x| f.sub(f.mul(next, x), f.mul(Elem(a), x))).collect()
                    })
                    .collect()
            })
            .collect();
        let mut digits = vec![0u32; k];
        let mut word = vec![Elem::ZERO; n];
        loop {
            visit(&word);
            let mut i = 0;
            loop {
                if i == k {
                    return Ok(());
                }
                let a = digits[i];
                let d = &diffs[i][a as usize];
                for (w, &x) in word.iter_mut().zip(d) {
                    *w = f.add(*w, x);
                }
                digits[i] = (a + 1) % q;
                if digits[i] != 0 {
                    break;
                }
                i += 1;
            }
        }
    }

    pub fn codewords(&self, budget: Budget) -> Result<Vec<Vec<Elem>>> {
        let mut out = Vec::new();
        self.for_each_codeword(budget, |w| out.push(w.to_vec()))?;
        Ok(out)
    }

    pub fn to_json(&self) -> CodeJson {
        CodeJson { field: self.field().desc(), n: self.n(), k: self.k(), generator: self.gen.to_power_codes() }
    }

    pub fn from_json(j: &CodeJson) -> Result<Self> {
        let field = j.field.build()?;
        let m = Matrix::from_power_codes(&field, j.n, &j.generator)?;
        let c = LinearCode::from_generator(&m);
        if c.k() != j.k || m.rows() != j.k {
            return Err(Error::InvalidParameter(format!("generator has rank {} but k = {}", c.k(), j.k)));
        }
        Ok(c)
    }
}

/// Serialized form of a code: generator rows in power-of-generator encoding.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CodeJson {
    pub field: FieldDesc,
    pub n: usize,
    pub k: usize,
    pub generator: Vec<Vec<u32>>,
}
