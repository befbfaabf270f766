//! Quotient codes C/B: messages label cosets, and a uniformly random element
//! of B scrambles the transmitted word within its coset.

use rand::Rng;

use super::linear::LinearCode;
use crate::algebra::{Elem, Matrix};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct QuotientCode {
    c: LinearCode,
    b: LinearCode,
    reps: Matrix,
    /// Pivot columns of [reps; b] and the inverse of that stack restricted
    /// to them; recovers all coefficients of a codeword.
    cols: Vec<usize>,
    solve: Matrix,
}

impl QuotientCode {
    pub fn code(&self) -> &LinearCode {
        &self.c
    }

    pub fn subcode(&self) -> &LinearCode {
        &self.b
    }

    pub fn reps(&self) -> &Matrix {
        &self.reps
    }

    /// Message length, dim C - dim B.
    pub fn dim(&self) -> usize {
        self.reps.rows()
    }

    /// msg . reps + (scramble . generator of B).
    pub fn encode_with_scramble(&self, msg: &[Elem], scramble: &[Elem]) -> Result<Vec<Elem>> {
        if msg.len() != self.dim() || scramble.len() != self.b.k() {
            return Err(Error::DimensionMismatch(format!(
                "message/scramble of lengths {}/{}, expected {}/{}",
                msg.len(),
                scramble.len(),
                self.dim(),
                self.b.k()
            )));
        }
        let f = self.c.field();
        let mut w = self.reps.vec_mul(msg);
        if self.b.k() > 0 {
            w = f.add_vec(&w, &self.b.generator().vec_mul(scramble));
        }
        Ok(w)
    }

    pub fn encode<R: Rng + ?Sized>(&self, msg: &[Elem], rng: &mut R) -> Result<Vec<Elem>> {
        let q = self.c.field().order();
        let scramble: Vec<Elem> = (0..self.b.k()).map(|_| Elem(rng.gen_range(0..q))).collect();
        self.encode_with_scramble(msg, &scramble)
    }

    /// Message of the coset containing `word`.
    pub fn coset_of(&self, word: &[Elem]) -> Result<Vec<Elem>> {
        if word.len() != self.c.n() {
            return Err(Error::DimensionMismatch(format!("word of length {}", word.len())));
        }
        if !self.c.contains(word) {
            return Err(Error::NotInCode);
        }
        let sub: Vec<Elem> = self.cols.iter().map(|&c| word[c]).collect();
        let coeffs = self.solve.vec_mul(&sub);
        Ok(coeffs[..self.dim()].to_vec())
    }
}

/// C/B with representatives taken from the rref rows of C that are
/// independent of B, in order.
pub fn quotient(c: &LinearCode, b: &LinearCode) -> Result<QuotientCode> {
    if c.n() != b.n() || !c.contains_code(b) {
        return Err(Error::ContainmentViolated("b is not a subcode of c".into()));
    }
    let f = c.field();
    let n = c.n();
    let mut span: Vec<Vec<Elem>> = b.generator().row_vecs();
    let mut reps = Vec::new();
    for row in c.generator().row_vecs() {
        let mut trial = span.clone();
        trial.push(row.clone());
        if Matrix::from_rows(f, n, &trial)?.rank() == trial.len() {
            span = trial;
            reps.push(row);
        }
    }
    let reps = Matrix::from_rows(f, n, &reps)?;
    let stack = reps.vstack(b.generator())?;
    let cols = stack.rref().pivots;
    let mut sq = Matrix::zeros(f, stack.rows(), stack.rows());
    for r in 0..stack.rows() {
        for (j, &col) in cols.iter().enumerate() {
            sq.set(r, j, stack.get(r, col));
        }
    }
    let solve = sq.inverse()?;
    Ok(QuotientCode { c: c.clone(), b: b.clone(), reps, cols, solve })
}
