//! Linear codes, conjugate pairs, quotient codes and spectra.

mod linear;
mod pair;
mod quotient;
mod spectrum;

pub use linear::{CodeJson, LinearCode};
pub use pair::{make_pair, ConjugatePair, PairJson};
pub use quotient::{quotient, QuotientCode};
pub use spectrum::{spectrum, Spectrum};

use crate::algebra::{Elem, Field, Matrix};

pub fn dual(c: &LinearCode) -> LinearCode {
    c.dual()
}

pub fn syndrome(c: &LinearCode, y: &[Elem]) -> Vec<Elem> {
    c.syndrome(y)
}

/// Binary [7, 4] Hamming code whose parity-check columns are 1..7 in binary.
pub fn hamming_7_4() -> LinearCode {
    hamming(3)
}

/// Binary Hamming code of length 2^r - 1.
pub fn hamming(r: usize) -> LinearCode {
    let f = Field::prime(2).expect("GF(2)");
    let n = (1usize << r) - 1;
    let mut h = Matrix::zeros(&f, r, n);
    for col in 0..n {
        for bit in 0..r {
            if (col + 1) >> bit & 1 == 1 {
                h.set(bit, col, Elem::ONE);
            }
        }
    }
    LinearCode::from_generator(&h).dual()
}

/// Repetition [n, 1] code.
pub fn repetition(field: &Field, n: usize) -> LinearCode {
    LinearCode::from_rows(field, n, &[vec![Elem::ONE; n]]).expect("well-formed row")
}
