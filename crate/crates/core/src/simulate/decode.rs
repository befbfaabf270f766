//! Minimum-entropy syndrome decoding and the quotient/concatenated decoders
//! built on it.

use std::cmp::Ordering;
use std::collections::HashMap;

use rand::Rng;

use crate::algebra::Elem;
use crate::codes::{quotient, ConjugatePair, LinearCode, QuotientCode};
use crate::concat::ConcatenatedPair;
use crate::error::{checked_pow, Budget, Error, Result};
use crate::rs_outer::OuterCode;

/// prod c^c over the symbol counts of `w`: larger means smaller entropy,
/// and equal values mean equal entropy, so comparisons are exact.
fn entropy_rank(w: &[Elem], q: usize) -> u128 {
    let mut counts = vec![0u32; q];
    for e in w {
        counts[e.0 as usize] += 1;
    }
    counts
        .iter()
        .filter(|&&c| c > 1)
        .try_fold(1u128, |acc, &c| (0..c).try_fold(acc, |a, _| a.checked_mul(c as u128)))
        .expect("block length too large for exact entropy ranking")
}

/// Decoder preference: lower entropy, then lower weight, then
/// lexicographically smaller.
fn prefer(a: &[Elem], b: &[Elem], q: usize) -> Ordering {
    entropy_rank(b, q).cmp(&entropy_rank(a, q)).then_with(|| weight(a).cmp(&weight(b))).then_with(|| a.cmp(b))
}

fn weight(w: &[Elem]) -> usize {
    w.iter().filter(|e| !e.is_zero()).count()
}

/// For each syndrome of a code, the preferred word with that syndrome.
#[derive(Clone, Debug)]
pub struct CosetLeaderTable {
    code: LinearCode,
    leaders: HashMap<Vec<Elem>, Vec<Elem>>,
}

impl CosetLeaderTable {
    /// Built by a pass over all q^n words.
    pub fn new(code: &LinearCode, budget: Budget) -> Result<Self> {
        let f = code.field();
        let q = f.order() as usize;
        let n = code.n();
        let total = checked_pow(q as u64, n).ok_or_else(|| Error::Overflow("q^n".into()))?;
        budget.check(total)?;
        let mut leaders: HashMap<Vec<Elem>, Vec<Elem>> = HashMap::new();
        let mut word = vec![Elem::ZERO; n];
        for _ in 0..total {
            let s = code.syndrome(&word);
            match leaders.get_mut(&s) {
                Some(cur) => {
                    if prefer(&word, cur, q) == Ordering::Less {
                        cur.clone_from(&word);
                    }
                }
                None => {
                    leaders.insert(s, word.clone());
                }
            }
            // next word in little-endian base-q order
            for x in word.iter_mut() {
                x.0 += 1;
                if (x.0 as usize) < q {
                    break;
                }
                x.0 = 0;
            }
        }
        Ok(CosetLeaderTable { code: code.clone(), leaders })
    }

    pub fn code(&self) -> &LinearCode {
        &self.code
    }

    pub fn len(&self) -> usize {
        self.leaders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leaders.is_empty()
    }

    /// Error estimate for `y`: the leader of its syndrome coset.
    pub fn error_estimate(&self, y: &[Elem]) -> &[Elem] {
        &self.leaders[&self.code.syndrome(y)]
    }
}

/// Minimum-entropy estimate of the error in `y` for code `c`.
pub fn min_entropy_syndrome_decode(table: &CosetLeaderTable, y: &[Elem]) -> Vec<Elem> {
    table.error_estimate(y).to_vec()
}

/// Encoder/decoder for C_j / C_{j'}-dual of one conjugate pair.
#[derive(Clone, Debug)]
pub struct QuotientDecoder {
    qc: QuotientCode,
    table: CosetLeaderTable,
}

impl QuotientDecoder {
    pub fn new(pair: &ConjugatePair, j: usize, budget: Budget) -> Result<Self> {
        let c = pair.code(j);
        let b = pair.code(3 - j).dual();
        Ok(QuotientDecoder { qc: quotient(c, &b)?, table: CosetLeaderTable::new(c, budget)? })
    }

    pub fn quotient(&self) -> &QuotientCode {
        &self.qc
    }

    pub fn table(&self) -> &CosetLeaderTable {
        &self.table
    }

    /// The corrected codeword y - e.
    pub fn correct(&self, y: &[Elem]) -> Vec<Elem> {
        let f = self.qc.code().field();
        f.sub_vec(y, self.table.error_estimate(y))
    }

    pub fn decode(&self, y: &[Elem]) -> Vec<Elem> {
        self.qc.coset_of(&self.correct(y)).expect("y - e has zero syndrome, so it lies in the code")
    }
}

/// One-shot quotient decoding (builds the table each call).
pub fn quotient_decode(pair: &ConjugatePair, j: usize, y: &[Elem], budget: Budget) -> Result<Vec<Elem>> {
    Ok(QuotientDecoder::new(pair, j, budget)?.decode(y))
}

/// Two-stage decoder for side j of a concatenated pair: inner
/// minimum-entropy decoding per block, then bounded-distance decoding of
/// the outer code and the outer coset.
#[derive(Clone, Debug)]
pub struct ConcatDecoder {
    cp: ConcatenatedPair,
    j: usize,
    tables: Vec<CosetLeaderTable>,
    outer_q: QuotientCode,
    outer: OuterCode,
    block_scramble: Vec<LinearCode>,
}

impl ConcatDecoder {
    pub fn new(cp: &ConcatenatedPair, j: usize, budget: Budget) -> Result<Self> {
        if j != 1 && j != 2 {
            return Err(Error::InvalidParameter(format!("side {j} must be 1 or 2")));
        }
        let mut cache: HashMap<usize, CosetLeaderTable> = HashMap::new();
        let mut tables = Vec::new();
        for m in cp.inner() {
            if let std::collections::hash_map::Entry::Vacant(e) = cache.entry(m.index) {
                e.insert(CosetLeaderTable::new(m.pair.code(j), budget)?);
            }
            tables.push(cache[&m.index].clone());
        }
        let outer = cp.outer().code(j).clone();
        let outer_q = quotient(outer.code(), &cp.outer().code(3 - j).code().dual())?;
        let block_scramble = cp.inner().iter().map(|m| m.pair.code(3 - j).dual()).collect();
        Ok(ConcatDecoder { cp: cp.clone(), j, tables, outer_q, outer, block_scramble })
    }

    pub fn concat(&self) -> &ConcatenatedPair {
        &self.cp
    }

    pub fn side(&self) -> usize {
        self.j
    }

    /// Message length over GF(q^k).
    pub fn message_len(&self) -> usize {
        self.outer_q.dim()
    }

    pub fn outer_quotient(&self) -> &QuotientCode {
        &self.outer_q
    }

    /// A uniformly random word of the coset of L_j / L_{j'}-dual labelled
    /// by `msg`.
    pub fn encode<R: Rng + ?Sized>(&self, msg: &[Elem], rng: &mut R) -> Result<Vec<Elem>> {
        let x = self.outer_q.encode(msg, rng)?;
        let f = self.cp.field();
        let q = f.order();
        let mut word = self.cp.pi_word(self.j, &x);
        let mut off = 0;
        for b in &self.block_scramble {
            let coeffs: Vec<Elem> = (0..b.k()).map(|_| Elem(rng.gen_range(0..q))).collect();
            let s = b.generator().vec_mul(&coeffs);
            for (w, v) in word[off..off + b.n()].iter_mut().zip(s) {
                *w = f.add(*w, v);
            }
            off += b.n();
        }
        Ok(word)
    }

    /// Outer symbols read off after inner decoding, before outer decoding.
    pub fn inner_symbols(&self, y: &[Elem]) -> Vec<Elem> {
        let f = self.cp.field();
        let mut off = 0;
        self.cp
            .inner()
            .iter()
            .zip(&self.tables)
            .map(|(m, t)| {
                let block = &y[off..off + m.n()];
                off += m.n();
                let w = f.sub_vec(block, t.error_estimate(block));
                m.pi_inverse(self.j, &w)
            })
            .collect()
    }

    /// Decoded message, or `None` when the outer decoder fails.
    pub fn decode(&self, y: &[Elem]) -> Option<Vec<Elem>> {
        let x_hat = self.inner_symbols(y);
        let x = self.outer.decode(&x_hat)?;
        self.outer_q.coset_of(&x).ok()
    }
}

/// One-shot concatenated decoding.
pub fn concat_decode(cp: &ConcatenatedPair, j: usize, y: &[Elem], budget: Budget) -> Result<Option<Vec<Elem>>> {
    Ok(ConcatDecoder::new(cp, j, budget)?.decode(y))
}
