//! Method of types: empirical distributions of words, type classes, and the
//! entropy/divergence functionals in base-q units.

use serde::{Deserialize, Serialize};

use crate::algebra::Elem;
use crate::error::{Budget, Error, Result};

/// Empirical type of a word of length n over a q-ary alphabet: the number of
/// occurrences of each symbol.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TypeDistribution {
    counts: Vec<u32>,
}

impl TypeDistribution {
    pub fn new(counts: Vec<u32>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::InvalidParameter("type over an empty alphabet".into()));
        }
        Ok(TypeDistribution { counts })
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    /// Block length.
    pub fn n(&self) -> u32 {
        self.counts.iter().sum()
    }

    /// Alphabet size.
    pub fn q(&self) -> usize {
        self.counts.len()
    }

    pub fn probs(&self) -> Vec<f64> {
        let n = self.n() as f64;
        self.counts.iter().map(|&c| c as f64 / n).collect()
    }

    /// Entropy in base-q units.
    pub fn entropy(&self) -> f64 {
        entropy(&self.probs())
    }

    /// Size of the type class, n! / prod(counts!).
    pub fn class_size(&self) -> Result<u128> {
        let mut remaining = self.n() as u64;
        let mut acc: u128 = 1;
        for &c in &self.counts {
            acc = acc
                .checked_mul(binomial(remaining, c as u64)?)
                .ok_or_else(|| Error::Overflow("type class size".into()))?;
            remaining -= c as u64;
        }
        Ok(acc)
    }

    /// Weight: number of nonzero symbols.
    pub fn weight(&self) -> u32 {
        self.n() - self.counts[0]
    }

    pub fn is_zero_type(&self) -> bool {
        self.weight() == 0
    }
}

/// Type of a word whose symbols are element indices of GF(q).
pub fn type_of(word: &[Elem], q: usize) -> TypeDistribution {
    let mut counts = vec![0u32; q];
    for e in word {
        counts[e.0 as usize] += 1;
    }
    TypeDistribution { counts }
}

/// Binomial coefficient with overflow detection.
pub fn binomial(n: u64, k: u64) -> Result<u128> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128).ok_or_else(|| Error::Overflow("binomial".into()))? / (i + 1) as u128;
    }
    Ok(acc)
}

/// |P_n| = C(n + q - 1, q - 1).
pub fn num_types(n: usize, q: usize) -> Result<u128> {
    binomial((n + q - 1) as u64, (q - 1) as u64)
}

/// All types of length-n words over a q-ary alphabet, in lexicographic order
/// of their count vectors.
pub fn enumerate_types(n: usize, q: usize, budget: Budget) -> Result<Vec<TypeDistribution>> {
    if q == 0 {
        return Err(Error::InvalidParameter("alphabet must be nonempty".into()));
    }
    budget.check(num_types(n, q)?)?;
    let mut out = Vec::new();
    let mut counts = vec![0u32; q];
    fn rec(i: usize, left: u32, counts: &mut Vec<u32>, out: &mut Vec<TypeDistribution>) {
        if i + 1 == counts.len() {
            counts[i] = left;
            out.push(TypeDistribution { counts: counts.clone() });
            return;
        }
        for c in 0..=left {
            counts[i] = c;
            rec(i + 1, left - c, counts, out);
        }
    }
    rec(0, n as u32, &mut counts, &mut out);
    out.sort();
    Ok(out)
}

/// Entropy of a distribution in base-q units, q = `p.len()`; 0 log 0 = 0.
pub fn entropy(p: &[f64]) -> f64 {
    let q = p.len() as f64;
    if p.len() < 2 {
        return 0.0;
    }
    -p.iter().filter(|&&x| x > 0.0).map(|&x| x * x.ln()).sum::<f64>() / q.ln()
}

/// Binary entropy function in base-`base` units.
pub fn binary_entropy(x: f64, base: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        return 0.0;
    }
    -(x * x.ln() + (1.0 - x) * (1.0 - x).ln()) / base.ln()
}

/// Relative entropy D(Q||W), either finite or +infinity when Q charges a
/// symbol W does not.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Divergence {
    Finite(f64),
    Infinite,
}

impl Divergence {
    pub fn is_infinite(self) -> bool {
        matches!(self, Divergence::Infinite)
    }

    /// As an extended real.
    pub fn value(self) -> f64 {
        match self {
            Divergence::Finite(v) => v,
            Divergence::Infinite => f64::INFINITY,
        }
    }
}

/// D(Q||W) in base-q units, q = alphabet size.
pub fn divergence(q_dist: &[f64], w: &[f64]) -> Divergence {
    assert_eq!(q_dist.len(), w.len(), "alphabet mismatch");
    let ln_q = (w.len().max(2) as f64).ln();
    let mut acc = 0.0;
    for (&a, &b) in q_dist.iter().zip(w) {
        if a > 0.0 {
            if b <= 0.0 {
                return Divergence::Infinite;
            }
            acc += a * (a / b).ln();
        }
    }
    Divergence::Finite((acc / ln_q).max(0.0))
}

/// Error-symbol law of an additive memoryless channel over GF(q).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelModel {
    pub q: usize,
    pub probs: Vec<f64>,
}

impl ChannelModel {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        let q = probs.len();
        if q < 2 {
            return Err(Error::InvalidChannel("alphabet must have at least two symbols".into()));
        }
        if probs.iter().any(|&p| p < 0.0 || !p.is_finite()) {
            return Err(Error::InvalidChannel("probabilities must be finite and nonnegative".into()));
        }
        let s: f64 = probs.iter().sum();
        if (s - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidChannel(format!("probabilities sum to {s}, not 1")));
        }
        Ok(ChannelModel { q, probs })
    }

    /// Point mass at the zero symbol.
    pub fn noiseless(q: usize) -> Self {
        let mut probs = vec![0.0; q];
        probs[0] = 1.0;
        ChannelModel { q, probs }
    }

    /// Re-check the invariants (after deserialization).
    pub fn validate(&self) -> Result<()> {
        let c = ChannelModel::new(self.probs.clone())?;
        if c.q != self.q {
            return Err(Error::InvalidChannel(format!("q = {} but {} probabilities given", self.q, self.probs.len())));
        }
        Ok(())
    }

    pub fn entropy(&self) -> f64 {
        entropy(&self.probs)
    }

    /// 1 - H(W): the largest rate with a positive random coding exponent.
    pub fn capacity(&self) -> f64 {
        1.0 - self.entropy()
    }

    /// Compact label such as `0.99/0.01`.
    pub fn label(&self) -> String {
        self.probs.iter().map(|p| format!("{p}")).collect::<Vec<_>>().join("/")
    }
}
