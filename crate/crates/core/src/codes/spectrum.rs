//! Type spectra: how many codewords have each empirical type.

use std::collections::BTreeMap;

use super::linear::LinearCode;
use crate::error::{Budget, Result};
use crate::infotheory::{type_of, TypeDistribution};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    pub n: usize,
    pub q: usize,
    counts: BTreeMap<TypeDistribution, u128>,
}

impl Spectrum {
    /// N_Q, zero for types that do not occur.
    pub fn count(&self, t: &TypeDistribution) -> u128 {
        self.counts.get(t).copied().unwrap_or(0)
    }

    /// N_Q over the nonzero codewords only.
    pub fn count_nonzero(&self, t: &TypeDistribution) -> u128 {
        let c = self.count(t);
        if t.is_zero_type() {
            c.saturating_sub(1)
        } else {
            c
        }
    }

    pub fn total(&self) -> u128 {
        self.counts.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&TypeDistribution, u128)> {
        self.counts.iter().map(|(t, &c)| (t, c))
    }

    /// CSV with one column per symbol count and a final `count` column.
    pub fn to_csv(&self) -> String {
        let mut s: String = (0..self.q).map(|a| format!("n{a},")).collect();
        s.push_str("count\n");
        for (t, c) in &self.counts {
            for x in t.counts() {
                s.push_str(&format!("{x},"));
            }
            s.push_str(&format!("{c}\n"));
        }
        s
    }
}

/// Exact spectrum by enumerating all q^k codewords.
pub fn spectrum(c: &LinearCode, budget: Budget) -> Result<Spectrum> {
    let q = c.field().order() as usize;
    let mut counts = BTreeMap::new();
    c.for_each_codeword(budget, |w| *counts.entry(type_of(w, q)).or_insert(0) += 1)?;
    Ok(Spectrum { n: c.n(), q, counts })
}
