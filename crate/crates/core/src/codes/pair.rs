//! Conjugate (CSS) code pairs.

use serde::{Deserialize, Serialize};

use super::linear::{CodeJson, LinearCode};
use crate::error::{Error, Result};

/// Two codes of equal length with dual(c2) contained in c1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugatePair {
    c1: LinearCode,
    c2: LinearCode,
}

impl ConjugatePair {
    pub fn c1(&self) -> &LinearCode {
        &self.c1
    }

    pub fn c2(&self) -> &LinearCode {
        &self.c2
    }

    /// Code number j (1 or 2).
    pub fn code(&self, j: usize) -> &LinearCode {
        if j == 1 {
            &self.c1
        } else {
            &self.c2
        }
    }

    pub fn n(&self) -> usize {
        self.c1.n()
    }

    /// Net dimension k1 + k2 - n.
    pub fn k(&self) -> usize {
        self.c1.k() + self.c2.k() - self.n()
    }

    pub fn rate(&self) -> f64 {
        self.k() as f64 / self.n() as f64
    }

    pub fn to_json(&self) -> PairJson {
        PairJson { c1: self.c1.to_json(), c2: self.c2.to_json(), k: self.k() }
    }

    pub fn from_json(j: &PairJson) -> Result<Self> {
        make_pair(LinearCode::from_json(&j.c1)?, LinearCode::from_json(&j.c2)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairJson {
    pub c1: CodeJson,
    pub c2: CodeJson,
    pub k: usize,
}

/// Validate the CSS condition in both directions and package the pair.
pub fn make_pair(c1: LinearCode, c2: LinearCode) -> Result<ConjugatePair> {
    if c1.n() != c2.n() {
        return Err(Error::DimensionMismatch(format!("code lengths {} and {}", c1.n(), c2.n())));
    }
    if c1.field() != c2.field() {
        return Err(Error::FieldMismatch("codes over different fields".into()));
    }
    if c1.k() + c2.k() < c1.n() {
        return Err(Error::ContainmentViolated(format!(
            "k1 + k2 - n = {} + {} - {} is negative",
            c1.k(),
            c2.k(),
            c1.n()
        )));
    }
    let forward = c1.contains_code(&c2.dual());
    let backward = c2.contains_code(&c1.dual());
    if forward != backward {
        return Err(Error::VerificationFailed("containment holds in one direction only".into()));
    }
    if !forward {
        return Err(Error::ContainmentViolated("dual(c2) is not contained in c1".into()));
    }
    Ok(ConjugatePair { c1, c2 })
}
