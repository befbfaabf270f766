//! The balanced ensemble B(T) of conjugate pairs generated by powers of a
//! matrix T of order q^n - 1, together with exhaustive balancedness checks,
//! the goodness sieve and the search for a pair with a small spectrum.

use std::sync::{Arc, OnceLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{companion_matrix, has_multiplicative_order, lowest_primitive, Field, Matrix};
use crate::codes::{make_pair, spectrum, ConjugatePair, LinearCode};
use crate::error::{checked_pow, Budget, Error, Result};
use crate::infotheory::num_types;

/// Member i of the ensemble: A = T^i, B = (T^-i)^t (so A B^t = I), with
/// C1 spanned by the first k1 rows of A and C2 by the last k2 rows of B.
#[derive(Debug)]
pub struct Member {
    pub index: usize,
    pub a: Matrix,
    pub b: Matrix,
    pub pair: ConjugatePair,
}

impl Member {
    /// Rows n-k2 .. k1-1 of A: representatives of C1 / C2-dual.
    pub fn reps1(&self, n: usize, k1: usize, k2: usize) -> Matrix {
        self.a.row_range(n - k2, k1)
    }

    /// The matching rows of B: representatives of C2 / C1-dual, with
    /// reps1[a] . reps2[b] = [a == b].
    pub fn reps2(&self, n: usize, k1: usize, k2: usize) -> Matrix {
        self.b.row_range(n - k2, k1)
    }
}

pub struct BalancedEnsemble {
    t: Matrix,
    k1: usize,
    k2: usize,
    members: Vec<OnceLock<Arc<Member>>>,
}

impl std::fmt::Debug for BalancedEnsemble {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BalancedEnsemble(n={}, k1={}, k2={}, size={})", self.n(), self.k1, self.k2, self.len())
    }
}

impl BalancedEnsemble {
    pub fn field(&self) -> &Field {
        self.t.field()
    }

    pub fn t(&self) -> &Matrix {
        &self.t
    }

    pub fn n(&self) -> usize {
        self.t.rows()
    }

    pub fn k1(&self) -> usize {
        self.k1
    }

    pub fn k2(&self) -> usize {
        self.k2
    }

    pub fn k(&self, j: usize) -> usize {
        if j == 1 {
            self.k1
        } else {
            self.k2
        }
    }

    /// Number of indexed members, q^n - 1.
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Materialize (or fetch from the cache) member `i`.
    pub fn member(&self, i: usize) -> Result<Arc<Member>> {
        let slot = self.members.get(i).ok_or(Error::IndexOutOfRange { index: i, size: self.len() })?;
        if let Some(m) = slot.get() {
            return Ok(m.clone());
        }
        let m = Arc::new(self.materialize(i)?);
        Ok(slot.get_or_init(|| m).clone())
    }

    fn materialize(&self, i: usize) -> Result<Member> {
        let n = self.n();
        let a = self.t.pow(i as i64)?;
        let b = self.t.pow(-(i as i64))?.transpose();
        let c1 = LinearCode::from_generator(&a.top(self.k1));
        let c2 = LinearCode::from_generator(&b.bottom(self.k2));
        if c1.k() != self.k1 || c2.k() != self.k2 {
            return Err(Error::VerificationFailed(format!("member {i} has deficient rank")));
        }
        let pair = make_pair(c1, c2).map_err(|e| Error::VerificationFailed(format!("member {i}: {e}")))?;
        debug_assert_eq!(pair.c2().dual(), LinearCode::from_generator(&a.top(n - self.k2)));
        Ok(Member { index: i, a, b, pair })
    }

    pub fn to_json(&self) -> EnsembleJson {
        EnsembleJson { field: self.field().desc(), n: self.n(), k1: self.k1, k2: self.k2, t: self.t.to_power_codes() }
    }

    pub fn from_json(j: &EnsembleJson) -> Result<Self> {
        let f = j.field.build()?;
        build_ensemble(&Matrix::from_power_codes(&f, j.n, &j.t)?, j.k1, j.k2)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnsembleJson {
    pub field: crate::algebra::FieldDesc,
    pub n: usize,
    pub k1: usize,
    pub k2: usize,
    /// T in power-of-generator encoding.
    pub t: Vec<Vec<u32>>,
}

/// B(T) for a square T of multiplicative order q^n - 1.
pub fn build_ensemble(t: &Matrix, k1: usize, k2: usize) -> Result<BalancedEnsemble> {
    if !t.is_square() || t.rows() == 0 {
        return Err(Error::DimensionMismatch("T must be square and nonempty".into()));
    }
    let n = t.rows();
    if k1 > n || k2 > n || n - k2 > k1 {
        return Err(Error::InvalidParameter(format!("need 0 <= n - k2 <= k1 <= n, got n={n}, k1={k1}, k2={k2}")));
    }
    let size = checked_pow(t.field().order() as u64, n).ok_or_else(|| Error::Overflow("q^n".into()))? - 1;
    if size > i64::MAX as u128 || !has_multiplicative_order(t, size)? {
        return Err(Error::NotPrimitive);
    }
    let size = usize::try_from(size).map_err(|_| Error::Overflow("ensemble size".into()))?;
    Ok(BalancedEnsemble { t: t.clone(), k1, k2, members: (0..size).map(|_| OnceLock::new()).collect() })
}

/// B(T) with T the companion matrix of the lowest primitive polynomial of
/// degree n over `field`.
pub fn standard_ensemble(field: &Field, n: usize, k1: usize, k2: usize) -> Result<BalancedEnsemble> {
    let t = companion_matrix(&lowest_primitive(field, n)?)?;
    build_ensemble(&t, k1, k2)
}

/// Count, for every nonzero word, the members of family `which` containing
/// it; returns the common count V, which must be q^{k_j} - 1.
pub fn verify_balanced(ens: &BalancedEnsemble, which: usize, budget: Budget) -> Result<u64> {
    let f = ens.field();
    let q = f.order() as usize;
    let n = ens.n();
    let words = checked_pow(q as u64, n).ok_or_else(|| Error::Overflow("q^n".into()))?;
    let per_member = checked_pow(q as u64, ens.k(which)).unwrap_or(u128::MAX);
    budget.check(words.max(per_member.saturating_mul(ens.len() as u128)))?;
    let index_of = |w: &[crate::algebra::Elem]| w.iter().rev().fold(0usize, |acc, e| acc * q + e.0 as usize);
    let counts = (0..ens.len())
        .into_par_iter()
        .map(|i| -> Result<Vec<u64>> {
            let m = ens.member(i)?;
            let mut local = vec![0u64; words as usize];
            m.pair.code(which).for_each_codeword(budget, |w| local[index_of(w)] += 1)?;
            Ok(local)
        })
        .try_reduce(
            || vec![0u64; words as usize],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                Ok(a)
            },
        )?;
    let v = counts[1];
    if let Some(x) = (1..counts.len()).find(|&x| counts[x] != v) {
        return Err(Error::VerificationFailed(format!(
            "word {x} lies in {} members of family {which}, word 1 in {v}",
            counts[x]
        )));
    }
    let expected = per_member as u64 - 1;
    if v != expected {
        return Err(Error::VerificationFailed(format!("balanced with V = {v}, expected {expected}")));
    }
    Ok(v)
}

/// Whether N_Q(C \ {0}) <= (|P_n| - 1) q^{k-n} A |T_Q| for every type Q.
///
/// With `a = 2` this is the existence bound used by [`find_lemma2_pair`].
pub fn is_a_good(code: &LinearCode, a: f64, budget: Budget) -> Result<bool> {
    let q = code.field().order() as usize;
    let n = code.n();
    let spec = spectrum(code, budget)?;
    let pn = num_types(n, q)? as f64;
    let scale = (pn - 1.0) * (q as f64).powi(code.k() as i32 - n as i32) * a;
    for (t, _) in spec.iter() {
        let count = spec.count_nonzero(t);
        if count == 0 {
            continue;
        }
        let bound = scale * t.class_size()? as f64;
        if count as f64 > bound * (1.0 + 1e-12) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The existence bound N_Q(C \ {0}) <= 2 (|P_n| - 1) q^{k-n} |T_Q|.
pub fn meets_lemma2_bound(code: &LinearCode, budget: Budget) -> Result<bool> {
    is_a_good(code, 2.0, budget)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SieveReport {
    pub n: usize,
    pub k1: usize,
    pub k2: usize,
    pub epsilon: f64,
    /// floor(|B| q^{-epsilon n}), the bound on bad members of each family.
    pub z: u64,
    /// Indices good for both families, ascending.
    pub good_indices: Vec<usize>,
    pub bad_count_j1: u64,
    pub bad_count_j2: u64,
}

/// Classify every member as q^{epsilon n}-good or not, separately for the
/// two families; fails if either family has more than z bad members.
pub fn sieve_good(ens: &BalancedEnsemble, epsilon: f64, budget: Budget) -> Result<SieveReport> {
    if epsilon.is_nan() || epsilon < 0.0 {
        return Err(Error::InvalidParameter(format!("epsilon = {epsilon} must be nonnegative")));
    }
    let q = ens.field().order() as f64;
    let n = ens.n() as f64;
    let a = q.powf(epsilon * n);
    let z = (ens.len() as f64 * q.powf(-epsilon * n)).floor() as u64;
    let verdicts: Vec<(bool, bool)> = (0..ens.len())
        .into_par_iter()
        .map(|i| {
            let m = ens.member(i)?;
            Ok((is_a_good(m.pair.c1(), a, budget)?, is_a_good(m.pair.c2(), a, budget)?))
        })
        .collect::<Result<_>>()?;
    let bad1 = verdicts.iter().filter(|v| !v.0).count() as u64;
    let bad2 = verdicts.iter().filter(|v| !v.1).count() as u64;
    let good_indices = verdicts.iter().enumerate().filter(|(_, v)| v.0 && v.1).map(|(i, _)| i).collect();
    let report = SieveReport {
        n: ens.n(),
        k1: ens.k1,
        k2: ens.k2,
        epsilon,
        z,
        good_indices,
        bad_count_j1: bad1,
        bad_count_j2: bad2,
    };
    if bad1 > z || bad2 > z {
        return Err(Error::VerificationFailed(format!("sieve found {bad1}/{bad2} bad members, more than z = {z}")));
    }
    Ok(report)
}

/// First index whose two codes both meet the existence bound.
pub fn find_lemma2_pair(ens: &BalancedEnsemble, budget: Budget) -> Result<(usize, ConjugatePair)> {
    for i in 0..ens.len() {
        let m = ens.member(i)?;
        if meets_lemma2_bound(m.pair.c1(), budget)? && meets_lemma2_bound(m.pair.c2(), budget)? {
            return Ok((i, m.pair.clone()));
        }
    }
    Err(Error::VerificationFailed("no member meets the existence bound".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn member_zero_is_coordinate_code() {
        let f = Field::prime(2).unwrap();
        let ens = standard_ensemble(&f, 3, 2, 2).unwrap();
        assert_eq!(ens.len(), 7);
        let m = ens.member(0).unwrap();
        assert_eq!(m.pair.c1().generator(), &Matrix::identity(&f, 3).top(2));
        assert!(matches!(ens.member(7), Err(Error::IndexOutOfRange { .. })));
        // cached
        assert!(Arc::ptr_eq(&m, &ens.member(0).unwrap()));
    }

    #[test]
    fn rejects_bad_dimensions_and_order() {
        let f = Field::prime(2).unwrap();
        assert!(standard_ensemble(&f, 3, 0, 2).is_err());
        assert!(standard_ensemble(&f, 3, 4, 3).is_err());
        let id = Matrix::identity(&f, 3);
        assert!(matches!(build_ensemble(&id, 2, 2), Err(Error::NotPrimitive)));
    }
}
