//! Outer codes over GF(q^k): generalized Reed-Solomon pairs with a
//! Peterson-Gorenstein-Zierler bounded-distance decoder, and small linear
//! pairs decoded from a table of correctable error patterns.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{Elem, Field, FieldDesc, Matrix};
use crate::codes::{make_pair, CodeJson, LinearCode};
use crate::error::{Error, Result};

/// GRS_K(a, v) = { (v_1 f(a_1), ..., v_N f(a_N)) : deg f < K }.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrsCode {
    field: Field,
    points: Vec<Elem>,
    multipliers: Vec<Elem>,
    k: usize,
    code: LinearCode,
    /// Multipliers of the dual code, used for syndromes.
    dual_multipliers: Vec<Elem>,
}

impl GrsCode {
    pub fn new(field: &Field, points: Vec<Elem>, multipliers: Vec<Elem>, k: usize) -> Result<Self> {
        let n = points.len();
        if multipliers.len() != n {
            return Err(Error::DimensionMismatch("one multiplier per evaluation point".into()));
        }
        if k > n {
            return Err(Error::InvalidParameter(format!("dimension {k} exceeds length {n}")));
        }
        if points.iter().chain(&multipliers).any(|e| e.is_zero() || e.0 >= field.order()) {
            return Err(Error::InvalidParameter("points and multipliers must be nonzero field elements".into()));
        }
        let mut sorted = points.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != n {
            return Err(Error::InvalidParameter("evaluation points must be distinct".into()));
        }
        let gen = vandermonde(field, &points, &multipliers, k);
        let code = LinearCode::from_generator(&gen);
        let dual_multipliers = dual_multipliers(field, &points, &multipliers);
        Ok(GrsCode { field: field.clone(), points, multipliers, k, code, dual_multipliers })
    }

    /// Narrow-sense RS code on the points g^0, ..., g^(N-1), multipliers 1.
    pub fn rs(field: &Field, n: usize, k: usize) -> Result<Self> {
        GrsCode::new(field, default_points(field, n)?, vec![Elem::ONE; n], k)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn points(&self) -> &[Elem] {
        &self.points
    }

    pub fn multipliers(&self) -> &[Elem] {
        &self.multipliers
    }

    pub fn code(&self) -> &LinearCode {
        &self.code
    }

    /// Evaluation-form generator (row d holds v_i a_i^d).
    pub fn generator(&self) -> Matrix {
        vandermonde(&self.field, &self.points, &self.multipliers, self.k)
    }

    /// The parity-check matrix in evaluation form: the generator of the dual.
    pub fn parity_check(&self) -> Matrix {
        vandermonde(&self.field, &self.points, &self.dual_multipliers, self.n() - self.k)
    }

    /// N - K + 1.
    pub fn designed_distance(&self) -> usize {
        self.n() - self.k + 1
    }

    /// floor((N - K) / 2).
    pub fn radius(&self) -> usize {
        (self.n() - self.k) / 2
    }

    /// Codeword of the polynomial with coefficients `msg` (constant first).
    pub fn encode(&self, msg: &[Elem]) -> Result<Vec<Elem>> {
        if msg.len() != self.k {
            return Err(Error::DimensionMismatch(format!("message of length {} for dimension {}", msg.len(), self.k)));
        }
        let f = &self.field;
        Ok(self
            .points
            .iter()
            .zip(&self.multipliers)
            .map(|(&a, &v)| {
                let y = msg.iter().rev().fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, a), c));
                f.mul(v, y)
            })
            .collect())
    }
}

fn vandermonde(f: &Field, points: &[Elem], multipliers: &[Elem], k: usize) -> Matrix {
    let mut m = Matrix::zeros(f, k, points.len());
    for (i, (&a, &v)) in points.iter().zip(multipliers).enumerate() {
        let mut x = v;
        for d in 0..k {
            m.set(d, i, x);
            x = f.mul(x, a);
        }
    }
    m
}

/// v'_i = 1 / (v_i prod_{j != i} (a_i - a_j)).
fn dual_multipliers(f: &Field, points: &[Elem], multipliers: &[Elem]) -> Vec<Elem> {
    points
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            let prod = points
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(multipliers[i], |acc, (_, &b)| f.mul(acc, f.sub(a, b)));
            f.inv(prod)
        })
        .collect()
}

fn default_points(field: &Field, n: usize) -> Result<Vec<Elem>> {
    if n == 0 || n > field.order() as usize - 1 {
        return Err(Error::InvalidParameter(format!("length {n} must be between 1 and {}", field.order() - 1)));
    }
    Ok((0..n as u64).map(|i| field.exp(i)).collect())
}

/// The dual of a GRS code as a GRS code on the same points.
pub fn grs_dual(c: &GrsCode) -> GrsCode {
    GrsCode::new(&c.field, c.points.clone(), c.dual_multipliers.clone(), c.n() - c.k)
        .expect("dual multipliers are nonzero")
}

/// Bounded-distance decoding: the codeword within distance `t` of `y`, or
/// `None` when there is none. `t` is capped at the code's radius.
pub fn bd_decode(c: &GrsCode, y: &[Elem], t: usize) -> Option<Vec<Elem>> {
    let f = &c.field;
    let n = c.n();
    if y.len() != n {
        return None;
    }
    let t = t.min(c.radius());
    let nsyn = n - c.k;
    let syn: Vec<Elem> = (0..nsyn)
        .map(|s| {
            (0..n).fold(Elem::ZERO, |acc, i| {
                let term = f.mul(f.mul(c.dual_multipliers[i], f.pow(c.points[i], s as u128)), y[i]);
                f.add(acc, term)
            })
        })
        .collect();
    if syn.iter().all(|e| e.is_zero()) {
        return Some(y.to_vec());
    }
    // largest nu <= t whose syndrome matrix is invertible
    let (nu, lambda) = (1..=t).rev().find_map(|nu| {
        let rows: Vec<Vec<Elem>> = (0..nu).map(|s| (0..nu).map(|c| syn[s + c]).collect()).collect();
        let m = Matrix::from_rows(f, nu, &rows).ok()?;
        let inv = m.inverse().ok()?;
        let rhs: Vec<Elem> = (0..nu).map(|s| f.neg(syn[s + nu])).collect();
        // solution lists Lambda_nu, ..., Lambda_1
        let sol = inv.mul_vec(&rhs);
        let mut lambda = vec![Elem::ONE];
        lambda.extend(sol.iter().rev());
        Some((nu, lambda))
    })?;
    let eval = |x: Elem| lambda.iter().rev().fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c));
    let locs: Vec<usize> = (0..n).filter(|&i| eval(f.inv(c.points[i])).is_zero()).collect();
    if locs.len() != nu {
        return None;
    }
    let rows: Vec<Vec<Elem>> = (0..nu).map(|s| locs.iter().map(|&i| f.pow(c.points[i], s as u128)).collect()).collect();
    let vinv = Matrix::from_rows(f, nu, &rows).ok()?.inverse().ok()?;
    let mags = vinv.mul_vec(&syn[..nu]);
    let mut word = y.to_vec();
    for (&i, &m) in locs.iter().zip(&mags) {
        let e = f.div(m, c.dual_multipliers[i]);
        word[i] = f.sub(word[i], e);
    }
    let dist = word.iter().zip(y).filter(|(a, b)| a != b).count();
    (dist <= t && c.code.contains(&word)).then_some(word)
}

/// A linear code with a table of all error patterns of weight <= t, keyed
/// by syndrome.
#[derive(Clone, Debug)]
pub struct TableCode {
    code: LinearCode,
    t: usize,
    table: HashMap<Vec<Elem>, Vec<Elem>>,
}

impl TableCode {
    /// Fails if two patterns of weight <= t share a syndrome, i.e. if t is
    /// not a valid unique-decoding radius.
    pub fn new(code: LinearCode, t: usize) -> Result<Self> {
        let f = code.field().clone();
        let n = code.n();
        let q = f.order();
        let mut table = HashMap::new();
        let mut stack: Vec<(usize, Vec<Elem>, usize)> = vec![(0, vec![Elem::ZERO; n], 0)];
        while let Some((start, e, w)) = stack.pop() {
            if table.insert(code.syndrome(&e), e.clone()).is_some() {
                return Err(Error::InvalidParameter(format!("radius {t} exceeds the unique-decoding radius")));
            }
            if w == t {
                continue;
            }
            for pos in start..n {
                for v in 1..q {
                    let mut e2 = e.clone();
                    e2[pos] = Elem(v);
                    stack.push((pos + 1, e2, w + 1));
                }
            }
        }
        Ok(TableCode { code, t, table })
    }

    pub fn code(&self) -> &LinearCode {
        &self.code
    }

    pub fn radius(&self) -> usize {
        self.t
    }

    pub fn decode(&self, y: &[Elem]) -> Option<Vec<Elem>> {
        let e = self.table.get(&self.code.syndrome(y))?;
        Some(self.code.field().sub_vec(y, e))
    }
}

#[derive(Clone, Debug)]
pub enum OuterCode {
    Grs(GrsCode),
    Table(TableCode),
}

impl OuterCode {
    pub fn code(&self) -> &LinearCode {
        match self {
            OuterCode::Grs(g) => g.code(),
            OuterCode::Table(t) => t.code(),
        }
    }

    pub fn radius(&self) -> usize {
        match self {
            OuterCode::Grs(g) => g.radius(),
            OuterCode::Table(t) => t.radius(),
        }
    }

    pub fn decode(&self, y: &[Elem]) -> Option<Vec<Elem>> {
        match self {
            OuterCode::Grs(g) => bd_decode(g, y, g.radius()),
            OuterCode::Table(t) => t.decode(y),
        }
    }
}

/// Outer conjugate pair (D1, D2) over GF(q^k) with dual(D2) inside D1.
#[derive(Clone, Debug)]
pub struct OuterPair {
    field: Field,
    d1: OuterCode,
    d2: OuterCode,
}

impl OuterPair {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn d1(&self) -> &OuterCode {
        &self.d1
    }

    pub fn d2(&self) -> &OuterCode {
        &self.d2
    }

    pub fn code(&self, j: usize) -> &OuterCode {
        if j == 1 {
            &self.d1
        } else {
            &self.d2
        }
    }

    pub fn n(&self) -> usize {
        self.d1.code().n()
    }

    /// K = K1 + K2 - N.
    pub fn k(&self) -> usize {
        self.d1.code().k() + self.d2.code().k() - self.n()
    }

    pub fn to_json(&self) -> OuterJson {
        match (&self.d1, &self.d2) {
            (OuterCode::Grs(a), OuterCode::Grs(b)) => OuterJson::Rs {
                field: self.field.desc(),
                n: self.n(),
                k1: a.k(),
                k2: b.k(),
                eval_points: a.points.iter().map(|&e| self.field.to_power_code(e)).collect(),
                multipliers1: a.multipliers.iter().map(|&e| self.field.to_power_code(e)).collect(),
                multipliers2: b.multipliers.iter().map(|&e| self.field.to_power_code(e)).collect(),
            },
            _ => OuterJson::Linear {
                d1: self.d1.code().to_json(),
                d2: self.d2.code().to_json(),
                t1: self.d1.radius(),
                t2: self.d2.radius(),
            },
        }
    }

    pub fn from_json(j: &OuterJson) -> Result<Self> {
        match j {
            OuterJson::Rs { field, n, k1, k2, eval_points, multipliers1, multipliers2 } => {
                let f = field.build()?;
                let dec = |v: &[u32]| v.iter().map(|&c| f.from_power_code(c)).collect::<Result<Vec<_>>>();
                let points = dec(eval_points)?;
                if points.len() != *n {
                    return Err(Error::DimensionMismatch("evaluation point count differs from N".into()));
                }
                let d1 = GrsCode::new(&f, points.clone(), dec(multipliers1)?, *k1)?;
                let d2 = GrsCode::new(&f, points, dec(multipliers2)?, *k2)?;
                checked_pair(f, OuterCode::Grs(d1), OuterCode::Grs(d2))
            }
            OuterJson::Linear { d1, d2, t1, t2 } => {
                let c1 = LinearCode::from_json(d1)?;
                let c2 = LinearCode::from_json(d2)?;
                let f = c1.field().clone();
                checked_pair(f, OuterCode::Table(TableCode::new(c1, *t1)?), OuterCode::Table(TableCode::new(c2, *t2)?))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum OuterJson {
    Rs {
        field: FieldDesc,
        n: usize,
        k1: usize,
        k2: usize,
        eval_points: Vec<u32>,
        multipliers1: Vec<u32>,
        multipliers2: Vec<u32>,
    },
    Linear {
        d1: CodeJson,
        d2: CodeJson,
        t1: usize,
        t2: usize,
    },
}

fn checked_pair(field: Field, d1: OuterCode, d2: OuterCode) -> Result<OuterPair> {
    make_pair(d1.code().clone(), d2.code().clone())?;
    Ok(OuterPair { field, d1, d2 })
}

/// RS pair over `field` on the points g^0..g^(N-1): D1 = GRS_{K1}(a, 1) and
/// D2 = GRS_{K2}(a, u) with u the dual multipliers of the all-ones vector,
/// so that dual(D2) = GRS_{N-K2}(a, 1), inside D1 whenever K1 + K2 >= N.
pub fn rs_pair(field: &Field, n: usize, k1: usize, k2: usize) -> Result<OuterPair> {
    if k1 > n || k2 > n {
        return Err(Error::InvalidParameter(format!("dimensions {k1}, {k2} exceed length {n}")));
    }
    if k1 + k2 < n {
        return Err(Error::InvalidParameter(format!("K1 + K2 = {} is below N = {n}", k1 + k2)));
    }
    let points = default_points(field, n)?;
    let ones = vec![Elem::ONE; n];
    let u = dual_multipliers(field, &points, &ones);
    let d1 = GrsCode::new(field, points.clone(), ones, k1)?;
    let d2 = GrsCode::new(field, points, u, k2)?;
    checked_pair(field.clone(), OuterCode::Grs(d1), OuterCode::Grs(d2))
}

/// D1 = D2 = binary Hamming code of length 2^r - 1 over `field` (which must
/// have characteristic 2), decoded with radius 1.
pub fn hamming_pair(field: &Field, r: usize) -> Result<OuterPair> {
    if field.characteristic() != 2 {
        return Err(Error::InvalidParameter("Hamming outer codes need characteristic 2".into()));
    }
    let n = (1usize << r) - 1;
    let mut h = Matrix::zeros(field, r, n);
    for col in 0..n {
        for bit in 0..r {
            if (col + 1) >> bit & 1 == 1 {
                h.set(bit, col, Elem::ONE);
            }
        }
    }
    let code = LinearCode::from_generator(&h).dual();
    let d = OuterCode::Table(TableCode::new(code, 1)?);
    checked_pair(field.clone(), d.clone(), d)
}
