//! Concatenation of an outer pair over GF(q^k) with inner pairs from the
//! ensemble: L_j = pi_j(D_j) + (direct sum of the inner C_{j'} duals), j' the
//! other side.
//!
//! The maps pi_1, pi_2 send x in GF(q^k) to a combination of coset
//! representatives u_a (of C1 mod C2-dual) and v_a (of C2 mod C1-dual). The
//! representatives are biorthogonal rows of T^i and (T^-i)^t, and pi_1 uses
//! coordinates over a basis while pi_2 uses coordinates over its trace dual,
//! so pi_1(x) . pi_2(y) = Tr(x y).

use serde::{Deserialize, Serialize};

use crate::algebra::{dual_basis, polynomial_basis, trace, DualBasisPair, Elem, Field, Matrix};
use crate::codes::{make_pair, ConjugatePair, LinearCode};
use crate::ensemble::{BalancedEnsemble, EnsembleJson};
use crate::error::{Error, Result};
use crate::rs_outer::{OuterJson, OuterPair};

/// The pi-maps of one inner block.
#[derive(Clone, Debug)]
pub struct InnerMaps {
    pub index: usize,
    pub pair: ConjugatePair,
    u: Matrix,
    v: Matrix,
    basis: DualBasisPair,
    /// Generators of C1-dual and C2-dual.
    c1_dual: Matrix,
    c2_dual: Matrix,
}

impl InnerMaps {
    pub fn n(&self) -> usize {
        self.pair.n()
    }

    /// Net dimension k1 + k2 - n.
    pub fn k(&self) -> usize {
        self.u.rows()
    }

    pub fn u(&self) -> &Matrix {
        &self.u
    }

    pub fn v(&self) -> &Matrix {
        &self.v
    }

    pub fn basis(&self) -> &DualBasisPair {
        &self.basis
    }

    /// Generator of the dual of inner code j.
    pub fn dual_generator(&self, j: usize) -> &Matrix {
        if j == 1 {
            &self.c1_dual
        } else {
            &self.c2_dual
        }
    }

    pub fn pi1(&self, x: Elem) -> Vec<Elem> {
        self.u.vec_mul(&self.basis.coords(x))
    }

    pub fn pi2(&self, y: Elem) -> Vec<Elem> {
        self.v.vec_mul(&self.basis.dual_coords(y))
    }

    pub fn pi(&self, j: usize, x: Elem) -> Vec<Elem> {
        if j == 1 {
            self.pi1(x)
        } else {
            self.pi2(x)
        }
    }

    /// Inverse of pi_j on C_j, modulo the dual of the other inner code:
    /// reads the coordinates off with the opposite representatives.
    pub fn pi_inverse(&self, j: usize, w: &[Elem]) -> Elem {
        if j == 1 {
            self.basis.from_coords(&self.v.mul_vec(w))
        } else {
            self.basis.from_dual_coords(&self.u.mul_vec(w))
        }
    }
}

/// pi-maps for member `index` of `ens`, with coordinates taken over `basis`
/// (a basis of GF(q^k) over the ensemble's field, with its trace dual).
pub fn build_inner_maps(ens: &BalancedEnsemble, index: usize, basis: &DualBasisPair) -> Result<InnerMaps> {
    let (n, k1, k2) = (ens.n(), ens.k1(), ens.k2());
    let k = k1 + k2 - n;
    if k == 0 {
        return Err(Error::InvalidParameter("inner pair has net dimension 0".into()));
    }
    if basis.k() != k {
        return Err(Error::FieldMismatch(format!(
            "outer field has degree {} over the inner field, inner net dimension is {k}",
            basis.k()
        )));
    }
    if basis.field.base() != Some(ens.field()) {
        return Err(Error::FieldMismatch("outer field is not an extension of the inner field".into()));
    }
    let m = ens.member(index)?;
    let u = m.reps1(n, k1, k2);
    let v = m.reps2(n, k1, k2);
    let maps = InnerMaps {
        index,
        pair: m.pair.clone(),
        c1_dual: m.b.row_range(k1, n),
        c2_dual: m.a.top(n - k2),
        u,
        v,
        basis: basis.clone(),
    };
    check_pairing(&maps)?;
    Ok(maps)
}

fn check_pairing(m: &InnerMaps) -> Result<()> {
    let f = m.u.field();
    let uv = m.u.mul(&m.v.transpose())?;
    if uv != Matrix::identity(f, m.k()) {
        return Err(Error::VerificationFailed(format!("block {}: u . v is not the identity", m.index)));
    }
    let big = &m.basis.field;
    for &x in &m.basis.basis {
        for &y in &m.basis.dual {
            if f.dot(&m.pi1(x), &m.pi2(y)) != trace(big, big.mul(x, y)) {
                return Err(Error::VerificationFailed(format!("block {}: pi-pairing differs from trace", m.index)));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct ConcatenatedPair {
    ensemble: EnsembleJson,
    inner: Vec<InnerMaps>,
    outer: OuterPair,
    pair: ConjugatePair,
}

/// Exact rational number, reduced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rational {
    pub num: u64,
    pub den: u64,
}

impl Rational {
    pub fn new(num: u64, den: u64) -> Self {
        let g = gcd(num, den).max(1);
        Rational { num: num / g, den: den / g }
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl std::fmt::Display for Rational {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl ConcatenatedPair {
    pub fn inner(&self) -> &[InnerMaps] {
        &self.inner
    }

    pub fn outer(&self) -> &OuterPair {
        &self.outer
    }

    pub fn ensemble(&self) -> &EnsembleJson {
        &self.ensemble
    }

    pub fn pair(&self) -> &ConjugatePair {
        &self.pair
    }

    pub fn l(&self, j: usize) -> &LinearCode {
        self.pair.code(j)
    }

    pub fn field(&self) -> &Field {
        self.pair.c1().field()
    }

    /// Total length, sum of inner lengths.
    pub fn n(&self) -> usize {
        self.pair.n()
    }

    pub fn block_len(&self) -> usize {
        self.inner[0].n()
    }

    /// Juxtaposition pi_j(x_1) ... pi_j(x_N).
    pub fn pi_word(&self, j: usize, x: &[Elem]) -> Vec<Elem> {
        self.inner.iter().zip(x).flat_map(|(m, &xi)| m.pi(j, xi)).collect()
    }

    /// Blockwise inverse of [`pi_word`](Self::pi_word).
    pub fn pi_inverse_word(&self, j: usize, w: &[Elem]) -> Vec<Elem> {
        let mut off = 0;
        self.inner
            .iter()
            .map(|m| {
                let x = m.pi_inverse(j, &w[off..off + m.n()]);
                off += m.n();
                x
            })
            .collect()
    }

    /// GF(q)-generator of pi_j(D) for a code D over GF(q^k): pi_j of
    /// beta_b times each generator row, for every basis element beta_b.
    pub fn pi_image(&self, j: usize, d: &LinearCode) -> Result<Matrix> {
        pi_image(&self.inner, j, d)
    }

    /// Generator of the direct sum of the inner C_j duals.
    pub fn block_dual(&self, j: usize) -> Matrix {
        block_dual(&self.inner, j)
    }

    /// dim L_j counted from the parts: k K_j + sum of (n - k_{j'}).
    pub fn expected_dim(&self, j: usize) -> usize {
        let other = 3 - j;
        let kk = self.outer.code(j).code().k() * self.inner[0].k();
        kk + self.inner.iter().map(|m| m.n() - m.pair.code(other).k()).sum::<usize>()
    }

    pub fn to_json(&self) -> ConcatJson {
        let big = self.outer.field();
        ConcatJson {
            ensemble: self.ensemble.clone(),
            inner_indices: self.inner.iter().map(|m| m.index).collect(),
            basis: self.inner[0].basis.basis.iter().map(|&b| big.to_power_code(b)).collect(),
            outer: self.outer.to_json(),
        }
    }

    pub fn from_json(j: &ConcatJson) -> Result<Self> {
        let ens = BalancedEnsemble::from_json(&j.ensemble)?;
        let outer = OuterPair::from_json(&j.outer)?;
        let big = outer.field().clone();
        let basis: Vec<Elem> = j.basis.iter().map(|&c| big.from_power_code(c)).collect::<Result<_>>()?;
        let basis = dual_basis(&big, &basis)?;
        let inner = j.inner_indices.iter().map(|&i| build_inner_maps(&ens, i, &basis)).collect::<Result<Vec<_>>>()?;
        concatenate(&ens, inner, outer)
    }
}

/// Serialized concatenated pair: enough to rebuild every matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConcatJson {
    pub ensemble: EnsembleJson,
    pub inner_indices: Vec<usize>,
    /// Basis of GF(q^k) over GF(q) in power-of-generator encoding.
    pub basis: Vec<u32>,
    pub outer: OuterJson,
}

fn pi_image(inner: &[InnerMaps], j: usize, d: &LinearCode) -> Result<Matrix> {
    let big = d.field();
    let basis = &inner[0].basis.basis;
    let small = inner[0].u.field();
    let total: usize = inner.iter().map(|m| m.n()).sum();
    let mut rows = Vec::with_capacity(d.k() * basis.len());
    for r in 0..d.k() {
        let g = d.generator().row(r);
        for &b in basis {
            let x: Vec<Elem> = g.iter().map(|&c| big.mul(b, c)).collect();
            rows.push(inner.iter().zip(&x).flat_map(|(m, &xi)| m.pi(j, xi)).collect::<Vec<_>>());
        }
    }
    Matrix::from_rows(small, total, &rows)
}

fn block_dual(inner: &[InnerMaps], j: usize) -> Matrix {
    let f = inner[0].u.field();
    let total: usize = inner.iter().map(|m| m.n()).sum();
    let rows_total: usize = inner.iter().map(|m| m.dual_generator(j).rows()).sum();
    let mut out = Matrix::zeros(f, rows_total, total);
    let (mut r0, mut c0) = (0, 0);
    for m in inner {
        let g = m.dual_generator(j);
        for r in 0..g.rows() {
            for c in 0..g.cols() {
                out.set(r0 + r, c0 + c, g.get(r, c));
            }
        }
        r0 += g.rows();
        c0 += m.n();
    }
    out
}

/// Assemble (L1, L2) and check the CSS condition.
pub fn concatenate(ens: &BalancedEnsemble, inner: Vec<InnerMaps>, outer: OuterPair) -> Result<ConcatenatedPair> {
    if inner.len() != outer.n() {
        return Err(Error::DimensionMismatch(format!(
            "{} inner blocks for an outer code of length {}",
            inner.len(),
            outer.n()
        )));
    }
    if inner.iter().any(|m| &m.basis.field != outer.field()) {
        return Err(Error::FieldMismatch("inner maps and outer code use different extension fields".into()));
    }
    let gen = |j: usize| -> Result<LinearCode> {
        let img = pi_image(&inner, j, outer.code(j).code())?;
        Ok(LinearCode::from_generator(&img.vstack(&block_dual(&inner, 3 - j))?))
    };
    let (l1, l2) = (gen(1)?, gen(2)?);
    let pair = make_pair(l1, l2).map_err(|e| Error::VerificationFailed(format!("concatenated pair: {e}")))?;
    let cp = ConcatenatedPair { ensemble: ens.to_json(), inner, outer, pair };
    for j in [1, 2] {
        if cp.l(j).k() != cp.expected_dim(j) {
            return Err(Error::VerificationFailed(format!(
                "dim L{j} = {}, expected {}",
                cp.l(j).k(),
                cp.expected_dim(j)
            )));
        }
    }
    Ok(cp)
}

/// The polynomial basis of `big` over its coefficient field and its trace dual.
pub fn default_basis(big: &Field) -> Result<DualBasisPair> {
    dual_basis(big, &polynomial_basis(big))
}

/// Concatenate `outer` with the members `indices` of `ens`, using the
/// polynomial basis of the outer field.
pub fn build_concatenated(ens: &BalancedEnsemble, indices: &[usize], outer: OuterPair) -> Result<ConcatenatedPair> {
    let basis = default_basis(outer.field())?;
    let inner = indices.iter().map(|&i| build_inner_maps(ens, i, &basis)).collect::<Result<Vec<_>>>()?;
    concatenate(ens, inner, outer)
}

/// The code that the duality identity says is dual(L_j):
/// pi_{j'}(D_j-dual) + sum of the inner C_j duals.
pub fn dual_of_l(cp: &ConcatenatedPair, j: usize) -> Result<LinearCode> {
    let d_dual = cp.outer.code(j).code().dual();
    Ok(LinearCode::from_generator(&cp.pi_image(3 - j, &d_dual)?.vstack(&cp.block_dual(j))?))
}

/// Check both duality identities exactly:
///   [pi1(D2-dual) + sum C2-dual]-dual = pi2(D2) + sum C1-dual  (= L2)
///   [pi2(D1-dual) + sum C1-dual]-dual = pi1(D1) + sum C2-dual  (= L1)
/// with D-dual the dual over GF(q^k). Errors name the failing identity.
pub fn verify_duality(cp: &ConcatenatedPair) -> Result<()> {
    for (name, j) in [("duality-1", 2usize), ("duality-2", 1usize)] {
        let other = 3 - j;
        let lhs = dual_of_l(cp, j)?.dual();
        let rhs_gen = cp.pi_image(j, cp.outer.code(j).code())?.vstack(&cp.block_dual(other))?;
        let rhs = LinearCode::from_generator(&rhs_gen);
        if lhs != rhs {
            return Err(Error::VerificationFailed(format!("{name}: the two sides differ")));
        }
        if &rhs != cp.l(j) {
            return Err(Error::VerificationFailed(format!("{name}: L{j} differs from its definition")));
        }
    }
    Ok(())
}

/// Parity-check matrix of L2 assembled from the outer parity check of D2
/// and the inner blocks: generators of pi1(D2-dual) and of the C2 duals.
pub fn parity_check_of_l2(cp: &ConcatenatedPair) -> Result<Matrix> {
    let d2_dual = LinearCode::from_generator(cp.outer.d2().code().parity_check());
    cp.pi_image(1, &d2_dual)?.vstack(&cp.block_dual(2))
}

/// Generator of L1 (the parity check of L1-dual) from the generator of D1
/// and the inner blocks.
pub fn generator_of_l1(cp: &ConcatenatedPair) -> Result<Matrix> {
    cp.pi_image(1, cp.outer.d1().code())?.vstack(&cp.block_dual(2))
}

/// kK / (nN) for uniform inner parameters.
pub fn overall_rate(cp: &ConcatenatedPair) -> Result<Rational> {
    let n = cp.inner[0].n();
    let k = cp.inner[0].k();
    if cp.inner.iter().any(|m| m.n() != n || m.k() != k) {
        return Err(Error::InvalidParameter("inner blocks have differing parameters".into()));
    }
    let big_k = cp.outer.k();
    let big_n = cp.outer.n();
    Ok(Rational::new((k * big_k) as u64, (n * big_n) as u64))
}
