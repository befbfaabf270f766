//! Analytic comparison values: Wilson intervals, the outer union bound and
//! the exponent targets.

use serde::{Deserialize, Serialize};

use crate::concat::ConcatenatedPair;
use crate::error::{Error, Result};
use crate::infotheory::{inner_bound_p, random_coding_exponent, ChannelModel};

const Z95: f64 = 1.959964;

/// 95% Wilson score interval for `failures` out of `trials`.
pub fn wilson_interval(failures: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = failures as f64 / n;
    let z2 = Z95 * Z95;
    let den = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / den;
    let half = Z95 * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / den;
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnionBound {
    /// Number of wrongly decoded blocks the outer decoder cannot absorb.
    pub theta: usize,
    /// Binomial tail, capped at 1.
    pub exact: f64,
    /// Exponential relaxation of the tail, capped at 1.
    pub relaxation: f64,
}

fn ln_choose(m: usize, i: usize) -> f64 {
    (1..=i).map(|t| ((m - i + t) as f64 / t as f64).ln()).sum()
}

/// Tail probability that at least theta - z of the N - z good inner
/// blocks fail, each independently with probability at most `p`.
pub fn union_bound(n_outer: usize, z: usize, k_j: usize, p: f64) -> Result<UnionBound> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("block error probability {p} outside [0, 1]")));
    }
    if z > n_outer || k_j > n_outer {
        return Err(Error::InvalidParameter(format!("need z, K <= N (z = {z}, K = {k_j}, N = {n_outer})")));
    }
    let theta = (n_outer - k_j) / 2 + 1;
    if theta <= z {
        return Ok(UnionBound { theta, exact: 1.0, relaxation: 1.0 });
    }
    let m = n_outer - z;
    let a = theta - z;
    if a > m {
        return Ok(UnionBound { theta, exact: 0.0, relaxation: 0.0 });
    }
    let exact = if p == 0.0 {
        0.0
    } else if p == 1.0 {
        1.0
    } else {
        (a..=m)
            .map(|i| (ln_choose(m, i) + i as f64 * p.ln() + (m - i) as f64 * (-p).ln_1p()).exp())
            .sum::<f64>()
            .min(1.0)
    };
    // q^{(θ−z) log_q P + (N−θ) log_q(1−P) + (N−z) h_q((θ−z)/(N−z))}; the
    // base cancels, so evaluate in nats.
    let x = a as f64 / m as f64;
    let h = if x >= 1.0 { 0.0 } else { -x * x.ln() - (1.0 - x) * (-x).ln_1p() };
    let lp = if p == 0.0 { f64::NEG_INFINITY } else { a as f64 * p.ln() };
    let lq = if n_outer == theta { 0.0 } else { (n_outer - theta) as f64 * (-p).ln_1p() };
    let relaxation = (lp + lq + m as f64 * h).exp().min(1.0);
    Ok(UnionBound { theta, exact, relaxation })
}

/// Analytic values attached to one side of a concatenated pair.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SideBounds {
    pub j: usize,
    /// Per-block error bound, clamped to [0, 1].
    pub p_block: f64,
    pub union: UnionBound,
    /// (1/2)(1 - R_j) E_r(W_j, r_j).
    pub exponent_target: f64,
}

/// Bounds for side j with every inner block good (z = 0).
pub fn side_bounds(cp: &ConcatenatedPair, j: usize, w: &ChannelModel, epsilon: f64) -> Result<SideBounds> {
    let n = cp.block_len();
    let inner_k = cp.inner()[0].pair.code(j).k();
    let r = inner_k as f64 / n as f64;
    let p_block = inner_bound_p(n, r, epsilon, w)?.clamp(0.0, 1.0);
    let outer_n = cp.outer().n();
    let outer_k = cp.outer().code(j).code().k();
    let union = union_bound(outer_n, 0, outer_k, p_block)?;
    let big_r = outer_k as f64 / outer_n as f64;
    let exponent_target = 0.5 * (1.0 - big_r) * random_coding_exponent(w, r);
    Ok(SideBounds { j, p_block, union, exponent_target })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExponentRow {
    pub n_outer: usize,
    pub j: usize,
    pub estimate: f64,
    /// -(1/N_o) log_q of the estimate; infinite for a zero estimate.
    pub empirical: f64,
    pub target: f64,
    pub zero_estimate: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExponentReport {
    pub rows: Vec<ExponentRow>,
    /// Per side: whether the estimate is non-increasing in N_o.
    pub non_increasing: Vec<(usize, bool)>,
}

/// Tabulate empirical decay rates against the targets. Input is
/// (N_o, j, estimate, target); q is the channel alphabet.
pub fn exponent_report(q: usize, entries: &[(usize, usize, f64, f64)]) -> ExponentReport {
    let mut rows: Vec<ExponentRow> = entries
        .iter()
        .map(|&(n_outer, j, estimate, target)| ExponentRow {
            n_outer,
            j,
            estimate,
            empirical: if estimate > 0.0 { -estimate.ln() / (q as f64).ln() / n_outer as f64 } else { f64::INFINITY },
            target,
            zero_estimate: estimate == 0.0,
        })
        .collect();
    rows.sort_by_key(|r| (r.j, r.n_outer));
    let mut non_increasing = Vec::new();
    for j in [1, 2] {
        let side: Vec<f64> = rows.iter().filter(|r| r.j == j).map(|r| r.estimate).collect();
        if side.len() >= 2 {
            non_increasing.push((j, side.windows(2).all(|w| w[1] <= w[0])));
        }
    }
    ExponentReport { rows, non_increasing }
}

/// One line of the results CSV.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimRow {
    pub n_outer: usize,
    pub rate: String,
    pub j: usize,
    pub channel: String,
    pub trials: u64,
    pub failures: u64,
    pub estimate: f64,
    pub wilson_lo: f64,
    pub wilson_hi: f64,
    pub union_bound: f64,
    pub exponent_target: f64,
    pub config_hash: String,
}

pub const SIM_CSV_HEADER: &str =
    "N_o,rate,j,W,trials,failures,estimate,wilson_lo,wilson_hi,union_bound,exponent_target,config_hash";

impl SimRow {
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            self.n_outer,
            self.rate,
            self.j,
            self.channel,
            self.trials,
            self.failures,
            self.estimate,
            self.wilson_lo,
            self.wilson_hi,
            self.union_bound,
            self.exponent_target,
            self.config_hash
        )
    }
}
