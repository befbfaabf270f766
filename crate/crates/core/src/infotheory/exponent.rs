//! The random coding exponent
//!
//! E_r(W, r) = min over Q of D(Q||W) + |1 - r - H(Q)|^+
//!
//! and the error-probability bounds built on it.
//!
//! The objective is convex but not smooth on the contour H(Q) = 1 - r. The
//! solver brackets the minimum from both sides: the Lagrangian relaxation
//! min_Q D(Q||W) + t (1 - r - H(Q)), t in [0, 1], is a lower bound that is
//! concave in t and maximized by golden-section search (its inner minimizer
//! is the tilted law Q_t(u) proportional to W(u)^(1/(1+t))); the primal value
//! at Q_t and at projected-gradient refinements from several starts gives the
//! upper bound that is returned.

use serde::{Deserialize, Serialize};

use super::simplex::{projected_gradient_descent, PgdOptions};
use super::types::{divergence, entropy, num_types, ChannelModel};
use crate::error::{Error, Result};

/// D(Q||W) + |1 - r - H(Q)|^+ in base-q units (infinite off the support of W).
pub fn exponent_objective(q_dist: &[f64], w: &[f64], r: f64) -> f64 {
    let d = divergence(q_dist, w);
    if d.is_infinite() {
        return f64::INFINITY;
    }
    d.value() + (1.0 - r - entropy(q_dist)).max(0.0)
}

/// Minimizer, value and optimality certificate of the exponent problem.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExponentSolution {
    pub value: f64,
    /// Best Lagrangian lower bound; `value - dual_bound` bounds the error.
    pub dual_bound: f64,
    pub minimizer: Vec<f64>,
    pub multiplier: f64,
}

struct Problem<'a> {
    w: &'a [f64],
    support: Vec<usize>,
    ln_q: f64,
    r: f64,
}

impl Problem<'_> {
    fn expand(&self, reduced: &[f64]) -> Vec<f64> {
        let mut full = vec![0.0; self.w.len()];
        for (&i, &v) in self.support.iter().zip(reduced) {
            full[i] = v;
        }
        full
    }

    fn objective(&self, reduced: &[f64]) -> f64 {
        exponent_objective(&self.expand(reduced), self.w, self.r)
    }

    fn gradient(&self, reduced: &[f64]) -> Vec<f64> {
        let full = self.expand(reduced);
        let penalty_active = 1.0 - self.r - entropy(&full) > 0.0;
        self.support
            .iter()
            .zip(reduced)
            .map(|(&i, &x)| {
                let lx = x.max(1e-300).ln();
                let dd = (lx - self.w[i].ln() + 1.0) / self.ln_q;
                if penalty_active {
                    dd + (lx + 1.0) / self.ln_q
                } else {
                    dd
                }
            })
            .collect()
    }

    /// Q_t on the support: proportional to W^(1/(1+t)).
    fn tilted(&self, t: f64) -> Vec<f64> {
        let logs: Vec<f64> = self.support.iter().map(|&i| self.w[i].ln() / (1.0 + t)).collect();
        let m = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let un: Vec<f64> = logs.iter().map(|&l| (l - m).exp()).collect();
        let s: f64 = un.iter().sum();
        un.iter().map(|&x| x / s).collect()
    }

    /// Lagrangian dual function.
    fn dual(&self, t: f64) -> f64 {
        let q = self.expand(&self.tilted(t));
        divergence(&q, self.w).value() + t * (1.0 - self.r - entropy(&q))
    }
}

/// E_r(W, r) for 0 <= r <= 1.
pub fn random_coding_exponent(w: &ChannelModel, r: f64) -> f64 {
    random_coding_exponent_detailed(w, r).value
}

pub fn random_coding_exponent_detailed(w: &ChannelModel, r: f64) -> ExponentSolution {
    let support: Vec<usize> = (0..w.q).filter(|&i| w.probs[i] > 0.0).collect();
    let prob = Problem { w: &w.probs, support, ln_q: (w.q as f64).ln(), r };

    // golden-section maximization of the concave dual on [0, 1]
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (0.0f64, 1.0f64);
    let mut c = b - phi * (b - a);
    let mut d = a + phi * (b - a);
    let (mut gc, mut gd) = (prob.dual(c), prob.dual(d));
    for _ in 0..80 {
        if gc < gd {
            a = c;
            c = d;
            gc = gd;
            d = a + phi * (b - a);
            gd = prob.dual(d);
        } else {
            b = d;
            d = c;
            gd = gc;
            c = b - phi * (b - a);
            gc = prob.dual(c);
        }
    }
    let mut t_best = 0.5 * (a + b);
    let mut dual_best = prob.dual(t_best);
    for t in [0.0, 1.0] {
        let v = prob.dual(t);
        if v > dual_best {
            dual_best = v;
            t_best = t;
        }
    }

    let m = prob.support.len();
    let mut starts = vec![prob.tilted(t_best), prob.tilted(0.0), prob.tilted(1.0), vec![1.0 / m as f64; m]];
    for i in 0..m {
        let mut v = vec![0.0; m];
        v[i] = 1.0;
        starts.push(v);
    }

    let mut best = prob.tilted(t_best);
    let mut best_val = prob.objective(&best);
    let opts = PgdOptions { max_iter: 400, ..PgdOptions::default() };
    for s in &starts {
        let v = prob.objective(s);
        if v < best_val {
            best_val = v;
            best = s.clone();
        }
        if m > 1 {
            let (x, fx) = projected_gradient_descent(|x| prob.objective(x), |x| prob.gradient(x), s, opts);
            if fx < best_val {
                best_val = fx;
                best = x;
            }
        }
    }
    ExponentSolution {
        value: best_val.max(0.0),
        dual_bound: dual_best,
        minimizer: prob.expand(&best),
        multiplier: t_best,
    }
}

/// Exponent samples at r = 0, step, 2 step, ..., 1.
pub fn exponent_sweep(w: &ChannelModel, step: f64) -> Vec<(f64, f64)> {
    let n = (1.0 / step).round() as usize;
    (0..=n)
        .map(|i| {
            let r = (i as f64 * step).min(1.0);
            (r, random_coding_exponent(w, r))
        })
        .collect()
}

/// Error bound a_n |P_n|^2 q^(-n E_r(W, kappa/n)) for minimum-entropy
/// syndrome decoding of an [n, kappa] code whose spectrum is within a factor
/// a_n of the ensemble average. Values above 1 are vacuous.
pub fn proposition1_bound(n: usize, kappa: usize, a_n: f64, w: &ChannelModel) -> Result<f64> {
    if a_n.is_nan() || a_n < 1.0 {
        return Err(Error::InvalidParameter(format!("a_n = {a_n} must be at least 1")));
    }
    if n == 0 || kappa > n {
        return Err(Error::InvalidParameter(format!("invalid code parameters [{n}, {kappa}]")));
    }
    let pn = num_types(n, w.q)? as f64;
    let e = random_coding_exponent(w, kappa as f64 / n as f64);
    Ok(a_n * pn * pn * (w.q as f64).powf(-(n as f64) * e))
}

/// Inner-code error bound |P_n|^3 q^(-n (E_r(W, r) - epsilon)) for
/// q^(epsilon n)-good codes.
pub fn inner_bound_p(n: usize, r: f64, epsilon: f64, w: &ChannelModel) -> Result<f64> {
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::InvalidParameter(format!("rate {r} outside [0, 1]")));
    }
    let pn = num_types(n, w.q)? as f64;
    let e = random_coding_exponent(w, r);
    Ok(pn.powi(3) * (w.q as f64).powf(-(n as f64) * (e - epsilon)))
}

/// R_CSS = max(0, 1 - H(W1) - H(W2)).
pub fn achievable_rate(w1: &ChannelModel, w2: &ChannelModel) -> f64 {
    (1.0 - w1.entropy() - w2.entropy()).max(0.0)
}

/// Maximizer of the overall exponent bound at a target overall rate.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CorollaryExponent {
    /// (1/2) sup min_l (1 - R_l) E_r(W_l, r_l)
    pub value: f64,
    pub r1: f64,
    pub r2: f64,
    pub outer_r1: f64,
    pub outer_r2: f64,
}

/// Best exponent bound over (r1, r2, R1, R2) in (0, 1]^4 with
/// (r1 + r2 - 1)(R1 + R2 - 1) = `overall_rate`.
///
/// For fixed inner rates the outer split has a closed form: with
/// s = r1 + r2 - 1 and 1 - R1 + 1 - R2 = 1 - R_o / s, the minimum of the two
/// products is maximized by equalizing them. The inner rates are searched on
/// a grid followed by a local pattern search.
pub fn corollary_exponent(w1: &ChannelModel, w2: &ChannelModel, overall_rate: f64) -> Result<CorollaryExponent> {
    if !(overall_rate > 0.0 && overall_rate <= 1.0) {
        return Err(Error::InvalidParameter(format!("overall rate {overall_rate} outside (0, 1]")));
    }
    let eval = |r1: f64, r2: f64| -> Option<(f64, f64, f64)> {
        let s = r1 + r2 - 1.0;
        if !(r1 > 0.0 && r1 <= 1.0 && r2 > 0.0 && r2 <= 1.0) || s < overall_rate || s <= 0.0 {
            return None;
        }
        let t = overall_rate / s;
        let e1 = random_coding_exponent(w1, r1);
        let e2 = random_coding_exponent(w2, r2);
        let slack = 1.0 - t;
        if e1 + e2 <= 0.0 {
            return Some((0.0, 1.0 - slack / 2.0, 1.0 - slack / 2.0));
        }
        let a1 = slack * e2 / (e1 + e2);
        let a2 = slack - a1;
        Some((0.5 * a1 * e1, 1.0 - a1, 1.0 - a2))
    };
    let steps = 50;
    let mut best: Option<CorollaryExponent> = None;
    let consider = |r1: f64, r2: f64, best: &mut Option<CorollaryExponent>| {
        if let Some((v, big1, big2)) = eval(r1, r2) {
            if best.as_ref().is_none_or(|b| v > b.value) {
                *best = Some(CorollaryExponent { value: v, r1, r2, outer_r1: big1, outer_r2: big2 });
            }
        }
    };
    for i in 1..=steps {
        for j in 1..=steps {
            consider(i as f64 / steps as f64, j as f64 / steps as f64, &mut best);
        }
    }
    let mut h = 1.0 / steps as f64;
    while h > 1e-6 {
        let Some(cur) = best.clone() else { break };
        let mut moved = false;
        for (dr1, dr2) in [(h, 0.0), (-h, 0.0), (0.0, h), (0.0, -h), (h, -h), (-h, h)] {
            consider(cur.r1 + dr1, cur.r2 + dr2, &mut best);
            if best.as_ref().is_some_and(|b| b.value > cur.value) {
                moved = true;
            }
        }
        if !moved {
            h /= 2.0;
        }
    }
    best.ok_or_else(|| Error::InvalidParameter("no feasible rate split".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bsc(p: f64) -> ChannelModel {
        ChannelModel::new(vec![1.0 - p, p]).unwrap()
    }

    #[test]
    fn noiseless_gives_one_minus_r_exactly() {
        let w = ChannelModel::noiseless(2);
        for i in 0..=10 {
            let r = i as f64 / 10.0;
            assert_eq!(random_coding_exponent(&w, r), 1.0 - r);
        }
        let w3 = ChannelModel::noiseless(3);
        assert_eq!(random_coding_exponent(&w3, 0.25), 0.75);
    }

    #[test]
    fn zero_above_capacity() {
        let w = bsc(0.01);
        let cap = w.capacity();
        assert!(random_coding_exponent(&w, cap + 1e-9) <= 1e-6);
        assert!(random_coding_exponent(&w, 0.99) <= 1e-6);
        assert!(random_coding_exponent(&w, cap - 0.05) > 1e-6);
    }

    #[test]
    fn uniform_noise_has_zero_exponent() {
        let w = ChannelModel::new(vec![0.5, 0.5]).unwrap();
        for i in 0..=10 {
            assert!(random_coding_exponent(&w, i as f64 / 10.0).abs() < 1e-12);
        }
    }

    #[test]
    fn certificate_is_tight() {
        for p in [0.01, 0.05, 0.11, 0.3] {
            let w = bsc(p);
            for i in 0..=20 {
                let r = i as f64 / 20.0;
                let s = random_coding_exponent_detailed(&w, r);
                assert!(s.value - s.dual_bound < 1e-9, "p={p} r={r} {s:?}");
                assert!(s.value >= 0.0);
            }
        }
    }

    #[test]
    fn nonincreasing_and_convex_in_rate() {
        let w = ChannelModel::new(vec![0.9, 0.06, 0.04]).unwrap();
        let pts = exponent_sweep(&w, 0.02);
        for win in pts.windows(3) {
            let (e0, e1, e2) = (win[0].1, win[1].1, win[2].1);
            assert!(e1 <= e0 + 1e-9);
            assert!(e0 + e2 - 2.0 * e1 >= -1e-8, "convexity at r={}", win[1].0);
        }
    }

    #[test]
    fn proposition1_bound_cases() {
        let w = ChannelModel::noiseless(2);
        let n = 7;
        let pn = 8.0f64;
        let b = proposition1_bound(n, 0, 1.0, &w).unwrap();
        assert!((b - pn * pn * 2f64.powi(-7)).abs() < 1e-12);
        assert!(proposition1_bound(n, 3, 0.5, &w).is_err());
        let noisy = ChannelModel::new(vec![0.5, 0.5]).unwrap();
        assert!(proposition1_bound(n, 3, 2.0, &noisy).unwrap() >= 1.0);
        let w = bsc(0.02);
        let mut prev = 0.0;
        for kappa in 0..=n {
            let b = proposition1_bound(n, kappa, 1.0, &w).unwrap();
            assert!(b >= prev - 1e-12);
            prev = b;
        }
    }

    #[test]
    fn inner_bound_cases() {
        let w = bsc(0.01);
        let e = random_coding_exponent(&w, 5.0 / 7.0);
        let pn3 = 512.0;
        let v = inner_bound_p(7, 5.0 / 7.0, 0.05, &w).unwrap();
        assert!((v - pn3 * 2f64.powf(-7.0 * (e - 0.05))).abs() < 1e-9 * v);
        let v0 = inner_bound_p(7, 5.0 / 7.0, 0.0, &w).unwrap();
        assert!((v0 - pn3 * 2f64.powf(-7.0 * e)).abs() < 1e-9 * v0);
        assert!(inner_bound_p(7, 0.5, e + 1.0, &w).unwrap() >= pn3);
    }

    #[test]
    fn achievable_rate_cases() {
        let clean = ChannelModel::noiseless(2);
        assert_eq!(achievable_rate(&clean, &clean), 1.0);
        let noisy = bsc(0.2);
        assert_eq!(achievable_rate(&noisy, &noisy), 0.0);
        let w = bsc(0.01);
        let h = -(0.01f64 * 0.01f64.log2() + 0.99 * 0.99f64.log2());
        assert!((achievable_rate(&w, &w) - (1.0 - 2.0 * h)).abs() < 1e-12);
    }

    #[test]
    fn corollary_exponent_is_feasible() {
        let w = bsc(0.01);
        let c = corollary_exponent(&w, &w, 0.2).unwrap();
        assert!(c.value > 0.0);
        let s = c.r1 + c.r2 - 1.0;
        let t = c.outer_r1 + c.outer_r2 - 1.0;
        assert!((s * t - 0.2).abs() < 1e-9);
        let e1 = random_coding_exponent(&w, c.r1);
        let e2 = random_coding_exponent(&w, c.r2);
        let direct = 0.5 * ((1.0 - c.outer_r1) * e1).min((1.0 - c.outer_r2) * e2);
        assert!((direct - c.value).abs() < 1e-9);
        // lower target rate allows a larger exponent
        let c2 = corollary_exponent(&w, &w, 0.1).unwrap();
        assert!(c2.value >= c.value - 1e-9);
    }
}
