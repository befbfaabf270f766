//! Parallel, reproducible Monte Carlo estimation of decoding error rates.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bounds::wilson_interval;
use super::channel::ErrorSampler;
use super::decode::{ConcatDecoder, QuotientDecoder};
use crate::algebra::{Elem, Field};
use crate::error::{Error, Result};
use crate::infotheory::ChannelModel;

/// A code with a randomized encoder and a decoder that may fail.
pub trait Scheme: Sync {
    /// Field of the transmitted symbols.
    fn field(&self) -> &Field;
    fn message_len(&self) -> usize;
    /// Number of values each message symbol can take.
    fn message_alphabet(&self) -> u32;
    fn encode(&self, msg: &[Elem], rng: &mut ChaCha8Rng) -> Vec<Elem>;
    fn decode(&self, y: &[Elem]) -> Option<Vec<Elem>>;
}

impl Scheme for QuotientDecoder {
    fn field(&self) -> &Field {
        self.quotient().code().field()
    }

    fn message_len(&self) -> usize {
        self.quotient().dim()
    }

    fn message_alphabet(&self) -> u32 {
        self.field().order()
    }

    fn encode(&self, msg: &[Elem], rng: &mut ChaCha8Rng) -> Vec<Elem> {
        self.quotient().encode(msg, rng).expect("message has the quotient dimension")
    }

    fn decode(&self, y: &[Elem]) -> Option<Vec<Elem>> {
        Some(QuotientDecoder::decode(self, y))
    }
}

impl Scheme for ConcatDecoder {
    fn field(&self) -> &Field {
        self.concat().field()
    }

    fn message_len(&self) -> usize {
        ConcatDecoder::message_len(self)
    }

    fn message_alphabet(&self) -> u32 {
        self.outer_quotient().code().field().order()
    }

    fn encode(&self, msg: &[Elem], rng: &mut ChaCha8Rng) -> Vec<Elem> {
        ConcatDecoder::encode(self, msg, rng).expect("message has the outer quotient dimension")
    }

    fn decode(&self, y: &[Elem]) -> Option<Vec<Elem>> {
        ConcatDecoder::decode(self, y)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialConfig {
    pub channel: ChannelModel,
    pub trials: u64,
    pub seed: u64,
    /// Index of the first trial; runs with the same seed and disjoint
    /// trial ranges can be merged.
    #[serde(default)]
    pub offset: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorEstimate {
    pub trials: u64,
    pub failures: u64,
    pub estimate: f64,
    pub wilson_lo: f64,
    pub wilson_hi: f64,
    /// Analytic upper bound for comparison, when one is known.
    pub bound: Option<f64>,
}

impl ErrorEstimate {
    pub fn from_counts(failures: u64, trials: u64) -> Self {
        let (wilson_lo, wilson_hi) = wilson_interval(failures, trials);
        ErrorEstimate { trials, failures, estimate: failures as f64 / trials as f64, wilson_lo, wilson_hi, bound: None }
    }

    /// Pool two runs over disjoint trial ranges.
    pub fn merge(&self, other: &ErrorEstimate) -> Self {
        let mut m = ErrorEstimate::from_counts(self.failures + other.failures, self.trials + other.trials);
        m.bound = self.bound.or(other.bound);
        m
    }
}

/// RNG for one trial: one ChaCha stream per trial index.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Whether trial `trial` decodes correctly.
pub fn run_trial<S: Scheme + ?Sized>(scheme: &S, sampler: &ErrorSampler, seed: u64, trial: u64) -> bool {
    let mut rng = trial_rng(seed, trial);
    let a = scheme.message_alphabet();
    let msg: Vec<Elem> = (0..scheme.message_len()).map(|_| Elem(rng.gen_range(0..a))).collect();
    let x = scheme.encode(&msg, &mut rng);
    let e = sampler.sample(x.len(), &mut rng);
    let y = scheme.field().add_vec(&x, &e);
    scheme.decode(&y).as_deref() == Some(&msg[..])
}

pub fn monte_carlo<S: Scheme + ?Sized>(scheme: &S, cfg: &TrialConfig) -> Result<ErrorEstimate> {
    if cfg.trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    if cfg.channel.q != scheme.field().order() as usize {
        return Err(Error::InvalidChannel(format!(
            "channel alphabet {} differs from field order {}",
            cfg.channel.q,
            scheme.field().order()
        )));
    }
    let sampler = ErrorSampler::new(&cfg.channel)?;
    let failures = (cfg.offset..cfg.offset + cfg.trials)
        .into_par_iter()
        .filter(|&t| !run_trial(scheme, &sampler, cfg.seed, t))
        .count() as u64;
    Ok(ErrorEstimate::from_counts(failures, cfg.trials))
}
