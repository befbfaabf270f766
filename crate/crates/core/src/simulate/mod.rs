//! Transmission over additive channels, decoding, and error-rate estimation.

mod bounds;
mod channel;
mod decode;
mod montecarlo;

pub use bounds::{
    exponent_report, side_bounds, union_bound, wilson_interval, ExponentReport, ExponentRow, SideBounds, SimRow,
    UnionBound, SIM_CSV_HEADER,
};
pub use channel::{transmit, ErrorSampler};
pub use decode::{
    concat_decode, min_entropy_syndrome_decode, quotient_decode, ConcatDecoder, CosetLeaderTable, QuotientDecoder,
};
pub use montecarlo::{monte_carlo, run_trial, trial_rng, ErrorEstimate, Scheme, TrialConfig};
