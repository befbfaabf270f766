//! Types, entropy, the random coding exponent and the bounds derived from it.

mod exponent;
mod simplex;
mod types;

pub use exponent::{
    achievable_rate, corollary_exponent, exponent_objective, exponent_sweep, inner_bound_p, proposition1_bound,
    random_coding_exponent, random_coding_exponent_detailed, CorollaryExponent, ExponentSolution,
};
pub use simplex::{project_onto_simplex, projected_gradient_descent, PgdOptions};
pub use types::{
    binary_entropy, binomial, divergence, entropy, enumerate_types, num_types, type_of, ChannelModel, Divergence,
    TypeDistribution,
};
