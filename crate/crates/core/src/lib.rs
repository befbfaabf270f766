//! Construction, verification and simulation of conjugate code pairs.

pub mod algebra;
pub mod codes;
pub mod concat;
pub mod ensemble;
pub mod error;
pub mod infotheory;
pub mod rs_outer;
pub mod simulate;

pub use error::{Budget, Error, Result};
