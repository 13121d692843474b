//! Seeded random streams and validated distribution sampling.
//!
//! All variate generation in the engine goes through this module.  The
//! contract has three parts:
//!
//! * [`RngStream`] is a counter-derived generator: `(seed, stream path)`
//!   fully determines the variate sequence, and distinct paths yield
//!   statistically independent sequences.  Nothing in the engine may call a
//!   platform RNG.
//! * [`DistSpec`] is a validated description of a scalar distribution.
//!   Drawing from an invalid specification is an error naming the offending
//!   field, never a silent fix-up.
//! * [`HyperSpec`] describes a distribution whose parameters are themselves
//!   random.  A hyper-draw that lands outside the parameter domain is an
//!   error; it is never resampled, so diagnosing a bad hyper-model stays
//!   cheap.

mod bayes;
mod dist;
mod hyper;
mod rng;

pub use bayes::{beta_binomial_update, BetaPosterior};
pub use dist::{poisson_count, sample_index, DistKind, DistSpec};
pub use hyper::HyperSpec;
pub use rng::RngStream;

use thiserror::Error;

/// Errors raised by stream construction, distribution validation and
/// hierarchical draws.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum StochasticsError {
    /// A distribution parameter is outside its domain.
    #[error("{dist}: parameter `{field}` must satisfy {constraint} (got {value})")]
    InvalidParameter {
        dist: &'static str,
        field: &'static str,
        constraint: &'static str,
        value: f64,
    },

    /// A hyper-spec binds a parameter the template does not have, or leaves
    /// a template parameter unbound.
    #[error("hyper-spec for `{template}`: parameter `{field}` is {problem}")]
    HyperBinding {
        template: &'static str,
        field: String,
        problem: &'static str,
    },

    /// A hyper-draw produced a parameter outside the template's domain.
    #[error("hyper-draw rejected: {0}")]
    HyperDrawOutOfDomain(Box<StochasticsError>),

    /// Conjugate update called with more successes than trials.
    #[error("beta-binomial update: successes ({successes}) exceed trials ({trials})")]
    SuccessesExceedTrials { successes: u64, trials: u64 },

    /// Prior hyper-parameters for a conjugate update must be positive.
    #[error("beta posterior: parameter `{field}` must be positive (got {value})")]
    NonPositivePrior { field: &'static str, value: f64 },
}
