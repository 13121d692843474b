//! Monte Carlo engine for adversarial risk analysis of cybersecurity decisions.
//!
//! The crate is organised in four layers:
//!
//! * [`stochastics`]: deterministic seeded random streams, validated
//!   distribution specifications, hierarchical (hyper) distributions and the
//!   beta-binomial conjugate update.
//! * [`solver`]: the decision-theoretic core of expected-utility estimation,
//!   the attacker's simulated best-response distribution, and exhaustive
//!   defender optimisation for both defence-attack and
//!   defence-attack-defence models.
//! * [`casestudy`]: the SME model wired into the solver traits: control
//!   portfolios, insurance products, incident sampling (fire, virus, DDoS)
//!   and the attacker's campaign economics.
//! * [`analysis`]: constrained optimisation, one-at-a-time sensitivity
//!   sweeps, return-on-security-investment curves and insurance reservation
//!   prices.
//!
//! Every simulation consumes randomness through [`stochastics::RngStream`],
//! which derives independent sub-streams from `(seed, path)` labels.  Results
//! are therefore bit-reproducible for a fixed seed regardless of worker
//! thread count.

pub mod analysis;
pub mod casestudy;
pub mod solver;
pub mod stochastics;
pub mod synthetic;

pub use solver::{
    estimate_expected_utility, solve_attacker_distribution, solve_defence_attack_defence,
    solve_defender, AttackPolicyTable, AttackerModel, DefenderModel, DefenderRanking,
    EvaluationResult, SolveError, TwoStageDefenderModel,
};
pub use stochastics::{DistSpec, HyperSpec, RngStream};
