//! Decision-theoretic core: expected-utility estimation and exhaustive
//! optimisation for both sides of the game.
//!
//! The defender cannot observe the attacker's utilities or beliefs, so the
//! attacker is modelled with random payoffs and a random utility function.
//! [`solve_attacker_distribution`] simulates the attacker's optimisation
//! once per hyper-draw and records how often each attack count wins,
//! producing an [`AttackPolicyTable`].  [`solve_defender`] then evaluates
//! every defender decision against that table by plain Monte Carlo and
//! ranks the decisions by expected utility.
//!
//! # Randomness and reproducibility
//!
//! Solvers never share a mutable generator between work items.  Every
//! evaluation derives its own sub-stream from the caller's [`RngStream`]
//! by hashing fixed labels (hyper-draw index, sample index), so results are
//! identical for a fixed seed whatever the worker count or schedule.  All
//! defender decisions are deliberately evaluated from the *same* per-sample
//! sub-streams: with common random numbers the estimated utility gap
//! between two decisions has far lower variance than the individual
//! estimates, which keeps the ranking stable at realistic sample sizes.

mod attacker;
mod dad;
mod defender;
mod estimator;
mod table;

pub use attacker::{solve_attacker_distribution, AttackerModel};
pub use dad::{solve_defence_attack_defence, DadSolution, TwoStageDefenderModel};
pub use defender::{solve_defender, utility_loss, DefenderRanking, RankedDecision};
pub use estimator::{estimate_expected_utility, EvaluationResult};
pub use table::AttackPolicyTable;

use thiserror::Error;

/// Sub-stream labels reserved by the solvers.  Pipelines that solve the
/// attacker and defender problems from one root stream use these tags so
/// that re-running either half in isolation reproduces the same draws.
pub mod stream_tags {
    /// Attack-distribution solve (hyper-draws and inner payoff samples).
    pub const ATTACKER: u64 = 1;
    /// Defender expected-utility evaluation.
    pub const DEFENDER: u64 = 2;
}

/// Errors raised by the solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    /// Structural problem with the inputs (empty spaces, bad budgets,
    /// duplicate labels, ...).
    #[error("configuration: {0}")]
    Config(String),

    /// A decision references a defence the attack table has no row for.
    #[error("defence `{defence}` missing from attack policy table")]
    MissingDefence { defence: String },

    /// A cost sampler produced a non-finite value.
    #[error("evaluation of `{decision}`: sample {sample} produced non-finite cost ({value})")]
    NonFiniteCost {
        decision: String,
        sample: usize,
        value: f64,
    },

    /// An attacker expected-utility estimate came out non-finite.
    #[error("attacker evaluation for defence `{defence}`, attack {attack}: non-finite expected utility")]
    NonFiniteUtility { defence: String, attack: u32 },

    /// A probability table failed validation.
    #[error("attack policy table: {0}")]
    InvalidTable(String),

    /// The attacker's hyper-model failed to produce a draw.
    #[error("hyper-draw failed: {0}")]
    Hyper(String),
}

/// The defender's decision problem.
///
/// A decision bundles whatever the defender chooses up front (in the case
/// study: a control portfolio and an insurance product).  The solver only
/// needs four things: the finite decision space, a per-decision defence
/// label to look up the attack row, a deterministic fixed cost used for
/// tie-breaking, and a cost sampler plus utility.
pub trait DefenderModel: Sync {
    type Decision: Clone + Send + Sync;

    /// The finite decision space, in a stable order.
    fn decisions(&self) -> Vec<Self::Decision>;

    /// Unique human-readable label; also the final ranking tie-breaker.
    fn label(&self, decision: &Self::Decision) -> String;

    /// Label of the defence the attacker reacts to, used to select the
    /// row of the [`AttackPolicyTable`].
    fn defence(&self, decision: &Self::Decision) -> String;

    /// Deterministic spend (controls plus premium) for tie-breaking.
    fn fixed_cost(&self, decision: &Self::Decision) -> f64;

    /// Annual operating cost added to every sampled cost before the
    /// utility is applied.
    fn baseline_cost(&self) -> f64 {
        0.0
    }

    /// Draws one total annual cost for the decision given the attack
    /// probabilities of its defence.
    fn sample_cost(&self, decision: &Self::Decision, attack_row: &[f64], rng: &mut crate::stochastics::RngStream) -> f64;

    /// Maps a total cost to utility.
    fn utility(&self, cost: f64) -> f64;
}
