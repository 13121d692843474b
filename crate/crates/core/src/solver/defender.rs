//! Exhaustive defender optimisation against a solved attack distribution.

use super::{estimate_expected_utility, AttackPolicyTable, DefenderModel, EvaluationResult, SolveError};
use crate::stochastics::RngStream;

/// One decision with its evaluation and deterministic spend.
#[derive(Debug, Clone, PartialEq)]
pub struct RankedDecision<D> {
    pub decision: D,
    pub result: EvaluationResult,
    /// Controls plus premium; the first tie-breaker.
    pub fixed_cost: f64,
}

/// All decisions sorted by expected utility (descending).  Ties fall to
/// the lower fixed cost, then to the lexicographically smaller label.
#[derive(Debug, Clone, PartialEq)]
pub struct DefenderRanking<D> {
    pub ranked: Vec<RankedDecision<D>>,
}

impl<D> DefenderRanking<D> {
    pub fn best(&self) -> &RankedDecision<D> {
        &self.ranked[0]
    }

    /// Looks an entry up by its label.
    pub fn by_label(&self, label: &str) -> Option<&RankedDecision<D>> {
        self.ranked.iter().find(|r| r.result.decision == label)
    }

    /// Re-ranks the subset of decisions accepted by `keep` without
    /// re-estimating anything.  Because all decisions are evaluated with
    /// common random numbers, filtering after the fact is equivalent to
    /// solving the restricted problem from the same stream.
    pub fn filtered(&self, mut keep: impl FnMut(&RankedDecision<D>) -> bool) -> DefenderRanking<D>
    where
        D: Clone,
    {
        DefenderRanking {
            ranked: self.ranked.iter().filter(|r| keep(r)).cloned().collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.ranked.is_empty()
    }

    pub fn len(&self) -> usize {
        self.ranked.len()
    }

    /// Entries in rank order, best first.
    pub fn iter(&self) -> impl Iterator<Item = &RankedDecision<D>> {
        self.ranked.iter()
    }
}

/// Expected-utility loss of `with_threats` relative to `without_threats`.
pub fn utility_loss(without_threats: &EvaluationResult, with_threats: &EvaluationResult) -> f64 {
    without_threats.expected_utility - with_threats.expected_utility
}

/// Evaluates every decision against the attack table and ranks them.
///
/// All decisions are estimated from the same base stream, so per-sample
/// incident randomness is shared across decisions (common random numbers)
/// and the ranking of near-tied decisions is driven by their structural
/// differences rather than independent Monte Carlo noise.
pub fn solve_defender<M: DefenderModel>(
    model: &M,
    table: &AttackPolicyTable,
    samples: usize,
    rng: &RngStream,
) -> Result<DefenderRanking<M::Decision>, SolveError> {
    let decisions = model.decisions();
    if decisions.is_empty() {
        return Err(SolveError::Config("decision space is empty".into()));
    }
    for decision in &decisions {
        let defence = model.defence(decision);
        if table.row(&defence).is_none() {
            return Err(SolveError::MissingDefence { defence });
        }
    }

    let base = rng.substream(&[super::stream_tags::DEFENDER]);
    let mut ranked = Vec::with_capacity(decisions.len());
    for decision in decisions {
        let result = estimate_expected_utility(model, &decision, table, samples, &base)?;
        let fixed_cost = model.fixed_cost(&decision);
        ranked.push(RankedDecision {
            decision,
            result,
            fixed_cost,
        });
    }
    ranked.sort_by(|a, b| {
        b.result
            .expected_utility
            .total_cmp(&a.result.expected_utility)
            .then(a.fixed_cost.total_cmp(&b.fixed_cost))
            .then_with(|| a.result.decision.cmp(&b.result.decision))
    });
    Ok(DefenderRanking { ranked })
}
