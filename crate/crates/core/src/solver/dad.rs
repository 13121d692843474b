//! Sequential defence-attack-defence optimisation.
//!
//! The defender commits a preventive decision, the attacker responds to
//! what it can observe (the preventive decision only), and the defender's
//! reactive decision shapes how sampled incidents turn into cost.  The
//! joint optimum over feasible (preventive, reactive) pairs is found by
//! solving the attack distribution once per preventive option and then
//! ranking the pairs exhaustively.

use super::{
    solve_attacker_distribution, solve_defender, AttackPolicyTable, AttackerModel, DefenderModel,
    DefenderRanking, SolveError,
};
use crate::stochastics::RngStream;

/// A two-stage defender problem.
pub trait TwoStageDefenderModel: Sync {
    type Preventive: Clone + Send + Sync;
    type Reactive: Clone + Send + Sync;

    fn preventive_space(&self) -> Vec<Self::Preventive>;
    fn reactive_space(&self) -> Vec<Self::Reactive>;

    /// Joint feasibility of a pair; infeasible pairs are never evaluated.
    fn feasible(&self, _preventive: &Self::Preventive, _reactive: &Self::Reactive) -> bool {
        true
    }

    /// Unique label for a pair.
    fn label(&self, preventive: &Self::Preventive, reactive: &Self::Reactive) -> String;

    /// Label of what the attacker observes.  The attack distribution is
    /// conditioned on the preventive decision alone; the reactive decision
    /// only changes how incidents cost out.
    fn defence_label(&self, preventive: &Self::Preventive) -> String;

    /// Deterministic spend of a pair, for tie-breaking.
    fn fixed_cost(&self, preventive: &Self::Preventive, reactive: &Self::Reactive) -> f64;

    fn baseline_cost(&self) -> f64 {
        0.0
    }

    fn sample_cost(
        &self,
        preventive: &Self::Preventive,
        reactive: &Self::Reactive,
        attack_row: &[f64],
        rng: &mut RngStream,
    ) -> f64;

    fn utility(&self, cost: f64) -> f64;
}

/// Adapts feasible (preventive, reactive) pairs to the single-stage
/// defender interface.
struct PairModel<'a, M: TwoStageDefenderModel> {
    model: &'a M,
    pairs: Vec<(M::Preventive, M::Reactive)>,
}

impl<M: TwoStageDefenderModel> DefenderModel for PairModel<'_, M> {
    type Decision = (M::Preventive, M::Reactive);

    fn decisions(&self) -> Vec<Self::Decision> {
        self.pairs.clone()
    }

    fn label(&self, d: &Self::Decision) -> String {
        self.model.label(&d.0, &d.1)
    }

    fn defence(&self, d: &Self::Decision) -> String {
        self.model.defence_label(&d.0)
    }

    fn fixed_cost(&self, d: &Self::Decision) -> f64 {
        self.model.fixed_cost(&d.0, &d.1)
    }

    fn baseline_cost(&self) -> f64 {
        self.model.baseline_cost()
    }

    fn sample_cost(&self, d: &Self::Decision, row: &[f64], rng: &mut RngStream) -> f64 {
        self.model.sample_cost(&d.0, &d.1, row, rng)
    }

    fn utility(&self, cost: f64) -> f64 {
        self.model.utility(cost)
    }
}

/// Result of a defence-attack-defence solve.
#[derive(Debug, Clone)]
pub struct DadSolution<P, R> {
    /// Attack distribution per preventive defence.
    pub table: AttackPolicyTable,
    /// All feasible pairs ranked by expected utility.
    pub ranking: DefenderRanking<(P, R)>,
}

impl<P, R> DadSolution<P, R> {
    pub fn best(&self) -> &(P, R) {
        &self.ranking.best().decision
    }
}

/// Solves the two-stage problem end to end.
pub fn solve_defence_attack_defence<M, A>(
    model: &M,
    attacker: &A,
    hyper_draws: usize,
    inner_samples: usize,
    samples: usize,
    rng: &RngStream,
) -> Result<DadSolution<M::Preventive, M::Reactive>, SolveError>
where
    M: TwoStageDefenderModel,
    A: AttackerModel<Defence = M::Preventive>,
{
    let preventives = model.preventive_space();
    let reactives = model.reactive_space();
    if preventives.is_empty() || reactives.is_empty() {
        return Err(SolveError::Config(
            "preventive and reactive spaces must be non-empty".into(),
        ));
    }

    let table = solve_attacker_distribution(attacker, &preventives, hyper_draws, inner_samples, rng)?;

    let mut pairs = Vec::with_capacity(preventives.len() * reactives.len());
    for p in &preventives {
        for r in &reactives {
            if model.feasible(p, r) {
                pairs.push((p.clone(), r.clone()));
            }
        }
    }
    if pairs.is_empty() {
        return Err(SolveError::Config(
            "no feasible (preventive, reactive) pair".into(),
        ));
    }

    let pair_model = PairModel { model, pairs };
    let ranking = solve_defender(&pair_model, &table, samples, rng)?;
    Ok(DadSolution { table, ranking })
}
