//! Simulation of the attacker's best response under random preferences.

use rayon::prelude::*;

use super::{stream_tags, AttackPolicyTable, SolveError};
use crate::stochastics::RngStream;

// Sub-labels under a defence/draw path.
const HYPER: u64 = 0;
const INNER: u64 = 1;

/// The attacker's decision problem as the defender models it.
///
/// The attacker chooses an attack count from a finite set after observing
/// the defence.  The defender's uncertainty about the attacker is captured
/// by a hyper-draw: one realisation of the attacker's beliefs and risk
/// attitude.  Given a hyper-draw, `sample_payoff` simulates one campaign
/// outcome and `random_utility` maps it through that draw's utility.
pub trait AttackerModel: Sync {
    type Defence: Clone + Send + Sync;
    type Hyper: Send;

    /// Finite set of attack counts; must contain 0 (not attacking).
    fn attack_space(&self) -> Vec<u32>;

    /// Label under which a defence appears in the resulting table.
    fn defence_label(&self, defence: &Self::Defence) -> String;

    /// Draws one realisation of the attacker's beliefs and risk attitude.
    fn draw_hyper(&self, rng: &mut RngStream) -> Result<Self::Hyper, SolveError>;

    /// Simulates the attacker's net result for one campaign.
    fn sample_payoff(
        &self,
        attack: u32,
        defence: &Self::Defence,
        hyper: &Self::Hyper,
        rng: &mut RngStream,
    ) -> f64;

    /// The hyper-draw's utility of a net result.
    fn random_utility(&self, payoff: f64, hyper: &Self::Hyper) -> f64;
}

/// Estimates the probability of each attack count, per defence.
///
/// For every defence and each of `hyper_draws` hyper-realisations, the
/// expected utility of every attack count is estimated from
/// `inner_samples` simulated campaigns and the maximiser recorded; the
/// returned rows are the relative win frequencies.  Expected-utility ties
/// within a hyper-draw fall to the smaller attack count.
///
/// Within one hyper-draw all attack counts are evaluated from the same
/// inner sub-streams (common random numbers), so the comparison between
/// neighbouring counts is driven by the model, not by sampling noise.
pub fn solve_attacker_distribution<A: AttackerModel>(
    model: &A,
    defences: &[A::Defence],
    hyper_draws: usize,
    inner_samples: usize,
    rng: &RngStream,
) -> Result<AttackPolicyTable, SolveError> {
    if hyper_draws == 0 || inner_samples == 0 {
        return Err(SolveError::Config(
            "hyper-draw and inner sample counts must be positive".into(),
        ));
    }
    if defences.is_empty() {
        return Err(SolveError::Config("no defences to solve for".into()));
    }
    let mut space = model.attack_space();
    if space.is_empty() {
        return Err(SolveError::Config("attack space is empty".into()));
    }
    space.sort_unstable();
    space.dedup();
    if !space.contains(&0) {
        return Err(SolveError::Config(
            "attack space must contain 0 (not attacking)".into(),
        ));
    }

    let base = rng.substream(&[stream_tags::ATTACKER]);
    let mut rows = Vec::with_capacity(defences.len());
    for (d_idx, defence) in defences.iter().enumerate() {
        let label = model.defence_label(defence);
        if rows.iter().any(|(l, _)| l == &label) {
            return Err(SolveError::Config(format!("duplicate defence `{label}`")));
        }
        let winners: Vec<Result<usize, SolveError>> = (0..hyper_draws)
            .into_par_iter()
            .map(|i| {
                let path = [HYPER, d_idx as u64, i as u64];
                let hyper = model.draw_hyper(&mut base.substream(&path))?;
                let mut best_idx = 0usize;
                let mut best_utility = f64::NEG_INFINITY;
                for (a_idx, &attack) in space.iter().enumerate() {
                    let mut sum = 0.0;
                    for m in 0..inner_samples {
                        let path = [INNER, d_idx as u64, i as u64, m as u64];
                        let mut stream = base.substream(&path);
                        let payoff = model.sample_payoff(attack, defence, &hyper, &mut stream);
                        sum += model.random_utility(payoff, &hyper);
                    }
                    let mean = sum / inner_samples as f64;
                    if !mean.is_finite() {
                        return Err(SolveError::NonFiniteUtility {
                            defence: label.clone(),
                            attack,
                        });
                    }
                    if mean > best_utility {
                        best_utility = mean;
                        best_idx = a_idx;
                    }
                }
                Ok(best_idx)
            })
            .collect();

        let mut counts = vec![0usize; space.len()];
        for winner in winners {
            counts[winner?] += 1;
        }
        let row: Vec<f64> = counts
            .iter()
            .map(|&c| c as f64 / hyper_draws as f64)
            .collect();
        rows.push((label, row));
    }

    AttackPolicyTable::from_rows(space, rows, hyper_draws)
}
