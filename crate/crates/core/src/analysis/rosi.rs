//! Expected utility as a function of the security budget.
//!
//! The curve reports, for each budget level, the best decision whose
//! combined control and premium spend fits the budget.  The full
//! ranking is solved once and filtered per budget; because every
//! decision is evaluated on the same sample stream, filtering is
//! output-equivalent to re-solving the restricted decision set.

use super::AnalysisError;
use crate::casestudy::CaseStudy;
use crate::solver::AttackPolicyTable;
use crate::stochastics::RngStream;

/// Best feasible decision at one budget level.
#[derive(Debug, Clone, PartialEq)]
pub struct RosiOutcome {
    pub best_label: String,
    pub expected_utility: f64,
    pub standard_error: f64,
    /// Controls plus premium for the chosen decision.
    pub security_spend_eur: f64,
}

/// One budget level; `outcome` is `None` when nothing is affordable.
#[derive(Debug, Clone, PartialEq)]
pub struct RosiPoint {
    pub budget_eur: f64,
    pub outcome: Option<RosiOutcome>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RosiCurve {
    pub points: Vec<RosiPoint>,
}

/// Solves the ranking once and reads the best affordable decision off
/// it at each budget level.
pub fn rosi_curve(
    study: &CaseStudy,
    table: &AttackPolicyTable,
    budgets_eur: &[f64],
    samples: usize,
    rng: &RngStream,
) -> Result<RosiCurve, AnalysisError> {
    if budgets_eur.is_empty() {
        return Err(AnalysisError::Config("need at least one budget level".into()));
    }
    if budgets_eur.iter().any(|b| !b.is_finite()) {
        return Err(AnalysisError::Config("budget levels must be finite".into()));
    }
    if budgets_eur.windows(2).any(|w| w[0] > w[1]) {
        return Err(AnalysisError::Config(
            "budget levels must be sorted in non-decreasing order".into(),
        ));
    }

    let ranking = study.solve_ranking(table, samples, rng)?;
    let points = budgets_eur
        .iter()
        .map(|&budget_eur| {
            let feasible = ranking.filtered(|entry| entry.fixed_cost <= budget_eur);
            let outcome = if feasible.is_empty() {
                None
            } else {
                let best = feasible.best();
                Some(RosiOutcome {
                    best_label: best.result.decision.clone(),
                    expected_utility: best.result.expected_utility,
                    standard_error: best.result.standard_error,
                    security_spend_eur: best.fixed_cost,
                })
            };
            RosiPoint { budget_eur, outcome }
        })
        .collect();
    Ok(RosiCurve { points })
}
