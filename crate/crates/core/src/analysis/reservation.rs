//! Reservation price of an insurance contract.
//!
//! The reservation price is the largest premium at which the insured
//! decision is still weakly preferred to the same decision without the
//! contract.  Both decisions are evaluated on cached cost samples drawn
//! from the same streams the ranking solver uses, so the search is free
//! of Monte Carlo noise between candidate premiums: scaling the premium
//! shifts every cached cost sample deterministically and the indifference
//! point is found by bisection on the multiplier.
//!
//! The search assumes the premium enters the decision's sampled cost as
//! an additive constant, so a multiplier `x` shifts each cost sample by
//! `(x - 1)` times the baseline premium.

use super::AnalysisError;
use crate::casestudy::{CaseStudy, ControlPortfolio, InsurancePlan};
use crate::solver::{stream_tags, AttackPolicyTable, DefenderModel, SolveError};
use crate::stochastics::RngStream;

/// Same chunk layout as the expected-utility estimator, so the utility
/// at multiplier one reproduces the estimator's result bits.
const CHUNK: usize = 1024;

/// Bisection stops once the utilities of the insured and uninsured
/// decisions agree to this tolerance.
const TOLERANCE: f64 = 1e-4;

const MAX_BRACKET_DOUBLINGS: u32 = 40;
const MAX_BISECTIONS: u32 = 200;

#[derive(Debug, Clone, PartialEq)]
pub struct ReservationPrice {
    pub decision_label: String,
    pub alternative_label: String,
    pub baseline_premium_eur: f64,
    /// Premium multiplier at indifference; 1 when the contract is not
    /// worth its baseline premium.
    pub multiplier: f64,
    pub reservation_premium_eur: f64,
    pub preferred_at_baseline: bool,
    /// Utility of the insured decision minus the alternative at the
    /// returned multiplier.
    pub achieved_utility_gap: f64,
}

fn cached_costs<M: DefenderModel>(
    model: &M,
    decision: &M::Decision,
    table: &AttackPolicyTable,
    samples: usize,
    base: &RngStream,
) -> Result<Vec<f64>, AnalysisError> {
    let defence = model.defence(decision);
    let row = table
        .row(&defence)
        .ok_or(SolveError::MissingDefence { defence })?;
    let mut costs = Vec::with_capacity(samples);
    for j in 0..samples {
        let mut stream = base.substream(&[j as u64]);
        let cost = model.sample_cost(decision, row, &mut stream);
        if !cost.is_finite() {
            return Err(AnalysisError::Solve(SolveError::NonFiniteCost {
                decision: model.label(decision),
                sample: j,
                value: cost,
            }));
        }
        costs.push(cost);
    }
    Ok(costs)
}

fn expected_utility<M: DefenderModel>(model: &M, costs: &[f64], premium_shift: f64) -> f64 {
    let n = costs.len();
    let chunks = n.div_ceil(CHUNK);
    let mut sum = 0.0;
    for c in 0..chunks {
        let mut partial = 0.0;
        for cost in &costs[c * CHUNK..((c + 1) * CHUNK).min(n)] {
            partial += model.utility(model.baseline_cost() + cost + premium_shift);
        }
        sum += partial;
    }
    sum / n as f64
}

/// Finds the premium multiplier at which `decision` and `alternative`
/// have equal expected utility.
///
/// `baseline_premium_eur` must be the premium already included in the
/// decision's sampled cost; candidate multipliers `x` are evaluated by
/// shifting each cached cost sample by `(x - 1)` times that premium.
pub fn reservation_price<M: DefenderModel>(
    model: &M,
    decision: &M::Decision,
    alternative: &M::Decision,
    baseline_premium_eur: f64,
    table: &AttackPolicyTable,
    samples: usize,
    rng: &RngStream,
) -> Result<ReservationPrice, AnalysisError> {
    if !(baseline_premium_eur > 0.0) || !baseline_premium_eur.is_finite() {
        return Err(AnalysisError::Config(format!(
            "baseline premium must be positive and finite, got {baseline_premium_eur}"
        )));
    }
    if samples == 0 {
        return Err(AnalysisError::Config("sample count must be positive".into()));
    }

    let base = rng.substream(&[stream_tags::DEFENDER]);
    let insured = cached_costs(model, decision, table, samples, &base)?;
    let uninsured = cached_costs(model, alternative, table, samples, &base)?;

    let eu_alternative = expected_utility(model, &uninsured, 0.0);
    let eu = |multiplier: f64| {
        expected_utility(model, &insured, (multiplier - 1.0) * baseline_premium_eur)
    };

    let decision_label = model.label(decision);
    let alternative_label = model.label(alternative);
    let at_baseline = eu(1.0);
    if at_baseline < eu_alternative {
        return Ok(ReservationPrice {
            decision_label,
            alternative_label,
            baseline_premium_eur,
            multiplier: 1.0,
            reservation_premium_eur: baseline_premium_eur,
            preferred_at_baseline: false,
            achieved_utility_gap: at_baseline - eu_alternative,
        });
    }

    let mut lo = 1.0;
    let mut hi = 2.0;
    let mut doublings = 0;
    while eu(hi) >= eu_alternative {
        lo = hi;
        hi *= 2.0;
        doublings += 1;
        if doublings > MAX_BRACKET_DOUBLINGS {
            return Err(AnalysisError::Config(
                "no finite premium removes the preference for the contract".into(),
            ));
        }
    }

    let mut mid = hi;
    let mut gap = eu(mid) - eu_alternative;
    for _ in 0..MAX_BISECTIONS {
        mid = 0.5 * (lo + hi);
        gap = eu(mid) - eu_alternative;
        if gap.abs() < TOLERANCE {
            break;
        }
        if gap > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    Ok(ReservationPrice {
        decision_label,
        alternative_label,
        baseline_premium_eur,
        multiplier: mid,
        reservation_premium_eur: mid * baseline_premium_eur,
        preferred_at_baseline: true,
        achieved_utility_gap: gap,
    })
}

/// Reservation price of an insurance product for one control portfolio,
/// against the same portfolio without insurance.
pub fn insurance_reservation_price(
    study: &CaseStudy,
    table: &AttackPolicyTable,
    portfolio: &ControlPortfolio,
    insurance: InsurancePlan,
    samples: usize,
    rng: &RngStream,
) -> Result<ReservationPrice, AnalysisError> {
    if insurance == InsurancePlan::None {
        return Err(AnalysisError::Config(
            "the uninsured decision carries no premium to price".into(),
        ));
    }
    let model = study.defender_model()?;
    let premium = model.insurance_premium(insurance, portfolio);
    reservation_price(
        &model,
        &(portfolio.clone(), insurance),
        &(portfolio.clone(), InsurancePlan::None),
        premium,
        table,
        samples,
        rng,
    )
}
