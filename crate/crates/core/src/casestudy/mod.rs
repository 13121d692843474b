//! A complete worked scenario: an SME choosing security controls and
//! insurance against fires, viruses and an adaptive DDoS attacker.
//!
//! The scenario wires concrete samplers into the generic solvers.  The
//! defender picks one of 40 control portfolios and one of 4 insurance
//! products; the attacker, who observes only the DDoS absorption tier,
//! picks how many attacks to run.  Solving proceeds in two stages:
//! first the attack distribution per tier, then the expected-utility
//! ranking of all 160 decision pairs under that distribution.
//!
//! Parameters are plain serialisable structs validated up front; the
//! samplers assume validated inputs.

mod attacker;
mod defender;
mod params;

pub use attacker::{AttackerHyperDraw, SmeAttacker};
pub use defender::{
    pair_label, parse_pair_label, ControlPortfolio, DdosTier, DecisionPair, DefenderSample,
    Impacts, InsurancePlan, SmeDefender,
};
pub use params::{AttackerParams, CaseStudyError, DefenderParams, SolverBudgets};

use crate::solver::{
    solve_attacker_distribution, solve_defender, AttackPolicyTable, DefenderRanking,
};
use crate::stochastics::RngStream;

/// Parameters for both sides plus the solve wiring.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CaseStudy {
    pub defender: DefenderParams,
    pub attacker: AttackerParams,
}

impl CaseStudy {
    pub fn new(defender: DefenderParams, attacker: AttackerParams) -> Result<Self, CaseStudyError> {
        let study = CaseStudy { defender, attacker };
        study.validate()?;
        Ok(study)
    }

    pub fn validate(&self) -> Result<(), CaseStudyError> {
        self.defender.validate()?;
        self.attacker.validate()
    }

    pub fn defender_model(&self) -> Result<SmeDefender, CaseStudyError> {
        SmeDefender::new(self.defender.clone())
    }

    pub fn attacker_model(&self) -> Result<SmeAttacker, CaseStudyError> {
        SmeAttacker::new(self.attacker.clone())
    }

    /// Estimates the attack distribution for every DDoS tier.
    pub fn solve_attack_table(
        &self,
        hyper_draws: usize,
        inner_samples: usize,
        rng: &RngStream,
    ) -> Result<AttackPolicyTable, CaseStudyError> {
        let model = self.attacker_model()?;
        let table = solve_attacker_distribution(
            &model,
            &DdosTier::ALL,
            hyper_draws,
            inner_samples,
            rng,
        )?;
        Ok(table)
    }

    /// Ranks all 160 decision pairs under a solved attack table.
    pub fn solve_ranking(
        &self,
        table: &AttackPolicyTable,
        samples: usize,
        rng: &RngStream,
    ) -> Result<DefenderRanking<DecisionPair>, CaseStudyError> {
        let model = self.defender_model()?;
        let ranking = solve_defender(&model, table, samples, rng)?;
        Ok(ranking)
    }
}
