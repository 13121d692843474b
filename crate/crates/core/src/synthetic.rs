//! A small service-hardening scenario with closed-form expectations.
//!
//! A service operator picks a preventive hardening level, an opportunistic
//! attacker decides whether to strike after observing it, and the operator's
//! reactive recovery level scales whatever loss gets through.  Every
//! expectation has a closed form: the attacker strikes exactly when its
//! drawn propensity exceeds the hardening deterrence, losses are
//! exponential, and utility is linear in cost.  That makes the scenario a
//! useful end-to-end exercise for the two-stage solver, with results that
//! can be checked by hand.

use rand::RngExt;

use crate::solver::{AttackerModel, SolveError, TwoStageDefenderModel};
use crate::stochastics::{sample_index, DistSpec, RngStream};

/// Preventive hardening level, observable by the attacker.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hardening {
    Off,
    Basic,
    Full,
}

impl Hardening {
    pub const ALL: [Hardening; 3] = [Hardening::Off, Hardening::Basic, Hardening::Full];

    pub fn label(self) -> &'static str {
        match self {
            Hardening::Off => "none",
            Hardening::Basic => "basic",
            Hardening::Full => "full",
        }
    }

    fn index(self) -> usize {
        match self {
            Hardening::Off => 0,
            Hardening::Basic => 1,
            Hardening::Full => 2,
        }
    }
}

/// Reactive recovery level, invisible to the attacker.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Recovery {
    Standard,
    Rapid,
}

impl Recovery {
    pub const ALL: [Recovery; 2] = [Recovery::Standard, Recovery::Rapid];

    pub fn label(self) -> &'static str {
        match self {
            Recovery::Standard => "standard",
            Recovery::Rapid => "rapid",
        }
    }

    fn index(self) -> usize {
        match self {
            Recovery::Standard => 0,
            Recovery::Rapid => 1,
        }
    }
}

/// The scenario's parameters, indexed by [`Hardening`] and [`Recovery`].
///
/// The attacker draws a propensity uniform on [0, 1] and strikes when it
/// exceeds the deterrence of the observed hardening level, so the attack
/// probability of level `p` is exactly `1 - deterrence[p]`.  A strike
/// costs the operator an exponential loss with mean `mean_loss_eur`,
/// scaled by the recovery level's retained share.  With linear utility
/// `1 - cost / worst_cost_eur`, the expected utility of a pair `(p, r)`
/// is
///
/// `1 - (hardening_cost[p] + recovery_cost[r]
///       + (1 - deterrence[p]) * retained_share[r] * mean_loss_eur)
///      / worst_cost_eur`.
#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticScenario {
    pub deterrence: [f64; 3],
    pub hardening_cost_eur: [f64; 3],
    pub recovery_cost_eur: [f64; 2],
    /// Fraction of a loss that each recovery level lets through.
    pub retained_share: [f64; 2],
    pub mean_loss_eur: f64,
    /// Cost at which linear utility reaches zero.
    pub worst_cost_eur: f64,
}

impl Default for SyntheticScenario {
    fn default() -> Self {
        SyntheticScenario {
            deterrence: [0.0, 0.45, 0.8],
            hardening_cost_eur: [0.0, 600.0, 1_400.0],
            recovery_cost_eur: [0.0, 350.0],
            retained_share: [1.0, 0.5],
            mean_loss_eur: 3_000.0,
            worst_cost_eur: 20_000.0,
        }
    }
}

impl SyntheticScenario {
    /// Probability that the attacker strikes the given hardening level.
    pub fn attack_probability(&self, p: Hardening) -> f64 {
        1.0 - self.deterrence[p.index()]
    }

    /// Closed-form expected annual cost of a pair.
    pub fn expected_cost(&self, p: Hardening, r: Recovery) -> f64 {
        self.hardening_cost_eur[p.index()]
            + self.recovery_cost_eur[r.index()]
            + self.attack_probability(p) * self.retained_share[r.index()] * self.mean_loss_eur
    }

    /// Closed-form expected utility of a pair.
    pub fn expected_utility(&self, p: Hardening, r: Recovery) -> f64 {
        1.0 - self.expected_cost(p, r) / self.worst_cost_eur
    }

    fn loss_dist(&self) -> DistSpec {
        DistSpec::Gamma {
            shape: 1.0,
            rate: 1.0 / self.mean_loss_eur,
        }
    }
}

impl TwoStageDefenderModel for SyntheticScenario {
    type Preventive = Hardening;
    type Reactive = Recovery;

    fn preventive_space(&self) -> Vec<Hardening> {
        Hardening::ALL.to_vec()
    }

    fn reactive_space(&self) -> Vec<Recovery> {
        Recovery::ALL.to_vec()
    }

    fn label(&self, p: &Hardening, r: &Recovery) -> String {
        format!("{}+{}", p.label(), r.label())
    }

    fn defence_label(&self, p: &Hardening) -> String {
        p.label().to_string()
    }

    fn fixed_cost(&self, p: &Hardening, r: &Recovery) -> f64 {
        self.hardening_cost_eur[p.index()] + self.recovery_cost_eur[r.index()]
    }

    fn sample_cost(
        &self,
        p: &Hardening,
        r: &Recovery,
        attack_row: &[f64],
        rng: &mut RngStream,
    ) -> f64 {
        let mut cost = self.fixed_cost(p, r);
        let struck = sample_index(attack_row, rng) == 1;
        if struck {
            let loss = self.loss_dist().draw(rng).expect("mean loss must be positive");
            cost += self.retained_share[r.index()] * loss;
        }
        cost
    }

    fn utility(&self, cost: f64) -> f64 {
        1.0 - cost / self.worst_cost_eur
    }
}

impl AttackerModel for SyntheticScenario {
    type Defence = Hardening;
    type Hyper = f64;

    fn attack_space(&self) -> Vec<u32> {
        vec![0, 1]
    }

    fn defence_label(&self, defence: &Hardening) -> String {
        defence.label().to_string()
    }

    /// The hyper-draw is the attacker's propensity to strike.
    fn draw_hyper(&self, rng: &mut RngStream) -> Result<f64, SolveError> {
        Ok(rng.random())
    }

    fn sample_payoff(
        &self,
        attack: u32,
        defence: &Hardening,
        hyper: &f64,
        _rng: &mut RngStream,
    ) -> f64 {
        if attack == 0 {
            0.0
        } else {
            hyper - self.deterrence[defence.index()]
        }
    }

    fn random_utility(&self, payoff: f64, _hyper: &f64) -> f64 {
        payoff
    }
}
