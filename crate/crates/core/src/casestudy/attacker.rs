//! Attacker side of the bundled SME model.
//!
//! The defender does not know the attacker's economics, so every solve
//! first draws a hyper-parameter vector describing one plausible attacker
//! (campaign strength, loss conversion, detection exposure, risk
//! appetite), then simulates that attacker's campaign returns.  Feeding
//! these samplers to the attack-distribution solver yields the
//! probability of each attack count conditional on the visible defence,
//! which is the DDoS absorption tier alone.
//!
//! Within one payoff sample the draw order is fixed: loss rate, then one
//! (peak, outage) pair per attack, then detection, then detection cost.
//! The loss rate comes first so that replaying a stream across candidate
//! attack counts reuses it, which couples the counts under comparison.

use rand_distr::{Distribution, Gamma};

use super::defender::DdosTier;
use super::params::{AttackerParams, CaseStudyError};
use crate::solver::{AttackerModel, SolveError};
use crate::stochastics::{DistSpec, RngStream};

/// One sampled belief about the attacker.
#[derive(Debug, Clone, Copy)]
pub struct AttackerHyperDraw {
    /// Shape of the per-attack outage gamma.
    pub outage_shape: f64,
    /// Rate of the per-attack outage gamma, per hour.
    pub outage_rate_per_hour: f64,
    /// Shape of the per-attack traffic-peak gamma.
    pub peak_shape: f64,
    /// Rate of the per-attack traffic-peak gamma, per gbps.
    pub peak_rate_per_gbps: f64,
    /// Lower endpoint of the market-loss rate draw.
    pub loss_rate_lo: f64,
    /// Upper endpoint of the market-loss rate draw.
    pub loss_rate_hi: f64,
    /// Probability that a single attack gets the attacker identified.
    pub detection_prob: f64,
    /// Exponent of the attacker's power utility; larger is more risk
    /// prone.
    pub risk_exponent: f64,
}

/// The attacker model: hyper draws, campaign simulation and utility.
#[derive(Debug, Clone)]
pub struct SmeAttacker {
    params: AttackerParams,
}

impl SmeAttacker {
    pub fn new(params: AttackerParams) -> Result<Self, CaseStudyError> {
        params.validate()?;
        Ok(SmeAttacker { params })
    }

    pub fn params(&self) -> &AttackerParams {
        &self.params
    }

    /// Draws one hyper-parameter vector, field by field in declaration
    /// order.
    pub fn draw_hyper(&self, rng: &mut RngStream) -> AttackerHyperDraw {
        let p = &self.params;
        let uniform = |lo: f64, hi: f64, rng: &mut RngStream| {
            DistSpec::Uniform { lo, hi }
                .draw(rng)
                .expect("parameters validated at construction")
        };
        AttackerHyperDraw {
            outage_shape: uniform(p.outage_shape_lo, p.outage_shape_hi, rng),
            outage_rate_per_hour: uniform(p.outage_rate_lo_per_hour, p.outage_rate_hi_per_hour, rng),
            peak_shape: uniform(p.peak_shape_lo, p.peak_shape_hi, rng),
            peak_rate_per_gbps: uniform(p.peak_rate_lo_per_gbps, p.peak_rate_hi_per_gbps, rng),
            loss_rate_lo: uniform(
                p.loss_rate_min_lo_share_points_per_hour,
                p.loss_rate_min_hi_share_points_per_hour,
                rng,
            ),
            loss_rate_hi: uniform(
                p.loss_rate_max_lo_share_points_per_hour,
                p.loss_rate_max_hi_share_points_per_hour,
                rng,
            ),
            detection_prob: DistSpec::Beta {
                a: p.detection_prob_alpha,
                b: p.detection_prob_beta,
            }
            .draw(rng)
            .expect("parameters validated at construction"),
            risk_exponent: uniform(p.risk_exponent_lo, p.risk_exponent_hi, rng),
        }
    }

    /// Simulates a campaign of `attacks` attempts against a defence that
    /// absorbs `absorption_gbps`, returning total outage hours and the
    /// defender's market loss in euros.
    pub fn sample_campaign(
        &self,
        attacks: u32,
        absorption_gbps: f64,
        hyper: &AttackerHyperDraw,
        rng: &mut RngStream,
    ) -> (f64, f64) {
        if attacks == 0 {
            return (0.0, 0.0);
        }
        let p = &self.params;
        let loss_rate = DistSpec::Uniform {
            lo: hyper.loss_rate_lo,
            hi: hyper.loss_rate_hi,
        }
        .draw(rng)
        .expect("hyper draw within validated ranges");
        let peak = Gamma::new(hyper.peak_shape, 1.0 / hyper.peak_rate_per_gbps)
            .expect("hyper draw within validated ranges");
        let outage = Gamma::new(hyper.outage_shape, 1.0 / hyper.outage_rate_per_hour)
            .expect("hyper draw within validated ranges");
        let mut hours = 0.0;
        for _ in 0..attacks {
            if peak.sample(rng) > absorption_gbps {
                hours += outage.sample(rng);
            }
        }
        let market = (p.eur_per_share_point * hours * loss_rate).min(p.market_loss_cap_eur);
        (hours, market)
    }

    /// Draws whether the campaign gets the attacker identified and the
    /// cost when it does.
    pub fn sample_detection_cost(
        &self,
        attacks: u32,
        hyper: &AttackerHyperDraw,
        rng: &mut RngStream,
    ) -> (bool, f64) {
        if attacks == 0 {
            return (false, 0.0);
        }
        let hits = DistSpec::Binomial {
            n: u64::from(attacks),
            p: hyper.detection_prob,
        }
        .draw(rng)
        .expect("hyper draw within validated ranges");
        if hits < 1.0 {
            return (false, 0.0);
        }
        let p = &self.params;
        let cost = loop {
            let draw = DistSpec::Normal {
                mean: p.detection_cost_mean_eur,
                sd: p.detection_cost_sd_eur,
            }
            .draw(rng)
            .expect("parameters validated at construction");
            if draw >= 0.0 {
                break draw;
            }
        };
        (true, cost)
    }

    /// Net result of a campaign: earnings minus detection cost minus the
    /// spend on the attacks themselves.
    pub fn attack_result(&self, earnings_eur: f64, detection_cost_eur: f64, attacks: u32) -> f64 {
        earnings_eur - detection_cost_eur - self.params.attack_unit_cost_eur * f64::from(attacks)
    }

    /// Power utility of a net result, normalised to [0, 1] between the
    /// configured floor and ceiling.
    pub fn utility(&self, result_eur: f64, risk_exponent: f64) -> f64 {
        let p = &self.params;
        let span = p.attack_result_ceiling_eur - p.attack_result_floor_eur;
        ((result_eur - p.attack_result_floor_eur) / span)
            .clamp(0.0, 1.0)
            .powf(risk_exponent)
    }
}

impl AttackerModel for SmeAttacker {
    type Defence = DdosTier;
    type Hyper = AttackerHyperDraw;

    fn attack_space(&self) -> Vec<u32> {
        (0..=self.params.max_attacks).collect()
    }

    fn defence_label(&self, defence: &DdosTier) -> String {
        defence.label().to_string()
    }

    fn draw_hyper(&self, rng: &mut RngStream) -> Result<AttackerHyperDraw, SolveError> {
        Ok(SmeAttacker::draw_hyper(self, rng))
    }

    fn sample_payoff(
        &self,
        attack: u32,
        defence: &DdosTier,
        hyper: &AttackerHyperDraw,
        rng: &mut RngStream,
    ) -> f64 {
        if attack == 0 {
            return 0.0;
        }
        let (_, earnings) = self.sample_campaign(attack, defence.absorption_gbps(), hyper, rng);
        let (_, detection_cost) = self.sample_detection_cost(attack, hyper, rng);
        self.attack_result(earnings, detection_cost, attack)
    }

    fn random_utility(&self, payoff: f64, hyper: &AttackerHyperDraw) -> f64 {
        self.utility(payoff, hyper.risk_exponent)
    }
}
