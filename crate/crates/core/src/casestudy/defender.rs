//! Defender side of the bundled SME model.
//!
//! Decisions are (control portfolio, insurance product) pairs.  A cost
//! sample walks the incident chain: how many attacks land, whether a fire
//! breaks out and for how long, how many computers catch a virus, how
//! long DDoS outages last, and what all of that costs after insurance.
//!
//! Each incident node draws from its own derived substream, so two
//! decisions evaluated on the same sample stream see the same incidents
//! wherever their protections coincide.  The ranking then turns on real
//! cost differences rather than sampling noise.

use std::fmt;
use std::str::FromStr;

use rand_distr::{Distribution, Gamma};

use super::params::{CaseStudyError, DefenderParams};
use crate::solver::DefenderModel;
use crate::stochastics::{sample_index, DistSpec, RngStream};

const ATTACK_COUNT_NODE: u64 = 0;
const FIRE_NODE: u64 = 1;
const VIRUS_NODE: u64 = 2;
const DDOS_NODE: u64 = 3;
const IMPACT_NODE: u64 = 4;

/// Contracted DDoS absorption capacity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DdosTier {
    None,
    Gbps2,
    Gbps5,
    Gbps10,
    Tbps1,
}

impl DdosTier {
    pub const ALL: [DdosTier; 5] = [
        DdosTier::None,
        DdosTier::Gbps2,
        DdosTier::Gbps5,
        DdosTier::Gbps10,
        DdosTier::Tbps1,
    ];

    /// Peak traffic the service absorbs before an outage can start.
    pub fn absorption_gbps(self) -> f64 {
        match self {
            DdosTier::None => 0.0,
            DdosTier::Gbps2 => 2.0,
            DdosTier::Gbps5 => 5.0,
            DdosTier::Gbps10 => 10.0,
            DdosTier::Tbps1 => 1_000.0,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            DdosTier::None => "none",
            DdosTier::Gbps2 => "2gbps",
            DdosTier::Gbps5 => "5gbps",
            DdosTier::Gbps10 => "10gbps",
            DdosTier::Tbps1 => "1tbps",
        }
    }
}

impl fmt::Display for DdosTier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for DdosTier {
    type Err = CaseStudyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DdosTier::ALL
            .into_iter()
            .find(|t| t.label() == s)
            .ok_or_else(|| CaseStudyError::DecisionLabel {
                label: s.to_string(),
                problem: "expected one of none, 2gbps, 5gbps, 10gbps, 1tbps".to_string(),
            })
    }
}

/// One of the 40 combinations of security controls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ControlPortfolio {
    pub anti_fire: bool,
    pub firewall: bool,
    pub procedures: bool,
    pub ddos: DdosTier,
}

impl ControlPortfolio {
    pub const BARE: ControlPortfolio = ControlPortfolio {
        anti_fire: false,
        firewall: false,
        procedures: false,
        ddos: DdosTier::None,
    };

    /// The full decision space, in a fixed enumeration order.
    pub fn all() -> Vec<ControlPortfolio> {
        let mut out = Vec::with_capacity(40);
        for anti_fire in [false, true] {
            for firewall in [false, true] {
                for procedures in [false, true] {
                    for ddos in DdosTier::ALL {
                        out.push(ControlPortfolio {
                            anti_fire,
                            firewall,
                            procedures,
                            ddos,
                        });
                    }
                }
            }
        }
        out
    }

    pub fn label(&self) -> String {
        let mut parts = Vec::new();
        if self.anti_fire {
            parts.push("anti-fire");
        }
        if self.firewall {
            parts.push("firewall");
        }
        if self.procedures {
            parts.push("procedures");
        }
        if self.ddos != DdosTier::None {
            parts.push(self.ddos.label());
        }
        if parts.is_empty() {
            "no-controls".to_string()
        } else {
            parts.join("+")
        }
    }
}

impl fmt::Display for ControlPortfolio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl FromStr for ControlPortfolio {
    type Err = CaseStudyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |problem: String| CaseStudyError::DecisionLabel {
            label: s.to_string(),
            problem,
        };
        if s == "no-controls" {
            return Ok(ControlPortfolio::BARE);
        }
        let mut portfolio = ControlPortfolio::BARE;
        for part in s.split('+') {
            match part {
                "anti-fire" if !portfolio.anti_fire => portfolio.anti_fire = true,
                "firewall" if !portfolio.firewall => portfolio.firewall = true,
                "procedures" if !portfolio.procedures => portfolio.procedures = true,
                tier if DdosTier::from_str(tier).is_ok_and(|t| t != DdosTier::None) => {
                    if portfolio.ddos != DdosTier::None {
                        return Err(bad(format!("duplicate ddos tier `{part}`")));
                    }
                    portfolio.ddos = DdosTier::from_str(tier).unwrap();
                }
                _ => {
                    return Err(bad(format!(
                        "unknown or repeated control `{part}`; expected \
                         anti-fire, firewall, procedures, or a ddos tier"
                    )))
                }
            }
        }
        Ok(portfolio)
    }
}

/// Insurance product held alongside the controls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InsurancePlan {
    None,
    Traditional,
    Cyber,
    Comprehensive,
}

impl InsurancePlan {
    pub const ALL: [InsurancePlan; 4] = [
        InsurancePlan::None,
        InsurancePlan::Traditional,
        InsurancePlan::Cyber,
        InsurancePlan::Comprehensive,
    ];

    pub fn label(self) -> &'static str {
        match self {
            InsurancePlan::None => "none",
            InsurancePlan::Traditional => "traditional",
            InsurancePlan::Cyber => "cyber",
            InsurancePlan::Comprehensive => "comprehensive",
        }
    }
}

impl fmt::Display for InsurancePlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for InsurancePlan {
    type Err = CaseStudyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        InsurancePlan::ALL
            .into_iter()
            .find(|p| p.label() == s)
            .ok_or_else(|| CaseStudyError::DecisionLabel {
                label: s.to_string(),
                problem: "expected one of none, traditional, cyber, comprehensive".to_string(),
            })
    }
}

/// A (portfolio, insurance) decision.
pub type DecisionPair = (ControlPortfolio, InsurancePlan);

/// Joint label of a decision pair, unique over the 160 pairs.
pub fn pair_label(portfolio: &ControlPortfolio, insurance: InsurancePlan) -> String {
    format!("{} | {}", portfolio.label(), insurance.label())
}

/// Parses the output of [`pair_label`].
pub fn parse_pair_label(s: &str) -> Result<DecisionPair, CaseStudyError> {
    let (left, right) = s.split_once(" | ").ok_or_else(|| CaseStudyError::DecisionLabel {
        label: s.to_string(),
        problem: "expected `<portfolio> | <insurance>`".to_string(),
    })?;
    Ok((left.parse()?, right.parse()?))
}

/// Monetary impacts of one sampled year, before control spend and
/// insurance accounting.
#[derive(Debug, Clone, Copy, Default)]
pub struct Impacts {
    pub facility_loss_eur: f64,
    pub fire_computer_loss_eur: f64,
    pub virus_computer_loss_eur: f64,
    pub non_insurable_loss_eur: f64,
    pub market_loss_eur: f64,
}

/// One fully accounted sampled year.
#[derive(Debug, Clone, Copy)]
pub struct DefenderSample {
    pub fires: u32,
    pub fire_outage_minutes: f64,
    pub virus_infections: u64,
    pub attacks: u32,
    pub ddos_outage_hours: f64,
    pub facility_loss_eur: f64,
    pub fire_computer_loss_eur: f64,
    pub virus_computer_loss_eur: f64,
    pub non_insurable_loss_eur: f64,
    pub market_loss_eur: f64,
    pub control_cost_eur: f64,
    pub premium_eur: f64,
    pub coverage_eur: f64,
    pub total_cost_eur: f64,
}

impl DefenderSample {
    /// Losses the traditional and cyber products can reimburse.
    pub fn insurable_computer_loss_eur(&self) -> f64 {
        self.fire_computer_loss_eur + self.virus_computer_loss_eur
    }
}

/// The defender model: samplers, cost accounting, and utility.
#[derive(Debug, Clone)]
pub struct SmeDefender {
    params: DefenderParams,
}

impl SmeDefender {
    pub fn new(params: DefenderParams) -> Result<Self, CaseStudyError> {
        params.validate()?;
        Ok(SmeDefender { params })
    }

    pub fn params(&self) -> &DefenderParams {
        &self.params
    }

    /// Annual cost of the selected controls.
    pub fn portfolio_cost(&self, s: &ControlPortfolio) -> f64 {
        let p = &self.params;
        let mut cost = 0.0;
        if s.anti_fire {
            cost += p.control_cost_anti_fire_eur;
        }
        if s.firewall {
            cost += p.control_cost_firewall_eur;
        }
        if s.procedures {
            cost += p.control_cost_procedures_eur;
        }
        cost += match s.ddos {
            DdosTier::None => 0.0,
            DdosTier::Gbps2 => p.control_cost_ddos_2gbps_eur,
            DdosTier::Gbps5 => p.control_cost_ddos_5gbps_eur,
            DdosTier::Gbps10 => p.control_cost_ddos_10gbps_eur,
            DdosTier::Tbps1 => p.control_cost_ddos_1tbps_eur,
        };
        cost
    }

    /// Annual premium of a product given the portfolio.  Each product
    /// part charges its most favourable applicable column, and the
    /// comprehensive product is priced as both parts minus a bundle
    /// discount.
    pub fn insurance_premium(&self, i: InsurancePlan, s: &ControlPortfolio) -> f64 {
        let p = &self.params;
        let traditional = if s.anti_fire {
            p.premium_traditional_anti_fire_eur
        } else {
            p.premium_traditional_base_eur
        };
        let cyber = {
            let mut best = p.premium_cyber_base_eur;
            if s.firewall || s.ddos != DdosTier::None {
                best = best.min(p.premium_cyber_firewall_or_ddos_eur);
            }
            if s.procedures {
                best = best.min(p.premium_cyber_procedures_eur);
            }
            best
        };
        let raw = match i {
            InsurancePlan::None => 0.0,
            InsurancePlan::Traditional => traditional,
            InsurancePlan::Cyber => cyber,
            InsurancePlan::Comprehensive => {
                traditional + cyber - p.premium_comprehensive_discount_eur
            }
        };
        raw * p.premium_scale
    }

    /// Draws the annual fire count and outage duration in minutes.
    pub fn sample_fire(&self, s: &ControlPortfolio, rng: &mut RngStream) -> (u32, f64) {
        let fires = self
            .params
            .fire_count_dist()
            .draw(rng)
            .expect("parameters validated at construction") as u32;
        if fires == 0 {
            return (0, 0.0);
        }
        let duration = self
            .params
            .fire_duration_dist(s.anti_fire)
            .draw(rng)
            .expect("parameters validated at construction");
        (fires, duration)
    }

    /// Draws the annual number of infected computers.
    pub fn sample_virus_count(&self, s: &ControlPortfolio, rng: &mut RngStream) -> u64 {
        let p = &self.params;
        let q = match (s.firewall, s.procedures) {
            (true, true) => p.virus_q_firewall_and_procedures,
            (true, false) => p.virus_q_firewall_only,
            (false, true) => p.virus_q_procedures_only,
            (false, false) => p.virus_q_neither,
        };
        DistSpec::Binomial {
            n: p.computer_count,
            p: q,
        }
        .draw(rng)
        .expect("parameters validated at construction") as u64
    }

    /// Total DDoS outage in hours across `attacks` attempts.  An attempt
    /// only causes an outage when its traffic peak exceeds the absorption
    /// capacity of the contracted tier.
    pub fn sample_ddos_outage(&self, attacks: u32, s: &ControlPortfolio, rng: &mut RngStream) -> f64 {
        if attacks == 0 {
            return 0.0;
        }
        let p = &self.params;
        let peak = Gamma::new(p.ddos_peak_shape, 1.0 / p.ddos_peak_rate_per_gbps)
            .expect("parameters validated at construction");
        let outage = Gamma::new(p.ddos_outage_shape, 1.0 / p.ddos_outage_rate_per_hour)
            .expect("parameters validated at construction");
        let absorption = s.ddos.absorption_gbps();
        let mut hours = 0.0;
        for _ in 0..attacks {
            if peak.sample(rng) > absorption {
                hours += outage.sample(rng);
            }
        }
        hours
    }

    /// Turns incident magnitudes into euro losses.
    pub fn compute_impacts(
        &self,
        fire_outage_minutes: f64,
        virus_infections: u64,
        ddos_outage_hours: f64,
        rng: &mut RngStream,
    ) -> Impacts {
        let p = &self.params;
        let burnt = (fire_outage_minutes / p.fire_total_loss_minutes).min(1.0);
        let v = virus_infections as f64;

        let productivity_fraction = DistSpec::Uniform {
            lo: 0.0,
            hi: p.virus_productivity_fraction_hi,
        }
        .draw(rng)
        .expect("parameters validated at construction");
        let loss_rate = DistSpec::Uniform {
            lo: p.loss_rate_lo_share_points_per_hour,
            hi: p.loss_rate_hi_share_points_per_hour,
        }
        .draw(rng)
        .expect("parameters validated at construction");

        Impacts {
            facility_loss_eur: p.facility_value_eur * burnt,
            fire_computer_loss_eur: p.computer_fire_value_eur * burnt,
            virus_computer_loss_eur: p.virus_repair_cost_eur * v,
            non_insurable_loss_eur: p.virus_productivity_value_eur * v * productivity_fraction,
            market_loss_eur: (p.eur_per_share_point * ddos_outage_hours * loss_rate)
                .min(p.market_loss_cap_eur),
        }
    }

    /// Reimbursement for a product given the insured loss components.
    pub fn insurance_coverage(
        &self,
        i: InsurancePlan,
        facility_loss_eur: f64,
        fire_computer_loss_eur: f64,
        virus_computer_loss_eur: f64,
    ) -> f64 {
        let cf = self.params.coverage_fraction;
        match i {
            InsurancePlan::None => 0.0,
            InsurancePlan::Traditional => cf * (facility_loss_eur + fire_computer_loss_eur),
            InsurancePlan::Cyber => cf * virus_computer_loss_eur,
            InsurancePlan::Comprehensive => {
                cf * (facility_loss_eur + fire_computer_loss_eur + virus_computer_loss_eur)
            }
        }
    }

    /// Constant-risk-averse utility of an annual cost, clamped to [0, 1].
    pub fn utility(&self, cost_eur: f64) -> f64 {
        let e = std::f64::consts::E;
        (((1.0 - cost_eur / self.params.utility_cost_scale_eur).exp() - 1.0) / (e - 1.0))
            .clamp(0.0, 1.0)
    }

    /// Draws one fully accounted year for a decision pair.
    ///
    /// Incident nodes use substreams derived from fixed labels, not the
    /// raw stream, so decisions sharing a sample stream see coupled
    /// incidents.
    pub fn sample_year(
        &self,
        s: &ControlPortfolio,
        i: InsurancePlan,
        attack_row: &[f64],
        rng: &RngStream,
    ) -> DefenderSample {
        let attacks = sample_index(attack_row, &mut rng.substream(&[ATTACK_COUNT_NODE])) as u32;
        let (fires, fire_outage_minutes) = self.sample_fire(s, &mut rng.substream(&[FIRE_NODE]));
        let virus_infections = self.sample_virus_count(s, &mut rng.substream(&[VIRUS_NODE]));
        let ddos_outage_hours =
            self.sample_ddos_outage(attacks, s, &mut rng.substream(&[DDOS_NODE]));
        let impacts = self.compute_impacts(
            fire_outage_minutes,
            virus_infections,
            ddos_outage_hours,
            &mut rng.substream(&[IMPACT_NODE]),
        );

        let control_cost_eur = self.portfolio_cost(s);
        let premium_eur = self.insurance_premium(i, s);
        let coverage_eur = self.insurance_coverage(
            i,
            impacts.facility_loss_eur,
            impacts.fire_computer_loss_eur,
            impacts.virus_computer_loss_eur,
        );
        let total_cost_eur = impacts.market_loss_eur
            + impacts.facility_loss_eur
            + (impacts.fire_computer_loss_eur + impacts.virus_computer_loss_eur)
            + impacts.non_insurable_loss_eur
            + control_cost_eur
            + premium_eur
            - coverage_eur;

        DefenderSample {
            fires,
            fire_outage_minutes,
            virus_infections,
            attacks,
            ddos_outage_hours,
            facility_loss_eur: impacts.facility_loss_eur,
            fire_computer_loss_eur: impacts.fire_computer_loss_eur,
            virus_computer_loss_eur: impacts.virus_computer_loss_eur,
            non_insurable_loss_eur: impacts.non_insurable_loss_eur,
            market_loss_eur: impacts.market_loss_eur,
            control_cost_eur,
            premium_eur,
            coverage_eur,
            total_cost_eur,
        }
    }
}

impl DefenderModel for SmeDefender {
    type Decision = DecisionPair;

    fn decisions(&self) -> Vec<DecisionPair> {
        let mut out = Vec::with_capacity(160);
        for portfolio in ControlPortfolio::all() {
            for insurance in InsurancePlan::ALL {
                out.push((portfolio, insurance));
            }
        }
        out
    }

    fn label(&self, d: &DecisionPair) -> String {
        pair_label(&d.0, d.1)
    }

    fn defence(&self, d: &DecisionPair) -> String {
        d.0.ddos.label().to_string()
    }

    fn fixed_cost(&self, d: &DecisionPair) -> f64 {
        self.portfolio_cost(&d.0) + self.insurance_premium(d.1, &d.0)
    }

    fn sample_cost(&self, d: &DecisionPair, attack_row: &[f64], rng: &mut RngStream) -> f64 {
        self.sample_year(&d.0, d.1, attack_row, rng).total_cost_eur
    }

    fn utility(&self, cost: f64) -> f64 {
        SmeDefender::utility(self, cost)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn model() -> SmeDefender {
        SmeDefender::new(DefenderParams::default()).unwrap()
    }

    fn portfolio(anti_fire: bool, firewall: bool, procedures: bool, ddos: DdosTier) -> ControlPortfolio {
        ControlPortfolio {
            anti_fire,
            firewall,
            procedures,
            ddos,
        }
    }

    #[test]
    fn the_portfolio_space_has_forty_members() {
        let all = ControlPortfolio::all();
        assert_eq!(all.len(), 40);
        let labels: std::collections::HashSet<String> =
            all.iter().map(|p| p.label()).collect();
        assert_eq!(labels.len(), 40);
    }

    #[test]
    fn portfolio_costs_add_up() {
        let m = model();
        assert_eq!(m.portfolio_cost(&ControlPortfolio::BARE), 0.0);
        assert_eq!(
            m.portfolio_cost(&portfolio(true, true, false, DdosTier::Tbps1)),
            15_750.0
        );
        assert_eq!(
            m.portfolio_cost(&portfolio(true, true, true, DdosTier::Gbps2)),
            8_150.0
        );
    }

    #[test]
    fn premiums_follow_the_column_rule() {
        let m = model();
        let af_only = portfolio(true, false, false, DdosTier::None);
        assert_eq!(m.insurance_premium(InsurancePlan::Traditional, &af_only), 300.0);
        assert_eq!(m.insurance_premium(InsurancePlan::None, &af_only), 0.0);
        assert_eq!(
            m.insurance_premium(InsurancePlan::Comprehensive, &ControlPortfolio::BARE),
            700.0
        );
        // Cyber part picks the cheapest applicable column.
        assert_eq!(
            m.insurance_premium(InsurancePlan::Cyber, &ControlPortfolio::BARE),
            300.0
        );
        assert_eq!(
            m.insurance_premium(InsurancePlan::Cyber, &portfolio(false, true, false, DdosTier::None)),
            200.0
        );
        assert_eq!(
            m.insurance_premium(InsurancePlan::Cyber, &portfolio(false, false, true, DdosTier::None)),
            250.0
        );
        assert_eq!(
            m.insurance_premium(InsurancePlan::Cyber, &portfolio(false, false, false, DdosTier::Gbps2)),
            200.0
        );
        assert_eq!(
            m.insurance_premium(InsurancePlan::Cyber, &portfolio(false, true, true, DdosTier::None)),
            200.0
        );
        // Frozen joint value for the headline portfolio.
        assert_eq!(
            m.insurance_premium(
                InsurancePlan::Comprehensive,
                &portfolio(true, true, false, DdosTier::Tbps1)
            ),
            400.0
        );
    }

    #[test]
    fn fire_frequency_matches_the_capped_poisson_rate() {
        let m = model();
        let rng = RngStream::new(411);
        let n = 1_000_000;
        let mut fires = 0u32;
        for j in 0..n {
            let (f, o) = m.sample_fire(
                &ControlPortfolio::BARE,
                &mut rng.substream(&[j]),
            );
            if f == 1 {
                fires += 1;
            } else {
                assert_eq!(o, 0.0);
            }
        }
        let freq = f64::from(fires) / n as f64;
        assert!((freq - 0.02176).abs() < 0.0005, "P(fire) = {freq}");
    }

    #[test]
    fn fire_durations_depend_on_extinguishers() {
        // A huge rate makes every draw a fire, so the conditional duration
        // means can be estimated directly through sample_fire.
        let params = DefenderParams {
            fire_rate_per_year: 50.0,
            ..DefenderParams::default()
        };
        let m = SmeDefender::new(params).unwrap();
        let rng = RngStream::new(412);
        let mut sums = [0.0f64; 2];
        let mut counts = [0u32; 2];
        let with_af = portfolio(true, false, false, DdosTier::None);
        for j in 0..100_000u64 {
            for (k, s) in [ControlPortfolio::BARE, with_af].iter().enumerate() {
                let (f, o) = m.sample_fire(s, &mut rng.substream(&[j, k as u64]));
                if f == 1 {
                    sums[k] += o;
                    counts[k] += 1;
                }
            }
        }
        assert!(counts[0] > 99_000 && counts[1] > 99_000);
        let unprotected = sums[0] / f64::from(counts[0]);
        let protected_mean = sums[1] / f64::from(counts[1]);
        assert!((unprotected - 78.0).abs() < 2.0, "mean = {unprotected}");
        assert!((protected_mean - 24.6).abs() < 0.5, "mean = {protected_mean}");
    }

    #[test]
    fn virus_counts_track_the_exposure_probability() {
        let m = model();
        let rng = RngStream::new(413);
        let both = portfolio(false, true, true, DdosTier::None);
        let neither = ControlPortfolio::BARE;
        let n = 100_000u64;
        let (mut sum_both, mut sum_neither) = (0u64, 0u64);
        for j in 0..n {
            sum_both += m.sample_virus_count(&both, &mut rng.substream(&[j, 0]));
            sum_neither += m.sample_virus_count(&neither, &mut rng.substream(&[j, 1]));
        }
        let mean_both = sum_both as f64 / n as f64;
        let mean_neither = sum_neither as f64 / n as f64;
        assert!((mean_both - 2.7).abs() < 0.1, "mean = {mean_both}");
        assert!((mean_neither - 356.4).abs() < 2.0, "mean = {mean_neither}");
    }

    #[test]
    fn ddos_outage_scales_with_attacks_and_absorption() {
        let m = model();
        let rng = RngStream::new(414);
        let n = 100_000u64;
        let mut total = 0.0;
        for j in 0..n {
            total += m.sample_ddos_outage(10, &ControlPortfolio::BARE, &mut rng.substream(&[j]));
        }
        let mean = total / n as f64;
        assert!((mean - 40.0).abs() < 0.5, "mean outage = {mean}");

        let absorbed = portfolio(false, false, false, DdosTier::Tbps1);
        for j in 0..n {
            assert_eq!(
                m.sample_ddos_outage(10, &absorbed, &mut rng.substream(&[1, j])),
                0.0
            );
        }
        assert_eq!(
            m.sample_ddos_outage(0, &ControlPortfolio::BARE, &mut rng.substream(&[2])),
            0.0
        );
    }

    #[test]
    fn impacts_follow_the_loss_formulas() {
        let m = model();
        let zero = m.compute_impacts(0.0, 0, 0.0, &mut RngStream::new(1).substream(&[0]));
        assert_eq!(zero.facility_loss_eur, 0.0);
        assert_eq!(zero.fire_computer_loss_eur, 0.0);
        assert_eq!(zero.virus_computer_loss_eur, 0.0);
        assert_eq!(zero.non_insurable_loss_eur, 0.0);
        assert_eq!(zero.market_loss_eur, 0.0);

        let burnt = m.compute_impacts(120.0, 0, 0.0, &mut RngStream::new(2).substream(&[0]));
        assert_eq!(burnt.facility_loss_eur, 5_000_000.0);
        assert_eq!(burnt.fire_computer_loss_eur, 200_000.0);
        let over = m.compute_impacts(500.0, 0, 0.0, &mut RngStream::new(3).substream(&[0]));
        assert_eq!(over.facility_loss_eur, 5_000_000.0);
    }

    #[test]
    fn long_outages_hit_the_market_loss_cap() {
        // Pin the loss rate at its upper end so the cap binds for certain.
        let params = DefenderParams {
            loss_rate_lo_share_points_per_hour: 0.00417,
            ..DefenderParams::default()
        };
        let m = SmeDefender::new(params).unwrap();
        let impacts = m.compute_impacts(0.0, 0, 192.0, &mut RngStream::new(4).substream(&[0]));
        assert_eq!(impacts.market_loss_eur, 1_500_000.0);
    }

    #[test]
    fn coverage_by_product() {
        let m = model();
        assert_eq!(m.insurance_coverage(InsurancePlan::None, 1.0, 2.0, 3.0), 0.0);
        assert_eq!(
            m.insurance_coverage(InsurancePlan::Traditional, 5_000_000.0, 200_000.0, 310.0),
            4_160_000.0
        );
        assert_eq!(
            m.insurance_coverage(InsurancePlan::Cyber, 5_000_000.0, 200_000.0, 310.0),
            248.0
        );
        assert_eq!(
            m.insurance_coverage(InsurancePlan::Comprehensive, 5_000_000.0, 200_000.0, 310.0),
            4_160_248.0
        );
    }

    #[test]
    fn utility_anchors() {
        let m = model();
        assert!((m.utility(0.0) - 1.0).abs() < 1e-12);
        assert!(m.utility(7_000_000.0).abs() < 1e-12);
        let mid = m.utility(2_660_000.0);
        assert!((mid - 0.499876).abs() < 1e-6, "u(2.66e6) = {mid}");
        assert_eq!(m.utility(1e9), 0.0);
    }

    #[test]
    fn quiet_year_cost_is_spend_plus_premium() {
        // Incidents switched off: no fires, no infections, no attacks.
        let params = DefenderParams {
            fire_rate_per_year: 0.0,
            virus_q_firewall_only: 0.0,
            ..DefenderParams::default()
        };
        let m = SmeDefender::new(params).unwrap();
        let s = portfolio(true, true, false, DdosTier::Tbps1);
        let row = {
            let mut r = vec![0.0; 31];
            r[0] = 1.0;
            r
        };
        let sample = m.sample_year(&s, InsurancePlan::Comprehensive, &row, &RngStream::new(5));
        assert_eq!(sample.attacks, 0);
        assert_eq!(sample.total_cost_eur, 16_150.0);

        let params = DefenderParams {
            fire_rate_per_year: 0.0,
            virus_q_neither: 0.0,
            ..DefenderParams::default()
        };
        let m = SmeDefender::new(params).unwrap();
        let bare = m.sample_year(
            &ControlPortfolio::BARE,
            InsurancePlan::None,
            &row,
            &RngStream::new(6),
        );
        assert_eq!(bare.total_cost_eur, 0.0);
    }

    #[test]
    fn labels_round_trip() {
        for p in ControlPortfolio::all() {
            for i in InsurancePlan::ALL {
                let label = pair_label(&p, i);
                let (p2, i2) = parse_pair_label(&label).unwrap();
                assert_eq!(p, p2);
                assert_eq!(i, i2);
            }
        }
        assert!("anti-fire+anti-fire".parse::<ControlPortfolio>().is_err());
        assert!("2gbps+1tbps".parse::<ControlPortfolio>().is_err());
        assert!("lasers".parse::<ControlPortfolio>().is_err());
    }

    proptest! {
        #[test]
        fn cost_identity_holds_for_every_sample(
            seed in 0u64..1_000,
            af in any::<bool>(),
            fw in any::<bool>(),
            pr in any::<bool>(),
            tier in 0usize..5,
            plan in 0usize..4,
        ) {
            let m = model();
            let s = portfolio(af, fw, pr, DdosTier::ALL[tier]);
            let i = InsurancePlan::ALL[plan];
            let row = [0.3, 0.2, 0.5];
            let sample = m.sample_year(&s, i, &row, &RngStream::new(seed));
            let readd = sample.market_loss_eur
                + sample.facility_loss_eur
                + sample.insurable_computer_loss_eur()
                + sample.non_insurable_loss_eur
                + sample.control_cost_eur
                + sample.premium_eur
                - sample.coverage_eur;
            prop_assert_eq!(sample.total_cost_eur, readd);
            prop_assert!(sample.facility_loss_eur <= 5_000_000.0);
            prop_assert!(sample.fire_computer_loss_eur <= 200_000.0);
            prop_assert!(sample.market_loss_eur <= 1_500_000.0);
            prop_assert!(
                sample.coverage_eur
                    <= 0.8 * (sample.facility_loss_eur + sample.insurable_computer_loss_eur()) + 1e-9
            );
            prop_assert!(sample.total_cost_eur >= 0.0);
        }
    }

    #[test]
    fn samples_are_coupled_across_decisions_on_a_shared_stream() {
        let m = model();
        let row = [0.2, 0.3, 0.5];
        let with_insurance = (
            portfolio(false, false, false, DdosTier::None),
            InsurancePlan::Traditional,
        );
        let without = (
            portfolio(false, false, false, DdosTier::None),
            InsurancePlan::None,
        );
        for j in 0..2_000u64 {
            let stream = RngStream::new(7).substream(&[j]);
            let a = m.sample_year(&with_insurance.0, with_insurance.1, &row, &stream);
            let b = m.sample_year(&without.0, without.1, &row, &stream);
            assert_eq!(a.fires, b.fires);
            assert_eq!(a.fire_outage_minutes, b.fire_outage_minutes);
            assert_eq!(a.virus_infections, b.virus_infections);
            assert_eq!(a.market_loss_eur, b.market_loss_eur);
        }
    }
}
