//! Parameter sets for the bundled SME model.
//!
//! Every scalar the samplers consume lives here, with units spelled out
//! in the field names (euros, minutes, hours, gigabits per second, share
//! points).  Construction is two-phase: build or deserialize a struct,
//! then `validate` before handing it to a model.  The samplers assume
//! validated parameters and do not re-check on the hot path.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::stochastics::{DistSpec, StochasticsError};
use crate::SolveError;

/// Failure modes of the bundled model.
#[derive(Debug, Error)]
pub enum CaseStudyError {
    /// A scalar parameter is outside its admissible range.
    #[error("parameter `{field}` must satisfy {constraint}, got {value}")]
    InvalidParameter {
        field: &'static str,
        constraint: &'static str,
        value: f64,
    },
    /// A derived sampling distribution is malformed.
    #[error("distribution for `{node}` is invalid: {source}")]
    Distribution {
        node: &'static str,
        source: StochasticsError,
    },
    /// An unparseable decision label.
    #[error("cannot parse decision label `{label}`: {problem}")]
    DecisionLabel { label: String, problem: String },
    #[error(transparent)]
    Solve(#[from] SolveError),
}

fn check(
    field: &'static str,
    constraint: &'static str,
    value: f64,
    ok: bool,
) -> Result<(), CaseStudyError> {
    if ok && value.is_finite() {
        Ok(())
    } else {
        Err(CaseStudyError::InvalidParameter {
            field,
            constraint,
            value,
        })
    }
}

fn check_dist(node: &'static str, spec: &DistSpec) -> Result<(), CaseStudyError> {
    spec.validate()
        .map_err(|source| CaseStudyError::Distribution { node, source })
}

/// Everything the defender-side samplers and cost accounting need.
///
/// Defaults describe a small online retailer: one facility worth five
/// million euros, 1080 workstations, revenue exposed to DDoS outages
/// through lost market share.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct DefenderParams {
    /// Annual rate of the (capped) Poisson fire count.
    pub fire_rate_per_year: f64,
    pub fire_duration_shape: f64,
    pub fire_duration_rate_per_minute: f64,
    /// Fire duration under automatic extinguishers, triangular in minutes.
    pub fire_duration_protected_min_minutes: f64,
    pub fire_duration_protected_mode_minutes: f64,
    pub fire_duration_protected_max_minutes: f64,
    pub facility_value_eur: f64,
    pub computer_fire_value_eur: f64,
    /// Outage length at which fire damage reaches 100 percent.
    pub fire_total_loss_minutes: f64,

    /// Number of computers exposed to infection.
    pub computer_count: u64,
    pub virus_q_firewall_and_procedures: f64,
    pub virus_q_firewall_only: f64,
    pub virus_q_procedures_only: f64,
    pub virus_q_neither: f64,
    /// Cleanup cost per infected computer.
    pub virus_repair_cost_eur: f64,
    /// Productivity value at stake per infected computer.
    pub virus_productivity_value_eur: f64,
    /// Upper end of the uniform productivity-loss fraction.
    pub virus_productivity_fraction_hi: f64,

    pub ddos_peak_shape: f64,
    pub ddos_peak_rate_per_gbps: f64,
    pub ddos_outage_shape: f64,
    pub ddos_outage_rate_per_hour: f64,

    /// Cap on market-share losses, the value of the contested share.
    pub market_loss_cap_eur: f64,
    /// Conversion from share points to euros.
    pub eur_per_share_point: f64,
    pub loss_rate_lo_share_points_per_hour: f64,
    pub loss_rate_hi_share_points_per_hour: f64,

    pub control_cost_anti_fire_eur: f64,
    pub control_cost_firewall_eur: f64,
    pub control_cost_procedures_eur: f64,
    pub control_cost_ddos_2gbps_eur: f64,
    pub control_cost_ddos_5gbps_eur: f64,
    pub control_cost_ddos_10gbps_eur: f64,
    pub control_cost_ddos_1tbps_eur: f64,

    pub premium_traditional_base_eur: f64,
    pub premium_traditional_anti_fire_eur: f64,
    pub premium_cyber_base_eur: f64,
    pub premium_cyber_firewall_or_ddos_eur: f64,
    pub premium_cyber_procedures_eur: f64,
    pub premium_comprehensive_discount_eur: f64,
    /// Multiplier applied to every premium, used by sweeps and the
    /// reservation-price search.
    pub premium_scale: f64,

    /// Fraction of insured losses the products reimburse.
    pub coverage_fraction: f64,

    /// Cost at which the defender's utility reaches zero.
    pub utility_cost_scale_eur: f64,
}

impl Default for DefenderParams {
    fn default() -> Self {
        DefenderParams {
            fire_rate_per_year: 0.022,
            fire_duration_shape: 0.85,
            fire_duration_rate_per_minute: 0.01089,
            fire_duration_protected_min_minutes: 0.8,
            fire_duration_protected_mode_minutes: 10.0,
            fire_duration_protected_max_minutes: 63.0,
            facility_value_eur: 5_000_000.0,
            computer_fire_value_eur: 200_000.0,
            fire_total_loss_minutes: 120.0,

            computer_count: 1080,
            virus_q_firewall_and_procedures: 0.0025,
            virus_q_firewall_only: 0.005,
            virus_q_procedures_only: 0.1666,
            virus_q_neither: 0.33,
            virus_repair_cost_eur: 31.0,
            virus_productivity_value_eur: 560.0,
            virus_productivity_fraction_hi: 0.05,

            ddos_peak_shape: 5.0,
            ddos_peak_rate_per_gbps: 1.0,
            ddos_outage_shape: 4.0,
            ddos_outage_rate_per_hour: 1.0,

            market_loss_cap_eur: 1_500_000.0,
            eur_per_share_point: 3_000_000.0,
            loss_rate_lo_share_points_per_hour: 0.0026,
            loss_rate_hi_share_points_per_hour: 0.00417,

            control_cost_anti_fire_eur: 1_500.0,
            control_cost_firewall_eur: 2_250.0,
            control_cost_procedures_eur: 2_000.0,
            control_cost_ddos_2gbps_eur: 2_400.0,
            control_cost_ddos_5gbps_eur: 3_600.0,
            control_cost_ddos_10gbps_eur: 4_800.0,
            control_cost_ddos_1tbps_eur: 12_000.0,

            premium_traditional_base_eur: 500.0,
            premium_traditional_anti_fire_eur: 300.0,
            premium_cyber_base_eur: 300.0,
            premium_cyber_firewall_or_ddos_eur: 200.0,
            premium_cyber_procedures_eur: 250.0,
            premium_comprehensive_discount_eur: 100.0,
            premium_scale: 1.0,

            coverage_fraction: 0.8,

            utility_cost_scale_eur: 7_000_000.0,
        }
    }
}

impl DefenderParams {
    pub fn validate(&self) -> Result<(), CaseStudyError> {
        let p = self;
        check(
            "fire_rate_per_year",
            ">= 0",
            p.fire_rate_per_year,
            p.fire_rate_per_year >= 0.0,
        )?;
        check_dist("fire_count", &self.fire_count_dist())?;
        check_dist("fire_duration", &self.fire_duration_dist(false))?;
        check_dist("fire_duration_protected", &self.fire_duration_dist(true))?;
        check(
            "facility_value_eur",
            ">= 0",
            p.facility_value_eur,
            p.facility_value_eur >= 0.0,
        )?;
        check(
            "computer_fire_value_eur",
            ">= 0",
            p.computer_fire_value_eur,
            p.computer_fire_value_eur >= 0.0,
        )?;
        check(
            "fire_total_loss_minutes",
            "> 0",
            p.fire_total_loss_minutes,
            p.fire_total_loss_minutes > 0.0,
        )?;
        for (field, q) in [
            (
                "virus_q_firewall_and_procedures",
                p.virus_q_firewall_and_procedures,
            ),
            ("virus_q_firewall_only", p.virus_q_firewall_only),
            ("virus_q_procedures_only", p.virus_q_procedures_only),
            ("virus_q_neither", p.virus_q_neither),
        ] {
            check(field, "in [0, 1]", q, (0.0..=1.0).contains(&q))?;
        }
        check(
            "virus_repair_cost_eur",
            ">= 0",
            p.virus_repair_cost_eur,
            p.virus_repair_cost_eur >= 0.0,
        )?;
        check(
            "virus_productivity_value_eur",
            ">= 0",
            p.virus_productivity_value_eur,
            p.virus_productivity_value_eur >= 0.0,
        )?;
        check(
            "virus_productivity_fraction_hi",
            ">= 0",
            p.virus_productivity_fraction_hi,
            p.virus_productivity_fraction_hi >= 0.0,
        )?;
        check_dist("ddos_peak", &self.ddos_peak_dist())?;
        check_dist("ddos_outage", &self.ddos_outage_dist())?;
        check(
            "market_loss_cap_eur",
            ">= 0",
            p.market_loss_cap_eur,
            p.market_loss_cap_eur >= 0.0,
        )?;
        check(
            "eur_per_share_point",
            ">= 0",
            p.eur_per_share_point,
            p.eur_per_share_point >= 0.0,
        )?;
        check(
            "loss_rate_lo_share_points_per_hour",
            ">= 0",
            p.loss_rate_lo_share_points_per_hour,
            p.loss_rate_lo_share_points_per_hour >= 0.0,
        )?;
        check(
            "loss_rate_hi_share_points_per_hour",
            ">= loss_rate_lo_share_points_per_hour",
            p.loss_rate_hi_share_points_per_hour,
            p.loss_rate_hi_share_points_per_hour >= p.loss_rate_lo_share_points_per_hour,
        )?;
        for (field, cost) in [
            ("control_cost_anti_fire_eur", p.control_cost_anti_fire_eur),
            ("control_cost_firewall_eur", p.control_cost_firewall_eur),
            ("control_cost_procedures_eur", p.control_cost_procedures_eur),
            ("control_cost_ddos_2gbps_eur", p.control_cost_ddos_2gbps_eur),
            ("control_cost_ddos_5gbps_eur", p.control_cost_ddos_5gbps_eur),
            (
                "control_cost_ddos_10gbps_eur",
                p.control_cost_ddos_10gbps_eur,
            ),
            (
                "control_cost_ddos_1tbps_eur",
                p.control_cost_ddos_1tbps_eur,
            ),
            (
                "premium_traditional_base_eur",
                p.premium_traditional_base_eur,
            ),
            (
                "premium_traditional_anti_fire_eur",
                p.premium_traditional_anti_fire_eur,
            ),
            ("premium_cyber_base_eur", p.premium_cyber_base_eur),
            (
                "premium_cyber_firewall_or_ddos_eur",
                p.premium_cyber_firewall_or_ddos_eur,
            ),
            (
                "premium_cyber_procedures_eur",
                p.premium_cyber_procedures_eur,
            ),
            (
                "premium_comprehensive_discount_eur",
                p.premium_comprehensive_discount_eur,
            ),
        ] {
            check(field, ">= 0", cost, cost >= 0.0)?;
        }
        check("premium_scale", ">= 0", p.premium_scale, p.premium_scale >= 0.0)?;
        check(
            "coverage_fraction",
            "in [0, 1]",
            p.coverage_fraction,
            (0.0..=1.0).contains(&p.coverage_fraction),
        )?;
        check(
            "utility_cost_scale_eur",
            "> 0",
            p.utility_cost_scale_eur,
            p.utility_cost_scale_eur > 0.0,
        )?;
        Ok(())
    }

    pub(crate) fn fire_count_dist(&self) -> DistSpec {
        DistSpec::CappedPoisson {
            lambda: self.fire_rate_per_year,
        }
    }

    pub(crate) fn fire_duration_dist(&self, anti_fire: bool) -> DistSpec {
        if anti_fire {
            DistSpec::Triangular {
                min: self.fire_duration_protected_min_minutes,
                mode: self.fire_duration_protected_mode_minutes,
                max: self.fire_duration_protected_max_minutes,
            }
        } else {
            DistSpec::Gamma {
                shape: self.fire_duration_shape,
                rate: self.fire_duration_rate_per_minute,
            }
        }
    }

    pub(crate) fn ddos_peak_dist(&self) -> DistSpec {
        DistSpec::Gamma {
            shape: self.ddos_peak_shape,
            rate: self.ddos_peak_rate_per_gbps,
        }
    }

    pub(crate) fn ddos_outage_dist(&self) -> DistSpec {
        DistSpec::Gamma {
            shape: self.ddos_outage_shape,
            rate: self.ddos_outage_rate_per_hour,
        }
    }
}

/// Everything the attacker-side samplers need, including the ranges of
/// the hyper-parameter draws that express the defender's uncertainty
/// about the attacker.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct AttackerParams {
    /// Range of the per-attack outage gamma shape.
    pub outage_shape_lo: f64,
    pub outage_shape_hi: f64,
    /// Range of the per-attack outage gamma rate, per hour.
    pub outage_rate_lo_per_hour: f64,
    pub outage_rate_hi_per_hour: f64,
    /// Range of the traffic-peak gamma shape.
    pub peak_shape_lo: f64,
    pub peak_shape_hi: f64,
    /// Range of the traffic-peak gamma rate, per gigabit per second.
    pub peak_rate_lo_per_gbps: f64,
    pub peak_rate_hi_per_gbps: f64,
    /// Range of the lower endpoint of the market-loss rate.
    pub loss_rate_min_lo_share_points_per_hour: f64,
    pub loss_rate_min_hi_share_points_per_hour: f64,
    /// Range of the upper endpoint of the market-loss rate.
    pub loss_rate_max_lo_share_points_per_hour: f64,
    pub loss_rate_max_hi_share_points_per_hour: f64,
    /// Beta parameters of the per-attack detection probability.
    pub detection_prob_alpha: f64,
    pub detection_prob_beta: f64,
    /// Range of the risk-proneness exponent of the attacker's utility.
    pub risk_exponent_lo: f64,
    pub risk_exponent_hi: f64,

    pub detection_cost_mean_eur: f64,
    pub detection_cost_sd_eur: f64,
    /// Spend per attack launched.
    pub attack_unit_cost_eur: f64,
    pub market_loss_cap_eur: f64,
    pub eur_per_share_point: f64,

    /// Normalisation floor of the attack result before the utility power.
    pub attack_result_floor_eur: f64,
    /// Normalisation ceiling of the attack result.
    pub attack_result_ceiling_eur: f64,

    /// Largest attack count the campaign can contain.
    pub max_attacks: u32,
}

impl Default for AttackerParams {
    fn default() -> Self {
        AttackerParams {
            outage_shape_lo: 3.6,
            outage_shape_hi: 4.8,
            outage_rate_lo_per_hour: 0.8,
            outage_rate_hi_per_hour: 1.2,
            peak_shape_lo: 4.8,
            peak_shape_hi: 5.6,
            peak_rate_lo_per_gbps: 0.8,
            peak_rate_hi_per_gbps: 1.2,
            loss_rate_min_lo_share_points_per_hour: 0.0021,
            loss_rate_min_hi_share_points_per_hour: 0.0031,
            loss_rate_max_lo_share_points_per_hour: 0.00367,
            loss_rate_max_hi_share_points_per_hour: 0.00467,
            detection_prob_alpha: 2.0,
            detection_prob_beta: 998.0,
            risk_exponent_lo: 8.0,
            risk_exponent_hi: 10.0,

            detection_cost_mean_eur: 2_430_000.0,
            detection_cost_sd_eur: 400_000.0,
            attack_unit_cost_eur: 792.0,
            market_loss_cap_eur: 1_500_000.0,
            eur_per_share_point: 3_000_000.0,

            attack_result_floor_eur: -4_100_000.0,
            attack_result_ceiling_eur: 1_500_000.0,

            max_attacks: 30,
        }
    }
}

impl AttackerParams {
    pub fn validate(&self) -> Result<(), CaseStudyError> {
        let p = self;
        let ranges = [
            ("outage_shape", p.outage_shape_lo, p.outage_shape_hi),
            (
                "outage_rate_per_hour",
                p.outage_rate_lo_per_hour,
                p.outage_rate_hi_per_hour,
            ),
            ("peak_shape", p.peak_shape_lo, p.peak_shape_hi),
            (
                "peak_rate_per_gbps",
                p.peak_rate_lo_per_gbps,
                p.peak_rate_hi_per_gbps,
            ),
            ("risk_exponent", p.risk_exponent_lo, p.risk_exponent_hi),
        ];
        for (field, lo, hi) in ranges {
            check(field, "0 < lo <= hi", lo, lo > 0.0 && lo <= hi && hi.is_finite())?;
        }
        check(
            "loss_rate_min_lo_share_points_per_hour",
            ">= 0",
            p.loss_rate_min_lo_share_points_per_hour,
            p.loss_rate_min_lo_share_points_per_hour >= 0.0,
        )?;
        check(
            "loss_rate_min_hi_share_points_per_hour",
            ">= loss_rate_min_lo",
            p.loss_rate_min_hi_share_points_per_hour,
            p.loss_rate_min_hi_share_points_per_hour >= p.loss_rate_min_lo_share_points_per_hour,
        )?;
        check(
            "loss_rate_max_lo_share_points_per_hour",
            ">= loss_rate_min_hi (loss-rate endpoints must not cross)",
            p.loss_rate_max_lo_share_points_per_hour,
            p.loss_rate_max_lo_share_points_per_hour >= p.loss_rate_min_hi_share_points_per_hour,
        )?;
        check(
            "loss_rate_max_hi_share_points_per_hour",
            ">= loss_rate_max_lo",
            p.loss_rate_max_hi_share_points_per_hour,
            p.loss_rate_max_hi_share_points_per_hour >= p.loss_rate_max_lo_share_points_per_hour,
        )?;
        check(
            "detection_prob_alpha",
            "> 0",
            p.detection_prob_alpha,
            p.detection_prob_alpha > 0.0,
        )?;
        check(
            "detection_prob_beta",
            "> 0",
            p.detection_prob_beta,
            p.detection_prob_beta > 0.0,
        )?;
        check(
            "detection_cost_mean_eur",
            "finite",
            p.detection_cost_mean_eur,
            true,
        )?;
        check(
            "detection_cost_sd_eur",
            ">= 0",
            p.detection_cost_sd_eur,
            p.detection_cost_sd_eur >= 0.0,
        )?;
        check(
            "attack_unit_cost_eur",
            ">= 0",
            p.attack_unit_cost_eur,
            p.attack_unit_cost_eur >= 0.0,
        )?;
        check(
            "market_loss_cap_eur",
            ">= 0",
            p.market_loss_cap_eur,
            p.market_loss_cap_eur >= 0.0,
        )?;
        check(
            "eur_per_share_point",
            ">= 0",
            p.eur_per_share_point,
            p.eur_per_share_point >= 0.0,
        )?;
        check(
            "attack_result_ceiling_eur",
            "> attack_result_floor_eur",
            p.attack_result_ceiling_eur,
            p.attack_result_ceiling_eur > p.attack_result_floor_eur
                && p.attack_result_floor_eur.is_finite(),
        )?;
        if self.max_attacks == 0 {
            return Err(CaseStudyError::InvalidParameter {
                field: "max_attacks",
                constraint: ">= 1",
                value: 0.0,
            });
        }
        Ok(())
    }
}

/// Sample budgets of the two nested solvers.
///
/// `hyper_draws` and `inner_samples` drive the attack-distribution
/// estimate; `samples` drives each decision's expected-utility estimate.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields, default)]
pub struct SolverBudgets {
    pub hyper_draws: usize,
    pub inner_samples: usize,
    pub samples: usize,
}

impl Default for SolverBudgets {
    fn default() -> Self {
        SolverBudgets {
            hyper_draws: 1_000,
            inner_samples: 200,
            samples: 100_000,
        }
    }
}

impl SolverBudgets {
    pub fn validate(&self) -> Result<(), CaseStudyError> {
        for (field, value) in [
            ("hyper_draws", self.hyper_draws),
            ("inner_samples", self.inner_samples),
            ("samples", self.samples),
        ] {
            if value == 0 {
                return Err(CaseStudyError::InvalidParameter {
                    field,
                    constraint: ">= 1",
                    value: 0.0,
                });
            }
        }
        Ok(())
    }
}
