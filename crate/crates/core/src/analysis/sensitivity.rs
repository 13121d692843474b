//! One-at-a-time parameter sweeps.
//!
//! A sweep re-solves the defender problem at each value of one registered
//! scalar knob, re-solving the attack distribution first when the knob
//! belongs to the attacker model.  All points run from the caller's
//! stream, so the point at the baseline value reproduces the baseline
//! solve exactly and differences between points are purely parametric.

use super::AnalysisError;
use crate::casestudy::{CaseStudy, SolverBudgets};
use crate::solver::AttackPolicyTable;
use crate::stochastics::RngStream;

/// Outcome of one sweep point.
#[derive(Debug, Clone, PartialEq)]
pub struct SensitivityRow {
    pub value: f64,
    pub best_label: String,
    pub expected_utility: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SensitivityReport {
    pub parameter: String,
    /// Whether the knob forced per-point attack-table re-solves.
    pub attacker_side: bool,
    pub rows: Vec<SensitivityRow>,
    /// True when the optimal decision is not the same at every point.
    pub argmax_changed: bool,
}

struct Knob {
    label: &'static str,
    attacker_side: bool,
    set: fn(&mut CaseStudy, f64),
}

const KNOBS: &[Knob] = &[
    Knob {
        label: "fire_rate_per_year",
        attacker_side: false,
        set: |s, v| s.defender.fire_rate_per_year = v,
    },
    Knob {
        label: "virus_q_firewall_and_procedures",
        attacker_side: false,
        set: |s, v| s.defender.virus_q_firewall_and_procedures = v,
    },
    Knob {
        label: "virus_q_firewall_only",
        attacker_side: false,
        set: |s, v| s.defender.virus_q_firewall_only = v,
    },
    Knob {
        label: "virus_q_procedures_only",
        attacker_side: false,
        set: |s, v| s.defender.virus_q_procedures_only = v,
    },
    Knob {
        label: "virus_q_neither",
        attacker_side: false,
        set: |s, v| s.defender.virus_q_neither = v,
    },
    Knob {
        label: "loss_rate_lo_share_points_per_hour",
        attacker_side: false,
        set: |s, v| s.defender.loss_rate_lo_share_points_per_hour = v,
    },
    Knob {
        label: "loss_rate_hi_share_points_per_hour",
        attacker_side: false,
        set: |s, v| s.defender.loss_rate_hi_share_points_per_hour = v,
    },
    Knob {
        label: "premium_scale",
        attacker_side: false,
        set: |s, v| s.defender.premium_scale = v,
    },
    Knob {
        label: "detection_cost_mean_eur",
        attacker_side: true,
        set: |s, v| s.attacker.detection_cost_mean_eur = v,
    },
    Knob {
        label: "detection_cost_sd_eur",
        attacker_side: true,
        set: |s, v| s.attacker.detection_cost_sd_eur = v,
    },
    Knob {
        label: "attack_unit_cost_eur",
        attacker_side: true,
        set: |s, v| s.attacker.attack_unit_cost_eur = v,
    },
    Knob {
        label: "attack_result_floor_eur",
        attacker_side: true,
        set: |s, v| s.attacker.attack_result_floor_eur = v,
    },
    Knob {
        label: "attack_result_ceiling_eur",
        attacker_side: true,
        set: |s, v| s.attacker.attack_result_ceiling_eur = v,
    },
];

/// Labels accepted by [`sensitivity_sweep`].
pub fn sensitivity_labels() -> Vec<&'static str> {
    KNOBS.iter().map(|k| k.label).collect()
}

/// Re-solves the problem at each value of one registered knob.
///
/// `baseline_table` is reused for defender-side knobs; attacker-side
/// knobs ignore it and re-solve the attack distribution per point.
pub fn sensitivity_sweep(
    study: &CaseStudy,
    baseline_table: &AttackPolicyTable,
    parameter: &str,
    values: &[f64],
    budgets: &SolverBudgets,
    rng: &RngStream,
) -> Result<SensitivityReport, AnalysisError> {
    let knob = KNOBS
        .iter()
        .find(|k| k.label == parameter)
        .ok_or_else(|| AnalysisError::UnknownParameter {
            parameter: parameter.to_string(),
            valid: sensitivity_labels().join(", "),
        })?;
    if values.is_empty() {
        return Err(AnalysisError::Config("sweep needs at least one value".into()));
    }
    if values.windows(2).any(|w| !(w[0] < w[1])) || values.iter().any(|v| !v.is_finite()) {
        return Err(AnalysisError::Config(
            "sweep values must be finite and strictly increasing".into(),
        ));
    }
    budgets.validate()?;

    let mut rows = Vec::with_capacity(values.len());
    for &value in values {
        let mut point = study.clone();
        (knob.set)(&mut point, value);
        point.validate()?;
        let solved;
        let table = if knob.attacker_side {
            solved = point.solve_attack_table(budgets.hyper_draws, budgets.inner_samples, rng)?;
            &solved
        } else {
            baseline_table
        };
        let ranking = point.solve_ranking(table, budgets.samples, rng)?;
        let best = ranking.best();
        rows.push(SensitivityRow {
            value,
            best_label: best.result.decision.clone(),
            expected_utility: best.result.expected_utility,
        });
    }

    let argmax_changed = rows.iter().any(|r| r.best_label != rows[0].best_label);
    Ok(SensitivityReport {
        parameter: parameter.to_string(),
        attacker_side: knob.attacker_side,
        rows,
        argmax_changed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_budgets() -> SolverBudgets {
        SolverBudgets {
            hyper_draws: 30,
            inner_samples: 10,
            samples: 1_000,
        }
    }

    #[test]
    fn unknown_parameters_list_the_registry() {
        let study = CaseStudy::default();
        let rng = RngStream::new(31);
        let table = study.solve_attack_table(5, 2, &rng).unwrap();
        let err = sensitivity_sweep(&study, &table, "gravity", &[1.0], &small_budgets(), &rng)
            .unwrap_err();
        match err {
            AnalysisError::UnknownParameter { parameter, valid } => {
                assert_eq!(parameter, "gravity");
                assert!(valid.contains("fire_rate_per_year"), "{valid}");
                assert!(valid.contains("premium_scale"), "{valid}");
            }
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn unordered_values_are_rejected() {
        let study = CaseStudy::default();
        let rng = RngStream::new(32);
        let table = study.solve_attack_table(5, 2, &rng).unwrap();
        let err = sensitivity_sweep(
            &study,
            &table,
            "fire_rate_per_year",
            &[0.05, 0.01],
            &small_budgets(),
            &rng,
        )
        .unwrap_err();
        assert!(matches!(err, AnalysisError::Config(_)));
    }

    #[test]
    fn out_of_range_values_surface_the_parameter_validation() {
        let study = CaseStudy::default();
        let rng = RngStream::new(33);
        let table = study.solve_attack_table(5, 2, &rng).unwrap();
        let err = sensitivity_sweep(
            &study,
            &table,
            "virus_q_neither",
            &[1.5],
            &small_budgets(),
            &rng,
        )
        .unwrap_err();
        assert!(err.to_string().contains("virus_q_neither"), "{err}");
    }

    #[test]
    fn baseline_point_reproduces_the_baseline_solve_bit_for_bit() {
        let study = CaseStudy::default();
        let rng = RngStream::new(34);
        let budgets = small_budgets();
        let table = study.solve_attack_table(10, 5, &rng).unwrap();
        let direct = study.solve_ranking(&table, budgets.samples, &rng).unwrap();
        let report = sensitivity_sweep(
            &study,
            &table,
            "fire_rate_per_year",
            &[study.defender.fire_rate_per_year],
            &budgets,
            &rng,
        )
        .unwrap();
        assert_eq!(report.rows.len(), 1);
        assert!(!report.argmax_changed);
        assert_eq!(report.rows[0].best_label, direct.best().result.decision);
        assert_eq!(
            report.rows[0].expected_utility,
            direct.best().result.expected_utility
        );
    }

    #[test]
    fn more_fires_never_help() {
        let study = CaseStudy::default();
        let rng = RngStream::new(35);
        let budgets = small_budgets();
        let table = study.solve_attack_table(10, 5, &rng).unwrap();
        let report = sensitivity_sweep(
            &study,
            &table,
            "fire_rate_per_year",
            &[0.0, 1.0],
            &budgets,
            &rng,
        )
        .unwrap();
        assert!(report.rows[0].expected_utility > report.rows[1].expected_utility);
        assert!(!report.attacker_side);
    }

    #[test]
    fn pricing_attacks_out_of_the_market_changes_the_argmax() {
        let study = CaseStudy::default();
        let rng = RngStream::new(36);
        let budgets = small_budgets();
        let table = study.solve_attack_table(30, 10, &rng).unwrap();
        let report = sensitivity_sweep(
            &study,
            &table,
            "attack_unit_cost_eur",
            &[792.0, 1_000_000.0],
            &budgets,
            &rng,
        )
        .unwrap();
        assert!(report.attacker_side);
        // Attacks that cost a million euros each are never launched, so
        // the best decision stops paying for absorption capacity.
        let deterred = &report.rows[1];
        assert!(
            !deterred.best_label.contains("gbps") && !deterred.best_label.contains("tbps"),
            "best under deterrence: {}",
            deterred.best_label
        );
        assert!(report.argmax_changed);
        assert!(report.rows[0].best_label.contains("tbps") || report.rows[0].best_label.contains("gbps"));
    }
}
