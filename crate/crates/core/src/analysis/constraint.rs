//! Feasibility filtering of the decision space.

use super::AnalysisError;
use crate::casestudy::{ControlPortfolio, DdosTier, DecisionPair, InsurancePlan, SmeDefender};

/// A named admissibility test over decision pairs.
#[derive(Debug, Clone)]
pub struct LabelledPredicate {
    pub label: String,
    pub test: fn(&ControlPortfolio, InsurancePlan) -> bool,
}

/// Controls a product contractually requires before it can be bought.
#[derive(Debug, Clone, Copy)]
pub struct InsuranceRequirement {
    pub product: InsurancePlan,
    pub requires_anti_fire: bool,
    pub requires_firewall: bool,
    pub requires_procedures: bool,
    /// Any absorption tier above none.
    pub requires_ddos: bool,
}

impl InsuranceRequirement {
    fn admits(&self, portfolio: &ControlPortfolio, insurance: InsurancePlan) -> bool {
        if insurance != self.product {
            return true;
        }
        (!self.requires_anti_fire || portfolio.anti_fire)
            && (!self.requires_firewall || portfolio.firewall)
            && (!self.requires_procedures || portfolio.procedures)
            && (!self.requires_ddos || portfolio.ddos != DdosTier::None)
    }

    fn describe(&self) -> String {
        let mut needs = Vec::new();
        if self.requires_anti_fire {
            needs.push("anti-fire");
        }
        if self.requires_firewall {
            needs.push("firewall");
        }
        if self.requires_procedures {
            needs.push("procedures");
        }
        if self.requires_ddos {
            needs.push("ddos protection");
        }
        format!("{} requires {}", self.product.label(), needs.join("+"))
    }
}

/// What the defender is allowed to choose.  The default set admits
/// everything.
#[derive(Debug, Clone, Default)]
pub struct ConstraintSet {
    /// Cap on controls plus premium.
    pub budget_limit_eur: Option<f64>,
    pub insurance_requirements: Vec<InsuranceRequirement>,
    pub custom: Vec<LabelledPredicate>,
}

impl ConstraintSet {
    pub fn none() -> Self {
        ConstraintSet::default()
    }

    pub fn with_budget(budget_eur: f64) -> Self {
        ConstraintSet {
            budget_limit_eur: Some(budget_eur),
            ..ConstraintSet::default()
        }
    }
}

/// Returns the pairs admitted by every constraint, preserving order.
///
/// An empty result is an error listing each constraint together with the
/// number of input pairs it excludes on its own, so the caller can see
/// which ones bind.
pub fn apply_constraints(
    model: &SmeDefender,
    pairs: &[DecisionPair],
    constraints: &ConstraintSet,
) -> Result<Vec<DecisionPair>, AnalysisError> {
    let mut excluded: Vec<(String, usize)> = Vec::new();
    if let Some(budget) = constraints.budget_limit_eur {
        let count = pairs
            .iter()
            .filter(|(s, i)| spend(model, s, *i) > budget)
            .count();
        excluded.push((format!("budget <= {budget} eur"), count));
    }
    for requirement in &constraints.insurance_requirements {
        let count = pairs
            .iter()
            .filter(|(s, i)| !requirement.admits(s, *i))
            .count();
        excluded.push((requirement.describe(), count));
    }
    for predicate in &constraints.custom {
        let count = pairs.iter().filter(|(s, i)| !(predicate.test)(s, *i)).count();
        excluded.push((predicate.label.clone(), count));
    }

    let admitted: Vec<DecisionPair> = pairs
        .iter()
        .filter(|(s, i)| admits_all(model, constraints, s, *i))
        .copied()
        .collect();

    if admitted.is_empty() && !pairs.is_empty() {
        let binding: Vec<String> = excluded
            .iter()
            .filter(|(_, n)| *n > 0)
            .map(|(label, n)| format!("{label} (excludes {n} of {})", pairs.len()))
            .collect();
        return Err(AnalysisError::Infeasible(binding.join("; ")));
    }
    Ok(admitted)
}

fn spend(model: &SmeDefender, portfolio: &ControlPortfolio, insurance: InsurancePlan) -> f64 {
    model.portfolio_cost(portfolio) + model.insurance_premium(insurance, portfolio)
}

fn admits_all(
    model: &SmeDefender,
    constraints: &ConstraintSet,
    portfolio: &ControlPortfolio,
    insurance: InsurancePlan,
) -> bool {
    if let Some(budget) = constraints.budget_limit_eur {
        if spend(model, portfolio, insurance) > budget {
            return false;
        }
    }
    constraints
        .insurance_requirements
        .iter()
        .all(|r| r.admits(portfolio, insurance))
        && constraints
            .custom
            .iter()
            .all(|p| (p.test)(portfolio, insurance))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::casestudy::DefenderParams;
    use crate::solver::DefenderModel;

    fn model() -> SmeDefender {
        SmeDefender::new(DefenderParams::default()).unwrap()
    }

    fn all_pairs(model: &SmeDefender) -> Vec<DecisionPair> {
        model.decisions()
    }

    #[test]
    fn no_constraints_is_the_identity() {
        let m = model();
        let pairs = all_pairs(&m);
        let out = apply_constraints(&m, &pairs, &ConstraintSet::none()).unwrap();
        assert_eq!(out, pairs);
    }

    #[test]
    fn budget_fifteen_thousand_excludes_the_expensive_tier_combinations() {
        let m = model();
        let pairs = all_pairs(&m);
        let out = apply_constraints(&m, &pairs, &ConstraintSet::with_budget(15_000.0)).unwrap();
        assert_eq!(out.len(), 144);
        for (s, i) in &out {
            assert!(spend(&m, s, *i) <= 15_000.0);
            assert!(
                !(s.anti_fire && s.firewall && s.ddos == DdosTier::Tbps1),
                "portfolio {} costs {} alone",
                s.label(),
                m.portfolio_cost(s)
            );
        }
    }

    #[test]
    fn zero_budget_leaves_only_the_bare_pair() {
        let m = model();
        let pairs = all_pairs(&m);
        let out = apply_constraints(&m, &pairs, &ConstraintSet::with_budget(0.0)).unwrap();
        assert_eq!(out, vec![(ControlPortfolio::BARE, InsurancePlan::None)]);
    }

    #[test]
    fn impossible_budget_reports_the_binding_constraint() {
        let m = model();
        let pairs = all_pairs(&m);
        let err = apply_constraints(&m, &pairs, &ConstraintSet::with_budget(-1.0)).unwrap_err();
        match err {
            AnalysisError::Infeasible(msg) => {
                assert!(msg.contains("budget"), "{msg}");
                assert!(msg.contains("160"), "{msg}");
            }
            other => panic!("expected infeasible, got {other}"),
        }
    }

    #[test]
    fn insurance_requirements_only_bind_their_product() {
        let m = model();
        let pairs = all_pairs(&m);
        let set = ConstraintSet {
            insurance_requirements: vec![InsuranceRequirement {
                product: InsurancePlan::Traditional,
                requires_anti_fire: true,
                requires_firewall: false,
                requires_procedures: false,
                requires_ddos: false,
            }],
            ..ConstraintSet::default()
        };
        let out = apply_constraints(&m, &pairs, &set).unwrap();
        // Half of the 40 traditional pairs lack anti-fire.
        assert_eq!(out.len(), 140);
        for (s, i) in &out {
            if *i == InsurancePlan::Traditional {
                assert!(s.anti_fire);
            }
        }
    }

    #[test]
    fn filtering_is_idempotent_and_order_independent() {
        let m = model();
        let pairs = all_pairs(&m);
        fn needs_firewall(s: &ControlPortfolio, _i: InsurancePlan) -> bool {
            s.firewall
        }
        fn no_comprehensive(_s: &ControlPortfolio, i: InsurancePlan) -> bool {
            i != InsurancePlan::Comprehensive
        }
        let a = LabelledPredicate {
            label: "needs firewall".into(),
            test: needs_firewall,
        };
        let b = LabelledPredicate {
            label: "no comprehensive".into(),
            test: no_comprehensive,
        };
        let forward = ConstraintSet {
            budget_limit_eur: Some(10_000.0),
            custom: vec![a.clone(), b.clone()],
            ..ConstraintSet::default()
        };
        let backward = ConstraintSet {
            budget_limit_eur: Some(10_000.0),
            custom: vec![b, a],
            ..ConstraintSet::default()
        };
        let once = apply_constraints(&m, &pairs, &forward).unwrap();
        let twice = apply_constraints(&m, &once, &forward).unwrap();
        let reordered = apply_constraints(&m, &pairs, &backward).unwrap();
        assert_eq!(once, twice);
        assert_eq!(once, reordered);
        assert!(!once.is_empty());
    }
}
