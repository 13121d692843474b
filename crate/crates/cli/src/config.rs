//! Run configuration: model parameters, solver budgets, and the seed.
//!
//! A configuration file must spell out every model parameter; only the
//! seed and the solver budgets have documented defaults.  The bundled
//! default file describes the reference scenario and must stay equal to
//! the in-code parameter defaults, which a test enforces.

use std::fs;
use std::path::Path;

use ara_core::casestudy::{AttackerParams, CaseStudy, DefenderParams, SolverBudgets};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Bundled reference configuration.
pub const DEFAULT_CONFIG_TOML: &str = include_str!("default.toml");

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    /// Root seed of every random stream in the run.
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub solver: SolverBudgets,
    pub defender: DefenderParams,
    pub attacker: AttackerParams,
}

impl Default for ModelConfig {
    fn default() -> Self {
        ModelConfig {
            seed: 0,
            solver: SolverBudgets::default(),
            defender: DefenderParams::default(),
            attacker: AttackerParams::default(),
        }
    }
}

impl ModelConfig {
    /// Parses and validates a configuration document.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let config: ModelConfig = toml::from_str(text)
            .map_err(|e| CliError::Config(format!("cannot parse configuration: {e}")))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| {
            CliError::Config(format!("cannot read configuration {}: {e}", path.display()))
        })?;
        Self::parse(&text)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.solver
            .validate()
            .map_err(|e| CliError::Config(e.to_string()))?;
        self.study().map(|_| ())
    }

    /// The validated model this configuration describes.
    pub fn study(&self) -> Result<CaseStudy, CliError> {
        CaseStudy::new(self.defender.clone(), self.attacker.clone())
            .map_err(|e| CliError::Config(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_default_parses_and_matches_the_code_defaults() {
        let config = ModelConfig::parse(DEFAULT_CONFIG_TOML).unwrap();
        assert_eq!(config, ModelConfig::default());
    }

    #[test]
    fn round_trips_through_serialization() {
        let config = ModelConfig::parse(DEFAULT_CONFIG_TOML).unwrap();
        let text = toml::to_string(&config).unwrap();
        let reparsed = ModelConfig::parse(&text).unwrap();
        assert_eq!(config, reparsed);
    }

    #[test]
    fn missing_model_fields_are_rejected() {
        let text = DEFAULT_CONFIG_TOML.replace("fire_rate_per_year = 0.022\n", "");
        let err = ModelConfig::parse(&text).unwrap_err();
        assert!(err.to_string().contains("fire_rate_per_year"), "{err}");
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let text = format!("{DEFAULT_CONFIG_TOML}\nwarp_drive = 1\n");
        assert!(ModelConfig::parse(&text).is_err());
    }

    #[test]
    fn missing_seed_and_solver_budgets_default() {
        let stripped: String = DEFAULT_CONFIG_TOML
            .lines()
            .skip_while(|l| !l.starts_with("[defender]"))
            .map(|l| format!("{l}\n"))
            .collect();
        let config = ModelConfig::parse(&stripped).unwrap();
        assert_eq!(config.seed, 0);
        assert_eq!(config.solver, SolverBudgets::default());
    }

    #[test]
    fn invalid_parameter_errors_name_the_field() {
        let text = DEFAULT_CONFIG_TOML.replace(
            "fire_duration_protected_min_minutes = 0.8",
            "fire_duration_protected_min_minutes = 99.0",
        );
        let err = ModelConfig::parse(&text).unwrap_err();
        assert!(err.to_string().contains("fire_duration"), "{err}");
    }
}
