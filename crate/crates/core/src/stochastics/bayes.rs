//! Beta-binomial conjugate updating.

use super::StochasticsError;

/// A beta posterior over an event probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaPosterior {
    pub a: f64,
    pub b: f64,
}

impl BetaPosterior {
    pub fn mean(&self) -> f64 {
        self.a / (self.a + self.b)
    }
}

/// Updates a beta(`prior_a`, `prior_b`) prior with `successes` out of
/// `trials` observations: the posterior is beta(a + s, b + n - s).
pub fn beta_binomial_update(
    prior_a: f64,
    prior_b: f64,
    successes: u64,
    trials: u64,
) -> Result<BetaPosterior, StochasticsError> {
    if !(prior_a.is_finite() && prior_a > 0.0) {
        return Err(StochasticsError::NonPositivePrior { field: "prior_a", value: prior_a });
    }
    if !(prior_b.is_finite() && prior_b > 0.0) {
        return Err(StochasticsError::NonPositivePrior { field: "prior_b", value: prior_b });
    }
    if successes > trials {
        return Err(StochasticsError::SuccessesExceedTrials { successes, trials });
    }
    Ok(BetaPosterior {
        a: prior_a + successes as f64,
        b: prior_b + (trials - successes) as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fire_history_update_is_exact() {
        // Jeffreys prior beta(0.5, 0.5) with 147 fires in 6467
        // building-years gives beta(147.5, 6320.5), mean 0.0228046.
        let post = beta_binomial_update(0.5, 0.5, 147, 6467).unwrap();
        assert_eq!(post.a, 147.5);
        assert_eq!(post.b, 6320.5);
        assert!((post.mean() - 0.022805).abs() < 1e-6, "mean {}", post.mean());
    }

    #[test]
    fn empty_update_returns_the_prior() {
        let post = beta_binomial_update(0.5, 0.5, 0, 0).unwrap();
        assert_eq!(post, BetaPosterior { a: 0.5, b: 0.5 });
    }

    #[test]
    fn more_successes_than_trials_is_an_error() {
        match beta_binomial_update(1.0, 1.0, 3, 2) {
            Err(StochasticsError::SuccessesExceedTrials { successes: 3, trials: 2 }) => {}
            other => panic!("unexpected {:?}", other),
        }
    }

    #[test]
    fn non_positive_priors_are_rejected() {
        assert!(matches!(
            beta_binomial_update(0.0, 1.0, 0, 1),
            Err(StochasticsError::NonPositivePrior { field: "prior_a", .. })
        ));
        assert!(matches!(
            beta_binomial_update(1.0, -2.0, 0, 1),
            Err(StochasticsError::NonPositivePrior { field: "prior_b", .. })
        ));
    }
}
