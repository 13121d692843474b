//! The attacker's predictive attack distribution, one row per defence.

use super::SolveError;

/// Probability of each attack count, conditional on the defence the
/// attacker observes.
///
/// Rows are indexed by defence label and aligned with `attack_space`.
/// Every row is validated to be a probability vector: entries in `[0, 1]`
/// summing to 1 within `1e-9`.
#[derive(Debug, Clone, PartialEq)]
pub struct AttackPolicyTable {
    attack_space: Vec<u32>,
    defences: Vec<String>,
    rows: Vec<Vec<f64>>,
    draws_used: usize,
}

impl AttackPolicyTable {
    pub const ROW_SUM_TOLERANCE: f64 = 1e-9;

    /// Builds a table from `(defence label, probability row)` pairs.
    pub fn from_rows(
        attack_space: Vec<u32>,
        rows: Vec<(String, Vec<f64>)>,
        draws_used: usize,
    ) -> Result<Self, SolveError> {
        if attack_space.is_empty() {
            return Err(SolveError::InvalidTable("attack space is empty".into()));
        }
        if rows.is_empty() {
            return Err(SolveError::InvalidTable("no defence rows".into()));
        }
        let mut defences = Vec::with_capacity(rows.len());
        let mut probs = Vec::with_capacity(rows.len());
        for (defence, row) in rows {
            if defences.contains(&defence) {
                return Err(SolveError::InvalidTable(format!(
                    "duplicate defence `{defence}`"
                )));
            }
            if row.len() != attack_space.len() {
                return Err(SolveError::InvalidTable(format!(
                    "row `{defence}` has {} entries for {} attacks",
                    row.len(),
                    attack_space.len()
                )));
            }
            let mut sum = 0.0;
            for &p in &row {
                if !(0.0..=1.0).contains(&p) {
                    return Err(SolveError::InvalidTable(format!(
                        "row `{defence}` contains probability {p}"
                    )));
                }
                sum += p;
            }
            if (sum - 1.0).abs() > Self::ROW_SUM_TOLERANCE {
                return Err(SolveError::InvalidTable(format!(
                    "row `{defence}` sums to {sum}"
                )));
            }
            defences.push(defence);
            probs.push(row);
        }
        Ok(AttackPolicyTable {
            attack_space,
            defences,
            rows: probs,
            draws_used,
        })
    }

    pub fn attack_space(&self) -> &[u32] {
        &self.attack_space
    }

    pub fn defences(&self) -> &[String] {
        &self.defences
    }

    /// Number of hyper-draws behind each row.
    pub fn draws_used(&self) -> usize {
        self.draws_used
    }

    /// Probability row for a defence label.
    pub fn row(&self, defence: &str) -> Option<&[f64]> {
        self.defences
            .iter()
            .position(|d| d == defence)
            .map(|i| self.rows[i].as_slice())
    }

    /// Probability mass at or above `attack` for a defence.
    pub fn tail_mass(&self, defence: &str, attack: u32) -> Option<f64> {
        let row = self.row(defence)?;
        Some(
            self.attack_space
                .iter()
                .zip(row)
                .filter(|(a, _)| **a >= attack)
                .map(|(_, p)| p)
                .sum(),
        )
    }

    /// Attack count with the highest probability for a defence; ties fall
    /// to the smaller count.
    pub fn modal_attack(&self, defence: &str) -> Option<u32> {
        let row = self.row(defence)?;
        let mut best = (0usize, f64::NEG_INFINITY);
        for (i, &p) in row.iter().enumerate() {
            if p > best.1 {
                best = (i, p);
            }
        }
        Some(self.attack_space[best.0])
    }
}
