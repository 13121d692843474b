//! CSV and metadata emission.
//!
//! Every numeric cell is printed in scientific notation with 12
//! significant digits, so probability rows survive a round trip through
//! the text format to well within 1e-9.  Writers buffer the whole
//! document and write it in one pass after all computation has finished;
//! identical solver output therefore produces byte-identical files.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use ara_core::{AttackPolicyTable, DefenderRanking};
use serde::Serialize;

/// Formats one numeric cell with 12 significant digits.
pub fn cell(value: f64) -> String {
    format!("{value:.11e}")
}

fn write(path: &Path, contents: &str) -> io::Result<()> {
    fs::write(path, contents)
}

/// Writes `attack_table.csv`: one row per defence, one probability
/// column per attack count.
pub fn write_attack_table(dir: &Path, table: &AttackPolicyTable) -> io::Result<PathBuf> {
    let mut out = String::from("defence");
    for a in table.attack_space() {
        out.push_str(&format!(",a{a}"));
    }
    out.push('\n');
    for defence in table.defences() {
        out.push_str(defence);
        for p in table.row(defence).expect("listed defence has a row") {
            out.push(',');
            out.push_str(&cell(*p));
        }
        out.push('\n');
    }
    let path = dir.join("attack_table.csv");
    write(&path, &out)?;
    Ok(path)
}

/// Writes `defender_rank.csv`: decisions best first.
pub fn write_defender_rank<D>(dir: &Path, ranking: &DefenderRanking<D>) -> io::Result<PathBuf> {
    let mut out = String::from("rank,decision,security_spend_eur,expected_utility,standard_error,samples\n");
    for (i, entry) in ranking.iter().enumerate() {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            i + 1,
            entry.result.decision,
            cell(entry.fixed_cost),
            cell(entry.result.expected_utility),
            cell(entry.result.standard_error),
            entry.result.samples,
        ));
    }
    let path = dir.join("defender_rank.csv");
    write(&path, &out)?;
    Ok(path)
}

/// Writes `rosi.csv`: best affordable decision per budget level.
/// Budget levels with no affordable decision leave the outcome cells
/// empty.
pub fn write_rosi(dir: &Path, curve: &ara_core::analysis::RosiCurve) -> io::Result<PathBuf> {
    let mut out =
        String::from("budget_eur,best_decision,security_spend_eur,expected_utility,standard_error\n");
    for point in &curve.points {
        match &point.outcome {
            Some(o) => out.push_str(&format!(
                "{},{},{},{},{}\n",
                cell(point.budget_eur),
                o.best_label,
                cell(o.security_spend_eur),
                cell(o.expected_utility),
                cell(o.standard_error),
            )),
            None => out.push_str(&format!("{},,,,\n", cell(point.budget_eur))),
        }
    }
    let path = dir.join("rosi.csv");
    write(&path, &out)?;
    Ok(path)
}

/// Writes `sensitivity.csv`: best decision per sweep value.
pub fn write_sensitivity(
    dir: &Path,
    report: &ara_core::analysis::SensitivityReport,
) -> io::Result<PathBuf> {
    let mut out = String::from("parameter,value,best_decision,expected_utility\n");
    for row in &report.rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            report.parameter,
            cell(row.value),
            row.best_label,
            cell(row.expected_utility),
        ));
    }
    let path = dir.join("sensitivity.csv");
    write(&path, &out)?;
    Ok(path)
}

/// Reservation-price summary embedded in the metadata sidecar.
#[derive(Debug, Serialize)]
pub struct ReservationMeta {
    pub decision: String,
    pub alternative: String,
    pub baseline_premium_eur: f64,
    pub multiplier: f64,
    pub reservation_premium_eur: f64,
    pub preferred_at_baseline: bool,
}

impl From<&ara_core::analysis::ReservationPrice> for ReservationMeta {
    fn from(p: &ara_core::analysis::ReservationPrice) -> Self {
        ReservationMeta {
            decision: p.decision_label.clone(),
            alternative: p.alternative_label.clone(),
            baseline_premium_eur: p.baseline_premium_eur,
            multiplier: p.multiplier,
            reservation_premium_eur: p.reservation_premium_eur,
            preferred_at_baseline: p.preferred_at_baseline,
        }
    }
}

/// Contents of `meta.json`, written once per run.
///
/// The sidecar records how the artifacts were produced; it contains the
/// wall clock and thread count and is therefore the one output file that
/// is not byte-stable across runs.
#[derive(Debug, Serialize)]
pub struct RunMeta {
    pub command: String,
    pub engine: String,
    pub seed: u64,
    pub hyper_draws: usize,
    pub inner_samples: usize,
    pub samples: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget_eur: Option<f64>,
    /// Explicit thread request; absent means the default pool size.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threads: Option<usize>,
    pub wall_clock_seconds: f64,
    pub outputs: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reservation: Option<ReservationMeta>,
}

pub fn write_meta(dir: &Path, meta: &RunMeta) -> io::Result<PathBuf> {
    let path = dir.join("meta.json");
    let mut text = serde_json::to_string_pretty(meta).expect("metadata serializes");
    text.push('\n');
    write(&path, &text)?;
    Ok(path)
}
