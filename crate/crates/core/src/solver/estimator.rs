//! Monte Carlo expected-utility estimation for one defender decision.

use rayon::prelude::*;

use super::{AttackPolicyTable, DefenderModel, SolveError};
use crate::stochastics::RngStream;

/// Draws are processed in fixed-size chunks whose partial sums are folded
/// in chunk order, so the summation order (and hence the result bits) never
/// depends on how many worker threads ran.
const CHUNK: usize = 1024;

/// Expected utility of one decision with its Monte Carlo error.
#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationResult {
    pub decision: String,
    pub expected_utility: f64,
    /// Sample standard deviation divided by sqrt(samples).
    pub standard_error: f64,
    pub samples: usize,
}

/// Estimates the expected utility of `decision` by averaging
/// `utility(baseline + sampled cost)` over `samples` draws.
///
/// Sample `j` always consumes the sub-stream `rng.substream(&[j])`: the
/// estimate is a pure function of `(seed, stream, samples)`, and two
/// decisions evaluated from the same base stream share their incident
/// randomness (common random numbers).
pub fn estimate_expected_utility<M: DefenderModel + ?Sized>(
    model: &M,
    decision: &M::Decision,
    table: &AttackPolicyTable,
    samples: usize,
    rng: &RngStream,
) -> Result<EvaluationResult, SolveError> {
    if samples == 0 {
        return Err(SolveError::Config("sample count must be positive".into()));
    }
    let defence = model.defence(decision);
    let row = table
        .row(&defence)
        .ok_or(SolveError::MissingDefence { defence })?;

    let chunks = samples.div_ceil(CHUNK);
    let partials: Vec<Result<(f64, f64), SolveError>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let lo = c * CHUNK;
            let hi = ((c + 1) * CHUNK).min(samples);
            let (mut sum, mut sum_sq) = (0.0, 0.0);
            for j in lo..hi {
                let mut stream = rng.substream(&[j as u64]);
                let cost = model.sample_cost(decision, row, &mut stream);
                if !cost.is_finite() {
                    return Err(SolveError::NonFiniteCost {
                        decision: model.label(decision),
                        sample: j,
                        value: cost,
                    });
                }
                let u = model.utility(model.baseline_cost() + cost);
                sum += u;
                sum_sq += u * u;
            }
            Ok((sum, sum_sq))
        })
        .collect();

    let (mut sum, mut sum_sq) = (0.0, 0.0);
    for partial in partials {
        let (s, q) = partial?;
        sum += s;
        sum_sq += q;
    }

    let n = samples as f64;
    let mean = sum / n;
    let standard_error = if samples > 1 {
        let var = ((sum_sq - n * mean * mean) / (n - 1.0)).max(0.0);
        (var / n).sqrt()
    } else {
        0.0
    };
    Ok(EvaluationResult {
        decision: model.label(decision),
        expected_utility: mean,
        standard_error,
        samples,
    })
}
