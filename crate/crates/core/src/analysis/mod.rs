//! Decision analyses layered on top of the solvers: budget and policy
//! constraints, one-at-a-time parameter sweeps, return-on-investment
//! curves over security budgets, and insurance reservation pricing.
//!
//! All analyses compare expected utilities that differ by far less than
//! independent Monte Carlo noise at realistic sample budgets.  Every
//! function here therefore evaluates its comparison points from the same
//! base stream, so that two evaluations differ only through the quantity
//! being varied.  Under that contract a baseline sweep point reproduces
//! the baseline solve bit for bit, and filtering a ranking by budget is
//! exactly equivalent to re-solving the restricted problem.

mod constraint;
mod reservation;
mod rosi;
mod sensitivity;

pub use constraint::{apply_constraints, ConstraintSet, InsuranceRequirement, LabelledPredicate};
pub use reservation::{insurance_reservation_price, reservation_price, ReservationPrice};
pub use rosi::{rosi_curve, RosiCurve, RosiOutcome, RosiPoint};
pub use sensitivity::{
    sensitivity_labels, sensitivity_sweep, SensitivityReport, SensitivityRow,
};

use thiserror::Error;

use crate::casestudy::CaseStudyError;
use crate::SolveError;

#[derive(Debug, Error)]
pub enum AnalysisError {
    /// Constraints excluded every decision.
    #[error("no feasible decision: {0}")]
    Infeasible(String),
    #[error("unknown parameter `{parameter}`; registered parameters: {valid}")]
    UnknownParameter { parameter: String, valid: String },
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    CaseStudy(#[from] CaseStudyError),
}
