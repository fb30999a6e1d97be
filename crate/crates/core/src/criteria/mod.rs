//! Analytic criteria as named, citable verdicts.

pub mod delta;
pub mod deltaprime;
pub mod model;
pub mod potential;
pub mod report;
pub mod resolvent;
mod support;
pub mod verdict;

pub use delta::{
    berezanskii_bound, carleman, deficiency_one_delta, deficiency_one_periodic, delta_discrete, delta_semibounded,
    delta_semibounded_uniform, dennis_wall, sqrt_knots_not_semibounded, DiscreteTest, Side,
};
pub use deltaprime::{deltaprime_discrete, deltaprime_selfadjoint, deltaprime_semibounded};
pub use potential::{step_potential_berezanskii, step_potential_carleman};
pub use report::{analyze, transfer, Conclusion, Conclusions, Report, Statement};
pub use resolvent::resolvent_comparability;
pub use model::{InteractionKind, InteractionModel, Potential, Strengths};
pub use verdict::{Claim, Evidence, LimitClass, SeriesClass, Verdict};
