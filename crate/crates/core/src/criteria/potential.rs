//! Delta interactions on `d_n = 1/n` with the step potential `q_a`.

use super::model::{InteractionModel, Potential};
use super::support::nonneg_everywhere;
use super::verdict::{Claim, LimitClass, SeriesClass, Verdict};
use crate::error::{Error, Result};
use crate::jacobi::{build_step_potential, Entries, JacobiOperatorSpec};
use crate::seqmodel::{limit_probe, series_probe, Outcome, ProbeConfig, Seq};

const CARLEMAN_CITE: &str = "Jacobi matrix with sum 1/b_n = inf is self-adjoint (Carleman)";
const BEREZANSKII_CITE: &str = "Berezanskii test: bounded diagonal, sum 1/b_n < inf and b_{n-1} b_{n+1} <= b_n^2 give deficiency one";

fn step_matrix(m: &InteractionModel) -> Result<JacobiOperatorSpec> {
    match m.potential() {
        Potential::StepPotential { a } => build_step_potential(a, m.strengths()),
        Potential::None => Err(Error::NotApplicable("model has no step potential".into())),
    }
}

fn simple(j: &JacobiOperatorSpec) -> (Seq, Seq) {
    match &j.entries {
        Entries::Simple { diag, off } => (diag.clone(), off.abs()),
        Entries::Interleaved { .. } => unreachable!("the step-potential matrix is not interleaved"),
    }
}

/// Holds(SelfAdjoint) when the off-diagonal reciprocals are not summable.
pub fn step_potential_carleman(m: &InteractionModel, cfg: &ProbeConfig) -> Result<Verdict> {
    let (_, b) = simple(&step_matrix(m)?);
    let p = series_probe(&b.recip(), cfg);
    let v = Verdict::new("step_potential_carleman", Claim::SelfAdjoint, CARLEMAN_CITE).with("sum 1/b_n", p.clone());
    Ok(match SeriesClass::of(&p) {
        SeriesClass::Infinite => v.holds(),
        SeriesClass::Finite(_) => v.inconclusive("sum 1/b_n converges; the test is only sufficient"),
        SeriesClass::Unknown => v.inconclusive("could not decide sum 1/b_n"),
    })
}

/// Holds(DeficiencyOne) for the boundary matrix of the step-potential model.
pub fn step_potential_berezanskii(m: &InteractionModel, cfg: &ProbeConfig) -> Result<Verdict> {
    let (a, b) = simple(&step_matrix(m)?);
    let v = Verdict::new("step_potential_berezanskii", Claim::DeficiencyOne, BEREZANSKII_CITE);
    let diag = limit_probe(&a.abs(), cfg);
    if LimitClass::of(&diag).upper() == f64::INFINITY {
        return Ok(v.with("|a_n|", diag).inconclusive("diagonal is not bounded"));
    }
    let recip = series_probe(&b.recip(), cfg);
    let v = v.with("|a_n|", diag);
    match SeriesClass::of(&recip) {
        SeriesClass::Finite(_) => {}
        SeriesClass::Infinite => return Ok(v.with("sum 1/b_n", recip).inconclusive("sum 1/b_n diverges")),
        SeriesClass::Unknown => return Ok(v.with("sum 1/b_n", recip).inconclusive("could not decide sum 1/b_n")),
    }
    let concave = Seq::constant(1.0) - b.lag(1, 0.0) * b.shift(1) / (&b * &b);
    let (conc, conc_p) = nonneg_everywhere(&concave, 1e-12, cfg);
    let v = v.with("sum 1/b_n", recip).with("1 - b_{n-1} b_{n+1} / b_n^2", conc_p);
    Ok(match conc {
        Outcome::Holds => v.holds(),
        _ => v.inconclusive("b_{n-1} b_{n+1} <= b_n^2 fails"),
    })
}
