//! Sequence tests for `(H_1 - z)^-1 - (H_2 - z)^-1` in a Schatten class.

use super::delta::delta_selfadjointness;
use super::deltaprime::deltaprime_selfadjoint;
use super::model::{InteractionKind, InteractionModel, Potential};
use super::verdict::{Claim, Verdict};
use crate::error::{Error, Result};
use crate::seqmodel::{lp_membership, LpIndex, Outcome, ProbeConfig, ProbeResult, Seq};

const DELTA_CITE: &str = "resolvent difference in S_p when (alpha1_n - alpha2_n)/d_{n+1} is in l_p (c0 for p = inf)";
const DELTAPRIME_CITE: &str = "resolvent difference in S_p when (1/beta1 - 1/beta2)(1/d_n + 1/d_{n+1}) or (beta1 - beta2)/d_n^3 is in l_p (c0 for p = inf)";

/// `S_inf` is the compact class, so the sequence must be null.
fn sequence_class(p: LpIndex) -> LpIndex {
    match p {
        LpIndex::P(q) => LpIndex::P(q),
        LpIndex::Infinity | LpIndex::C0 => LpIndex::C0,
    }
}

fn selfadjoint(m: &InteractionModel, cfg: &ProbeConfig) -> Result<bool> {
    Ok(match m.kind() {
        InteractionKind::Delta => delta_selfadjointness(m, cfg)?.is_some(),
        InteractionKind::DeltaPrime => deltaprime_selfadjoint(m, cfg)?.outcome == Outcome::Holds,
    })
}

pub fn resolvent_comparability(m1: &InteractionModel, m2: &InteractionModel, p: LpIndex, cfg: &ProbeConfig) -> Result<Verdict> {
    if m1.kind() != m2.kind() {
        return Err(Error::domain("models have different interaction kinds"));
    }
    if m1.partition() != m2.partition() {
        return Err(Error::domain("models live on different partitions"));
    }
    if m1.potential() != Potential::None || m2.potential() != Potential::None {
        return Err(Error::NotApplicable("comparability tests cover models without potential".into()));
    }
    let class = sequence_class(p);
    let claim = Claim::ResolventDiffInSp { p };
    let d = m1.d();
    let (a, b) = (m1.strengths(), m2.strengths());
    let (cite, tests): (&str, Vec<(&str, Seq)>) = match m1.kind() {
        InteractionKind::Delta => (DELTA_CITE, vec![("(alpha1_n - alpha2_n) / d_{n+1}", (a - b) / d.shift(1))]),
        InteractionKind::DeltaPrime => (
            DELTAPRIME_CITE,
            vec![
                ("(1/beta1_n - 1/beta2_n)(1/d_n + 1/d_{n+1})", (a.recip() - b.recip()) * (d.recip() + d.shift(1).recip())),
                ("(beta1_n - beta2_n) / d_n^3", (a - b) / (d * d * d)),
            ],
        ),
    };
    let id = "resolvent_comparability";
    if !(selfadjoint(m1, cfg)? && selfadjoint(m2, cfg)?) {
        return Ok(Verdict::new(id, claim, cite).inconclusive("self-adjointness of both operators not established"));
    }
    let mut evidence: Vec<(&str, ProbeResult)> = Vec::new();
    for (label, s) in tests {
        let (o, probe) = lp_membership(&s, class, cfg);
        if o == Outcome::Holds {
            return Ok(Verdict::new(id, claim, cite).with(label, probe).holds().note(format!("sequence in {class}")));
        }
        evidence.push((label, probe));
    }
    let mut v = Verdict::new(id, claim, cite);
    for (label, probe) in evidence {
        v = v.with(label, probe);
    }
    Ok(v.inconclusive(format!("no test sequence is in {class}; the tests are only sufficient")))
}
