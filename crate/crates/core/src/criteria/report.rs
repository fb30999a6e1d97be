//! Running every applicable criterion and lifting the verdicts to the Hamiltonian.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::delta::{
    berezanskii_bound, carleman, deficiency_one_delta, deficiency_one_periodic, delta_discrete, delta_semibounded,
    delta_semibounded_uniform, dennis_wall, sqrt_knots_not_semibounded, DiscreteTest, Side,
};
use super::deltaprime::{deltaprime_discrete, deltaprime_selfadjoint, deltaprime_semibounded};
use super::model::{InteractionKind, InteractionModel, Potential};
use super::potential::{step_potential_berezanskii, step_potential_carleman};
use super::verdict::{Claim, LimitClass, Verdict};
use crate::error::{Error, Result};
use crate::seqmodel::{limit_probe, Partition, ProbeConfig};
use crate::string::{hamburger, kac_krein, string_from_deltaprime};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Statement {
    SelfAdjoint,
    DeficiencyOne,
    Discrete,
    NotDiscrete,
    EveryExtensionDiscrete,
    SemiboundedBelow,
    NotSemibounded,
}

/// One Hamiltonian-level statement and what supports it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Conclusion {
    pub statement: Statement,
    pub because: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Conclusions {
    /// `n_+ = n_-` when known
    pub deficiency_indices: Option<u8>,
    pub discrete: Option<bool>,
    pub every_extension_discrete: bool,
    pub semibounded_below: Option<bool>,
    pub chain: Vec<Conclusion>,
}

impl Conclusions {
    pub fn has(&self, s: Statement) -> bool {
        self.chain.iter().any(|c| c.statement == s)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub model: InteractionModel,
    pub verdicts: Vec<Verdict>,
    pub conclusions: Conclusions,
}

fn supporters(verdicts: &[Verdict], claim: Claim) -> Vec<String> {
    verdicts
        .iter()
        .filter(|v| v.established().contains(&claim))
        .map(|v| v.criterion_id.clone())
        .collect()
}

/// Maps operator-level verdicts to Hamiltonian conclusions.
///
/// Discreteness of `H` needs both a discrete boundary operator and `d_n -> 0`;
/// deficiency one makes every self-adjoint extension discrete.
pub fn transfer(verdicts: &[Verdict], x: &Partition, cfg: &ProbeConfig) -> Result<Conclusions> {
    for (a, b) in [
        (Claim::SelfAdjoint, Claim::DeficiencyOne),
        (Claim::Discrete, Claim::NotDiscrete),
        (Claim::SemiboundedBelow, Claim::NotSemibounded),
    ] {
        let (pa, pb) = (supporters(verdicts, a), supporters(verdicts, b));
        if !pa.is_empty() && !pb.is_empty() {
            return Err(Error::Integrity(format!(
                "{} established by {pa:?} but {} by {pb:?}",
                a.label(),
                b.label()
            )));
        }
    }
    let mut out = Conclusions::default();
    let sa = supporters(verdicts, Claim::SelfAdjoint);
    let def = supporters(verdicts, Claim::DeficiencyOne);
    let disc = supporters(verdicts, Claim::Discrete);
    let not_disc = supporters(verdicts, Claim::NotDiscrete);
    if !sa.is_empty() {
        out.deficiency_indices = Some(0);
        out.chain.push(Conclusion { statement: Statement::SelfAdjoint, because: sa.clone() });
    }
    if !def.is_empty() {
        if !not_disc.is_empty() {
            return Err(Error::Integrity(format!(
                "deficiency one by {def:?} forces discrete extensions, but {not_disc:?} claim not discrete"
            )));
        }
        out.deficiency_indices = Some(1);
        out.every_extension_discrete = true;
        out.chain.push(Conclusion { statement: Statement::DeficiencyOne, because: def.clone() });
        out.chain.push(Conclusion { statement: Statement::EveryExtensionDiscrete, because: def });
    } else {
        let d_lim = limit_probe(x.d(), cfg);
        let lc = LimitClass::of(&d_lim);
        if !not_disc.is_empty() {
            out.discrete = Some(false);
            out.chain.push(Conclusion { statement: Statement::NotDiscrete, because: not_disc });
        } else if !disc.is_empty() && lc.is_zero() {
            let mut because = disc;
            because.push("d_n -> 0".into());
            out.discrete = Some(true);
            out.chain.push(Conclusion { statement: Statement::Discrete, because });
        } else if lc.bounded_away_from_zero() && (!disc.is_empty() || !sa.is_empty()) {
            let mut because = disc;
            because.extend(sa);
            because.push("d_n does not tend to 0".into());
            out.discrete = Some(false);
            out.chain.push(Conclusion { statement: Statement::NotDiscrete, because });
        }
    }
    let sb = supporters(verdicts, Claim::SemiboundedBelow);
    let nsb = supporters(verdicts, Claim::NotSemibounded);
    if !sb.is_empty() {
        out.semibounded_below = Some(true);
        out.chain.push(Conclusion { statement: Statement::SemiboundedBelow, because: sb });
    } else if !nsb.is_empty() {
        out.semibounded_below = Some(false);
        out.chain.push(Conclusion { statement: Statement::NotSemibounded, because: nsb });
    }
    Ok(out)
}

type Job<'a> = Box<dyn Fn() -> Result<Verdict> + Send + Sync + 'a>;

fn jobs<'a>(m: &'a InteractionModel, cfg: &'a ProbeConfig) -> Vec<Job<'a>> {
    let mut out: Vec<Job<'a>> = Vec::new();
    match (m.kind(), m.potential()) {
        (InteractionKind::Delta, Potential::StepPotential { .. }) => {
            out.push(Box::new(move || step_potential_carleman(m, cfg)));
            out.push(Box::new(move || step_potential_berezanskii(m, cfg)));
        }
        (InteractionKind::Delta, Potential::None) => {
            out.push(Box::new(move || carleman(m, cfg)));
            out.push(Box::new(move || dennis_wall(m, cfg)));
            out.push(Box::new(move || berezanskii_bound(m, Side::Upper, cfg)));
            out.push(Box::new(move || berezanskii_bound(m, Side::Lower, cfg)));
            out.push(Box::new(move || deficiency_one_delta(m, cfg)));
            out.push(Box::new(move || deficiency_one_periodic(m, cfg)));
            for t in [DiscreteTest::Chihara1, DiscreteTest::Chihara2, DiscreteTest::Cojuhari] {
                out.push(Box::new(move || delta_discrete(m, t, cfg)));
            }
            out.push(Box::new(move || delta_semibounded(m, cfg)));
            out.push(Box::new(move || delta_semibounded_uniform(m, cfg)));
            out.push(Box::new(move || sqrt_knots_not_semibounded(m, cfg)));
        }
        (InteractionKind::DeltaPrime, _) => {
            out.push(Box::new(move || deltaprime_selfadjoint(m, cfg)));
            out.push(Box::new(move || deltaprime_discrete(m, cfg)));
            out.push(Box::new(move || deltaprime_semibounded(m, cfg)));
            out.push(Box::new(move || Ok(hamburger(&string_from_deltaprime(m.partition(), m.strengths())?, cfg))));
            out.push(Box::new(move || Ok(kac_krein(&string_from_deltaprime(m.partition(), m.strengths())?, cfg).0)));
        }
    }
    out
}

/// Runs every applicable criterion concurrently; verdict order follows the job list.
pub fn analyze(m: &InteractionModel, cfg: &ProbeConfig) -> Result<Report> {
    let results: Vec<Result<Verdict>> = jobs(m, cfg).par_iter().map(|job| job()).collect();
    let mut verdicts = Vec::with_capacity(results.len());
    for r in results {
        match r {
            Ok(v) => verdicts.push(v),
            Err(Error::NotApplicable(_)) => {}
            // the string picture needs positive strengths
            Err(Error::Domain(msg)) if msg.starts_with("no string picture") => {}
            Err(e) => return Err(e),
        }
    }
    let conclusions = transfer(&verdicts, m.partition(), cfg)?;
    Ok(Report { model: m.clone(), verdicts, conclusions })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqmodel::{Outcome, SequenceSpec};
    use crate::weyl::solve_a0;

    fn cfg() -> ProbeConfig {
        ProbeConfig::default()
    }

    fn harmonic(alpha: SequenceSpec) -> InteractionModel {
        InteractionModel::delta(Partition::gaps(SequenceSpec::power(1.0, -1.0)).unwrap(), alpha).unwrap()
    }

    #[test]
    fn deficiency_one_example() {
        let r = analyze(&harmonic(SequenceSpec::affine(-1.0, -2.0)), &cfg()).unwrap();
        assert_eq!(r.conclusions.deficiency_indices, Some(1));
        assert!(r.conclusions.every_extension_discrete);
    }

    #[test]
    fn potential_flips_deficiency() {
        let m = harmonic(SequenceSpec::affine(-2.0, -4.0));
        let r = analyze(&m, &cfg()).unwrap();
        assert_eq!(r.conclusions.deficiency_indices, Some(0));
        let m = m.with_potential(Potential::StepPotential { a: solve_a0() }).unwrap();
        let r = analyze(&m, &cfg()).unwrap();
        assert_eq!(r.conclusions.deficiency_indices, Some(1));
    }

    #[test]
    fn transfer_gates_on_vanishing_gaps() {
        let disc = Verdict::new("b", Claim::Discrete, "c").with("p", crate::seqmodel::ProbeResult::exact(crate::seqmodel::ProbeKind::DivergesToInf)).holds();
        let unit = Partition::gaps(SequenceSpec::constant(1.0)).unwrap();
        let c = transfer(std::slice::from_ref(&disc), &unit, &cfg()).unwrap();
        assert_eq!(c.discrete, Some(false));
        let root = Partition::gaps(SequenceSpec::power(1.0, -0.5)).unwrap();
        let c = transfer(&[disc], &root, &cfg()).unwrap();
        assert_eq!(c.discrete, Some(true));
    }

    #[test]
    fn contradictions_raise() {
        let p = crate::seqmodel::ProbeResult::exact(crate::seqmodel::ProbeKind::DivergesToInf);
        let a = Verdict::new("a", Claim::SelfAdjoint, "c").with("p", p.clone()).holds();
        let b = Verdict::new("b", Claim::SelfAdjoint, "c").with("p", p).fails().implying(Claim::DeficiencyOne);
        let unit = Partition::gaps(SequenceSpec::constant(1.0)).unwrap();
        assert!(matches!(transfer(&[a, b], &unit, &cfg()), Err(Error::Integrity(_))));
    }

    #[test]
    fn deterministic_order() {
        let m = harmonic(SequenceSpec::power(1.0, 2.0));
        let ids = |r: &Report| r.verdicts.iter().map(|v| v.criterion_id.clone()).collect::<Vec<_>>();
        let a = analyze(&m, &cfg()).unwrap();
        let b = analyze(&m, &cfg()).unwrap();
        assert_eq!(ids(&a), ids(&b));
        assert_eq!(a.verdicts[0].criterion_id, "carleman");
        assert!(a.verdicts.iter().all(|v| v.well_formed()));
        assert!(a.verdicts.iter().any(|v| v.is(Outcome::Holds, Claim::SelfAdjoint)));
    }
}
