//! The Hamiltonian under study: sites, strengths and an optional step potential.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seqmodel::{Partition, PartitionSpec, ProbeConfig, Seq, SequenceSpec};

/// Number of leading strengths checked for `beta_n != 0`.
const NONZERO_CHECK: u64 = 1_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InteractionKind {
    Delta,
    DeltaPrime,
}

/// Strength sequence, either given directly or through its sum with the gaps.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Strengths {
    /// `beta_n = s_n - d_n`, written `{"sum_with_gaps": s}`
    SumWithGaps { sum_with_gaps: SequenceSpec },
    Direct(SequenceSpec),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Potential {
    #[default]
    None,
    /// `q_a = a^2 n^2` on `(x_{n-1}, x_n)` with `d_n = 1/n`
    StepPotential { a: f64 },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawModel", into = "RawModel")]
pub struct InteractionModel {
    kind: InteractionKind,
    partition: Partition,
    strengths: Strengths,
    potential: Potential,
    seq: Seq,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModel {
    kind: InteractionKind,
    partition: PartitionSpec,
    strengths: Strengths,
    #[serde(default, skip_serializing_if = "is_none")]
    potential: Potential,
}

fn is_none(p: &Potential) -> bool {
    *p == Potential::None
}

impl TryFrom<RawModel> for InteractionModel {
    type Error = Error;

    fn try_from(r: RawModel) -> Result<Self> {
        let partition = Partition::new(r.partition)?;
        InteractionModel::new(r.kind, partition, r.strengths, r.potential)
    }
}

impl From<InteractionModel> for RawModel {
    fn from(m: InteractionModel) -> Self {
        RawModel { kind: m.kind, partition: m.partition.spec().clone(), strengths: m.strengths, potential: m.potential }
    }
}

impl InteractionModel {
    pub fn new(kind: InteractionKind, partition: Partition, strengths: Strengths, potential: Potential) -> Result<Self> {
        let seq = match &strengths {
            Strengths::Direct(s) => {
                s.validate()?;
                Seq::spec(s.clone())
            }
            Strengths::SumWithGaps { sum_with_gaps } => {
                sum_with_gaps.validate()?;
                Seq::spec(sum_with_gaps.clone()) - partition.d()
            }
        };
        if kind == InteractionKind::DeltaPrime {
            let upto = seq.finite_horizon().map_or(NONZERO_CHECK, |h| h.min(NONZERO_CHECK));
            let vals = seq.eval_range(1, upto)?;
            if let Some(i) = vals.iter().position(|v| *v == 0.0 || !v.is_finite()) {
                return Err(Error::domain(format!("delta-prime strength beta({}) = {} must be nonzero", i + 1, vals[i])));
            }
            if seq.asym().and_then(|a| a.eventual_sign()) == Some(0) {
                return Err(Error::domain("delta-prime strengths vanish eventually"));
            }
        }
        if let Potential::StepPotential { a } = potential {
            if kind != InteractionKind::Delta {
                return Err(Error::domain("the step potential is only supported with delta interactions"));
            }
            if *partition.spec() != PartitionSpec::Gaps(SequenceSpec::power(1.0, -1.0)) {
                return Err(Error::domain("the step potential requires gaps d_n = 1/n"));
            }
            if !(a > 0.0 && a.is_finite()) {
                return Err(Error::domain(format!("potential parameter a = {a} must be positive")));
            }
        }
        Ok(InteractionModel { kind, partition, strengths, potential, seq })
    }

    pub fn delta(partition: Partition, alpha: SequenceSpec) -> Result<Self> {
        InteractionModel::new(InteractionKind::Delta, partition, Strengths::Direct(alpha), Potential::None)
    }

    pub fn delta_prime(partition: Partition, beta: SequenceSpec) -> Result<Self> {
        InteractionModel::new(InteractionKind::DeltaPrime, partition, Strengths::Direct(beta), Potential::None)
    }

    /// Delta-prime model fixed through `beta_n + d_n = s_n`.
    pub fn delta_prime_offset(partition: Partition, sum_with_gaps: SequenceSpec) -> Result<Self> {
        InteractionModel::new(
            InteractionKind::DeltaPrime,
            partition,
            Strengths::SumWithGaps { sum_with_gaps },
            Potential::None,
        )
    }

    pub fn with_potential(self, potential: Potential) -> Result<Self> {
        InteractionModel::new(self.kind, self.partition, self.strengths, potential)
    }

    pub fn kind(&self) -> InteractionKind {
        self.kind
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn strengths_spec(&self) -> &Strengths {
        &self.strengths
    }

    /// `alpha_n` or `beta_n`.
    pub fn strengths(&self) -> &Seq {
        &self.seq
    }

    pub fn potential(&self) -> Potential {
        self.potential
    }

    pub fn d(&self) -> &Seq {
        self.partition.d()
    }

    /// Whether `sum d_n = inf`; `None` when the probe cannot tell.
    pub fn half_line(&self, cfg: &ProbeConfig) -> Option<bool> {
        let (b, _) = self.partition.total_length(cfg);
        if b.is_nan() {
            None
        } else {
            Some(b.is_infinite())
        }
    }

    pub(crate) fn expect(&self, kind: InteractionKind, what: &str) -> Result<()> {
        if self.kind == kind {
            Ok(())
        } else {
            Err(Error::NotApplicable(format!("{what} needs a {kind:?} model")))
        }
    }
}

impl PartialEq for InteractionModel {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
            && self.partition == other.partition
            && self.strengths == other.strengths
            && self.potential == other.potential
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn harmonic() -> Partition {
        Partition::gaps(SequenceSpec::power(1.0, -1.0)).unwrap()
    }

    #[test]
    fn zero_beta_rejected() {
        let x = Partition::gaps(SequenceSpec::power(1.0, -2.0)).unwrap();
        let beta = SequenceSpec::power_sum(&[(1.0, 0.0), (-1.0, -2.0)]);
        assert!(matches!(InteractionModel::delta_prime(x, beta), Err(Error::Domain(_))));
    }

    #[test]
    fn step_potential_needs_harmonic_gaps() {
        let alpha = SequenceSpec::affine(-2.0, -4.0);
        let m = InteractionModel::delta(harmonic(), alpha.clone()).unwrap();
        assert!(m.with_potential(Potential::StepPotential { a: 1.5 }).is_ok());
        let unit = Partition::gaps(SequenceSpec::constant(1.0)).unwrap();
        let m = InteractionModel::delta(unit, alpha).unwrap();
        assert!(m.with_potential(Potential::StepPotential { a: 1.5 }).is_err());
    }

    #[test]
    fn json_round_trip() {
        let m = InteractionModel::delta_prime_offset(
            Partition::knots(SequenceSpec::power(1.0, 1.0 / 3.0)).unwrap(),
            SequenceSpec::power(2.0, -2.0),
        )
        .unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert!(s.contains("sum_with_gaps"));
        let back: InteractionModel = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        let v = back.strengths().eval(5).unwrap() + back.d().eval(5).unwrap();
        assert!((v - 2.0 / 25.0).abs() < 1e-15);
    }
}
