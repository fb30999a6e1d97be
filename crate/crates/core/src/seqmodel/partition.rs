//! Interaction sites `0 = x_0 < x_1 < ...` and their gaps.

use serde::{Deserialize, Serialize};

use super::probe::{limit_probe, series_probe, ProbeConfig, ProbeKind, ProbeResult};
use super::seq::Seq;
use super::spec::SequenceSpec;
use crate::error::SeqError;

/// Number of leading gaps checked for positivity on construction.
const POSITIVITY_CHECK: u64 = 1_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPartition", into = "RawPartition")]
pub enum PartitionSpec {
    /// gaps `d_n = x_n - x_{n-1}`
    Gaps(SequenceSpec),
    /// knots `x_n` with `x_0 = 0`
    Knots(SequenceSpec),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawPartition {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    d: Option<SequenceSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    x: Option<SequenceSpec>,
}

impl TryFrom<RawPartition> for PartitionSpec {
    type Error = String;

    fn try_from(r: RawPartition) -> Result<Self, String> {
        match (r.d, r.x) {
            (Some(d), None) => Ok(PartitionSpec::Gaps(d)),
            (None, Some(x)) => Ok(PartitionSpec::Knots(x)),
            _ => Err("partition needs exactly one of `d` (gaps) or `x` (knots)".into()),
        }
    }
}

impl From<PartitionSpec> for RawPartition {
    fn from(p: PartitionSpec) -> Self {
        match p {
            PartitionSpec::Gaps(d) => RawPartition { d: Some(d), x: None },
            PartitionSpec::Knots(x) => RawPartition { d: None, x: Some(x) },
        }
    }
}

/// Sup or inf of the gaps.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapBound {
    pub value: f64,
    pub probe: ProbeResult,
}

#[derive(Clone, Debug)]
pub struct Partition {
    spec: PartitionSpec,
    d: Seq,
    x: Seq,
}

impl Partition {
    pub fn new(spec: PartitionSpec) -> Result<Self, SeqError> {
        let (d, x) = match &spec {
            PartitionSpec::Gaps(g) => {
                g.validate()?;
                let d = Seq::spec(g.clone());
                (d.clone(), d.partial_sum())
            }
            PartitionSpec::Knots(k) => {
                k.validate()?;
                let x = Seq::spec(k.clone());
                (&x - x.lag(1, 0.0), x)
            }
        };
        let upto = d.finite_horizon().map_or(POSITIVITY_CHECK, |h| h.min(POSITIVITY_CHECK));
        let vals = d.eval_range(1, upto)?;
        if let Some(i) = vals.iter().position(|v| !(*v > 0.0)) {
            return Err(SeqError::Domain(format!("gap d({}) = {} is not positive", i + 1, vals[i])));
        }
        if let Some(a) = d.asym() {
            if a.eventual_sign() == Some(-1) || a.eventual_sign() == Some(0) {
                return Err(SeqError::Domain("gaps are eventually nonpositive".into()));
            }
        }
        Ok(Partition { spec, d, x })
    }

    pub fn gaps(d: SequenceSpec) -> Result<Self, SeqError> {
        Partition::new(PartitionSpec::Gaps(d))
    }

    pub fn knots(x: SequenceSpec) -> Result<Self, SeqError> {
        Partition::new(PartitionSpec::Knots(x))
    }

    pub fn spec(&self) -> &PartitionSpec {
        &self.spec
    }

    pub fn d(&self) -> &Seq {
        &self.d
    }

    pub fn x(&self) -> &Seq {
        &self.x
    }

    /// `r_n = sqrt(d_n + d_{n+1})`
    pub fn r(&self) -> Seq {
        (&self.d + self.d.shift(1)).sqrt()
    }

    /// `d^* = sup d_n`
    pub fn d_upper(&self, cfg: &ProbeConfig) -> GapBound {
        self.gap_bound(cfg, true)
    }

    /// `d_* = inf d_n`
    pub fn d_lower(&self, cfg: &ProbeConfig) -> GapBound {
        self.gap_bound(cfg, false)
    }

    fn gap_bound(&self, cfg: &ProbeConfig, upper: bool) -> GapBound {
        let probe = limit_probe(&self.d, cfg);
        let infinite = if upper { f64::INFINITY } else { 0.0 };
        if matches!(probe.kind, ProbeKind::DivergesToInf) {
            return GapBound { value: if upper { f64::INFINITY } else { self.head_extreme(cfg, false) }, probe };
        }
        let head = self.head_extreme(cfg, upper);
        let value = match probe.kind {
            ProbeKind::LimitIs { value } => {
                if upper {
                    head.max(value)
                } else {
                    head.min(value)
                }
            }
            ProbeKind::Oscillates { liminf, limsup } => {
                if upper {
                    head.max(limsup)
                } else {
                    head.min(liminf)
                }
            }
            _ => infinite,
        };
        GapBound { value, probe }
    }

    fn head_extreme(&self, cfg: &ProbeConfig, upper: bool) -> f64 {
        let h = self.d.finite_horizon().unwrap_or(cfg.horizon).min(cfg.horizon).max(1);
        let vals = self.d.eval_range(1, h).unwrap_or_default();
        if upper {
            vals.into_iter().fold(f64::NEG_INFINITY, f64::max)
        } else {
            vals.into_iter().fold(f64::INFINITY, f64::min)
        }
    }

    /// `b = sum d_n`, infinite for a half-line partition.
    pub fn total_length(&self, cfg: &ProbeConfig) -> (f64, ProbeResult) {
        let r = series_probe(&self.d, cfg);
        let v = match r.kind {
            ProbeKind::Converges { value } => value,
            ProbeKind::DivergesToInf => f64::INFINITY,
            _ => f64::NAN,
        };
        (v, r)
    }
}

impl PartialEq for Partition {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.spec.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let spec = PartitionSpec::deserialize(d)?;
        Partition::new(spec).map_err(serde::de::Error::custom)
    }
}
