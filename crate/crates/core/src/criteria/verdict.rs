//! Verdicts, claims and the evidence they carry.

use serde::{Deserialize, Serialize};

use crate::seqmodel::{Confidence, LpIndex, Outcome, ProbeKind, ProbeResult};

/// Statement a criterion is about.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "claim", rename_all = "snake_case")]
pub enum Claim {
    SelfAdjoint,
    DeficiencyOne,
    Discrete,
    NotDiscrete,
    SemiboundedBelow,
    NotSemibounded,
    ResolventDiffInSp { p: LpIndex },
}

impl Claim {
    pub fn label(&self) -> String {
        match self {
            Claim::SelfAdjoint => "self_adjoint".into(),
            Claim::DeficiencyOne => "deficiency_one".into(),
            Claim::Discrete => "discrete".into(),
            Claim::NotDiscrete => "not_discrete".into(),
            Claim::SemiboundedBelow => "semibounded_below".into(),
            Claim::NotSemibounded => "not_semibounded".into(),
            Claim::ResolventDiffInSp { p } => match p {
                LpIndex::P(p) => format!("resolvent_diff_in_s{p}"),
                LpIndex::Infinity => "resolvent_diff_compact".into(),
                LpIndex::C0 => "resolvent_diff_compact".into(),
            },
        }
    }

    /// The claim that cannot hold together with this one.
    pub fn opposite(&self) -> Option<Claim> {
        match self {
            Claim::SelfAdjoint => Some(Claim::DeficiencyOne),
            Claim::DeficiencyOne => Some(Claim::SelfAdjoint),
            Claim::Discrete => Some(Claim::NotDiscrete),
            Claim::NotDiscrete => Some(Claim::Discrete),
            Claim::SemiboundedBelow => Some(Claim::NotSemibounded),
            Claim::NotSemibounded => Some(Claim::SemiboundedBelow),
            Claim::ResolventDiffInSp { .. } => None,
        }
    }
}

/// One probe behind a verdict.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Evidence {
    pub label: String,
    pub probe: ProbeResult,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub criterion_id: String,
    pub outcome: Outcome,
    pub claim: Claim,
    pub evidence: Vec<Evidence>,
    pub citation: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    /// Further claims established by this outcome, e.g. a failed iff-test for self-adjointness.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub implies: Vec<Claim>,
    /// Constant found by a grid search, when the criterion has one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<f64>,
}

impl Verdict {
    pub fn new(criterion_id: &str, claim: Claim, citation: &str) -> Self {
        Verdict {
            criterion_id: criterion_id.into(),
            outcome: Outcome::Inconclusive,
            claim,
            evidence: Vec::new(),
            citation: citation.into(),
            note: None,
            implies: Vec::new(),
            witness: None,
        }
    }

    pub fn with(mut self, label: &str, probe: ProbeResult) -> Self {
        self.evidence.push(Evidence { label: label.into(), probe });
        self
    }

    pub fn holds(mut self) -> Self {
        self.outcome = Outcome::Holds;
        self
    }

    pub fn fails(mut self) -> Self {
        self.outcome = Outcome::Fails;
        self
    }

    pub fn inconclusive(mut self, reason: impl Into<String>) -> Self {
        self.outcome = Outcome::Inconclusive;
        self.note = Some(reason.into());
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn implying(mut self, claim: Claim) -> Self {
        self.implies.push(claim);
        self
    }

    pub fn witness(mut self, c: f64) -> Self {
        self.witness = Some(c);
        self
    }

    pub fn is(&self, outcome: Outcome, claim: Claim) -> bool {
        self.outcome == outcome && self.claim == claim
    }

    /// Claims this verdict establishes.
    pub fn established(&self) -> Vec<Claim> {
        let mut out = Vec::new();
        if self.outcome == Outcome::Holds {
            out.push(self.claim);
        }
        if self.outcome != Outcome::Inconclusive {
            out.extend(self.implies.iter().copied());
        }
        out
    }

    /// `Numeric` as soon as one evidence item is numeric.
    pub fn confidence(&self) -> Confidence {
        if self.evidence.iter().any(|e| e.probe.confidence == Confidence::Numeric) {
            Confidence::Numeric
        } else {
            Confidence::Exact
        }
    }

    /// Decisive outcomes need decisive evidence; inconclusive ones need a reason.
    pub fn well_formed(&self) -> bool {
        match self.outcome {
            Outcome::Inconclusive => self.note.is_some(),
            _ => self.evidence.iter().any(|e| !e.probe.is_indeterminate()),
        }
    }
}

/// Absolute value below which an extrapolated limit counts as zero.
pub const ZERO_LIMIT_TOL: f64 = 1e-6;

/// Coarse reading of a limit probe.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum LimitClass {
    Zero,
    /// finite nonzero limit
    Finite(f64),
    PlusInf,
    MinusInf,
    /// no limit, with `liminf`, `limsup`
    Oscillating(f64, f64),
    Unknown,
}

impl LimitClass {
    pub fn of(p: &ProbeResult) -> Self {
        match p.kind {
            ProbeKind::LimitIs { value } | ProbeKind::Converges { value } => {
                if value.abs() <= ZERO_LIMIT_TOL {
                    LimitClass::Zero
                } else {
                    LimitClass::Finite(value)
                }
            }
            ProbeKind::DivergesToInf => LimitClass::PlusInf,
            ProbeKind::DivergesToNegInf => LimitClass::MinusInf,
            ProbeKind::Oscillates { liminf, limsup } => LimitClass::Oscillating(liminf, limsup),
            _ => LimitClass::Unknown,
        }
    }

    /// Limit exists and vanishes.
    pub fn is_zero(&self) -> bool {
        matches!(self, LimitClass::Zero)
    }

    /// `liminf |s| > 0` for a nonnegative sequence.
    pub fn bounded_away_from_zero(&self) -> bool {
        match *self {
            LimitClass::Finite(v) => v > 0.0,
            LimitClass::PlusInf => true,
            LimitClass::Oscillating(lo, _) => lo > ZERO_LIMIT_TOL,
            _ => false,
        }
    }

    /// Lower limit, with `-inf` for unknown.
    pub fn lower(&self) -> f64 {
        match *self {
            LimitClass::Zero => 0.0,
            LimitClass::Finite(v) => v,
            LimitClass::PlusInf => f64::INFINITY,
            LimitClass::Oscillating(lo, _) => lo,
            LimitClass::MinusInf | LimitClass::Unknown => f64::NEG_INFINITY,
        }
    }

    /// Upper limit, with `+inf` for unknown.
    pub fn upper(&self) -> f64 {
        match *self {
            LimitClass::Zero => 0.0,
            LimitClass::Finite(v) => v,
            LimitClass::MinusInf => f64::NEG_INFINITY,
            LimitClass::Oscillating(_, hi) => hi,
            LimitClass::PlusInf | LimitClass::Unknown => f64::INFINITY,
        }
    }
}

/// Reading of a series probe.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SeriesClass {
    Finite(f64),
    Infinite,
    Unknown,
}

impl SeriesClass {
    pub fn of(p: &ProbeResult) -> Self {
        match p.kind {
            ProbeKind::Converges { value } => SeriesClass::Finite(value),
            ProbeKind::DivergesToInf => SeriesClass::Infinite,
            _ => SeriesClass::Unknown,
        }
    }
}
