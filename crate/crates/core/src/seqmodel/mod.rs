//! Sequences, partitions and asymptotic probes.

pub mod asym;
mod partition;
mod probe;
mod seq;
mod spec;

pub use asym::{Asym, Lead, Scale, Term};
pub use partition::{GapBound, Partition, PartitionSpec};
pub use probe::{
    eventually_nonneg, limit_probe, lp_membership, series_probe, Confidence, LpIndex, Method, Outcome,
    ProbeConfig, ProbeKind, ProbeResult,
};
pub use seq::Seq;
pub use spec::{PowerTerm, RawSequence, SequenceSpec};
