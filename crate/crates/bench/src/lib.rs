//! Benchmark fixtures.

use pointspec_core::jacobi::{build_delta_b2, JacobiOperatorSpec, TridiagonalMatrix};
use pointspec_core::seqmodel::{Partition, Seq, SequenceSpec};

/// `d_n = 1/n`, `alpha_n = -2n - 1`: the deficiency-one fixture.
pub fn harmonic_delta() -> JacobiOperatorSpec {
    let x = Partition::gaps(SequenceSpec::power(1.0, -1.0)).expect("valid gaps");
    build_delta_b2(&x, &Seq::spec(SequenceSpec::affine(-1.0, -2.0))).expect("valid model")
}

pub fn harmonic_section(n: usize) -> TridiagonalMatrix {
    harmonic_delta().truncate(n).expect("section")
}

pub fn harmonic_gaps() -> Partition {
    Partition::gaps(SequenceSpec::power(1.0, -1.0)).expect("valid gaps")
}
