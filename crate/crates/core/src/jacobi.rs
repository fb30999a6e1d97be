//! Boundary Jacobi matrices and their finite sections.

use serde::{Deserialize, Serialize};

use crate::dense::Dense;
use crate::error::{Error, Result};
use crate::seqmodel::{limit_probe, Partition, ProbeConfig, ProbeKind, Seq};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// delta interactions, interleaved first parametrization
    DeltaB1,
    /// delta interactions, `R^-1 (B_X + A_alpha) R^-1`
    DeltaB2,
    /// delta-prime interactions, string form
    DeltaPrimeB1,
    /// delta-prime interactions, interleaved second parametrization
    DeltaPrimeB2,
    /// delta interactions on `d_n = 1/n` with the step potential `a^2 n^2`
    StepPotential,
    /// Krein-Stieltjes string matrix `J_{m,l}`
    String,
    /// diagonal 0, off-diagonal 1
    Free,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignConvention {
    AsPrinted,
    #[default]
    PositiveOffdiag,
}

/// Entry generators, indexed from 1.
#[derive(Clone, Debug)]
pub enum Entries {
    /// `a(n)` on the diagonal, `b(n)` at `(n, n+1)`
    Simple { diag: Seq, off: Seq },
    /// 2-periodic pattern: index `2k-1` reads slot 0 at `k`, index `2k` reads slot 1 at `k`
    Interleaved { diag: [Seq; 2], off: [Seq; 2] },
}

#[derive(Clone, Debug)]
pub struct JacobiOperatorSpec {
    pub provenance: Provenance,
    pub gauge: SignConvention,
    pub entries: Entries,
}

fn interleave(a: &Seq, b: &Seq, len: usize) -> Result<Vec<f64>> {
    if len == 0 {
        return Ok(Vec::new());
    }
    let k = len.div_ceil(2) as u64;
    let (va, vb) = (a.eval_range(1, k)?, b.eval_range(1, k)?);
    let mut out = Vec::with_capacity(len);
    for i in 0..k as usize {
        out.push(va[i]);
        out.push(vb[i]);
    }
    out.truncate(len);
    Ok(out)
}

impl JacobiOperatorSpec {
    pub fn new(provenance: Provenance, entries: Entries) -> Self {
        JacobiOperatorSpec { provenance, gauge: SignConvention::AsPrinted, entries }
    }

    pub fn free() -> Self {
        JacobiOperatorSpec::new(Provenance::Free, Entries::Simple { diag: Seq::constant(0.0), off: Seq::constant(1.0) })
    }

    /// Same operator up to a diagonal `+-1` similarity.
    pub fn with_gauge(&self, gauge: SignConvention) -> Self {
        let entries = match (gauge, &self.entries) {
            (SignConvention::AsPrinted, e) => e.clone(),
            (SignConvention::PositiveOffdiag, Entries::Simple { diag, off }) => {
                Entries::Simple { diag: diag.clone(), off: off.abs() }
            }
            (SignConvention::PositiveOffdiag, Entries::Interleaved { diag, off }) => {
                Entries::Interleaved { diag: diag.clone(), off: [off[0].abs(), off[1].abs()] }
            }
        };
        JacobiOperatorSpec { provenance: self.provenance, gauge, entries }
    }

    pub fn diag_values(&self, len: usize) -> Result<Vec<f64>> {
        match &self.entries {
            Entries::Simple { diag, .. } => Ok(if len == 0 { Vec::new() } else { diag.eval_range(1, len as u64)? }),
            Entries::Interleaved { diag, .. } => interleave(&diag[0], &diag[1], len),
        }
    }

    pub fn off_values(&self, len: usize) -> Result<Vec<f64>> {
        match &self.entries {
            Entries::Simple { off, .. } => Ok(if len == 0 { Vec::new() } else { off.eval_range(1, len as u64)? }),
            Entries::Interleaved { off, .. } => interleave(&off[0], &off[1], len),
        }
    }

    /// Leading `n x n` section in the operator's own gauge.
    pub fn section(&self, n: usize) -> Result<TridiagonalMatrix> {
        if n == 0 {
            return Err(Error::domain("section size must be at least 1"));
        }
        TridiagonalMatrix::new(self.diag_values(n)?, self.off_values(n - 1)?)
    }

    /// Leading `n x n` section in the positive off-diagonal gauge.
    pub fn truncate(&self, n: usize) -> Result<TridiagonalMatrix> {
        let mut t = self.section(n)?;
        for b in &mut t.off {
            *b = b.abs();
        }
        Ok(t)
    }
}

/// Finite symmetric tridiagonal matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TridiagonalMatrix {
    diag: Vec<f64>,
    off: Vec<f64>,
}

impl TridiagonalMatrix {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Result<Self> {
        if diag.is_empty() || off.len() + 1 != diag.len() {
            return Err(Error::domain(format!(
                "tridiagonal shape mismatch: {} diagonal, {} off-diagonal entries",
                diag.len(),
                off.len()
            )));
        }
        if let Some(i) = diag.iter().chain(&off).position(|v| !v.is_finite()) {
            return Err(Error::domain(format!("non-finite matrix entry at position {i}")));
        }
        Ok(TridiagonalMatrix { diag, off })
    }

    pub fn free(n: usize) -> Self {
        TridiagonalMatrix { diag: vec![0.0; n], off: vec![1.0; n.saturating_sub(1)] }
    }

    pub fn size(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn off(&self) -> &[f64] {
        &self.off
    }

    pub fn leading(&self, n: usize) -> TridiagonalMatrix {
        let n = n.clamp(1, self.size());
        TridiagonalMatrix { diag: self.diag[..n].to_vec(), off: self.off[..n - 1].to_vec() }
    }

    pub fn inf_norm(&self) -> f64 {
        (0..self.size()).map(|i| self.row_abs_sum(i)).fold(0.0, f64::max)
    }

    fn row_abs_sum(&self, i: usize) -> f64 {
        let l = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
        let r = self.off.get(i).map_or(0.0, |b| b.abs());
        self.diag[i].abs() + l + r
    }

    /// Interval containing every eigenvalue.
    pub fn gershgorin(&self) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..self.size() {
            let l = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
            let r = self.off.get(i).map_or(0.0, |b| b.abs());
            lo = lo.min(self.diag[i] - l - r);
            hi = hi.max(self.diag[i] + l + r);
        }
        (lo, hi)
    }

    /// `x^T T x`
    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        let mut s = 0.0;
        for i in 0..self.size() {
            s += self.diag[i] * x[i] * x[i];
        }
        for i in 0..self.off.len() {
            s += 2.0 * self.off[i] * x[i] * x[i + 1];
        }
        s
    }

    /// `(index, diag, offdiag)` rows, 1-based; the last row has no off-diagonal.
    pub fn rows(&self) -> impl Iterator<Item = (usize, f64, Option<f64>)> + '_ {
        (0..self.size()).map(|i| (i + 1, self.diag[i], self.off.get(i).copied()))
    }

    pub(crate) fn to_dense(&self) -> Dense {
        let mut m = Dense::diag(&self.diag);
        for (i, b) in self.off.iter().enumerate() {
            m.set(i, i + 1, *b);
            m.set(i + 1, i, *b);
        }
        m
    }
}

fn require_bounded_gaps(x: &Partition) -> Result<()> {
    let probe = limit_probe(x.d(), &ProbeConfig::default());
    if matches!(probe.kind, ProbeKind::DivergesToInf) {
        return Err(Error::domain("sup d_n is infinite; boundary triplets need bounded gaps"));
    }
    Ok(())
}

fn require_nonzero(s: &Seq, name: &str) -> Result<()> {
    let upto = s.finite_horizon().unwrap_or(1_000).min(1_000);
    let vals = s.eval_range(1, upto)?;
    if let Some(i) = vals.iter().position(|v| *v == 0.0 || !v.is_finite()) {
        return Err(Error::domain(format!("{name}({}) = {} must be nonzero", i + 1, vals[i])));
    }
    if let Some(a) = s.asym() {
        if a.is_zero() {
            return Err(Error::domain(format!("{name} vanishes identically")));
        }
    }
    Ok(())
}

/// `a(n) = (alpha_n + 1/d_n + 1/d_{n+1}) / r_n^2`, `b(n) = -1/(r_n r_{n+1} d_{n+1})`.
pub fn build_delta_b2(x: &Partition, alpha: &Seq) -> Result<JacobiOperatorSpec> {
    require_bounded_gaps(x)?;
    let d = x.d();
    let d1 = d.shift(1);
    let r = x.r();
    let r2 = d + &d1;
    let diag = (alpha + d.recip() + d1.recip()) / r2;
    let off = -(&r * r.shift(1) * &d1).recip();
    Ok(JacobiOperatorSpec::new(Provenance::DeltaB2, Entries::Simple { diag, off }))
}

/// Interleaved matrix of the first delta parametrization.
pub fn build_delta_b1(x: &Partition, alpha: &Seq) -> Result<JacobiOperatorSpec> {
    require_bounded_gaps(x)?;
    let d = x.d();
    let inv2 = d.powf(-2.0);
    let diag = [alpha.lag(1, 0.0) / d, -&inv2];
    let off = [-&inv2, d.powf(-1.5) * d.shift(1).powf(-0.5)];
    Ok(JacobiOperatorSpec::new(Provenance::DeltaB1, Entries::Interleaved { diag, off }))
}

/// String-type matrix of the first delta-prime parametrization.
pub fn build_deltaprime_b1(x: &Partition, beta: &Seq) -> Result<JacobiOperatorSpec> {
    require_bounded_gaps(x)?;
    require_nonzero(beta, "beta")?;
    let d = x.d();
    let inv2 = d.powf(-2.0);
    let ib = beta.recip();
    let diag = [&inv2 + ib.lag(1, 0.0) / d, &inv2 + &ib / d];
    let off = [inv2.clone(), &ib * (d * d.shift(1)).powf(-0.5)];
    Ok(JacobiOperatorSpec::new(Provenance::DeltaPrimeB1, Entries::Interleaved { diag, off }))
}

/// Interleaved matrix of the second delta-prime parametrization; only `beta + d` enters.
pub fn build_deltaprime_b2(x: &Partition, beta: &Seq) -> Result<JacobiOperatorSpec> {
    require_bounded_gaps(x)?;
    let d = x.d();
    let inv2 = d.powf(-2.0);
    let diag = [Seq::constant(0.0), -((beta + d) * d.powf(-3.0))];
    let off = [-&inv2, d.powf(-1.5) * d.shift(1).powf(-0.5)];
    Ok(JacobiOperatorSpec::new(Provenance::DeltaPrimeB2, Entries::Interleaved { diag, off }))
}

/// Boundary matrix for `d_n = 1/n` with potential `a^2 n^2` on the n-th interval.
///
/// `a(n) = ((2n+1) e1 + alpha_n) / r_n^2`, `b(n) = (n+1) e2 / (r_n r_{n+1})` with `r_n^2 = 1/n + 1/(n+1)`.
pub fn build_step_potential(a: f64, alpha: &Seq) -> Result<JacobiOperatorSpec> {
    if !(a > 0.0) {
        return Err(Error::domain(format!("potential parameter a = {a} must be positive")));
    }
    let (e1, e2) = crate::weyl::potential_coeffs(a);
    let n = Seq::from(crate::seqmodel::SequenceSpec::power(1.0, 1.0));
    let inv = n.recip();
    let r = (&inv + inv.shift(1)).sqrt();
    let diag = ((&n * 2.0 + 1.0) * e1 + alpha) / (&r * &r);
    let off = (&n + 1.0) * e2 / (&r * r.shift(1));
    Ok(JacobiOperatorSpec::new(Provenance::StepPotential, Entries::Simple { diag, off }))
}

/// Which printed factorization to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Factorization {
    /// `R^-1 (B_X + A_alpha) R^-1` with `B_X = (I - U*) D^-1 (I - U)`
    DeltaB2,
    /// `R_X^-1 (B~_alpha - Q_X) R_X^-1` with the mixed-triplet `R_n`, `Q_n`
    DeltaB1,
    /// `R_X^-1 (I + U) D_{X,beta}^-1 (I + U*) R_X^-1`
    DeltaPrimeB1,
}

/// Max entrywise gap between the built section and the factored product on interior rows, over `max(1, largest entry)`.
pub fn factorization_residual(kind: Factorization, x: &Partition, strengths: &Seq, n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::domain("factorization residual needs n >= 2"));
    }
    let (direct, factored) = match kind {
        Factorization::DeltaB2 => {
            let direct = build_delta_b2(x, strengths)?.section(n)?.to_dense();
            let d = x.d().eval_range(1, n as u64 + 1)?;
            let alpha = strengths.eval_range(1, n as u64)?;
            let r: Vec<f64> = (0..n).map(|i| (d[i] + d[i + 1]).sqrt()).collect();
            let u = Dense::shift(n);
            let i_minus_u = Dense::identity(n).sub(&u);
            let dinv = Dense::diag(&d[..n].iter().map(|v| 1.0 / v).collect::<Vec<_>>());
            let bx = i_minus_u.transpose().mul(&dinv).mul(&i_minus_u);
            let rinv = Dense::diag(&r.iter().map(|v| 1.0 / v).collect::<Vec<_>>());
            (direct, rinv.mul(&bx.add(&Dense::diag(&alpha))).mul(&rinv))
        }
        Factorization::DeltaB1 => {
            let direct = build_delta_b1(x, strengths)?.section(n)?.to_dense();
            let k = n.div_ceil(2) + 1;
            let d = x.d().eval_range(1, k as u64)?;
            let alpha = strengths.eval_range(1, k as u64)?;
            let mut rinv = vec![0.0; n];
            let mut q = Dense::zeros(n);
            let mut bt = Dense::zeros(n);
            for i in 0..n {
                let blk = i / 2;
                rinv[i] = if i % 2 == 0 { d[blk].powf(-0.5) } else { d[blk].powf(-1.5) };
            }
            for blk in 0..n.div_ceil(2) {
                let (i, j) = (2 * blk, 2 * blk + 1);
                if j < n {
                    q.set(i, j, 1.0);
                    q.set(j, i, 1.0);
                    q.set(j, j, d[blk]);
                }
                if blk > 0 {
                    bt.set(i, i, alpha[blk - 1]);
                    bt.set(i - 1, i, 1.0);
                    bt.set(i, i - 1, 1.0);
                }
            }
            let rinv = Dense::diag(&rinv);
            (direct, rinv.mul(&bt.sub(&q)).mul(&rinv))
        }
        Factorization::DeltaPrimeB1 => {
            let direct = build_deltaprime_b1(x, strengths)?.section(n)?.to_dense();
            let k = n.div_ceil(2);
            let d = x.d().eval_range(1, k as u64)?;
            let beta = strengths.eval_range(1, k as u64)?;
            let dx: Vec<f64> = (0..n).map(|i| if i % 2 == 0 { d[i / 2] } else { beta[i / 2] }).collect();
            let rinv: Vec<f64> = (0..n).map(|i| d[i / 2].powf(-0.5)).collect();
            let ipu = Dense::identity(n).add(&Dense::shift(n));
            let dinv = Dense::diag(&dx.iter().map(|v| 1.0 / v).collect::<Vec<_>>());
            let rinv = Dense::diag(&rinv);
            (direct, rinv.mul(&ipu).mul(&dinv).mul(&ipu.transpose()).mul(&rinv))
        }
    };
    Ok(direct.scaled_diff(&factored, n - 1))
}

/// Gap between the reindexed positive-gauge second delta-prime matrix and its 2x2 block form.
///
/// Odd indices map to the first block, even ones to the second; `n` is rounded down to even.
pub fn deltaprime_block_residual(x: &Partition, beta: &Seq, n: usize) -> Result<f64> {
    let k = n / 2;
    if k == 0 {
        return Err(Error::domain("block residual needs n >= 2"));
    }
    let sec = build_deltaprime_b2(x, beta)?.truncate(2 * k)?.to_dense();
    let mut permuted = Dense::zeros(2 * k);
    let pos = |i: usize| if i % 2 == 0 { i / 2 } else { k + i / 2 };
    for i in 0..2 * k {
        for j in 0..2 * k {
            permuted.set(pos(i), pos(j), sec.get(i, j));
        }
    }
    let d = x.d().eval_range(1, k as u64)?;
    let b = beta.eval_range(1, k as u64)?;
    let mut core = Dense::zeros(2 * k);
    for i in 0..k {
        core.set(i, k + i, 1.0);
        core.set(k + i, i, 1.0);
        if i + 1 < k {
            core.set(i + 1, k + i, 1.0);
            core.set(k + i, i + 1, 1.0);
        }
        core.set(k + i, k + i, -(b[i] + d[i]));
    }
    let outer: Vec<f64> = (0..2 * k).map(|i| if i < k { d[i].powf(-0.5) } else { d[i - k].powf(-1.5) }).collect();
    let outer = Dense::diag(&outer);
    Ok(permuted.scaled_diff(&outer.mul(&core).mul(&outer), 2 * k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqmodel::SequenceSpec;

    fn gaps(s: SequenceSpec) -> Partition {
        Partition::gaps(s).unwrap()
    }

    fn seq(s: SequenceSpec) -> Seq {
        Seq::spec(s)
    }

    #[test]
    fn delta_b2_unit_gaps() {
        let x = gaps(SequenceSpec::constant(1.0));
        let j = build_delta_b2(&x, &seq(SequenceSpec::constant(0.0))).unwrap();
        let t = j.section(4).unwrap();
        assert!(t.diag().iter().all(|a| (a - 1.0).abs() < 1e-15));
        assert!(t.off().iter().all(|b| (*b + 0.5).abs() < 1e-15));
        let t = j.truncate(2).unwrap();
        assert!(t.diag().iter().all(|a| (a - 1.0).abs() < 1e-15));
        assert!((t.off()[0] - 0.5).abs() < 1e-15);
        let j = build_delta_b2(&x, &seq(SequenceSpec::constant(3.0))).unwrap();
        assert!(j.section(3).unwrap().diag().iter().all(|a| (a - 2.5).abs() < 1e-15));
    }

    #[test]
    fn delta_b2_zero_diagonal_is_exact() {
        let x = gaps(SequenceSpec::power(1.0, -1.0));
        let j = build_delta_b2(&x, &seq(SequenceSpec::affine(-1.0, -2.0))).unwrap();
        let t = j.section(500).unwrap();
        // each entry cancels terms of size ~n, so compare against that scale
        for (i, a) in t.diag().iter().enumerate() {
            assert!(a.abs() < 1e-13 * (i as f64 + 1.0).powi(2), "{i}: {a}");
        }
    }

    #[test]
    fn delta_b1_pattern() {
        let x = gaps(SequenceSpec::constant(1.0));
        let alpha = seq(SequenceSpec::table_with_tail(vec![5.0], crate::seqmodel::PowerTerm::new(0.0, 0.0)));
        let j = build_delta_b1(&x, &alpha).unwrap().with_gauge(SignConvention::PositiveOffdiag);
        let t = j.section(5).unwrap();
        assert_eq!(&t.diag()[..4], &[0.0, -1.0, 5.0, -1.0]);
        assert_eq!(t.off(), &[1.0; 4]);
        let x = gaps(SequenceSpec::power(1.0, -1.0));
        let t = build_delta_b1(&x, &seq(SequenceSpec::constant(0.0))).unwrap().section(3).unwrap();
        assert!((t.off()[1] - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn deltaprime_b1_patterns() {
        let x = gaps(SequenceSpec::constant(1.0));
        let t = build_deltaprime_b1(&x, &seq(SequenceSpec::constant(1.0))).unwrap().section(5).unwrap();
        assert_eq!(t.diag(), &[1.0, 2.0, 2.0, 2.0, 2.0]);
        assert_eq!(t.off(), &[1.0; 4]);
        let t = build_deltaprime_b1(&x, &seq(SequenceSpec::constant(-1.0))).unwrap().section(5).unwrap();
        assert_eq!(t.diag(), &[1.0, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(t.off(), &[1.0, -1.0, 1.0, -1.0]);
        assert!(build_deltaprime_b1(&x, &seq(SequenceSpec::constant(0.0))).is_err());
    }

    #[test]
    fn deltaprime_b2_patterns() {
        let x = gaps(SequenceSpec::constant(1.0));
        let t = build_deltaprime_b2(&x, &seq(SequenceSpec::constant(0.0))).unwrap().truncate(4).unwrap();
        assert_eq!(t.diag(), &[0.0, -1.0, 0.0, -1.0]);
        assert_eq!(t.off(), &[1.0; 3]);
        let t = build_deltaprime_b2(&x, &seq(SequenceSpec::constant(-1.0))).unwrap().section(6).unwrap();
        assert!(t.diag().iter().all(|a| *a == 0.0));
        let x = gaps(SequenceSpec::power(1.0, -1.0));
        let t = build_deltaprime_b2(&x, &seq(SequenceSpec::constant(1.0))).unwrap().section(3).unwrap();
        assert!((t.off()[1] - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn truncation_shapes() {
        let t = JacobiOperatorSpec::free().truncate(3).unwrap();
        assert_eq!(t, TridiagonalMatrix::free(3));
        let t = JacobiOperatorSpec::free().truncate(1).unwrap();
        assert_eq!(t.size(), 1);
        assert!(t.off().is_empty());
        assert!(JacobiOperatorSpec::free().truncate(0).is_err());
    }

    #[test]
    fn factorization_examples() {
        let one = gaps(SequenceSpec::constant(1.0));
        let harm = gaps(SequenceSpec::power(1.0, -1.0));
        let r = factorization_residual(Factorization::DeltaB2, &one, &seq(SequenceSpec::constant(1.0)), 50).unwrap();
        assert!(r < 1e-12, "{r}");
        let r = factorization_residual(Factorization::DeltaPrimeB1, &harm, &seq(SequenceSpec::constant(1.0)), 50).unwrap();
        assert!(r < 1e-12, "{r}");
        let r = factorization_residual(Factorization::DeltaB1, &one, &seq(SequenceSpec::constant(0.0)), 10).unwrap();
        assert!(r < 1e-12, "{r}");
    }

    #[test]
    fn block_form_matches() {
        let x = gaps(SequenceSpec::power(1.0, -0.5));
        let r = deltaprime_block_residual(&x, &seq(SequenceSpec::power(0.3, -1.0)), 40).unwrap();
        assert!(r < 1e-12, "{r}");
    }

    #[test]
    fn step_potential_zero_diagonal() {
        let a0 = crate::weyl::solve_a0();
        let alpha = seq(SequenceSpec::affine(-2.0, -4.0));
        let t = build_step_potential(a0, &alpha).unwrap().section(1000).unwrap();
        for (i, a) in t.diag().iter().enumerate() {
            let n = i as f64 + 1.0;
            assert!(a.abs() < 1e-10 * n * n, "{i}: {a}");
        }
    }
}
