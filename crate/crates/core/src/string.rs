//! Krein-Stieltjes strings: point masses `m_n` joined by massless pieces of length `l_n`.
//!
//! Mass `m_1` sits at `x_0 = 0` and `m_{n+1}` at `x_n = l_1 + ... + l_n`.

use serde::{Deserialize, Serialize};

use crate::criteria::verdict::{Claim, LimitClass, SeriesClass, Verdict};
use crate::dense::Dense;
use crate::error::{Error, Result};
use crate::jacobi::{deltaprime_block_residual, Entries, JacobiOperatorSpec, Provenance};
use crate::seqmodel::{limit_probe, series_probe, Partition, ProbeConfig, Seq};

/// Leading terms checked for positivity on construction.
const POSITIVITY_CHECK: u64 = 1_000;

/// A sequence read either directly or as two interleaved sequences (`p_{2k-1} = a_k`, `p_{2k} = b_k`).
#[derive(Clone, Debug)]
pub struct Pattern {
    slots: Vec<Seq>,
}

impl Pattern {
    pub fn single(s: Seq) -> Self {
        Pattern { slots: vec![s] }
    }

    pub fn pair(odd: Seq, even: Seq) -> Self {
        Pattern { slots: vec![odd, even] }
    }

    pub fn period(&self) -> usize {
        self.slots.len()
    }

    pub fn slots(&self) -> &[Seq] {
        &self.slots
    }

    /// Sum over one period, indexed by block.
    pub fn block(&self) -> Seq {
        match self.slots.as_slice() {
            [a] => a.clone(),
            [a, b] => a + b,
            _ => unreachable!("patterns have period 1 or 2"),
        }
    }

    /// First `len` terms.
    pub fn values(&self, len: usize) -> Result<Vec<f64>> {
        if len == 0 {
            return Ok(Vec::new());
        }
        let p = self.period();
        let blocks = len.div_ceil(p) as u64;
        let cols = self.slots.iter().map(|s| s.eval_range(1, blocks)).collect::<std::result::Result<Vec<_>, _>>()?;
        let mut out = Vec::with_capacity(len);
        for k in 0..blocks as usize {
            for c in &cols {
                out.push(c[k]);
            }
        }
        out.truncate(len);
        Ok(out)
    }

    fn check_positive(&self, name: &str) -> Result<()> {
        for (i, s) in self.slots.iter().enumerate() {
            let upto = s.finite_horizon().map_or(POSITIVITY_CHECK, |h| h.min(POSITIVITY_CHECK));
            let vals = s.eval_range(1, upto)?;
            if let Some(k) = vals.iter().position(|v| !(*v > 0.0)) {
                let idx = k * self.period() + i + 1;
                return Err(Error::domain(format!("{name}({idx}) = {} must be positive", vals[k])));
            }
            if let Some(a) = s.asym() {
                if matches!(a.eventual_sign(), Some(-1) | Some(0)) {
                    return Err(Error::domain(format!("{name} is eventually nonpositive")));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct StringData {
    masses: Pattern,
    lengths: Pattern,
}

/// One row of the CSV export.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StringRow {
    pub n: u64,
    pub m: f64,
    pub l: f64,
    pub x: f64,
}

impl StringData {
    pub fn new(masses: Pattern, lengths: Pattern) -> Result<Self> {
        if masses.period() != lengths.period() {
            return Err(Error::domain("masses and lengths must share their period"));
        }
        masses.check_positive("m")?;
        lengths.check_positive("l")?;
        Ok(StringData { masses, lengths })
    }

    pub fn from_seqs(m: Seq, l: Seq) -> Result<Self> {
        StringData::new(Pattern::single(m), Pattern::single(l))
    }

    pub fn masses(&self) -> &Pattern {
        &self.masses
    }

    pub fn lengths(&self) -> &Pattern {
        &self.lengths
    }

    /// `L = sum l_n`
    pub fn total_length(&self, cfg: &ProbeConfig) -> (SeriesClass, crate::seqmodel::ProbeResult) {
        let p = series_probe(&self.lengths.block(), cfg);
        (SeriesClass::of(&p), p)
    }

    /// `M(L) = sum m_n`
    pub fn total_mass(&self, cfg: &ProbeConfig) -> (SeriesClass, crate::seqmodel::ProbeResult) {
        let p = series_probe(&self.masses.block(), cfg);
        (SeriesClass::of(&p), p)
    }

    /// `(n, m_n, l_n, x_n)` for `n <= len`.
    pub fn table(&self, len: usize) -> Result<Vec<StringRow>> {
        let m = self.masses.values(len)?;
        let l = self.lengths.values(len)?;
        let mut x = 0.0;
        Ok((0..len)
            .map(|i| {
                x += l[i];
                StringRow { n: i as u64 + 1, m: m[i], l: l[i], x }
            })
            .collect())
    }

    /// Mass on `[0, x]` from the first `horizon` masses.
    pub fn mass_function(&self, x: f64, horizon: usize) -> Result<f64> {
        if x < 0.0 {
            return Ok(0.0);
        }
        let m = self.masses.values(horizon)?;
        let l = self.lengths.values(horizon)?;
        let mut knot = 0.0;
        let mut acc = 0.0;
        for j in 0..horizon {
            if knot > x {
                break;
            }
            acc += m[j];
            knot += l[j];
        }
        Ok(acc)
    }
}

/// Interleaves delta-prime data: `l = (d_1, beta_1, d_2, ...)`, `m = (d_1, d_1, d_2, d_2, ...)`.
pub fn string_from_deltaprime(x: &Partition, beta: &Seq) -> Result<StringData> {
    let d = x.d().clone();
    StringData::new(Pattern::pair(d.clone(), d.clone()), Pattern::pair(d, beta.clone()))
        .map_err(|e| Error::domain(format!("no string picture for these strengths: {e}")))
}

/// `J_{m,l}` in the positive gauge.
pub fn build_j_ml(s: &StringData) -> JacobiOperatorSpec {
    let (m, l) = (s.masses.slots(), s.lengths.slots());
    let entries = match (m, l) {
        ([m], [l]) => {
            let il = l.recip();
            Entries::Simple { diag: (il.lag(1, 0.0) + &il) / m, off: (l * (m * m.shift(1)).sqrt()).recip() }
        }
        ([mo, me], [lo, le]) => {
            let (ilo, ile) = (lo.recip(), le.recip());
            Entries::Interleaved {
                diag: [(ile.lag(1, 0.0) + &ilo) / mo, (&ilo + &ile) / me],
                off: [(lo * (mo * me).sqrt()).recip(), (le * (me * mo.shift(1)).sqrt()).recip()],
            }
        }
        _ => unreachable!("patterns share a period of 1 or 2"),
    };
    let mut j = JacobiOperatorSpec::new(Provenance::String, entries);
    j.gauge = crate::jacobi::SignConvention::PositiveOffdiag;
    j
}

/// Gap between `J_{m,l}` and `M^-1/2 (I+U) L^-1 (I+U*) M^-1/2` on the leading `n-1` rows, scaled like [`crate::jacobi::factorization_residual`].
pub fn string_factorization_residual(s: &StringData, n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::domain("factorization residual needs n >= 2"));
    }
    let direct = build_j_ml(s).section(n)?.to_dense();
    let m = s.masses.values(n)?;
    let l = s.lengths.values(n)?;
    let iu = Dense::identity(n).add(&Dense::shift(n));
    let msq = Dense::diag(&m.iter().map(|v| v.powf(-0.5)).collect::<Vec<_>>());
    let linv = Dense::diag(&l.iter().map(|v| 1.0 / v).collect::<Vec<_>>());
    let factored = msq.mul(&iu).mul(&linv).mul(&iu.transpose()).mul(&msq);
    Ok(direct.scaled_diff(&factored, n - 1))
}

const HAMBURGER_CITE: &str = "string self-adjointness: sum m_{n+1} x_n^2 diverges (Hamburger)";
const KAC_KREIN_CITE: &str = "string discreteness (Kac-Krein)";

/// Self-adjointness of `J_{m,l}` from `sum m_{n+1} x_n^2 = inf`.
pub fn hamburger(s: &StringData, cfg: &ProbeConfig) -> Verdict {
    let v = Verdict::new("hamburger", Claim::SelfAdjoint, HAMBURGER_CITE);
    let x = s.lengths.block().partial_sum();
    let x2 = &x * &x;
    let (lower, upper) = match s.masses.slots() {
        [m] => {
            let t = m.shift(1) * &x2;
            (t.clone(), t)
        }
        [mo, me] => {
            // x_{2n} = X_n; x_{2n-1} lies between X_{n-1} and X_n
            let even = mo.shift(1) * &x2;
            let xl = x.lag(1, 0.0);
            (&even + me * (&xl * &xl), &even + me * &x2)
        }
        _ => unreachable!(),
    };
    let lo = series_probe(&lower, cfg);
    if SeriesClass::of(&lo) == SeriesClass::Infinite {
        return v.with("sum m_{n+1} x_n^2 (lower bound)", lo).holds();
    }
    let up = series_probe(&upper, cfg);
    if let SeriesClass::Finite(_) = SeriesClass::of(&up) {
        return v.with("sum m_{n+1} x_n^2 (upper bound)", up).fails().implying(Claim::DeficiencyOne);
    }
    v.with("sum m_{n+1} x_n^2 (lower bound)", lo)
        .with("sum m_{n+1} x_n^2 (upper bound)", up)
        .inconclusive("could not decide the Hamburger series")
}

/// Which branch of the discreteness theorem applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KacKreinCase {
    InfiniteLength,
    FiniteLengthInfiniteMass,
    Regular,
    /// limit circle: every self-adjoint extension is discrete
    LimitCircle,
}

/// Discreteness of `J_{m,l}`; the verdict's claim is `Discrete` or `NotDiscrete`.
pub fn kac_krein(s: &StringData, cfg: &ProbeConfig) -> (Verdict, Option<KacKreinCase>) {
    let ham = hamburger(s, cfg);
    if ham.outcome == crate::seqmodel::Outcome::Fails {
        let v = Verdict::new("kac_krein", Claim::Discrete, KAC_KREIN_CITE);
        let mut v = v.note("Hamburger series converges; every self-adjoint extension has discrete spectrum").holds();
        v.evidence = ham.evidence;
        return (v, Some(KacKreinCase::LimitCircle));
    }
    let (len, len_p) = s.total_length(cfg);
    let (mass, mass_p) = s.total_mass(cfg);
    let lb = s.lengths.block();
    let mb = s.masses.block();
    let discrete = |label: &str, probe| Verdict::new("kac_krein", Claim::Discrete, KAC_KREIN_CITE).with(label, probe).holds();
    let not_discrete = |label: &str, probe| Verdict::new("kac_krein", Claim::NotDiscrete, KAC_KREIN_CITE).with(label, probe).holds();
    match (len, mass) {
        (SeriesClass::Finite(_), SeriesClass::Finite(_)) => {
            let v = discrete("total length", len_p).with("total mass", mass_p).note("regular string");
            (v, Some(KacKreinCase::Regular))
        }
        (SeriesClass::Infinite, SeriesClass::Infinite) => {
            let v = not_discrete("total length", len_p).with("total mass", mass_p).note("infinite length and infinite mass");
            (v, Some(KacKreinCase::InfiniteLength))
        }
        (SeriesClass::Infinite, SeriesClass::Finite(_)) => {
            // X_n: knot after block n; T_n: mass beyond block n
            let x = lb.partial_sum();
            let t = mb.tail_sum().shift(1);
            let upper = limit_probe(&(x.shift(1) * &t), cfg);
            if LimitClass::of(&upper).is_zero() {
                let v = discrete("x_n * tail mass (upper bound)", upper).with("total length", len_p);
                return (v, Some(KacKreinCase::InfiniteLength));
            }
            let lower = limit_probe(&(&x * t.shift(1)), cfg);
            if LimitClass::of(&lower).bounded_away_from_zero() {
                let v = not_discrete("x_n * tail mass (lower bound)", lower).with("total length", len_p);
                return (v, Some(KacKreinCase::InfiniteLength));
            }
            let v = Verdict::new("kac_krein", Claim::Discrete, KAC_KREIN_CITE)
                .with("x_n * tail mass (upper bound)", upper)
                .with("x_n * tail mass (lower bound)", lower)
                .inconclusive("limit of x_n * tail mass undecided");
            (v, Some(KacKreinCase::InfiniteLength))
        }
        (SeriesClass::Finite(_), SeriesClass::Infinite) => {
            let r = lb.tail_sum().shift(1);
            let mc = mb.partial_sum();
            let upper = limit_probe(&(&r * mc.shift(1)), cfg);
            if LimitClass::of(&upper).is_zero() {
                let v = discrete("(L - x_n) * mass up to n (upper bound)", upper).with("total mass", mass_p);
                return (v, Some(KacKreinCase::FiniteLengthInfiniteMass));
            }
            let lower = limit_probe(&(r.shift(1) * &mc), cfg);
            if LimitClass::of(&lower).bounded_away_from_zero() {
                let v = not_discrete("(L - x_n) * mass up to n (lower bound)", lower).with("total mass", mass_p);
                return (v, Some(KacKreinCase::FiniteLengthInfiniteMass));
            }
            let v = Verdict::new("kac_krein", Claim::Discrete, KAC_KREIN_CITE)
                .with("(L - x_n) * mass up to n (upper bound)", upper)
                .with("(L - x_n) * mass up to n (lower bound)", lower)
                .inconclusive("limit of (L - x_n) * mass undecided");
            (v, Some(KacKreinCase::FiniteLengthInfiniteMass))
        }
        _ => {
            let v = Verdict::new("kac_krein", Claim::Discrete, KAC_KREIN_CITE)
                .with("total length", len_p)
                .with("total mass", mass_p)
                .inconclusive("total length or mass undecided");
            (v, None)
        }
    }
}

/// Strings behind the two halves of the delta-prime discreteness argument.
pub struct Split {
    /// `m = d`, `l = d^3`
    pub jx: StringData,
    /// `m = d`, `l = beta + d`; unavailable when some `beta_n + d_n <= 0`
    pub jbeta: Result<StringData>,
}

pub fn jx_jbeta_strings(x: &Partition, beta: &Seq) -> Result<Split> {
    let d = x.d();
    let jx = StringData::from_seqs(d.clone(), d.powf(3.0))?;
    let jbeta = StringData::from_seqs(d.clone(), beta + d);
    Ok(Split { jx, jbeta })
}

pub fn jx_jbeta_split(x: &Partition, beta: &Seq) -> Result<(JacobiOperatorSpec, Result<JacobiOperatorSpec>)> {
    let s = jx_jbeta_strings(x, beta)?;
    Ok((build_j_ml(&s.jx), s.jbeta.map(|b| build_j_ml(&b))))
}

/// Gap between the reindexed delta-prime matrix and its printed block form, at even size `n`.
pub fn permutation_check(x: &Partition, beta: &Seq, n: usize) -> Result<f64> {
    if n % 2 != 0 {
        return Err(Error::domain("permutation check needs an even section size"));
    }
    deltaprime_block_residual(x, beta, n / 2)
}
