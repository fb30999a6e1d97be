//! Criteria for delta interactions.

use serde::{Deserialize, Serialize};

use super::model::{InteractionKind, InteractionModel};
use super::support::{nonneg_everywhere, witness_for_upper};
use super::verdict::{Claim, LimitClass, SeriesClass, Verdict};
use crate::error::{Error, Result};
use crate::seqmodel::{
    limit_probe, series_probe, Lead, Outcome, PartitionSpec, ProbeConfig, ProbeResult, Scale, Seq,
    SequenceSpec,
};

const CARLEMAN_CITE: &str = "self-adjoint for every alpha when sum d_n^2 = inf";
const DENNIS_WALL_CITE: &str = "Dennis-Wall test: sum |alpha_n| d_n d_{n+1} r_{n-1} r_{n+1} = inf";
const BEREZANSKII_UPPER_CITE: &str = "Berezanskii-type upper bound alpha_n + (1 + r_n/r_{n-1})/d_n + (1 + r_n/r_{n+1})/d_{n+1} <= C (d_n + d_{n+1})";
const BEREZANSKII_LOWER_CITE: &str = "Berezanskii-type lower bound alpha_n + (1 - r_n/r_{n-1})/d_n + (1 - r_n/r_{n+1})/d_{n+1} >= -C (d_n + d_{n+1})";
const DEFICIENCY_CITE: &str = "deficiency one under log-concave gaps and sum d_{n+1} |alpha_n + 1/d_n + 1/d_{n+1}| < inf";
const PERIODIC_CITE: &str = "deficiency one for d_n = 1/n, alpha_n = a (n + 1/2) + O(1/n), a in (-4, 0), via a periodic Jacobi matrix";
const CHIHARA1_CITE: &str = "discrete when |alpha_n|/d_n -> inf and 1/(d_n alpha_n) -> limit > -1/4 (Chihara)";
const CHIHARA2_CITE: &str = "discrete when |alpha_n + 1/d_n + 1/d_{n+1}|/(d_n + d_{n+1}) -> inf and the product limit < 1/4 (Chihara)";
const COJUHARI_CITE: &str = "self-adjoint and discrete when the Cojuhari quotient tends to +inf";
const SEMIBOUNDED_CITE: &str = "semibounded below when inf alpha_n/(d_n + d_{n+1}) > -inf";
const SEMIBOUNDED_UNIFORM_CITE: &str = "for 0 < d_* <= d^* < inf: semibounded below iff inf alpha_n > -inf";
const SQRT_KNOTS_CITE: &str = "x_n = sqrt(n), alpha_n = -n^-eps with eps < 1/2: self-adjoint and not semibounded below";

/// `1/d_n`, `1/d_{n+1}`, `r_n` and the neighbours used by several tests.
struct Gaps {
    d: Seq,
    dn: Seq,
    r: Seq,
}

impl Gaps {
    fn of(m: &InteractionModel) -> Gaps {
        let d = m.d().clone();
        Gaps { dn: d.shift(1), r: m.partition().r(), d }
    }

    fn sum(&self) -> Seq {
        &self.d + &self.dn
    }

    /// `alpha_n + 1/d_n + 1/d_{n+1}`
    fn shifted(&self, alpha: &Seq) -> Seq {
        alpha + self.d.recip() + self.dn.recip()
    }
}

fn d_vanishes(m: &InteractionModel, cfg: &ProbeConfig) -> (bool, ProbeResult) {
    let p = limit_probe(m.d(), cfg);
    (LimitClass::of(&p).is_zero(), p)
}

/// Holds(SelfAdjoint) when `sum d_n^2` diverges.
pub fn carleman(m: &InteractionModel, cfg: &ProbeConfig) -> Result<Verdict> {
    m.expect(InteractionKind::Delta, "carleman")?;
    let v = Verdict::new("carleman", Claim::SelfAdjoint, CARLEMAN_CITE);
    let p = series_probe(&(m.d() * m.d()), cfg);
    Ok(match SeriesClass::of(&p) {
        SeriesClass::Infinite => v.with("sum d_n^2", p).holds(),
        SeriesClass::Finite(_) => v.with("sum d_n^2", p).inconclusive("sum d_n^2 converges; the test is only sufficient"),
        SeriesClass::Unknown => v.with("sum d_n^2", p).inconclusive("could not decide sum d_n^2"),
    })
}

pub fn dennis_wall(m: &InteractionModel, cfg: &ProbeConfig) -> Result<Verdict> {
    m.expect(InteractionKind::Delta, "dennis_wall")?;
    let g = Gaps::of(m);
    let terms = m.strengths().abs() * &g.d * &g.dn * g.r.lag(1, 0.0) * g.r.shift(1);
    let p = series_probe(&terms, cfg);
    let v = Verdict::new("dennis_wall", Claim::SelfAdjoint, DENNIS_WALL_CITE);
    Ok(match SeriesClass::of(&p) {
        SeriesClass::Infinite => v.with("sum |alpha_n| d_n d_{n+1} r_{n-1} r_{n+1}", p).holds(),
        SeriesClass::Finite(_) => v.with("sum |alpha_n| d_n d_{n+1} r_{n-1} r_{n+1}", p).inconclusive("series converges"),
        SeriesClass::Unknown => v.with("sum |alpha_n| d_n d_{n+1} r_{n-1} r_{n+1}", p).inconclusive("could not decide the series"),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Upper,
    Lower,
}

/// Quotient `E_n / (d_n + d_{n+1})` of a Berezanskii-type inequality.
pub fn berezanskii_quotient(m: &InteractionModel, side: Side) -> Seq {
    let g = Gaps::of(m);
    let sgn = match side {
        Side::Upper => 1.0,
        Side::Lower => -1.0,
    };
    let back = (&g.r / g.r.lag(1, 1.0)).scale(sgn) + 1.0;
    let fwd = (&g.r / g.r.shift(1)).scale(sgn) + 1.0;
    (m.strengths() + back / &g.d + fwd / &g.dn) / g.sum()
}

/// Upper: quotient bounded above for large `n`; lower: bounded below.
pub fn berezanskii_bound(m: &InteractionModel, side: Side, cfg: &ProbeConfig) -> Result<Verdict> {
    m.expect(InteractionKind::Delta, "berezanskii_bound")?;
    let (id, cite) = match side {
        Side::Upper => ("berezanskii_upper", BEREZANSKII_UPPER_CITE),
        Side::Lower => ("berezanskii_lower", BEREZANSKII_LOWER_CITE),
    };
    let v = Verdict::new(id, Claim::SelfAdjoint, cite);
    let q = berezanskii_quotient(m, side);
    // both sides become "bounded above"
    let t = match side {
        Side::Upper => q,
        Side::Lower => -q,
    };
    let p = limit_probe(&t, cfg);
    let label = match side {
        Side::Upper => "E_n / (d_n + d_{n+1})",
        Side::Lower => "-E_n / (d_n + d_{n+1})",
    };
    let lc = LimitClass::of(&p);
    if lc == LimitClass::Unknown {
        return Ok(v.with(label, p).inconclusive("could not decide the quotient"));
    }
    if lc.upper() == f64::INFINITY {
        return Ok(v.with(label, p).inconclusive("inequality fails for every constant"));
    }
    match witness_for_upper(&t, cfg) {
        Some(c) => Ok(v.with(label, p).holds().witness(c)),
        None => Ok(v.with(label, p).inconclusive("no constant up to 2^30 fits the scanned range")),
    }
}

/// Holds(DeficiencyOne) under log-concavity and the summability condition.
pub fn deficiency_one_delta(m: &InteractionModel, cfg: &ProbeConfig) -> Result<Verdict> {
    m.expect(InteractionKind::Delta, "deficiency_one_delta")?;
    let v = Verdict::new("deficiency_one_delta", Claim::DeficiencyOne, DEFICIENCY_CITE);
    let g = Gaps::of(m);
    let l2 = series_probe(&(&g.d * &g.d), cfg);
    match SeriesClass::of(&l2) {
        SeriesClass::Finite(_) => {}
        SeriesClass::Infinite => return Ok(v.with("sum d_n^2", l2).inconclusive("d is not in l^2")),
        SeriesClass::Unknown => return Ok(v.with("sum d_n^2", l2).inconclusive("could not decide sum d_n^2")),
    }
    let concavity = g.d.lag(1, f64::INFINITY) * &g.dn / (&g.d * &g.d) - 1.0;
    let (conc, conc_p) = nonneg_everywhere(&concavity, 1e-12, cfg);
    if conc != Outcome::Holds {
        return Ok(v
            .with("d_{n-1} d_{n+1} / d_n^2 - 1", conc_p)
            .inconclusive("gaps are not log-concave; the test does not apply"));
    }
    let series = series_probe(&(&g.dn * g.shifted(m.strengths()).abs()), cfg);
    let v = v.with("sum d_n^2", l2).with("d_{n-1} d_{n+1} / d_n^2 - 1", conc_p);
    Ok(match SeriesClass::of(&series) {
        SeriesClass::Finite(_) => v.with("sum d_{n+1} |alpha_n + 1/d_n + 1/d_{n+1}|", series).holds(),
        SeriesClass::Infinite => v
            .with("sum d_{n+1} |alpha_n + 1/d_n + 1/d_{n+1}|", series)
            .inconclusive("summability condition fails; the test is only sufficient"),
        SeriesClass::Unknown => v
            .with("sum d_{n+1} |alpha_n + 1/d_n + 1/d_{n+1}|", series)
            .inconclusive("could not decide the summability condition"),
    })
}

/// `Delta_a(0) = -2 + (2 + a)^2`.
pub fn floquet_at_zero(a: f64) -> f64 {
    let k = 1.0 + a / 2.0;
    -2.0 + (4.0 / std::f64::consts::PI) * k * std::f64::consts::PI * k
}

/// Slope `a` with `alpha_n = a (n + 1/2) + O(1/n)` on `d_n = 1/n`.
pub fn periodic_slope(m: &InteractionModel) -> Result<f64> {
    m.expect(InteractionKind::Delta, "deficiency_one_periodic")?;
    if *m.partition().spec() != PartitionSpec::Gaps(SequenceSpec::power(1.0, -1.0)) {
        return Err(Error::NotApplicable("the periodic construction needs d_n = 1/n".into()));
    }
    let asym = m
        .strengths()
        .asym()
        .ok_or_else(|| Error::NotApplicable("no asymptotic expansion for alpha".into()))?;
    let a = match asym.lead() {
        Lead::Term(t) if t.scale.cmp_growth(&Scale::power(1.0)).is_eq() => t.coef,
        _ => return Err(Error::NotApplicable("alpha does not grow linearly".into())),
    };
    let model = Seq::spec(SequenceSpec::affine(a / 2.0, a));
    let rem = m.strengths() - model;
    let small = match rem.asym().and_then(|r| r.top_scale()) {
        None => rem.asym().is_some(),
        Some(s) => !s.cmp_growth(&Scale::power(-1.0)).is_gt(),
    };
    if !small {
        return Err(Error::NotApplicable(format!("alpha - {a} (n + 1/2) is not O(1/n)")));
    }
    Ok(a)
}

/// Holds(DeficiencyOne) iff the slope lies in `(-4, 0)`.
pub fn deficiency_one_periodic(m: &InteractionModel, cfg: &ProbeConfig) -> Result<Verdict> {
    let a = periodic_slope(m)?;
    let delta = floquet_at_zero(a);
    let slope = limit_probe(&(m.strengths() / Seq::spec(SequenceSpec::affine(0.5, 1.0))), cfg);
    let v = Verdict::new("deficiency_one_periodic", Claim::DeficiencyOne, PERIODIC_CITE).with("alpha_n / (n + 1/2)", slope);
    Ok(if (2.0 + a).abs() < 2.0 {
        let note = if (a + 2.0).abs() < 1e-12 {
            format!("Delta_a(0) = {delta}; all solutions at a = -2 are bounded by a separate argument")
        } else {
            format!("|Delta_a(0)| = {} < 2", delta.abs())
        };
        v.holds().note(note)
    } else {
        v.fails().note(format!("a = {a} outside (-4, 0); Delta_a(0) = {delta}"))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiscreteTest {
    Chihara1,
    Chihara2,
    Cojuhari,
}

/// First self-adjointness verdict that holds, if any.
pub fn delta_selfadjointness(m: &InteractionModel, cfg: &ProbeConfig) -> Result<Option<Verdict>> {
    let tries: [&dyn Fn() -> Result<Verdict>; 4] = [
        &|| carleman(m, cfg),
        &|| dennis_wall(m, cfg),
        &|| berezanskii_bound(m, Side::Upper, cfg),
        &|| berezanskii_bound(m, Side::Lower, cfg),
    ];
    for t in tries {
        let v = t()?;
        if v.outcome == Outcome::Holds {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

/// Discreteness tests; the Chihara tests first need self-adjointness and `d_n -> 0`.
pub fn delta_discrete(m: &InteractionModel, test: DiscreteTest, cfg: &ProbeConfig) -> Result<Verdict> {
    m.expect(InteractionKind::Delta, "delta_discrete")?;
    let (id, cite) = match test {
        DiscreteTest::Chihara1 => ("chihara_1", CHIHARA1_CITE),
        DiscreteTest::Chihara2 => ("chihara_2", CHIHARA2_CITE),
        DiscreteTest::Cojuhari => ("cojuhari", COJUHARI_CITE),
    };
    let v = Verdict::new(id, Claim::Discrete, cite);
    let (vanish, dp) = d_vanishes(m, cfg);
    if !vanish {
        return Ok(v.with("lim d_n", dp).inconclusive("d_n does not tend to 0"));
    }
    let v = v.with("lim d_n", dp);
    let g = Gaps::of(m);
    let alpha = m.strengths();
    match test {
        DiscreteTest::Chihara1 | DiscreteTest::Chihara2 => {
            let Some(sa) = delta_selfadjointness(m, cfg)? else {
                return Ok(v.inconclusive("self-adjointness not established"));
            };
            let v = v.note(format!("self-adjoint by {}", sa.criterion_id));
            let (first, second, bound, label1, label2) = if test == DiscreteTest::Chihara1 {
                let first = alpha.abs() / &g.d;
                let second = (&g.d * alpha).recip();
                (first, second, -0.25, "|alpha_n| / d_n", "1 / (d_n alpha_n)")
            } else {
                let first = g.shifted(alpha).abs() / g.sum();
                let lhs = alpha * &g.dn + 1.0 + &g.dn / &g.d;
                let rhs = alpha.shift(1) * &g.dn + 1.0 + &g.dn / g.d.shift(2);
                (first, (lhs * rhs).recip(), 0.25, "|alpha_n + 1/d_n + 1/d_{n+1}| / (d_n + d_{n+1})", "product limit")
            };
            let p1 = limit_probe(&first, cfg);
            let p2 = limit_probe(&second, cfg);
            let (c1, c2) = (LimitClass::of(&p1), LimitClass::of(&p2));
            let second_ok = if test == DiscreteTest::Chihara1 { c2.lower() > bound } else { c2.upper() < bound };
            let second_bad = match c2 {
                LimitClass::Zero | LimitClass::Finite(_) | LimitClass::PlusInf | LimitClass::MinusInf => !second_ok,
                _ => false,
            };
            let first_bad = matches!(c1, LimitClass::Zero | LimitClass::Finite(_) | LimitClass::MinusInf);
            let v = v.with(label1, p1).with(label2, p2);
            Ok(if c1 == LimitClass::PlusInf && second_ok {
                v.holds()
            } else if first_bad || second_bad {
                v.fails()
            } else {
                v.inconclusive("limits undecided")
            })
        }
        DiscreteTest::Cojuhari => {
            let q = (g.shifted(alpha) - g.r.lag(1, 0.0) / (&g.d * &g.r) - g.r.shift(1) / (&g.dn * &g.r)) / g.sum();
            let p = limit_probe(&q, cfg);
            let v = v.with("Cojuhari quotient", p.clone());
            Ok(match LimitClass::of(&p) {
                LimitClass::PlusInf => v.holds().implying(Claim::SelfAdjoint),
                LimitClass::Unknown => v.inconclusive("could not decide the quotient"),
                _ => v.inconclusive("quotient does not tend to +inf; the test is only sufficient"),
            })
        }
    }
}

/// Sufficient test `inf alpha_n / (d_n + d_{n+1}) > -inf`.
pub fn delta_semibounded(m: &InteractionModel, cfg: &ProbeConfig) -> Result<Verdict> {
    m.expect(InteractionKind::Delta, "delta_semibounded")?;
    let g = Gaps::of(m);
    let p = limit_probe(&(m.strengths() / g.sum()), cfg);
    let v = Verdict::new("delta_semibounded", Claim::SemiboundedBelow, SEMIBOUNDED_CITE).with("alpha_n / (d_n + d_{n+1})", p.clone());
    Ok(match LimitClass::of(&p) {
        LimitClass::Unknown => v.inconclusive("could not decide the quotient"),
        LimitClass::MinusInf => v.fails(),
        _ => v.holds(),
    })
}

/// Iff form for gaps bounded away from 0 and infinity.
pub fn delta_semibounded_uniform(m: &InteractionModel, cfg: &ProbeConfig) -> Result<Verdict> {
    m.expect(InteractionKind::Delta, "delta_semibounded_uniform")?;
    let lo = m.partition().d_lower(cfg);
    let hi = m.partition().d_upper(cfg);
    if !(lo.value > 0.0 && hi.value.is_finite()) {
        return Err(Error::NotApplicable("needs 0 < d_* <= d^* < inf".into()));
    }
    let p = limit_probe(m.strengths(), cfg);
    let v = Verdict::new("delta_semibounded_uniform", Claim::SemiboundedBelow, SEMIBOUNDED_UNIFORM_CITE)
        .with("d_*", lo.probe)
        .with("alpha_n", p.clone());
    Ok(match LimitClass::of(&p) {
        LimitClass::Unknown => v.inconclusive("could not decide inf alpha_n"),
        LimitClass::MinusInf => v.fails().implying(Claim::NotSemibounded),
        _ => v.holds(),
    })
}

/// `x_n = sqrt(n)` with `alpha_n` eventually below `-n^-eps`, `eps < 1/2`.
pub fn sqrt_knots_not_semibounded(m: &InteractionModel, cfg: &ProbeConfig) -> Result<Verdict> {
    m.expect(InteractionKind::Delta, "sqrt_knots_not_semibounded")?;
    if *m.partition().spec() != PartitionSpec::Knots(SequenceSpec::power(1.0, 0.5)) {
        return Err(Error::NotApplicable("needs x_n = sqrt(n)".into()));
    }
    let lead = m.strengths().asym().map(|a| a.lead());
    let applies = matches!(lead, Some(Lead::Term(t)) if t.coef < 0.0 && t.scale.cmp_growth(&Scale::power(-0.5)).is_gt());
    if !applies {
        return Err(Error::NotApplicable("alpha_n is not eventually below -n^-eps with eps < 1/2".into()));
    }
    let root = Seq::spec(SequenceSpec::power(1.0, 0.5));
    let p = limit_probe(&(m.strengths() * root), cfg);
    let v = Verdict::new("sqrt_knots_not_semibounded", Claim::NotSemibounded, SQRT_KNOTS_CITE).with("sqrt(n) alpha_n", p);
    Ok(v.holds().note("comparison with alpha_n = -n^-eps, eps in [0, 1/2)"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqmodel::Partition;

    fn cfg() -> ProbeConfig {
        ProbeConfig::default()
    }

    fn harmonic(alpha: SequenceSpec) -> InteractionModel {
        InteractionModel::delta(Partition::gaps(SequenceSpec::power(1.0, -1.0)).unwrap(), alpha).unwrap()
    }

    fn sqrt_knots(alpha: SequenceSpec) -> InteractionModel {
        InteractionModel::delta(Partition::knots(SequenceSpec::power(1.0, 0.5)).unwrap(), alpha).unwrap()
    }

    #[test]
    fn carleman_cases() {
        let unit = InteractionModel::delta(Partition::gaps(SequenceSpec::constant(1.0)).unwrap(), SequenceSpec::constant(0.0)).unwrap();
        assert_eq!(carleman(&unit, &cfg()).unwrap().outcome, Outcome::Holds);
        let root = InteractionModel::delta(Partition::gaps(SequenceSpec::power(1.0, -0.5)).unwrap(), SequenceSpec::constant(0.0)).unwrap();
        assert_eq!(carleman(&root, &cfg()).unwrap().outcome, Outcome::Holds);
        assert_eq!(carleman(&harmonic(SequenceSpec::constant(0.0)), &cfg()).unwrap().outcome, Outcome::Inconclusive);
    }

    #[test]
    fn dennis_wall_cases() {
        assert_eq!(dennis_wall(&harmonic(SequenceSpec::power(1.0, 2.0)), &cfg()).unwrap().outcome, Outcome::Holds);
        assert_eq!(dennis_wall(&harmonic(SequenceSpec::constant(1.0)), &cfg()).unwrap().outcome, Outcome::Inconclusive);
        assert_eq!(dennis_wall(&harmonic(SequenceSpec::constant(0.0)), &cfg()).unwrap().outcome, Outcome::Inconclusive);
    }

    #[test]
    fn berezanskii_cases() {
        let up = berezanskii_bound(&harmonic(SequenceSpec::affine(-3.0, -4.0)), Side::Upper, &cfg()).unwrap();
        assert_eq!(up.outcome, Outcome::Holds);
        let m = harmonic(SequenceSpec::affine(-2.0, -4.0));
        let up = berezanskii_bound(&m, Side::Upper, &cfg()).unwrap();
        assert_eq!(up.outcome, Outcome::Holds);
        assert_eq!(up.witness, Some(1.0));
        let lo = berezanskii_bound(&harmonic(SequenceSpec::power(-1.0, -1.0)), Side::Lower, &cfg()).unwrap();
        assert_eq!(lo.outcome, Outcome::Holds);
        assert_eq!(lo.witness, Some(1.0));
        let gap = harmonic(SequenceSpec::affine(0.0, -3.0));
        for side in [Side::Upper, Side::Lower] {
            assert_eq!(berezanskii_bound(&gap, side, &cfg()).unwrap().outcome, Outcome::Inconclusive);
        }
    }

    #[test]
    fn deficiency_cases() {
        let v = deficiency_one_delta(&harmonic(SequenceSpec::affine(-1.0, -2.0)), &cfg()).unwrap();
        assert_eq!(v.outcome, Outcome::Holds);
        let perturbed = SequenceSpec::power_sum(&[(-2.0, 1.0), (-1.0, 0.0), (1.0, -2.0)]);
        assert_eq!(deficiency_one_delta(&harmonic(perturbed), &cfg()).unwrap().outcome, Outcome::Holds);
        let unit = InteractionModel::delta(Partition::gaps(SequenceSpec::constant(1.0)).unwrap(), SequenceSpec::constant(0.0)).unwrap();
        assert_eq!(deficiency_one_delta(&unit, &cfg()).unwrap().outcome, Outcome::Inconclusive);
    }

    #[test]
    fn periodic_window() {
        let at = |a: f64| deficiency_one_periodic(&harmonic(SequenceSpec::affine(a / 2.0, a)), &cfg()).unwrap();
        assert_eq!(at(-2.0).outcome, Outcome::Holds);
        assert_eq!(at(-1.0).outcome, Outcome::Holds);
        assert_eq!(at(-4.0).outcome, Outcome::Fails);
        assert!((floquet_at_zero(-1.0) + 1.0).abs() < 1e-15);
        assert_eq!(floquet_at_zero(-2.0), -2.0);
        assert!(matches!(
            deficiency_one_periodic(&harmonic(SequenceSpec::affine(0.0, -3.0)), &cfg()),
            Err(Error::NotApplicable(_))
        ));
    }

    #[test]
    fn chihara_examples() {
        let a = sqrt_knots(SequenceSpec::power(1.0, -0.25));
        assert_eq!(delta_discrete(&a, DiscreteTest::Chihara1, &cfg()).unwrap().outcome, Outcome::Holds);
        let b = sqrt_knots(SequenceSpec::power(-10.0, 0.5));
        assert_eq!(delta_discrete(&b, DiscreteTest::Chihara1, &cfg()).unwrap().outcome, Outcome::Holds);
        let c = sqrt_knots(SequenceSpec::power(-4.0, 0.5));
        assert_eq!(delta_discrete(&c, DiscreteTest::Chihara1, &cfg()).unwrap().outcome, Outcome::Fails);
        let unit = InteractionModel::delta(Partition::gaps(SequenceSpec::constant(1.0)).unwrap(), SequenceSpec::power(1.0, 1.0)).unwrap();
        assert_eq!(delta_discrete(&unit, DiscreteTest::Chihara1, &cfg()).unwrap().outcome, Outcome::Inconclusive);
    }

    #[test]
    fn semibounded_cases() {
        let unit = InteractionModel::delta(Partition::gaps(SequenceSpec::constant(1.0)).unwrap(), SequenceSpec::constant(-5.0)).unwrap();
        assert_eq!(delta_semibounded(&unit, &cfg()).unwrap().outcome, Outcome::Holds);
        assert_eq!(delta_semibounded_uniform(&unit, &cfg()).unwrap().outcome, Outcome::Holds);
        let m = sqrt_knots(SequenceSpec::power(-1.0, -0.25));
        assert_eq!(delta_semibounded(&m, &cfg()).unwrap().outcome, Outcome::Fails);
        let w = sqrt_knots_not_semibounded(&m, &cfg()).unwrap();
        assert!(w.is(Outcome::Holds, Claim::NotSemibounded));
        assert!(sqrt_knots_not_semibounded(&sqrt_knots(SequenceSpec::power(-1.0, -0.75)), &cfg()).is_err());
        assert!(delta_semibounded_uniform(&m, &cfg()).is_err());
    }
}
