//! Criteria for delta-prime interactions.

use super::model::{InteractionKind, InteractionModel};
use super::support::{nonneg_everywhere, witness_for_upper};
use super::verdict::{Claim, LimitClass, SeriesClass, Verdict};
use crate::error::Result;
use crate::seqmodel::{limit_probe, series_probe, Outcome, ProbeConfig, Seq};

const SA_CITE: &str = "delta-prime self-adjointness iff sum d_n = inf or sum d_{n+1} |sum_{i<=n} (beta_i + d_i)|^2 = inf";
const DISCRETE_CITE: &str = "delta-prime discreteness: Kac-Krein limits for the J_X / J_beta halves, with non-discreteness guards";
const SEMIBOUNDED_CITE: &str = "delta-prime semiboundedness: 1/beta_n >= -C min(d_n, d_{n+1}) suffices, 1/beta_n >= -C d - 1/d is necessary";

/// `S_n = sum_{i<=n} (beta_i + d_i)`
fn offset_sums(m: &InteractionModel) -> Seq {
    (m.strengths() + m.d()).partial_sum()
}

/// Iff test; Fails establishes deficiency indices (1, 1).
pub fn deltaprime_selfadjoint(m: &InteractionModel, cfg: &ProbeConfig) -> Result<Verdict> {
    m.expect(InteractionKind::DeltaPrime, "deltaprime_selfadjoint")?;
    let v = Verdict::new("deltaprime_selfadjoint", Claim::SelfAdjoint, SA_CITE);
    let length = series_probe(m.d(), cfg);
    let len_class = SeriesClass::of(&length);
    if len_class == SeriesClass::Infinite {
        return Ok(v.with("sum d_n", length).holds());
    }
    let s = offset_sums(m);
    let series = series_probe(&(m.d().shift(1) * &s * &s), cfg);
    let v = v.with("sum d_n", length).with("sum d_{n+1} S_n^2", series.clone());
    Ok(match (len_class, SeriesClass::of(&series)) {
        (_, SeriesClass::Infinite) => v.holds(),
        (SeriesClass::Finite(_), SeriesClass::Finite(_)) => v.fails().implying(Claim::DeficiencyOne),
        _ => v.inconclusive("could not decide the series"),
    })
}

fn discrete(v: Verdict) -> Verdict {
    Verdict { claim: Claim::Discrete, ..v }.holds()
}

fn not_discrete(v: Verdict) -> Verdict {
    Verdict { claim: Claim::NotDiscrete, ..v }.holds()
}

/// Discrete, NotDiscrete or Inconclusive with the failing step named.
pub fn deltaprime_discrete(m: &InteractionModel, cfg: &ProbeConfig) -> Result<Verdict> {
    m.expect(InteractionKind::DeltaPrime, "deltaprime_discrete")?;
    let v = Verdict::new("deltaprime_discrete", Claim::Discrete, DISCRETE_CITE);
    let d = m.d();
    let beta = m.strengths();
    let length = series_probe(d, cfg);
    match SeriesClass::of(&length) {
        SeriesClass::Unknown => Ok(v.with("sum d_n", length).inconclusive("could not tell a half-line from a bounded interval")),
        SeriesClass::Finite(_) => bounded_interval(m, v.with("sum d_n", length), cfg),
        SeriesClass::Infinite => {
            let v = v.with("sum d_n", length);
            let lim_d = limit_probe(d, cfg);
            match LimitClass::of(&lim_d) {
                LimitClass::Zero => {}
                LimitClass::Unknown => return Ok(v.with("lim d_n", lim_d).inconclusive("could not decide whether d_n -> 0")),
                _ if LimitClass::of(&lim_d).bounded_away_from_zero() => {
                    return Ok(not_discrete(v.with("lim d_n", lim_d)).note("d_n does not tend to 0"));
                }
                _ => return Ok(v.with("lim d_n", lim_d).inconclusive("d_n has no limit")),
            }
            let v = v.with("lim d_n", lim_d);
            let d3 = d * d * d;
            let cubes = series_probe(&d3, cfg);
            match SeriesClass::of(&cubes) {
                SeriesClass::Infinite => return Ok(not_discrete(v.with("sum d_n^3", cubes)).note("d is not in l^3")),
                SeriesClass::Unknown => return Ok(v.with("sum d_n^3", cubes).inconclusive("could not decide sum d_n^3")),
                SeriesClass::Finite(_) => {}
            }
            let first = limit_probe(&(m.partition().x() * d3.tail_sum()), cfg);
            let fc = LimitClass::of(&first);
            if fc.bounded_away_from_zero() {
                return Ok(not_discrete(v.with("x_n sum_{j>=n} d_j^3", first)).note("J_X is not discrete"));
            }
            // guard (i): beta_n >= -C d_n^3
            let g1 = limit_probe(&(beta / &d3), cfg);
            if LimitClass::of(&g1).lower() > f64::NEG_INFINITY {
                return Ok(not_discrete(v.with("beta_n / d_n^3", g1)).note("beta_n >= -C d_n^3"));
            }
            // guard (ii): every beta_n negative and beta_n <= -C (1/d_n + 1/d_{n+1})
            let scale = d.recip() + d.shift(1).recip();
            let neg = beta.asym().and_then(|a| a.eventual_sign()) == Some(-1);
            let g2 = limit_probe(&(beta / &scale), cfg);
            if neg && LimitClass::of(&g2).upper() < 0.0 {
                return Ok(not_discrete(v.with("beta_n / (1/d_n + 1/d_{n+1})", g2)).note("beta_n <= -C (1/d_n + 1/d_{n+1})"));
            }
            let (sign, sign_p) = nonneg_everywhere(&(beta + d), 0.0, cfg);
            if sign != Outcome::Holds {
                return Ok(v.with("beta_n + d_n", sign_p).inconclusive("beta_n + d_n >= 0 fails and no non-discreteness guard applies"));
            }
            let v = v.with("x_n sum_{j>=n} d_j^3", first).with("beta_n + d_n", sign_p);
            let offs = series_probe(&(beta + d), cfg);
            match SeriesClass::of(&offs) {
                SeriesClass::Infinite => return Ok(not_discrete(v.with("sum (beta_n + d_n)", offs)).note("J_beta is not discrete")),
                SeriesClass::Unknown => return Ok(v.with("sum (beta_n + d_n)", offs).inconclusive("could not decide sum (beta_n + d_n)")),
                SeriesClass::Finite(_) => {}
            }
            let second = limit_probe(&(m.partition().x() * (beta + d).tail_sum()), cfg);
            let sc = LimitClass::of(&second);
            let v = v.with("x_n sum_{j>=n} (beta_j + d_j)", second);
            Ok(if fc.is_zero() && sc.is_zero() {
                discrete(v)
            } else if sc.bounded_away_from_zero() {
                not_discrete(v).note("J_beta is not discrete")
            } else {
                v.inconclusive("limits undecided")
            })
        }
    }
}

fn bounded_interval(m: &InteractionModel, v: Verdict, cfg: &ProbeConfig) -> Result<Verdict> {
    let sa = deltaprime_selfadjoint(m, cfg)?;
    match sa.outcome {
        Outcome::Fails => {
            let mut out = discrete(v).note("deficiency indices (1, 1): every self-adjoint extension is discrete");
            out.evidence.extend(sa.evidence);
            return Ok(out);
        }
        Outcome::Inconclusive => return Ok(v.inconclusive("self-adjointness undecided")),
        Outcome::Holds => {}
    }
    let d = m.d();
    let (sign, sign_p) = nonneg_everywhere(&(m.strengths() + d), 0.0, cfg);
    if sign != Outcome::Holds {
        return Ok(v.with("beta_n + d_n", sign_p).inconclusive("beta_n + d_n >= 0 fails on a bounded interval"));
    }
    // b - x_n = sum_{j>n} d_j
    let q = d.tail_sum().shift(1) * offset_sums(m);
    let p = limit_probe(&q, cfg);
    let v = v.with("beta_n + d_n", sign_p).with("(b - x_n) sum_{j<=n} (beta_j + d_j)", p.clone());
    let lc = LimitClass::of(&p);
    Ok(if lc.is_zero() {
        discrete(v)
    } else if lc.bounded_away_from_zero() {
        not_discrete(v)
    } else {
        v.inconclusive("limit undecided")
    })
}

/// Holds when the sufficient bound holds, Fails when a necessary bound breaks.
pub fn deltaprime_semibounded(m: &InteractionModel, cfg: &ProbeConfig) -> Result<Verdict> {
    m.expect(InteractionKind::DeltaPrime, "deltaprime_semibounded")?;
    let v = Verdict::new("deltaprime_semibounded", Claim::SemiboundedBelow, SEMIBOUNDED_CITE);
    let d = m.d();
    let dn = d.shift(1);
    let inv = m.strengths().recip();
    // C needed at n: -(1/beta_n) / min(d_n, d_{n+1})
    let need = -(&inv / d.min(&dn));
    let p = limit_probe(&need, cfg);
    let lc = LimitClass::of(&p);
    if lc != LimitClass::Unknown && lc.upper() < f64::INFINITY {
        if let Some(c) = witness_for_upper(&need, cfg) {
            return Ok(v.with("-1/(beta_n min(d_n, d_{n+1}))", p).holds().witness(c));
        }
    }
    let nec1 = -((&inv + d.recip()) / d);
    let nec2 = -((&inv + dn.recip()) / &dn);
    let p1 = limit_probe(&nec1, cfg);
    let p2 = limit_probe(&nec2, cfg);
    let broken = [&p1, &p2].iter().any(|p| LimitClass::of(p) == LimitClass::PlusInf);
    let v = v
        .with("-1/(beta_n min(d_n, d_{n+1}))", p)
        .with("-(1/beta_n + 1/d_n)/d_n", p1)
        .with("-(1/beta_n + 1/d_{n+1})/d_{n+1}", p2);
    Ok(if broken {
        v.fails().implying(Claim::NotSemibounded)
    } else {
        v.inconclusive("between the necessary and the sufficient bound")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqmodel::{Partition, SequenceSpec};

    fn cfg() -> ProbeConfig {
        ProbeConfig::default()
    }

    fn gaps(d: SequenceSpec, beta: SequenceSpec) -> InteractionModel {
        InteractionModel::delta_prime(Partition::gaps(d).unwrap(), beta).unwrap()
    }

    #[test]
    fn selfadjoint_cases() {
        let v = deltaprime_selfadjoint(&gaps(SequenceSpec::power(1.0, -1.0), SequenceSpec::constant(-3.0)), &cfg()).unwrap();
        assert_eq!(v.outcome, Outcome::Holds);
        let v = deltaprime_selfadjoint(&gaps(SequenceSpec::geometric(1.0, 0.5), SequenceSpec::geometric(-1.0, 0.5)), &cfg()).unwrap();
        assert_eq!(v.outcome, Outcome::Fails);
        assert_eq!(v.implies, vec![Claim::DeficiencyOne]);
        let beta = SequenceSpec::power_sum(&[(2.0, 0.0), (-1.0, -2.0)]);
        let v = deltaprime_selfadjoint(&gaps(SequenceSpec::power(1.0, -2.0), beta), &cfg()).unwrap();
        assert_eq!(v.outcome, Outcome::Holds);
    }

    #[test]
    fn discrete_cases() {
        let cube = Partition::knots(SequenceSpec::power(1.0, 1.0 / 3.0)).unwrap();
        let m = InteractionModel::delta_prime_offset(cube.clone(), SequenceSpec::power(2.0, -2.0)).unwrap();
        assert!(deltaprime_discrete(&m, &cfg()).unwrap().is(Outcome::Holds, Claim::Discrete));
        let root = Partition::knots(SequenceSpec::power(1.0, 0.5)).unwrap();
        let m = InteractionModel::delta_prime(root, SequenceSpec::power(-1.0, -1.5)).unwrap();
        assert!(deltaprime_discrete(&m, &cfg()).unwrap().is(Outcome::Holds, Claim::NotDiscrete));
        let m = InteractionModel::delta_prime(cube, SequenceSpec::power(-1.0, -2.0)).unwrap();
        assert!(deltaprime_discrete(&m, &cfg()).unwrap().is(Outcome::Holds, Claim::NotDiscrete));
        let m = gaps(SequenceSpec::power(1.0, -1.0), SequenceSpec::constant(1.0));
        assert!(deltaprime_discrete(&m, &cfg()).unwrap().is(Outcome::Holds, Claim::NotDiscrete));
    }

    #[test]
    fn bounded_interval_cases() {
        // d = n^-1.5, beta = n^-0.5: (b - x_n) S_n ~ n^-0.5 n^0.5 stays away from 0
        let m = gaps(SequenceSpec::power(1.0, -1.5), SequenceSpec::power(1.0, -0.5));
        assert!(deltaprime_discrete(&m, &cfg()).unwrap().is(Outcome::Holds, Claim::NotDiscrete));
        let m = gaps(SequenceSpec::power(1.0, -2.0), SequenceSpec::power(1.0, -2.0));
        let v = deltaprime_discrete(&m, &cfg()).unwrap();
        assert!(v.is(Outcome::Holds, Claim::Discrete));
    }

    #[test]
    fn semibounded_cases() {
        let v = deltaprime_semibounded(&gaps(SequenceSpec::power(1.0, -1.0), SequenceSpec::constant(2.0)), &cfg()).unwrap();
        assert_eq!(v.outcome, Outcome::Holds);
        let v = deltaprime_semibounded(&gaps(SequenceSpec::constant(1.0), SequenceSpec::constant(-0.5)), &cfg()).unwrap();
        assert_eq!(v.outcome, Outcome::Holds);
        assert_eq!(v.witness, Some(2.0));
        let v = deltaprime_semibounded(&gaps(SequenceSpec::power(1.0, -1.0), SequenceSpec::constant(-1.0)), &cfg()).unwrap();
        assert_eq!(v.outcome, Outcome::Inconclusive);
        // 1/beta = -n^2 breaks the necessary bound -C/n - n
        let v = deltaprime_semibounded(&gaps(SequenceSpec::power(1.0, -1.0), SequenceSpec::power(-1.0, -2.0)), &cfg()).unwrap();
        assert_eq!(v.outcome, Outcome::Fails);
    }
}
