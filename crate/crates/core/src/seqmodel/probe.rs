//! Exact and numeric probes for limits, series and l^p membership.

use serde::{Deserialize, Serialize};

use super::asym::Lead;
use super::seq::Seq;

/// Tri-state outcome shared by probes and criteria.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Holds,
    Fails,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ExactSymbolic,
    NumericTail,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Confidence {
    Exact,
    Numeric,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProbeKind {
    DivergesToInf,
    DivergesToNegInf,
    Converges { value: f64 },
    LimitIs { value: f64 },
    LimInf { value: f64 },
    LimSup { value: f64 },
    Oscillates { liminf: f64, limsup: f64 },
    Indeterminate { reason: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeResult {
    #[serde(flatten)]
    pub kind: ProbeKind,
    pub method: Method,
    pub confidence: Confidence,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub horizon: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
}

impl ProbeResult {
    pub fn exact(kind: ProbeKind) -> Self {
        ProbeResult { kind, method: Method::ExactSymbolic, confidence: Confidence::Exact, horizon: None, tol: None }
    }

    pub fn numeric(kind: ProbeKind, cfg: &ProbeConfig, horizon: u64) -> Self {
        ProbeResult {
            kind,
            method: Method::NumericTail,
            confidence: Confidence::Numeric,
            horizon: Some(horizon),
            tol: Some(cfg.rel_tol),
        }
    }

    pub fn indeterminate(reason: impl Into<String>) -> Self {
        ProbeResult::exact(ProbeKind::Indeterminate { reason: reason.into() })
    }

    pub fn is_indeterminate(&self) -> bool {
        matches!(self.kind, ProbeKind::Indeterminate { .. })
    }

    /// Finite limit value, when the probe found one.
    pub fn limit(&self) -> Option<f64> {
        match self.kind {
            ProbeKind::LimitIs { value } | ProbeKind::Converges { value } => Some(value),
            _ => None,
        }
    }

    pub fn diverges(&self) -> bool {
        matches!(self.kind, ProbeKind::DivergesToInf | ProbeKind::DivergesToNegInf)
    }
}

/// Numeric probe settings.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeConfig {
    pub horizon: u64,
    pub rel_tol: f64,
    /// Ratio between consecutive checkpoints.
    pub checkpoint_ratio: f64,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig { horizon: 100_000, rel_tol: 1e-8, checkpoint_ratio: 2.0 }
    }
}

impl ProbeConfig {
    pub fn checkpoints(&self, start: u64, end: u64) -> Vec<u64> {
        let mut pts = Vec::new();
        let mut n = start.max(1) as f64;
        while (n as u64) < end {
            let k = n as u64;
            if pts.last() != Some(&k) {
                pts.push(k);
            }
            n *= self.checkpoint_ratio.max(1.01);
        }
        pts.push(end);
        pts
    }
}

/// Sequence index class for membership probes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LpIndex {
    /// `l^p`, `0 < p < inf`
    P(f64),
    /// bounded sequences
    Infinity,
    /// null sequences
    C0,
}

impl std::fmt::Display for LpIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LpIndex::P(p) => write!(f, "l^{p}"),
            LpIndex::Infinity => write!(f, "l^inf"),
            LpIndex::C0 => write!(f, "c0"),
        }
    }
}

fn effective_horizon(s: &Seq, cfg: &ProbeConfig) -> Result<u64, ProbeResult> {
    if s.finite_horizon().is_some() {
        return Err(ProbeResult::indeterminate("finite table without a tail hint"));
    }
    Ok(cfg.horizon.max(100))
}

/// Behaviour of `sum_n s(n)`.
pub fn series_probe(s: &Seq, cfg: &ProbeConfig) -> ProbeResult {
    if let Some(a) = s.asym() {
        let summable_value = || match s.numeric_total() {
            Ok(v) => ProbeResult { tol: Some(cfg.rel_tol), ..ProbeResult::exact(ProbeKind::Converges { value: v }) },
            Err(e) => ProbeResult::indeterminate(e.to_string()),
        };
        match a.lead() {
            Lead::Zero => return ProbeResult::exact(ProbeKind::Converges { value: 0.0 }),
            Lead::Term(t) => {
                if t.scale.summable() {
                    return summable_value();
                }
                return ProbeResult::exact(if t.coef > 0.0 {
                    ProbeKind::DivergesToInf
                } else {
                    ProbeKind::DivergesToNegInf
                });
            }
            Lead::Bounded(r) if r.summable() => return summable_value(),
            Lead::Bounded(_) => {}
        }
    }
    numeric_series(s, cfg)
}

fn numeric_series(s: &Seq, cfg: &ProbeConfig) -> ProbeResult {
    let h = match effective_horizon(s, cfg) {
        Ok(h) => h,
        Err(r) => return r,
    };
    let vals = match s.eval_range(1, h) {
        Ok(v) => v,
        Err(e) => return ProbeResult::indeterminate(e.to_string()),
    };
    let total: f64 = vals.iter().sum();
    let lo = (h / 10).max(1) as usize - 1;
    let tail = &vals[lo..];
    if tail.iter().all(|v| *v == 0.0) {
        return ProbeResult::numeric(ProbeKind::Converges { value: total }, cfg, h);
    }
    let sign = tail.iter().find(|v| **v != 0.0).unwrap().signum();
    if tail.iter().any(|v| *v != 0.0 && v.signum() != sign) {
        return ProbeResult::numeric(
            ProbeKind::Indeterminate { reason: "terms change sign in the last decade".into() },
            cfg,
            h,
        );
    }
    let (a0, a1) = (tail[0].abs(), tail[tail.len() - 1].abs());
    if a0 == 0.0 || a1 == 0.0 {
        return ProbeResult::numeric(ProbeKind::Converges { value: total }, cfg, h);
    }
    let e = (a1 / a0).ln() / ((h as f64) / (lo as f64 + 1.0)).ln();
    if e < -1.1 {
        let est = total + sign * a1 * h as f64 / (-e - 1.0);
        ProbeResult::numeric(ProbeKind::Converges { value: est }, cfg, h)
    } else if e > -0.9 {
        let kind = if sign > 0.0 { ProbeKind::DivergesToInf } else { ProbeKind::DivergesToNegInf };
        ProbeResult::numeric(kind, cfg, h)
    } else {
        ProbeResult::numeric(
            ProbeKind::Indeterminate { reason: format!("terms decay like n^{e:.3}, too close to n^-1") },
            cfg,
            h,
        )
    }
}

/// Behaviour of `s(n)` as `n -> inf`.
pub fn limit_probe(s: &Seq, cfg: &ProbeConfig) -> ProbeResult {
    if let Some(a) = s.asym() {
        match a.lead() {
            Lead::Zero => return ProbeResult::exact(ProbeKind::LimitIs { value: 0.0 }),
            Lead::Term(t) => {
                if t.scale.vanishes() {
                    return ProbeResult::exact(ProbeKind::LimitIs { value: 0.0 });
                }
                if t.scale.grows() {
                    return ProbeResult::exact(if t.coef > 0.0 {
                        ProbeKind::DivergesToInf
                    } else {
                        ProbeKind::DivergesToNegInf
                    });
                }
                let mut r = ProbeResult::exact(ProbeKind::LimitIs { value: t.coef });
                if a.approx {
                    r.confidence = Confidence::Numeric;
                    r.tol = Some(cfg.rel_tol);
                }
                return r;
            }
            Lead::Bounded(r) if r.vanishes() => return ProbeResult::exact(ProbeKind::LimitIs { value: 0.0 }),
            Lead::Bounded(_) => {}
        }
    }
    numeric_limit(s, cfg)
}

fn numeric_limit(s: &Seq, cfg: &ProbeConfig) -> ProbeResult {
    let h = match effective_horizon(s, cfg) {
        Ok(h) => h,
        Err(r) => return r,
    };
    let get = |n: u64| s.eval(n);
    let (v1, v2, v3) = match (get(h / 4), get(h / 2), get(h)) {
        (Ok(a), Ok(b), Ok(c)) => (a, b, c),
        _ => return ProbeResult::indeterminate("evaluation failed near the horizon"),
    };
    // oscillation check on a sample of the last octave
    let sample: Vec<f64> = (0..=64).filter_map(|i| get(h / 2 + i * (h / 2) / 64).ok()).collect();
    let (mn, mx) = sample.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(*v), b.max(*v)));
    let monotone = sample.windows(2).all(|w| w[1] >= w[0]) || sample.windows(2).all(|w| w[1] <= w[0]);
    if !monotone && (mx - mn) > 1e-6 * mx.abs().max(mn.abs()).max(1.0) {
        return ProbeResult::numeric(ProbeKind::Oscillates { liminf: mn, limsup: mx }, cfg, h);
    }
    if v1 != 0.0 && v1.signum() == v2.signum() && v2.signum() == v3.signum() && v3.abs() > v2.abs() && v2.abs() > v1.abs() {
        let slope = (v3.abs() / v2.abs()).ln() / 2f64.ln();
        if slope > 0.05 {
            let kind = if v3 > 0.0 { ProbeKind::DivergesToInf } else { ProbeKind::DivergesToNegInf };
            return ProbeResult::numeric(kind, cfg, h);
        }
    }
    let denom = v3 - 2.0 * v2 + v1;
    let lim = if denom.abs() > 1e-300 && ((v3 - v2) / denom).abs() < 1e6 {
        v3 - (v3 - v2) * (v3 - v2) / denom
    } else {
        v3
    };
    ProbeResult::numeric(ProbeKind::LimitIs { value: lim }, cfg, h)
}

/// Membership of `s` in `l^p`, `l^inf` or `c0`.
pub fn lp_membership(s: &Seq, index: LpIndex, cfg: &ProbeConfig) -> (Outcome, ProbeResult) {
    match index {
        LpIndex::P(p) => {
            let r = series_probe(&s.abs().powf(p), cfg);
            let o = match r.kind {
                ProbeKind::Converges { .. } => Outcome::Holds,
                ProbeKind::DivergesToInf => Outcome::Fails,
                _ => Outcome::Inconclusive,
            };
            (o, r)
        }
        LpIndex::Infinity => {
            let r = limit_probe(&s.abs(), cfg);
            let o = match r.kind {
                ProbeKind::LimitIs { .. } | ProbeKind::Oscillates { .. } => Outcome::Holds,
                ProbeKind::DivergesToInf => Outcome::Fails,
                _ => Outcome::Inconclusive,
            };
            (o, r)
        }
        LpIndex::C0 => {
            let r = limit_probe(s, cfg);
            let zero_tol = match r.confidence {
                Confidence::Exact => 0.0,
                Confidence::Numeric => 1e-6,
            };
            let o = match r.kind {
                ProbeKind::LimitIs { value } if value.abs() <= zero_tol => Outcome::Holds,
                ProbeKind::LimitIs { .. } | ProbeKind::DivergesToInf | ProbeKind::DivergesToNegInf => Outcome::Fails,
                _ => Outcome::Inconclusive,
            };
            (o, r)
        }
    }
}

/// Whether `s(n) >= 0` for all large n.
pub fn eventually_nonneg(s: &Seq, cfg: &ProbeConfig) -> (Outcome, ProbeResult) {
    if let Some(a) = s.asym() {
        if let Some(sign) = a.eventual_sign() {
            let kind = match sign {
                0 => ProbeKind::LimitIs { value: 0.0 },
                1 => ProbeKind::LimInf { value: 0.0 },
                _ => ProbeKind::LimSup { value: 0.0 },
            };
            let o = if sign >= 0 { Outcome::Holds } else { Outcome::Fails };
            return (o, ProbeResult::exact(kind));
        }
    }
    let h = match effective_horizon(s, cfg) {
        Ok(h) => h,
        Err(r) => return (Outcome::Inconclusive, r),
    };
    let vals = match s.eval_range((h / 10).max(1), h) {
        Ok(v) => v,
        Err(e) => return (Outcome::Inconclusive, ProbeResult::indeterminate(e.to_string())),
    };
    let scale = vals.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(f64::MIN_POSITIVE);
    let mn = vals.iter().cloned().fold(f64::INFINITY, f64::min);
    let mx = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if mn >= -cfg.rel_tol * scale {
        (Outcome::Holds, ProbeResult::numeric(ProbeKind::LimInf { value: mn }, cfg, h))
    } else if mx < 0.0 {
        (Outcome::Fails, ProbeResult::numeric(ProbeKind::LimSup { value: mx }, cfg, h))
    } else {
        (Outcome::Inconclusive, ProbeResult::numeric(ProbeKind::Oscillates { liminf: mn, limsup: mx }, cfg, h))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqmodel::SequenceSpec;

    fn p(c: f64, e: f64) -> Seq {
        Seq::spec(SequenceSpec::power(c, e))
    }

    #[test]
    fn basel_and_harmonic() {
        let cfg = ProbeConfig::default();
        let r = series_probe(&p(1.0, -2.0), &cfg);
        assert_eq!(r.method, Method::ExactSymbolic);
        let v = r.limit().unwrap();
        assert!((v - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-9);
        assert_eq!(series_probe(&p(1.0, -1.0), &cfg).kind, ProbeKind::DivergesToInf);
    }

    #[test]
    fn squared_inverse_sqrt_diverges() {
        let d = p(1.0, -0.5);
        let r = series_probe(&(&d * &d), &ProbeConfig::default());
        assert_eq!(r.kind, ProbeKind::DivergesToInf);
        assert_eq!(r.method, Method::ExactSymbolic);
    }

    #[test]
    fn limits() {
        let cfg = ProbeConfig::default();
        let r = limit_probe(&p(3.0, 0.0), &cfg);
        assert_eq!(r.kind, ProbeKind::LimitIs { value: 3.0 });
        assert_eq!(r.method, Method::ExactSymbolic);
        let alpha = Seq::spec(SequenceSpec::affine(0.0, 1.0));
        let ratio = alpha.abs() / p(1.0, -1.0);
        assert_eq!(limit_probe(&ratio, &cfg).kind, ProbeKind::DivergesToInf);
    }

    #[test]
    fn membership() {
        let cfg = ProbeConfig::default();
        assert_eq!(lp_membership(&p(1.0, -1.0), LpIndex::P(2.0), &cfg).0, Outcome::Holds);
        assert_eq!(lp_membership(&p(1.0, -1.0), LpIndex::P(1.0), &cfg).0, Outcome::Fails);
        let diff = p(1.0, -3.0) / p(1.0, -1.0).shift(1);
        assert_eq!(lp_membership(&diff, LpIndex::P(1.0), &cfg).0, Outcome::Holds);
    }

    #[test]
    fn tables_without_hint_are_inconclusive() {
        let t = Seq::spec(SequenceSpec::table(vec![1.0, -1.0, 1.0]));
        let r = series_probe(&t, &ProbeConfig::default());
        assert!(r.is_indeterminate());
        assert!(limit_probe(&t, &ProbeConfig::default()).is_indeterminate());
    }

    #[test]
    fn numeric_fallback_on_hidden_asymptotics() {
        // min of a sequence with itself has equal leads and an undecided difference sign
        // only when expansions coincide; use a table with a hint to force numeric tails
        let vals: Vec<f64> = (1..=10).map(|n| 1.0 / (n as f64).powi(3)).collect();
        let t = Seq::spec(SequenceSpec::table_with_tail(vals, crate::seqmodel::PowerTerm::new(1.0, -3.0)));
        let r = series_probe(&t, &ProbeConfig::default());
        assert!(matches!(r.kind, ProbeKind::Converges { .. }));
    }
}
