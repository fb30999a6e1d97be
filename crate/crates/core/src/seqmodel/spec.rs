use serde::{Deserialize, Serialize};

use super::asym::{Asym, Scale, Term};
use crate::error::SeqError;

/// One `c * n^p` term.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PowerTerm {
    pub c: f64,
    pub p: f64,
}

impl PowerTerm {
    pub fn new(c: f64, p: f64) -> Self {
        Self { c, p }
    }

    fn eval(&self, n: f64) -> f64 {
        if self.p == 0.0 {
            self.c
        } else {
            self.c * n.powf(self.p)
        }
    }
}

/// Declared real sequence indexed by `n >= 1`.
#[derive(Clone, Debug, PartialEq)]
pub enum SequenceSpec {
    /// `c * n^p`
    Power { c: f64, p: f64 },
    /// `c0 + c1 * n`
    Affine { c0: f64, c1: f64 },
    /// `sum_i coeffs[i] * n^i`
    Poly { coeffs: Vec<f64> },
    /// `sum_k c_k * n^{p_k}`
    PowerSum { terms: Vec<PowerTerm> },
    /// `c * q^n` with `q > 0`
    Geometric { c: f64, q: f64 },
    /// Explicit values for `n = 1..=len`, optionally continued by `tail_hint`.
    Table { values: Vec<f64>, tail_hint: Option<PowerTerm> },
}

impl SequenceSpec {
    pub fn power(c: f64, p: f64) -> Self {
        SequenceSpec::Power { c, p }
    }

    pub fn constant(c: f64) -> Self {
        SequenceSpec::Power { c, p: 0.0 }
    }

    pub fn affine(c0: f64, c1: f64) -> Self {
        SequenceSpec::Affine { c0, c1 }
    }

    pub fn poly(coeffs: Vec<f64>) -> Self {
        SequenceSpec::Poly { coeffs }
    }

    pub fn power_sum(terms: &[(f64, f64)]) -> Self {
        SequenceSpec::PowerSum { terms: terms.iter().map(|&(c, p)| PowerTerm::new(c, p)).collect() }
    }

    pub fn geometric(c: f64, q: f64) -> Self {
        SequenceSpec::Geometric { c, q }
    }

    pub fn table(values: Vec<f64>) -> Self {
        SequenceSpec::Table { values, tail_hint: None }
    }

    pub fn table_with_tail(values: Vec<f64>, hint: PowerTerm) -> Self {
        SequenceSpec::Table { values, tail_hint: Some(hint) }
    }

    pub fn form_name(&self) -> &'static str {
        match self {
            SequenceSpec::Power { .. } => "power",
            SequenceSpec::Affine { .. } => "affine",
            SequenceSpec::Poly { .. } => "poly",
            SequenceSpec::PowerSum { .. } => "power_sum",
            SequenceSpec::Geometric { .. } => "geometric",
            SequenceSpec::Table { .. } => "table",
        }
    }

    /// Checks parameters for finiteness and admissible ranges.
    pub fn validate(&self) -> Result<(), SeqError> {
        let finite = |x: f64, what: &str| {
            if x.is_finite() {
                Ok(())
            } else {
                Err(SeqError::Invalid(format!("{what} must be finite")))
            }
        };
        match self {
            SequenceSpec::Power { c, p } => {
                finite(*c, "c")?;
                finite(*p, "p")
            }
            SequenceSpec::Affine { c0, c1 } => {
                finite(*c0, "c0")?;
                finite(*c1, "c1")
            }
            SequenceSpec::Poly { coeffs } => coeffs.iter().try_for_each(|c| finite(*c, "coeffs")),
            SequenceSpec::PowerSum { terms } => terms.iter().try_for_each(|t| {
                finite(t.c, "c")?;
                finite(t.p, "p")
            }),
            SequenceSpec::Geometric { c, q } => {
                finite(*c, "c")?;
                finite(*q, "q")?;
                if *q <= 0.0 {
                    return Err(SeqError::Invalid("geometric ratio q must be positive".into()));
                }
                Ok(())
            }
            SequenceSpec::Table { values, tail_hint } => {
                values.iter().try_for_each(|v| finite(*v, "values"))?;
                if let Some(h) = tail_hint {
                    finite(h.c, "tail_hint.c")?;
                    finite(h.p, "tail_hint.p")?;
                }
                Ok(())
            }
        }
    }

    /// The nth term, `n >= 1`.
    pub fn eval(&self, n: u64) -> Result<f64, SeqError> {
        if n == 0 {
            return Err(SeqError::Domain("sequences are indexed from n = 1".into()));
        }
        let x = n as f64;
        Ok(match self {
            SequenceSpec::Power { c, p } => PowerTerm::new(*c, *p).eval(x),
            SequenceSpec::Affine { c0, c1 } => c0 + c1 * x,
            SequenceSpec::Poly { coeffs } => coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c),
            SequenceSpec::PowerSum { terms } => terms.iter().map(|t| t.eval(x)).sum(),
            SequenceSpec::Geometric { c, q } => c * q.powf(x),
            SequenceSpec::Table { values, tail_hint } => match values.get(n as usize - 1) {
                Some(v) => *v,
                None => match tail_hint {
                    Some(h) => h.eval(x),
                    None => {
                        return Err(SeqError::Domain(format!(
                            "table of length {} has no entry {n} and no tail hint",
                            values.len()
                        )))
                    }
                },
            },
        })
    }

    /// Last index with a defined value, if the sequence is finite.
    pub fn finite_len(&self) -> Option<u64> {
        match self {
            SequenceSpec::Table { values, tail_hint: None } => Some(values.len() as u64),
            _ => None,
        }
    }

    /// Asymptotic expansion; `None` for tables without a tail hint.
    pub fn asym(&self) -> Option<Asym> {
        Some(match self {
            SequenceSpec::Power { c, p } => Asym::exact(vec![Term::new(*c, Scale::power(*p))]),
            SequenceSpec::Affine { c0, c1 } => Asym::exact(vec![
                Term::new(*c1, Scale::power(1.0)),
                Term::new(*c0, Scale::ONE),
            ]),
            SequenceSpec::Poly { coeffs } => Asym::exact(
                coeffs.iter().enumerate().map(|(i, c)| Term::new(*c, Scale::power(i as f64))).collect(),
            ),
            SequenceSpec::PowerSum { terms } => {
                Asym::exact(terms.iter().map(|t| Term::new(t.c, Scale::power(t.p))).collect())
            }
            SequenceSpec::Geometric { c, q } => Asym::exact(vec![Term::new(*c, Scale::geometric(*q))]),
            SequenceSpec::Table { tail_hint, .. } => {
                let h = (*tail_hint)?;
                // the hint fixes only the leading order
                let lead = Scale::power(h.p);
                Asym::with_rem(vec![Term::new(h.c, lead)], Scale::power(h.p - 1e-6))
            }
        })
    }
}

/// Flat serialized form: `{"form": "power", "c": 1.0, "p": -1.0}`.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSequence {
    pub form: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coeffs: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub terms: Option<Vec<PowerTerm>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tail_hint: Option<PowerTerm>,
}

impl TryFrom<RawSequence> for SequenceSpec {
    type Error = String;

    fn try_from(r: RawSequence) -> Result<Self, String> {
        let form = r.form.clone();
        let need = |v: Option<f64>, name: &str| {
            v.ok_or_else(|| format!("missing field `{name}` for sequence form `{form}`"))
        };
        let allowed: &[&str] = match r.form.as_str() {
            "power" => &["c", "p"],
            "affine" => &["c0", "c1"],
            "poly" => &["coeffs"],
            "power_sum" => &["terms"],
            "geometric" => &["c", "q"],
            "table" => &["values", "tail_hint"],
            other => return Err(format!("unknown sequence form `{other}`")),
        };
        let present = [
            ("c", r.c.is_some()),
            ("p", r.p.is_some()),
            ("c0", r.c0.is_some()),
            ("c1", r.c1.is_some()),
            ("q", r.q.is_some()),
            ("coeffs", r.coeffs.is_some()),
            ("terms", r.terms.is_some()),
            ("values", r.values.is_some()),
            ("tail_hint", r.tail_hint.is_some()),
        ];
        if let Some((name, _)) = present.iter().find(|(n, set)| *set && !allowed.contains(n)) {
            return Err(format!("field `{name}` is not used by sequence form `{form}`"));
        }
        let spec = match r.form.as_str() {
            "power" => SequenceSpec::Power { c: need(r.c, "c")?, p: need(r.p, "p")? },
            "affine" => SequenceSpec::Affine { c0: need(r.c0, "c0")?, c1: need(r.c1, "c1")? },
            "poly" => SequenceSpec::Poly {
                coeffs: r.coeffs.ok_or_else(|| format!("missing field `coeffs` for sequence form `{form}`"))?,
            },
            "power_sum" => SequenceSpec::PowerSum {
                terms: r.terms.ok_or_else(|| format!("missing field `terms` for sequence form `{form}`"))?,
            },
            "geometric" => SequenceSpec::Geometric { c: need(r.c, "c")?, q: need(r.q, "q")? },
            _ => SequenceSpec::Table {
                values: r.values.ok_or_else(|| format!("missing field `values` for sequence form `{form}`"))?,
                tail_hint: r.tail_hint,
            },
        };
        spec.validate().map_err(|e| e.to_string())?;
        Ok(spec)
    }
}

impl From<SequenceSpec> for RawSequence {
    fn from(s: SequenceSpec) -> Self {
        let form = s.form_name().to_string();
        let mut r = RawSequence { form, ..Default::default() };
        match s {
            SequenceSpec::Power { c, p } => {
                r.c = Some(c);
                r.p = Some(p);
            }
            SequenceSpec::Affine { c0, c1 } => {
                r.c0 = Some(c0);
                r.c1 = Some(c1);
            }
            SequenceSpec::Poly { coeffs } => r.coeffs = Some(coeffs),
            SequenceSpec::PowerSum { terms } => r.terms = Some(terms),
            SequenceSpec::Geometric { c, q } => {
                r.c = Some(c);
                r.q = Some(q);
            }
            SequenceSpec::Table { values, tail_hint } => {
                r.values = Some(values);
                r.tail_hint = tail_hint;
            }
        }
        r
    }
}

impl Serialize for SequenceSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RawSequence::from(self.clone()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for SequenceSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawSequence::deserialize(d)?;
        SequenceSpec::try_from(raw).map_err(serde::de::Error::custom)
    }
}
