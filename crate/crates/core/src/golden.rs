//! Worked examples with known conclusions, used as a regression suite.

use serde::{Deserialize, Serialize};

use crate::criteria::{analyze, Claim, InteractionModel, Potential, Report, Statement};
use crate::error::Result;
use crate::seqmodel::{Outcome, Partition, ProbeConfig, SequenceSpec};
use crate::weyl::solve_a0;

/// What a case must show.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "expect", rename_all = "snake_case")]
pub enum Expect {
    Concludes { statement: Statement },
    DoesNotConclude { statement: Statement },
    Verdict { criterion_id: String, outcome: Outcome, claim: Claim },
}

impl Expect {
    fn concludes(s: Statement) -> Self {
        Expect::Concludes { statement: s }
    }

    fn verdict(id: &str, outcome: Outcome, claim: Claim) -> Self {
        Expect::Verdict { criterion_id: id.into(), outcome, claim }
    }

    /// `None` when met, otherwise a description of the mismatch.
    pub fn mismatch(&self, r: &Report) -> Option<String> {
        match self {
            Expect::Concludes { statement } if !r.conclusions.has(*statement) => {
                Some(format!("expected conclusion {statement:?}, got {:?}", statements(r)))
            }
            Expect::DoesNotConclude { statement } if r.conclusions.has(*statement) => {
                Some(format!("conclusion {statement:?} should not be drawn"))
            }
            Expect::Verdict { criterion_id, outcome, claim } => {
                let found = r.verdicts.iter().find(|v| &v.criterion_id == criterion_id);
                match found {
                    Some(v) if v.outcome == *outcome && v.claim == *claim => None,
                    Some(v) => Some(format!("{criterion_id}: expected {outcome:?} on {}, got {:?} on {}", claim.label(), v.outcome, v.claim.label())),
                    None => Some(format!("{criterion_id} did not run")),
                }
            }
            _ => None,
        }
    }
}

fn statements(r: &Report) -> Vec<Statement> {
    r.conclusions.chain.iter().map(|c| c.statement).collect()
}

#[derive(Clone, Debug)]
pub struct Case {
    pub label: String,
    pub model: InteractionModel,
    pub expect: Vec<Expect>,
}

#[derive(Clone, Debug)]
pub struct Example {
    pub id: &'static str,
    pub title: &'static str,
    pub cases: Vec<Case>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseOutcome {
    pub label: String,
    pub passed: bool,
    pub expected: Vec<Expect>,
    pub concluded: Vec<Statement>,
    pub mismatches: Vec<String>,
    /// `criterion_id: outcome claim` for every verdict, with its citation
    pub verdicts: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExampleOutcome {
    pub id: String,
    pub title: String,
    pub passed: bool,
    pub cases: Vec<CaseOutcome>,
}

fn delta(x: Partition, alpha: SequenceSpec) -> InteractionModel {
    InteractionModel::delta(x, alpha).expect("registry model is valid")
}

fn harmonic() -> Partition {
    Partition::gaps(SequenceSpec::power(1.0, -1.0)).expect("valid partition")
}

fn knots(p: f64) -> Partition {
    Partition::knots(SequenceSpec::power(1.0, p)).expect("valid partition")
}

fn case(label: impl Into<String>, model: InteractionModel, expect: Vec<Expect>) -> Case {
    Case { label: label.into(), model, expect }
}

fn harmonic_gaps() -> Example {
    use Statement::*;
    Example {
        id: "example-5.2",
        title: "delta interactions with d_n = 1/n",
        cases: vec![
            case("(i) alpha_n = n^2, sum |alpha_n|/n^3 = inf", delta(harmonic(), SequenceSpec::power(1.0, 2.0)), vec![Expect::concludes(SelfAdjoint)]),
            case("(ii) alpha_n = -4n - 3", delta(harmonic(), SequenceSpec::affine(-3.0, -4.0)), vec![Expect::concludes(SelfAdjoint)]),
            case("(iii) alpha_n = -1/n", delta(harmonic(), SequenceSpec::power(-1.0, -1.0)), vec![Expect::concludes(SelfAdjoint)]),
            case(
                "(iv) alpha_n = -2n - 1",
                delta(harmonic(), SequenceSpec::affine(-1.0, -2.0)),
                vec![Expect::concludes(DeficiencyOne), Expect::concludes(EveryExtensionDiscrete)],
            ),
        ],
    }
}

fn periodic_window() -> Example {
    let cases = [-1.0, -2.0, -3.9, 0.5, -4.1]
        .into_iter()
        .map(|a: f64| {
            let expect = if (-4.0..0.0).contains(&a) {
                Expect::concludes(Statement::DeficiencyOne)
            } else {
                Expect::DoesNotConclude { statement: Statement::DeficiencyOne }
            };
            case(format!("a = {a}: alpha_n = a(n + 1/2)"), delta(harmonic(), SequenceSpec::affine(a / 2.0, a)), vec![expect])
        })
        .collect();
    Example { id: "prop-5.2", title: "deficiency one for a in (-4, 0) on d_n = 1/n", cases }
}

fn chihara() -> Example {
    let root = || knots(0.5);
    let sqrt_alpha = |c: f64| delta(root(), SequenceSpec::power(-c, 0.5));
    Example {
        id: "example-5.4",
        title: "discreteness on x_n = sqrt(n)",
        cases: vec![
            case("(a) alpha_n = n^(-1/4)", delta(root(), SequenceSpec::power(1.0, -0.25)), vec![Expect::concludes(Statement::Discrete)]),
            case(
                "(b) alpha_n = -10 sqrt(n)",
                sqrt_alpha(10.0),
                vec![Expect::verdict("chihara_1", Outcome::Holds, Claim::Discrete), Expect::concludes(Statement::Discrete)],
            ),
            case("(b) alpha_n = -4 sqrt(n)", sqrt_alpha(4.0), vec![Expect::verdict("chihara_1", Outcome::Fails, Claim::Discrete)]),
        ],
    }
}

fn power_knots() -> Example {
    use Statement::*;
    let dp = |x: Partition, beta: SequenceSpec| InteractionModel::delta_prime(x, beta).expect("registry model is valid");
    let offset = |x: Partition, s: SequenceSpec| InteractionModel::delta_prime_offset(x, s).expect("registry model is valid");
    let third = 1.0 / 3.0;
    Example {
        id: "example-6.4",
        title: "delta-prime interactions on x_n = n^eps",
        cases: vec![
            case("(i) eps = 1/2, beta_n = 1", dp(knots(0.5), SequenceSpec::constant(1.0)), vec![Expect::concludes(SelfAdjoint), Expect::concludes(NotDiscrete)]),
            case("(i) eps = 3/4, beta_n = -n^-2", dp(knots(0.75), SequenceSpec::power(-1.0, -2.0)), vec![Expect::concludes(SelfAdjoint), Expect::concludes(NotDiscrete)]),
            case("(ii) eps = 1/3, beta_n = -n^-2", dp(knots(third), SequenceSpec::power(-1.0, -2.0)), vec![Expect::concludes(NotDiscrete)]),
            case("(ii) eps = 1/3, beta_n = -n^(2/3)", dp(knots(third), SequenceSpec::power(-1.0, 2.0 / 3.0)), vec![Expect::concludes(NotDiscrete)]),
            case("(iii) eps = 1/3, beta_n + d_n = 2 n^-2", offset(knots(third), SequenceSpec::power(2.0, -2.0)), vec![Expect::concludes(Discrete)]),
            case("(iii) eps = 1/3, beta_n + d_n = 2 n^(-4/3)", offset(knots(third), SequenceSpec::power(2.0, -4.0 / 3.0)), vec![Expect::concludes(NotDiscrete)]),
        ],
    }
}

fn step_potential() -> Example {
    let base = delta(harmonic(), SequenceSpec::affine(-2.0, -4.0));
    let flipped = base.clone().with_potential(Potential::StepPotential { a: solve_a0() }).expect("a0 model is valid");
    Example {
        id: "corollary-7",
        title: "alpha_n = -4n - 2 on d_n = 1/n with and without the step potential",
        cases: vec![
            case("q = 0", base, vec![Expect::concludes(Statement::SelfAdjoint)]),
            case("q = q_a0", flipped, vec![Expect::concludes(Statement::DeficiencyOne)]),
        ],
    }
}

/// Every registered example, in a fixed order.
pub fn registry() -> Vec<Example> {
    vec![harmonic_gaps(), periodic_window(), chihara(), power_knots(), step_potential()]
}

pub fn ids() -> Vec<&'static str> {
    registry().iter().map(|e| e.id).collect()
}

pub fn example(id: &str) -> Option<Example> {
    registry().into_iter().find(|e| e.id == id)
}

pub fn check_case(c: &Case, cfg: &ProbeConfig) -> Result<CaseOutcome> {
    let r = analyze(&c.model, cfg)?;
    let mismatches: Vec<String> = c.expect.iter().filter_map(|e| e.mismatch(&r)).collect();
    Ok(CaseOutcome {
        label: c.label.clone(),
        passed: mismatches.is_empty(),
        expected: c.expect.clone(),
        concluded: statements(&r),
        mismatches,
        verdicts: r
            .verdicts
            .iter()
            .map(|v| (format!("{}: {:?} {}", v.criterion_id, v.outcome, v.claim.label()), v.citation.clone()))
            .collect(),
    })
}

/// Runs every case of an example in order.
pub fn check(e: &Example, cfg: &ProbeConfig) -> Result<ExampleOutcome> {
    let cases = e.cases.iter().map(|c| check_case(c, cfg)).collect::<Result<Vec<_>>>()?;
    Ok(ExampleOutcome { id: e.id.into(), title: e.title.into(), passed: cases.iter().all(|c| c.passed), cases })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_unique() {
        let mut ids = ids();
        let n = ids.len();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), n);
        assert!(example("nope").is_none());
    }

    #[test]
    fn every_example_matches() {
        let cfg = ProbeConfig::default();
        for e in registry() {
            let out = check(&e, &cfg).unwrap();
            for c in &out.cases {
                assert!(c.passed, "{} / {}: {:?}", e.id, c.label, c.mismatches);
            }
        }
    }
}
