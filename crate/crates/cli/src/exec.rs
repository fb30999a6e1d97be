//! Executes scenario commands against the core library.

use std::time::Instant;

use num_complex::Complex64;
use pointspec_core::criteria::{analyze, Conclusions, InteractionKind, InteractionModel, Potential, Verdict};
use pointspec_core::jacobi::{
    build_delta_b1, build_delta_b2, build_deltaprime_b1, build_deltaprime_b2, build_step_potential, JacobiOperatorSpec,
    Provenance,
};
use pointspec_core::seqmodel::{Outcome, ProbeConfig, ProbeResult};
use pointspec_core::spectral::{deficiency_probe, lambda_min_trace, spectral_summary, DeficiencyProbe, SpectralSummary};
use pointspec_core::string::{build_j_ml, hamburger, kac_krein, string_from_deltaprime, KacKreinCase, StringRow};
use pointspec_core::weyl::{triplet_boundedness_scan, BoundednessScan, Family, ScanRow, TripletKind};
use serde::Serialize;

use crate::error::CliError;
use crate::scenario::{Command, MatrixChoice, Scenario, SCHEMA_VERSION};

const DEFAULT_SECTION: usize = 100;
const DEFAULT_RECURRENCE: usize = 100_000;
const DEFAULT_SCAN: u64 = 10_000;
const DEFAULT_STRING_ROWS: usize = 50;

/// Command-line overrides that beat scenario values.
#[derive(Clone, Copy, Debug, Default)]
pub struct Overrides {
    pub horizon: Option<u64>,
    pub trunc: Option<usize>,
    pub tol: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumOut {
    pub matrix: Provenance,
    pub n: usize,
    #[serde(flatten)]
    pub summary: SpectralSummary,
}

#[derive(Clone, Debug, Serialize)]
pub struct DeficiencyOut {
    pub matrix: Provenance,
    pub limit_circle: bool,
    #[serde(flatten)]
    pub probe: DeficiencyProbe,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeylOut {
    #[serde(flatten)]
    pub scan: BoundednessScan,
    #[serde(skip)]
    pub rows: Vec<ScanRow>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StringOut {
    pub total_length: ProbeResult,
    pub total_mass: ProbeResult,
    pub hamburger: Verdict,
    pub kac_krein: Verdict,
    pub kac_krein_case: Option<KacKreinCase>,
    pub rows: Vec<StringRow>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum CommandOut {
    Spectrum(SpectrumOut),
    Deficiency(DeficiencyOut),
    Weyl(WeylOut),
    String(StringOut),
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<InteractionModel>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub verdicts: Vec<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conclusions: Option<Conclusions>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub results: Vec<CommandOut>,
    pub runtime_ms: u64,
}

impl RunReport {
    /// True when some verdict-producing command ran and nothing was decided.
    pub fn inconclusive_only(&self) -> bool {
        let mut any = self.conclusions.is_some();
        let mut decisive = self.verdicts.iter().any(|v| v.outcome != Outcome::Inconclusive);
        for r in &self.results {
            if let CommandOut::String(s) = r {
                any = true;
                decisive |= [&s.hamburger, &s.kac_krein].iter().any(|v| v.outcome != Outcome::Inconclusive);
            }
        }
        any && !decisive
    }
}

fn need_model(m: Option<&InteractionModel>, what: &str) -> Result<InteractionModel, CliError> {
    m.cloned().ok_or_else(|| CliError::Usage(format!("{what} needs a model")))
}

fn matrix(choice: MatrixChoice, model: Option<&InteractionModel>) -> Result<JacobiOperatorSpec, CliError> {
    if choice == MatrixChoice::Free {
        return Ok(JacobiOperatorSpec::free());
    }
    let m = need_model(model, "this matrix")?;
    let (x, s) = (m.partition(), m.strengths());
    let kind_is = |k: InteractionKind| {
        if m.kind() == k {
            Ok(())
        } else {
            Err(CliError::Usage(format!("matrix {choice:?} needs a {k:?} model")))
        }
    };
    let spec = match choice {
        MatrixChoice::Auto => match (m.kind(), m.potential()) {
            (InteractionKind::Delta, Potential::StepPotential { a }) => build_step_potential(a, s)?,
            (InteractionKind::Delta, Potential::None) => build_delta_b2(x, s)?,
            (InteractionKind::DeltaPrime, _) => build_deltaprime_b1(x, s)?,
        },
        MatrixChoice::DeltaB1 => {
            kind_is(InteractionKind::Delta)?;
            build_delta_b1(x, s)?
        }
        MatrixChoice::DeltaB2 => {
            kind_is(InteractionKind::Delta)?;
            build_delta_b2(x, s)?
        }
        MatrixChoice::DeltaprimeB1 => {
            kind_is(InteractionKind::DeltaPrime)?;
            build_deltaprime_b1(x, s)?
        }
        MatrixChoice::DeltaprimeB2 => {
            kind_is(InteractionKind::DeltaPrime)?;
            build_deltaprime_b2(x, s)?
        }
        MatrixChoice::StepPotential => match m.potential() {
            Potential::StepPotential { a } => build_step_potential(a, s)?,
            Potential::None => return Err(CliError::Usage("matrix step_potential needs a model with a potential".into())),
        },
        MatrixChoice::String => {
            kind_is(InteractionKind::DeltaPrime)?;
            build_j_ml(&string_from_deltaprime(x, s)?)
        }
        MatrixChoice::Free => unreachable!("handled above"),
    };
    Ok(spec)
}

fn family(kind: TripletKind, a: Option<f64>, model: &InteractionModel) -> Result<Family, CliError> {
    Ok(match kind {
        TripletKind::DeltaRaw | TripletKind::DeltaRegularized => Family::Delta,
        TripletKind::MixedRaw | TripletKind::MixedRegularized => Family::Mixed,
        TripletKind::PotentialRaw | TripletKind::PotentialRegularized => {
            let a = match (a, model.potential()) {
                (Some(a), _) => a,
                (None, Potential::StepPotential { a }) => a,
                (None, Potential::None) => return Err(CliError::Usage("potential triplet needs `a`".into())),
            };
            Family::Potential { a }
        }
    })
}

pub fn probe_config(s: &Scenario, o: &Overrides) -> ProbeConfig {
    let mut cfg = ProbeConfig::default();
    if let Some(h) = o.horizon.or(s.probe.horizon) {
        cfg.horizon = h;
    }
    if let Some(t) = o.tol.or(s.probe.rel_tol) {
        cfg.rel_tol = t;
    }
    cfg
}

fn run_one(c: &Command, model: Option<&InteractionModel>, cfg: &ProbeConfig, o: &Overrides) -> Result<CommandOut, CliError> {
    Ok(match c {
        Command::Analyze {} => unreachable!("analyze runs once per scenario"),
        Command::Spectrum { matrix: choice, n, window, counts, lambda_min_sizes, tol } => {
            let spec = matrix(*choice, model)?;
            let n = o.trunc.or(*n).unwrap_or(DEFAULT_SECTION);
            let t = spec.truncate(n)?;
            let window = window.unwrap_or((f64::NEG_INFINITY, f64::INFINITY));
            let mut summary = spectral_summary(&t, window, counts, o.tol.or(*tol))?;
            if !lambda_min_sizes.is_empty() {
                summary.lambda_min_trace = lambda_min_trace(&spec, lambda_min_sizes)?.lambda_min_trace;
            }
            CommandOut::Spectrum(SpectrumOut { matrix: spec.provenance, n, summary })
        }
        Command::Deficiency { matrix: choice, z, n_max } => {
            let spec = matrix(*choice, model)?;
            let (re, im) = z.unwrap_or((0.0, 1.0));
            let probe = deficiency_probe(&spec, Complex64::new(re, im), o.trunc.or(*n_max).unwrap_or(DEFAULT_RECURRENCE))?;
            CommandOut::Deficiency(DeficiencyOut { matrix: spec.provenance, limit_circle: probe.limit_circle(), probe })
        }
        Command::Weyl { triplet, a, n_max } => {
            let m = need_model(model, "weyl")?;
            let fam = family(*triplet, *a, &m)?;
            let n_max = o.trunc.map(|t| t as u64).or(*n_max).unwrap_or(DEFAULT_SCAN);
            let scan = triplet_boundedness_scan(m.partition(), *triplet, fam, n_max)?;
            let rows = scan.rows.clone();
            CommandOut::Weyl(WeylOut { scan, rows })
        }
        Command::String { rows } => {
            let m = need_model(model, "string")?;
            if m.kind() != InteractionKind::DeltaPrime {
                return Err(CliError::Usage("string needs a delta_prime model".into()));
            }
            let s = string_from_deltaprime(m.partition(), m.strengths())?;
            let (kk, case) = kac_krein(&s, cfg);
            CommandOut::String(StringOut {
                total_length: s.total_length(cfg).1,
                total_mass: s.total_mass(cfg).1,
                hamburger: hamburger(&s, cfg),
                kac_krein: kk,
                kac_krein_case: case,
                rows: s.table(o.trunc.or(*rows).unwrap_or(DEFAULT_STRING_ROWS))?,
            })
        }
    })
}

/// Runs every command in declared order; the analysis depends only on the model, so it runs at most once.
pub fn run(s: &Scenario, o: &Overrides) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let cfg = probe_config(s, o);
    let (verdicts, conclusions) = if s.commands.contains(&Command::Analyze {}) {
        let r = analyze(&need_model(s.model.as_ref(), "analyze")?, &cfg)?;
        (r.verdicts, Some(r.conclusions))
    } else {
        (Vec::new(), None)
    };
    let results = s
        .commands
        .iter()
        .filter(|c| **c != Command::Analyze {})
        .map(|c| run_one(c, s.model.as_ref(), &cfg, o))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RunReport {
        schema_version: SCHEMA_VERSION,
        name: s.name.clone(),
        model: s.model.clone(),
        verdicts,
        conclusions,
        results,
        runtime_ms: start.elapsed().as_millis() as u64,
    })
}
