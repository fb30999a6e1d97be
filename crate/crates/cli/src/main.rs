//! `pointspec`: scenario runner and golden-example reproducer.

mod error;
mod exec;
mod output;
mod scenario;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pointspec_core::golden;
use pointspec_core::seqmodel::ProbeConfig;
use pointspec_core::weyl::TripletKind;
use serde::Serialize;

use error::CliError;
use exec::Overrides;
use scenario::{Command, Format, Input, MatrixChoice, Scenario};

#[derive(Parser, Debug)]
#[command(name = "pointspec", version, about = "Spectral properties of Schrodinger operators with point interactions")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug)]
struct Global {
    /// probe horizon for asymptotic tests
    #[arg(long, global = true)]
    horizon: Option<u64>,
    /// section size, recurrence length, scan length or string rows
    #[arg(long, global = true)]
    trunc: Option<usize>,
    /// relative probe tolerance, also used as the eigenvalue tolerance
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// worker threads (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// output file, or directory for several CSV tables
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Run every command of a scenario file
    Run { scenario: PathBuf },
    /// Run all applicable criteria on a model or scenario
    Analyze { input: PathBuf },
    /// Eigenvalues of a truncated boundary matrix
    Spectrum {
        /// model or scenario; omit with `--matrix free`
        input: Option<PathBuf>,
        #[arg(long, value_parser = parse_matrix)]
        matrix: Option<MatrixChoice>,
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
        window: Option<Vec<f64>>,
    },
    /// Growth of two solutions of `J u = z u`
    Deficiency {
        input: PathBuf,
        #[arg(long, value_parser = parse_matrix)]
        matrix: Option<MatrixChoice>,
        #[arg(long, num_args = 2, value_names = ["RE", "IM"], allow_negative_numbers = true)]
        z: Option<Vec<f64>>,
    },
    /// Boundedness scan of the interval Weyl functions
    Weyl {
        input: PathBuf,
        /// delta_raw, delta_regularized, mixed_raw, mixed_regularized, potential_raw, potential_regularized
        #[arg(long, value_parser = parse_triplet)]
        triplet: Option<TripletKind>,
        #[arg(long)]
        a: Option<f64>,
    },
    /// Krein-Stieltjes string of a delta-prime model
    String { input: PathBuf },
    /// Re-derive the worked examples and compare with the known conclusions
    Reproduce {
        /// example ids, or `all`
        ids: Vec<String>,
        #[arg(long)]
        list: bool,
    },
}

fn parse_snake<T: serde::de::DeserializeOwned>(s: &str) -> Result<T, String> {
    serde_json::from_value(serde_json::Value::String(s.into())).map_err(|e| e.to_string())
}

fn parse_matrix(s: &str) -> Result<MatrixChoice, String> {
    parse_snake(s)
}

fn parse_triplet(s: &str) -> Result<TripletKind, String> {
    parse_snake(s)
}

fn pair(v: &Option<Vec<f64>>) -> Option<(f64, f64)> {
    v.as_ref().map(|v| (v[0], v[1]))
}

/// Scenario commands of one type, or a single default one.
fn select(s: &mut Scenario, name: &str, default: Command, forced: bool) {
    let mut chosen: Vec<Command> = s.commands.iter().filter(|c| c.name() == name).cloned().collect();
    if chosen.is_empty() || forced {
        chosen = vec![default];
    }
    s.commands = chosen;
}

fn load(input: Option<&Path>) -> Result<Scenario, CliError> {
    match input {
        Some(p) => Ok(Input::load(p)?.into_scenario()),
        None => Ok(Input::parse(r#"{"schema_version": 1, "commands": []}"#)?.into_scenario()),
    }
}

#[derive(Serialize)]
struct ReproduceReport {
    passed: bool,
    examples: Vec<golden::ExampleOutcome>,
}

fn reproduce(ids: &[String], list: bool, cfg: &ProbeConfig, g: &Global) -> Result<ExitCode, CliError> {
    let registry = golden::registry();
    if list {
        for e in &registry {
            println!("{}\t{}", e.id, e.title);
        }
        return Ok(ExitCode::SUCCESS);
    }
    let wanted: Vec<&golden::Example> = if ids.is_empty() || ids.iter().any(|i| i == "all") {
        registry.iter().collect()
    } else {
        ids.iter()
            .map(|id| {
                registry.iter().find(|e| e.id == id).ok_or_else(|| CliError::UnknownExample {
                    id: id.clone(),
                    available: golden::ids().into_iter().map(String::from).collect(),
                })
            })
            .collect::<Result<_, _>>()?
    };
    let examples = wanted.iter().map(|e| golden::check(e, cfg)).collect::<Result<Vec<_>, _>>()?;
    for e in &examples {
        let ok = e.cases.iter().filter(|c| c.passed).count();
        eprintln!("{} {} ({ok}/{} cases)", if e.passed { "PASS" } else { "FAIL" }, e.id, e.cases.len());
        for c in e.cases.iter().filter(|c| !c.passed) {
            eprintln!("  {}: {}", c.label, c.mismatches.join("; "));
        }
    }
    let report = ReproduceReport { passed: examples.iter().all(|e| e.passed), examples };
    match g.format.unwrap_or_default() {
        Format::Json => output::write_json(&report, g.out.as_deref())?,
        Format::Csv => {
            let mut t = output::Table { name: "reproduce".into(), header: vec!["id", "case", "passed", "mismatches"], rows: Vec::new() };
            for e in &report.examples {
                for c in &e.cases {
                    t.rows.push(vec![e.id.clone(), c.label.clone(), c.passed.to_string(), c.mismatches.join("; ")]);
                }
            }
            output::write_tables(std::slice::from_ref(&t), g.out.as_deref())?;
        }
    }
    if report.passed {
        Ok(ExitCode::SUCCESS)
    } else {
        let failed: Vec<&str> = report.examples.iter().filter(|e| !e.passed).map(|e| e.id.as_str()).collect();
        Err(CliError::Mismatch(failed.join(", ")))
    }
}

fn execute(cli: Cli) -> Result<ExitCode, CliError> {
    let g = &cli.global;
    if let Some(j) = g.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build_global()
            .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    }
    let o = Overrides { horizon: g.horizon, trunc: g.trunc, tol: g.tol };
    let mut s = match &cli.cmd {
        Cmd::Reproduce { ids, list } => {
            let base = load(None)?;
            return reproduce(ids, *list, &exec::probe_config(&base, &o), g);
        }
        Cmd::Run { scenario } => load(Some(scenario))?,
        Cmd::Analyze { input } => {
            let mut s = load(Some(input))?;
            select(&mut s, "analyze", Command::Analyze {}, false);
            s
        }
        Cmd::Spectrum { input, matrix, window } => {
            let mut s = load(input.as_deref())?;
            let forced = matrix.is_some() || window.is_some();
            let default = Command::Spectrum {
                matrix: matrix.unwrap_or_default(),
                n: None,
                window: pair(window),
                counts: Vec::new(),
                lambda_min_sizes: Vec::new(),
                tol: None,
            };
            select(&mut s, "spectrum", default, forced);
            s
        }
        Cmd::Deficiency { input, matrix, z } => {
            let mut s = load(Some(input))?;
            let forced = matrix.is_some() || z.is_some();
            select(&mut s, "deficiency", Command::Deficiency { matrix: matrix.unwrap_or_default(), z: pair(z), n_max: None }, forced);
            s
        }
        Cmd::Weyl { input, triplet, a } => {
            let mut s = load(Some(input))?;
            let forced = triplet.is_some() || a.is_some();
            let default = Command::Weyl { triplet: triplet.unwrap_or(TripletKind::DeltaRegularized), a: *a, n_max: None };
            select(&mut s, "weyl", default, forced);
            s
        }
        Cmd::String { input } => {
            let mut s = load(Some(input))?;
            select(&mut s, "string", Command::String { rows: None }, false);
            s
        }
    };
    if let Some(f) = g.format {
        s.output.format = f;
    }
    if let Some(p) = &g.out {
        s.output.path = Some(p.clone());
    }
    let report = exec::run(&s, &o)?;
    if let Some(c) = &report.conclusions {
        for line in &c.chain {
            eprintln!("{:?} <- {}", line.statement, line.because.join(", "));
        }
    }
    output::emit(&report, s.output.format, s.output.path.as_deref())?;
    Ok(if report.inconclusive_only() { ExitCode::from(2) } else { ExitCode::SUCCESS })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
