//! Scenario files, schema version 1.

use std::path::{Path, PathBuf};

use pointspec_core::criteria::InteractionModel;
use pointspec_core::seqmodel::SequenceSpec;
use pointspec_core::weyl::TripletKind;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<InteractionModel>,
    #[serde(default)]
    pub probe: ProbeOptions,
    pub commands: Vec<Command>,
    #[serde(default)]
    pub output: OutputSpec,
}

#[derive(Clone, Copy, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbeOptions {
    pub horizon: Option<u64>,
    pub rel_tol: Option<f64>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default)]
    pub format: Format,
    pub path: Option<PathBuf>,
}

/// Which boundary matrix a numeric command works on.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatrixChoice {
    /// `delta_b2`, `step_potential` or `deltaprime_b1` from the model
    #[default]
    Auto,
    DeltaB1,
    DeltaB2,
    DeltaprimeB1,
    DeltaprimeB2,
    StepPotential,
    String,
    /// diagonal 0, off-diagonal 1; needs no model
    Free,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case", deny_unknown_fields)]
pub enum Command {
    Analyze {},
    Spectrum {
        #[serde(default)]
        matrix: MatrixChoice,
        /// section size
        n: Option<usize>,
        window: Option<(f64, f64)>,
        #[serde(default)]
        counts: Vec<f64>,
        #[serde(default)]
        lambda_min_sizes: Vec<usize>,
        tol: Option<f64>,
    },
    Deficiency {
        #[serde(default)]
        matrix: MatrixChoice,
        /// `[re, im]`, default `i`
        z: Option<(f64, f64)>,
        n_max: Option<usize>,
    },
    Weyl {
        triplet: TripletKind,
        /// required for the potential triplets unless the model carries one
        a: Option<f64>,
        n_max: Option<u64>,
    },
    String {
        rows: Option<usize>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Analyze {} => "analyze",
            Command::Spectrum { .. } => "spectrum",
            Command::Deficiency { .. } => "deficiency",
            Command::Weyl { .. } => "weyl",
            Command::String { .. } => "string",
        }
    }
}

fn schema_error(path: impl Into<String>, message: impl ToString) -> CliError {
    CliError::Schema { path: path.into(), message: message.to_string() }
}

/// Deserializes one sequence node so its error carries the exact field path.
fn check_sequence(v: &Value, path: &str) -> Result<(), CliError> {
    serde_path_to_error::deserialize::<_, SequenceSpec>(v).map(drop).map_err(|e| {
        let inner = e.path().to_string();
        let full = if inner == "." { path.to_string() } else { format!("{path}.{inner}") };
        schema_error(full, e.into_inner())
    })
}

/// The untagged strengths field hides inner messages, so sequences are checked one by one first.
fn precheck_model(model: &Value, prefix: &str) -> Result<(), CliError> {
    if let Some(part) = model.get("partition").and_then(Value::as_object) {
        for key in ["d", "x"] {
            if let Some(v) = part.get(key) {
                check_sequence(v, &format!("{prefix}partition.{key}"))?;
            }
        }
    }
    match model.get("strengths") {
        Some(Value::Object(o)) if o.contains_key("sum_with_gaps") => {
            check_sequence(&o["sum_with_gaps"], &format!("{prefix}strengths.sum_with_gaps"))
        }
        Some(v) => check_sequence(v, &format!("{prefix}strengths")),
        None => Ok(()),
    }
}

fn parse_typed<T: serde::de::DeserializeOwned>(v: Value) -> Result<T, CliError> {
    serde_path_to_error::deserialize(v).map_err(|e| {
        let path = e.path().to_string();
        schema_error(path, e.into_inner())
    })
}

/// A scenario, or a bare model which is wrapped in a scenario with no commands.
#[derive(Clone, Debug)]
pub enum Input {
    Scenario(Scenario),
    Model(InteractionModel),
}

impl Input {
    pub fn parse(text: &str) -> Result<Input, CliError> {
        let v: Value = serde_json::from_str(text).map_err(|e| schema_error(".", e))?;
        if v.get("schema_version").is_some() {
            if let Some(model) = v.get("model") {
                precheck_model(model, "model.")?;
            }
            let s: Scenario = parse_typed(v)?;
            if s.schema_version != SCHEMA_VERSION {
                return Err(schema_error(
                    "schema_version",
                    format!("unsupported schema version {}, expected {SCHEMA_VERSION}", s.schema_version),
                ));
            }
            Ok(Input::Scenario(s))
        } else {
            precheck_model(&v, "")?;
            Ok(Input::Model(parse_typed(v)?))
        }
    }

    pub fn load(path: &Path) -> Result<Input, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.to_path_buf(), source: e })?;
        Input::parse(&text)
    }

    pub fn into_scenario(self) -> Scenario {
        match self {
            Input::Scenario(s) => s,
            Input::Model(m) => Scenario {
                schema_version: SCHEMA_VERSION,
                name: None,
                model: Some(m),
                probe: ProbeOptions::default(),
                commands: Vec::new(),
                output: OutputSpec::default(),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bare_model() {
        let m = r#"{"kind":"delta","partition":{"d":{"form":"power","c":1.0,"p":-1.0}},"strengths":{"form":"affine","c0":-1.0,"c1":-2.0}}"#;
        assert!(matches!(Input::parse(m).unwrap(), Input::Model(_)));
    }

    #[test]
    fn unknown_form_has_path() {
        let m = r#"{"kind":"delta","partition":{"d":{"form":"power","c":1.0,"p":-1.0}},"strengths":{"form":"wobble","c":1.0}}"#;
        let e = Input::parse(m).unwrap_err().to_string();
        assert!(e.contains("unknown sequence form") && e.contains("strengths"), "{e}");
    }

    #[test]
    fn unknown_fields_rejected() {
        let s = r#"{"schema_version":1,"commands":[{"command":"analyze","extra":1}]}"#;
        let e = Input::parse(s).unwrap_err().to_string();
        assert!(e.contains("commands[0]"), "{e}");
        let s = r#"{"schema_version":1,"commands":[],"colour":"red"}"#;
        assert!(Input::parse(s).is_err());
    }

    #[test]
    fn version_checked() {
        let s = r#"{"schema_version":2,"commands":[]}"#;
        assert!(Input::parse(s).unwrap_err().to_string().contains("schema_version"));
    }
}
