//! JSON and CSV emission.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::CliError;
use crate::exec::{CommandOut, RunReport};
use crate::scenario::Format;

/// Full precision: 17 significant digits.
pub fn num(v: f64) -> String {
    format!("{v:.16e}")
}

/// A named CSV table.
pub struct Table {
    pub name: String,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new(name: impl Into<String>, header: &[&'static str]) -> Self {
        Table { name: name.into(), header: header.to_vec(), rows: Vec::new() }
    }

    pub fn write<W: Write>(&self, w: W) -> Result<(), CliError> {
        let mut out = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(w);
        out.write_record(&self.header)?;
        for r in &self.rows {
            out.write_record(r)?;
        }
        out.flush().map_err(|e| CliError::io("<csv>", e))?;
        Ok(())
    }
}

fn label<T: Serialize>(v: &T) -> String {
    match serde_json::to_value(v) {
        Ok(serde_json::Value::String(s)) => s,
        Ok(other) => other.to_string(),
        Err(_) => String::new(),
    }
}

pub fn tables(r: &RunReport) -> Vec<Table> {
    let mut out = Vec::new();
    if let Some(c) = &r.conclusions {
        let mut t = Table::new("verdicts", &["criterion_id", "claim", "outcome", "confidence", "witness", "note", "citation"]);
        for v in &r.verdicts {
            t.rows.push(vec![
                v.criterion_id.clone(),
                v.claim.label(),
                label(&v.outcome),
                label(&v.confidence()),
                v.witness.map(num).unwrap_or_default(),
                v.note.clone().unwrap_or_default(),
                v.citation.clone(),
            ]);
        }
        out.push(t);
        let mut t = Table::new("conclusions", &["statement", "because"]);
        for s in &c.chain {
            t.rows.push(vec![label(&s.statement), s.because.join("; ")]);
        }
        out.push(t);
    }
    for (i, res) in r.results.iter().enumerate() {
        let t = match res {
            CommandOut::Spectrum(s) => {
                let mut t = Table::new(format!("{i}-spectrum"), &["quantity", "at", "value"]);
                for (k, e) in s.summary.eigenvalues.iter().enumerate() {
                    t.rows.push(vec!["eigenvalue".into(), k.to_string(), num(*e)]);
                }
                for (l, c) in &s.summary.count_at {
                    t.rows.push(vec!["count_below".into(), num(*l), c.to_string()]);
                }
                for (n, l) in &s.summary.lambda_min_trace {
                    t.rows.push(vec!["lambda_min".into(), n.to_string(), num(*l)]);
                }
                t
            }
            CommandOut::Deficiency(d) => {
                let mut t = Table::new(format!("{i}-deficiency"), &["solution", "growth", "n", "log_partial_norm"]);
                for (name, g) in [("first", &d.probe.first), ("second", &d.probe.second)] {
                    let growth = serde_json::to_value(g.growth).ok().and_then(|v| v.get("class").cloned());
                    let growth = growth.map(|v| label(&v)).unwrap_or_default();
                    for c in &g.checkpoints {
                        t.rows.push(vec![name.into(), growth.clone(), c.n.to_string(), num(c.log_partial_norm)]);
                    }
                }
                t
            }
            CommandOut::Weyl(w) => {
                let mut t = Table::new(format!("{i}-weyl"), &["n", "norm", "inv_im_norm", "inv_norm"]);
                for row in &w.rows {
                    t.rows.push(vec![row.n.to_string(), num(row.norm), num(row.inv_im_norm), num(row.inv_norm)]);
                }
                t
            }
            CommandOut::String(s) => {
                let mut t = Table::new(format!("{i}-string"), &["n", "m", "l", "x"]);
                for row in &s.rows {
                    t.rows.push(vec![row.n.to_string(), num(row.m), num(row.l), num(row.x)]);
                }
                t
            }
        };
        out.push(t);
    }
    out
}

pub fn write_json<T: Serialize>(value: &T, path: Option<&Path>) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value)?;
    match path {
        Some(p) => std::fs::write(p, text + "\n").map_err(|e| CliError::io(p, e)),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

/// One table goes to the file or stdout; several need a directory.
pub fn write_tables(ts: &[Table], path: Option<&Path>) -> Result<Vec<PathBuf>, CliError> {
    match (ts, path) {
        ([t], None) => {
            t.write(std::io::stdout().lock())?;
            Ok(Vec::new())
        }
        (_, None) => Err(CliError::Usage(format!("{} CSV tables need --out <directory>", ts.len()))),
        ([t], Some(p)) if p.extension().is_some_and(|e| e == "csv") => {
            let f = std::fs::File::create(p).map_err(|e| CliError::io(p, e))?;
            t.write(f)?;
            Ok(vec![p.to_path_buf()])
        }
        (_, Some(dir)) => {
            std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
            ts.iter()
                .map(|t| {
                    let p = dir.join(format!("{}.csv", t.name));
                    let f = std::fs::File::create(&p).map_err(|e| CliError::io(&p, e))?;
                    t.write(f)?;
                    Ok(p)
                })
                .collect()
        }
    }
}

pub fn emit(r: &RunReport, format: Format, path: Option<&Path>) -> Result<(), CliError> {
    match format {
        Format::Json => write_json(r, path),
        Format::Csv => write_tables(&tables(r), path).map(drop),
    }
}
