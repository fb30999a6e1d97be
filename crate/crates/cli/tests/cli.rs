use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pointspec"))
}

fn scenario(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn free_spectrum_csv_has_all_eigenvalues() {
    let o = run(&["run", scenario("free-spectrum.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = String::from_utf8(o.stdout).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let vals: Vec<f64> = rdr.records().map(|r| r.unwrap()[2].parse().unwrap()).collect();
    assert_eq!(vals.len(), 100);
    for (k, v) in vals.iter().enumerate() {
        let exact = 2.0 * (std::f64::consts::PI * (100 - k) as f64 / 101.0).cos();
        assert!((v - exact).abs() < 1e-10, "k = {k}: {v} vs {exact}");
    }
    assert!(text.contains("\r\n"));
}

#[test]
fn analyze_reports_deficiency_one_with_citations() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = run(&["analyze", scenario("deficiency-one.json").to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let chain = r["conclusions"]["chain"].as_array().unwrap();
    assert!(chain.iter().any(|c| c["statement"] == "deficiency_one"));
    assert_eq!(r["conclusions"]["deficiency_indices"], 1);
    for v in r["verdicts"].as_array().unwrap() {
        assert!(!v["citation"].as_str().unwrap().is_empty());
    }
    assert!(r["runtime_ms"].is_u64());
    assert!(r.get("results").is_none(), "analyze subcommand runs only the analysis");
}

#[test]
fn unknown_form_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        &dir,
        "bad.json",
        r#"{"schema_version":1,"model":{"kind":"delta","partition":{"d":{"form":"powr","c":1.0,"p":-1.0}},"strengths":{"form":"power","c":1.0,"p":1.0}},"commands":[{"command":"analyze"}]}"#,
    );
    let o = run(&["run", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let e = stderr(&o);
    assert!(e.contains("unknown sequence form") && e.contains("model.partition.d"), "{e}");
}

#[test]
fn unknown_field_exits_one_with_path() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(&dir, "bad.json", r#"{"schema_version":1,"commands":[{"command":"spectrum","matrix":"free","size":3}]}"#);
    let o = run(&["run", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("commands[0]"), "{}", stderr(&o));
}

#[test]
fn inconclusive_only_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        &dir,
        "m.json",
        r#"{"kind":"delta","partition":{"d":{"form":"power","c":1.0,"p":-2.0}},"strengths":{"form":"table","values":[1.0,-2.0,3.0]}}"#,
    );
    let o = run(&["analyze", p.to_str().unwrap(), "--out", dir.path().join("r.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
}

#[test]
fn multi_table_csv_goes_to_directory() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("tables");
    let o = run(&["run", scenario("deltaprime-string.json").to_str().unwrap(), "--format", "csv", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    for f in ["verdicts.csv", "conclusions.csv", "0-string.csv"] {
        assert!(out.join(f).exists(), "{f} missing");
    }
    let string = std::fs::read_to_string(out.join("0-string.csv")).unwrap();
    assert_eq!(string.lines().count(), 21);
    let o = run(&["run", scenario("deltaprime-string.json").to_str().unwrap(), "--format", "csv"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn reproduce_unknown_id_lists_ids() {
    let o = run(&["reproduce", "example-9.9"]);
    assert_eq!(o.status.code(), Some(1));
    let e = stderr(&o);
    assert!(e.contains("example-5.2") && e.contains("corollary-7"), "{e}");
}

#[test]
fn reproduce_is_identical_across_worker_counts() {
    let dir = tempfile::tempdir().unwrap();
    let mut texts = Vec::new();
    for jobs in ["1", "4"] {
        let out = dir.path().join(format!("r{jobs}.json"));
        let o = run(&["reproduce", "corollary-7", "example-5.4", "--jobs", jobs, "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        texts.push(std::fs::read(&out).unwrap());
    }
    assert_eq!(texts[0], texts[1]);
    let r: serde_json::Value = serde_json::from_slice(&texts[0]).unwrap();
    assert_eq!(r["passed"], true);
}

#[test]
fn weyl_scan_on_harmonic_gaps() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("w.json");
    let o = run(&["weyl", scenario("deficiency-one.json").to_str().unwrap(), "--triplet", "mixed_raw", "--trunc", "2000", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(r["results"][0]["verdict"], "not_ordinary");
}

#[test]
fn shipped_scenarios_match_schema_keys() {
    let schema: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/scenario.v1.json")).unwrap())
            .unwrap();
    assert_eq!(schema["properties"]["schema_version"]["const"], 1);
    let allowed: Vec<&str> = schema["properties"].as_object().unwrap().keys().map(String::as_str).collect();
    for entry in std::fs::read_dir(Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios")).unwrap() {
        let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(entry.unwrap().path()).unwrap()).unwrap();
        for k in v.as_object().unwrap().keys() {
            assert!(allowed.contains(&k.as_str()), "{k}");
        }
    }
}
