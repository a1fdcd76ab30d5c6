//! End-to-end tests against the built binary: output schemas, determinism,
//! and exit codes.

use std::path::Path;
use std::process::{Command, Output};

use entrobell::prob::{markov_chain, ProbDist, StochasticMatrix};
use entrobell::quantum::{bell_pair, tensor, DensityOperator};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_entrobell"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn json(out: &Output) -> Value {
    serde_json::from_str(&stdout(out)).expect("stdout is JSON")
}

#[test]
fn campaign_json_is_byte_identical_for_a_fixed_seed() {
    let args = [
        "campaign",
        "--kind",
        "classical-bell",
        "--trials",
        "50",
        "--seed",
        "7",
        "--format",
        "json",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "same seed must give identical bytes");

    let c = run(&[
        "campaign",
        "--kind",
        "classical-bell",
        "--trials",
        "50",
        "--seed",
        "8",
        "--format",
        "json",
    ]);
    assert_ne!(
        a.stdout, c.stdout,
        "a different seed must show up in the output"
    );
}

#[test]
fn campaign_document_schema() {
    let out = run(&[
        "campaign",
        "--kind",
        "povm-positivity",
        "--trials",
        "25",
        "--seed",
        "3",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let doc = json(&out);
    for field in ["tool_version", "seed", "spec", "results", "summary"] {
        assert!(doc.get(field).is_some(), "missing top-level field {field}");
    }
    assert_eq!(doc["seed"], 3);
    assert_eq!(doc["summary"]["passed"], true);
    assert_eq!(doc["results"].as_array().unwrap().len(), 0);
    assert!(
        doc["summary"]["per_inequality"]["povm_entropy_nonnegative"]["satisfied"]
            .as_u64()
            .unwrap()
            >= 25
    );
}

#[test]
fn all_campaign_kinds_pass_small_runs() {
    for kind in [
        "classical-bell",
        "quantum-bell",
        "projective-second-law",
        "povm-positivity",
        "mixing-order",
        "thermo-mixing",
    ] {
        let out = run(&[
            "campaign",
            "--kind",
            kind,
            "--trials",
            "25",
            "--seed",
            "11",
            "--max-sites",
            "3",
        ]);
        assert!(out.status.success(), "{kind} failed: {}", stdout(&out));
    }
}

#[test]
fn bell_violation_scenario_reports_the_bound() {
    let out = run(&["scenario", "bell-violation", "--format", "json"]);
    assert!(
        out.status.success(),
        "classical-bound violation must not gate exit"
    );
    let doc = json(&out);
    let results = doc["results"].as_array().unwrap();
    let quantum = results
        .iter()
        .find(|r| r["name"] == "cerf_adami_quantum")
        .expect("quantum-bound report present");
    let lhs = quantum["lhs"].as_f64().unwrap();
    assert!((lhs - 2.0).abs() <= 1e-9);
    assert_eq!(quantum["satisfied"], true);
    let classical = results
        .iter()
        .find(|r| r["name"] == "cerf_adami_quantum_vs_classical")
        .unwrap();
    assert_eq!(classical["satisfied"], false);
    // JSON mode carries ≥ 12 significant digits on every float
    assert!(
        stdout(&out).contains("2.00000000000000e0"),
        "{}",
        stdout(&out)
    );
}

#[test]
fn log_base_e_rescales_displayed_values() {
    let out = run(&[
        "scenario",
        "bell-violation",
        "--format",
        "json",
        "--log-base",
        "e",
    ]);
    let doc = json(&out);
    let lhs = doc["summary"]["values"]["lhs"].as_f64().unwrap();
    assert!(
        (lhs - 2.0 * std::f64::consts::LN_2).abs() <= 1e-9,
        "lhs = {lhs}"
    );
}

#[test]
fn mixing_lattice_scenario_values() {
    let out = run(&[
        "scenario",
        "mixing-lattice",
        "--sites",
        "2",
        "2",
        "--particles",
        "2",
        "2",
        "--distinct",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let doc = json(&out);
    let s = doc["summary"]["values"]["entropy_of_mixing"]
        .as_f64()
        .unwrap();
    assert!((s - 6.0f64.ln()).abs() <= 1e-12);

    let out = run(&[
        "scenario",
        "mixing-lattice",
        "--sites",
        "2",
        "2",
        "--particles",
        "2",
        "2",
        "--format",
        "json",
    ]);
    let doc = json(&out);
    let s = doc["summary"]["values"]["entropy_of_mixing"]
        .as_f64()
        .unwrap();
    assert!(s.abs() <= 1e-12, "same species should mix to zero, got {s}");
}

#[test]
fn sweep_csv_brackets_the_crossover() {
    let out = run(&["scenario", "sackur-tetrode-sweep", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "temperature_k,entropy");
    let rows: Vec<(f64, f64)> = lines
        .map(|l| {
            let (t, s) = l.split_once(',').expect("two columns");
            (t.parse().unwrap(), s.parse().unwrap())
        })
        .collect();
    assert!(rows.len() >= 2);
    let crossing = rows
        .windows(2)
        .find(|w| w[0].1 < 0.0 && w[1].1 >= 0.0)
        .expect("sweep must cross zero");
    // the sign change brackets the fixture crossover near 1.06e-2 K
    assert!(crossing[0].0 < 1.0597e-2 && 1.0597e-2 < crossing[1].0);
}

#[test]
fn unknown_scenario_is_a_usage_error() {
    let out = run(&["scenario", "does-not-exist"]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    // clap lists the available scenario subcommands
    assert!(stderr.contains("bell-violation"), "stderr: {stderr}");
    assert!(stderr.contains("mixing-lattice"), "stderr: {stderr}");
}

#[test]
fn check_classical_on_a_chain_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("chain.json");
    let j = markov_chain(
        &ProbDist::uniform(2).unwrap(),
        &StochasticMatrix::identity(2),
        &StochasticMatrix::new(vec![vec![0.9, 0.1], vec![0.1, 0.9]]).unwrap(),
    )
    .unwrap();
    std::fs::write(&path, serde_json::to_string(&j).unwrap()).unwrap();

    let out = run(&[
        "check",
        "--input",
        path.to_str().unwrap(),
        "--kind",
        "classical",
        "--format",
        "json",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let doc = json(&out);
    assert_eq!(doc["summary"]["passed"], true);
    assert_eq!(doc["results"].as_array().unwrap().len(), 7);
}

#[test]
fn check_quantum_violating_classical_bound_still_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bell.json");
    let rho = tensor(
        &DensityOperator::maximally_mixed(vec![2]).unwrap(),
        &bell_pair(),
    );
    std::fs::write(&path, serde_json::to_string(&rho).unwrap()).unwrap();

    let out = run(&[
        "check",
        "--input",
        path.to_str().unwrap(),
        "--kind",
        "quantum",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let doc = json(&out);
    let results = doc["results"].as_array().unwrap();
    assert!(results.iter().any(|r| r["name"] == "strong_subadditivity"));
    assert!(results
        .iter()
        .any(|r| r["name"] == "cerf_adami_quantum_vs_classical" && r["satisfied"] == false));
}

#[test]
fn check_rejects_malformed_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"probs": [[[0.7]]], "shape": [1,1,1]}"#).unwrap();
    let out = run(&[
        "check",
        "--input",
        path.to_str().unwrap(),
        "--kind",
        "classical",
    ]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&[
        "check",
        "--input",
        "/nonexistent.json",
        "--kind",
        "classical",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn out_flag_writes_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&[
        "scenario",
        "noiseless-chain",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["results"].as_array().unwrap().len(), 7);
}

#[test]
fn report_converts_json_to_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("doc.json");
    let out = run(&[
        "scenario",
        "bell-violation",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());

    let out = run(&[
        "report",
        "--input",
        path.to_str().unwrap(),
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("name,lhs,bound,satisfied,margin,input_descriptor"));
    assert!(text.contains("cerf_adami_quantum"));

    let out = run(&[
        "report",
        "--input",
        path.to_str().unwrap(),
        "--format",
        "text",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("cerf_adami_quantum"));
}

#[test]
fn thermo_config_file_round_trips_through_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("thermo.json");
    std::fs::write(&cfg_path, r#"{"k": 2.0}"#).unwrap();
    let out = run(&[
        "scenario",
        "mixing-lattice",
        "--sites",
        "2",
        "2",
        "--particles",
        "2",
        "2",
        "--distinct",
        "--config",
        cfg_path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let doc = json(&out);
    let s = doc["summary"]["values"]["entropy_of_mixing"]
        .as_f64()
        .unwrap();
    assert!(
        (s - 2.0 * 6.0f64.ln()).abs() <= 1e-12,
        "k = 2 must scale the result"
    );
}

#[test]
fn tolerance_flag_is_validated() {
    let out = run(&[
        "campaign",
        "--kind",
        "classical-bell",
        "--trials",
        "0",
        "--seed",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn binary_exists_at_a_sane_path() {
    assert!(Path::new(env!("CARGO_BIN_EXE_entrobell")).exists());
}
