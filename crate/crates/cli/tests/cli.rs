use std::process::{Command, Output};

use sigma_forge::harness::VerificationReport;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sigma-forge"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn check_reports_sigma_quasinormal_transposition() {
    let o = run(&[
        "check",
        "--group",
        "S(3)",
        "--sigma",
        "pi:{2,3}",
        "--subgroup",
        "[(0 1)]",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("σ-quasinormal: true"), "{out}");
    assert!(out.contains("\nquasinormal: false"), "{out}");
    assert!(out.contains("σ-subnormal: true"), "{out}");
}

#[test]
fn check_accepts_image_arrays_and_json() {
    let o = run(&[
        "check",
        "--group",
        "S(3)",
        "--sigma",
        "pi:{2,3}",
        "--subgroup",
        "[[1,0,2]]",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["quasinormal"], false);
    assert_eq!(v["sigmas"][0]["sigma_quasinormal"], true);
    assert_eq!(v["subgroup"]["order"], 2);
}

#[test]
fn unknown_elements_and_bad_specs_exit_2() {
    for args in [
        vec!["check", "--group", "S(3)", "--subgroup", "[(0 5)]"],
        vec!["check", "--group", "A(4)", "--subgroup", "[(0 1)]"],
        vec!["check", "--group", "S(3", "--subgroup", "[(0 1)]"],
        vec![
            "check",
            "--group",
            "S(3)",
            "--sigma",
            "pi:{4}",
            "--subgroup",
            "[(0 1)]",
        ],
        vec!["lattice"],
        vec!["frobnicate"],
    ] {
        assert_eq!(run(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn lattice_counts_coprime_product() {
    let o = run(&["lattice", "--group", "DP(A(4),SDC(11,5,3))"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("subgroups: 140"));
    let o = run(&["lattice", "--group", "S(4)", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["subgroups"], 30);
    let orders: Vec<u64> = v["normal"]
        .as_array()
        .unwrap()
        .iter()
        .map(|n| n["order"].as_u64().unwrap())
        .collect();
    assert_eq!(orders, vec![1, 4, 12, 24]);
}

#[test]
fn resource_limits_exit_3() {
    assert_eq!(
        run(&["lattice", "--group", "S(5)", "--max-order", "60"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        run(&["lattice", "--group", "S(4)", "--max-subgroups", "10"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn classify_tabulates_every_subgroup() {
    let o = run(&[
        "classify", "--group", "S(3)", "--sigma", "pi:{2,3}", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v["classes"][0]["subgroups"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r["sigma_quasinormal"] == true));
    assert_eq!(rows.iter().filter(|r| r["quasinormal"] == true).count(), 3);
}

#[test]
fn survey_standard_suite_passes_and_round_trips() {
    let o = run(&["survey", "--suite", "standard", "--sigma", "sigma1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("result: ok"));

    let args = [
        "survey", "--group", "S(4)", "--group", "Q8", "--sigma", "pi:{2}", "--format", "json",
    ];
    let first = run(&args);
    assert_eq!(first.status.code(), Some(0));
    let reports: Vec<VerificationReport> = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(reports.len(), 2);
    let again = serde_json::to_string_pretty(&reports).unwrap();
    assert_eq!(
        again.trim(),
        String::from_utf8(first.stdout.clone()).unwrap().trim()
    );
    assert_eq!(run(&args).stdout, first.stdout);
}

#[test]
fn survey_honours_thread_cap() {
    let o = Command::new(env!("CARGO_BIN_EXE_sigma-forge"))
        .args(["survey", "--group", "D(12)", "--group", "C(6)"])
        .env("SIGMA_FORGE_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}
