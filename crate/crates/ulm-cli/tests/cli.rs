//! End-to-end tests of the `ulm` binary: exit codes, output formats and
//! byte determinism.

use std::process::Command;

use ulm_cli::formats::ideal_from_text;

fn ulm() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ulm"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = ulm().args(args).output().expect("spawn ulm");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn classify_cases() {
    let (code, out, _) = run(&["classify", "--n", "6", "--k", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "yu");
    let (code, out, _) = run(&["classify", "--n", "5", "--k", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "almost-pi-modular");
    let (code, _, err) = run(&["classify", "--n", "5", "--k", "3"]);
    assert_eq!(code, 2);
    assert!(err.contains("out of range"));
}

#[test]
fn pi_modular_charts_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cat");
    let (code, _, err) = run(&[
        "build",
        "--n",
        "4",
        "--k",
        "2",
        "--family",
        "kramer",
        "--chart",
        "i:2,1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("pi-modular"));
}

#[test]
fn even_characteristic_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.csv");
    let (code, _, err) = run(&[
        "count", "--n", "4", "--k", "1", "--q", "2", "--target", "chart", "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("even characteristic"));
}

#[test]
fn unknown_flag_is_usage_error() {
    let (code, _, _) = run(&["check", "--n", "4", "--k", "1", "--nonsense"]);
    assert_eq!(code, 2);
}

#[test]
fn check_report_schema_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let p1 = dir.path().join("r1.json");
    let p2 = dir.path().join("r2.json");
    for p in [&p1, &p2] {
        let (code, _, err) = run(&[
            "check",
            "--n",
            "4",
            "--k",
            "1",
            "--suite",
            "pairing",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert_eq!(code, 0, "{err}");
    }
    let b1 = std::fs::read_to_string(&p1).unwrap();
    let b2 = std::fs::read_to_string(&p2).unwrap();
    // the canonical body is identical; only the timing sidecar may differ
    let strip = |s: &str| -> String {
        s.lines()
            .filter(|l| !l.trim_start().starts_with("\"ms\""))
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(strip(&b1), strip(&b2));
    let v: serde_json::Value = serde_json::from_str(&b1).unwrap();
    assert_eq!(v["version"], 1);
    assert_eq!(v["instance"]["n"], 4);
    assert_eq!(v["instance"]["case"], "yu");
    assert_eq!(v["config"]["sign_variant"], "sec33");
    assert_eq!(v["config"]["trace_variant"], "two-pi");
    assert_eq!(v["checks"][0]["status"], "pass");
    assert!(v["checks"][0]["witness"].is_null());
}

#[test]
fn failing_variant_gives_exit_one_and_witness() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("r.json");
    let (code, _, _) = run(&[
        "check",
        "--n",
        "5",
        "--k",
        "1",
        "--suite",
        "presentation",
        "--chart",
        "i:2,1",
        "--trace-variant",
        "pi",
        "--out",
        p.to_str().unwrap(),
    ]);
    assert_eq!(code, 1);
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    assert_eq!(v["checks"][0]["status"], "fail");
    assert!(v["checks"][0]["witness"]["generator"].is_string());
    assert!(v["checks"][0]["witness"]["normal_form"].is_string());
}

#[test]
fn guard_trips_give_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("r.json");
    let out = ulm()
        .args([
            "check",
            "--n",
            "5",
            "--k",
            "1",
            "--suite",
            "presentation",
            "--chart",
            "i:2,1",
            "--out",
            p.to_str().unwrap(),
        ])
        .env("ULM_GUARD_PAIRS", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn build_catalog_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cat");
    let (code, stdout, err) = run(&[
        "build",
        "--n",
        "4",
        "--k",
        "1",
        "--family",
        "class",
        "--chart",
        "i:2,1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    assert!(stdout.contains("class_n4_k1_i_2_1.ideal"));
    let text = std::fs::read_to_string(out.join("class_n4_k1_i_2_1.ideal")).unwrap();
    let ideal = ideal_from_text(&text).unwrap();
    assert_eq!(ideal.gens().len(), 5);
    let manifest = std::fs::read_to_string(out.join("manifest.txt")).unwrap();
    assert!(manifest.contains("[class_n4_k1_i_2_1]"));
    assert!(manifest.contains("block.s2"));
    assert!(manifest.contains("subst.lam_1"));
}

#[test]
fn count_targets() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("c.csv");
    let (code, _, err) = run(&[
        "count",
        "--n",
        "4",
        "--k",
        "1",
        "--q",
        "3",
        "--target",
        "exc-gluing",
        "--out",
        p.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    let csv = std::fs::read_to_string(&p).unwrap();
    assert!(csv.starts_with("target,q,m,count,component,ms\n"));
    assert!(csv.contains("exc-gluing,3,4,52,exc1,"));
    // chart counting on a flat-closure chart
    let (code, _, err) = run(&[
        "count",
        "--n",
        "5",
        "--k",
        "1",
        "--q",
        "3",
        "--target",
        "chart",
        "--chart",
        "i:2,1",
        "--family",
        "spl",
        "--out",
        p.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    let csv = std::fs::read_to_string(&p).unwrap();
    assert!(csv.lines().count() >= 2);
}
