//! Command-line contract: exit codes, error messages naming the
//! offending field, config file handling and flag precedence.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_halg"))
}

#[test]
fn unknown_scenario_is_usage_error() {
    let out = bin().args(["run", "frobnicate"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
}

#[test]
fn passing_scenario_exits_zero() {
    let out = bin()
        .args(["run", "axioms", "--model", "pointwise", "--dim", "32", "--seed", "7"])
        .args(["--samples", "60", "--tol", "1e-10"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"pass\": true"));
}

#[test]
fn planted_mutation_exits_two_and_still_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let out = bin()
        .args(["run", "axioms", "--model", "matrix", "--dim", "8", "--samples", "40"])
        .args(["--mutate", "involution=transpose"])
        .arg("--out")
        .arg(&report)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let text = std::fs::read_to_string(&report).unwrap();
    assert!(text.contains("\"pass\": false"));
    assert!(text.contains("witness_refs"));
    assert!(report.with_extension("csv").exists());
    assert!(report.with_extension("meta.json").exists());
}

#[test]
fn malformed_element_file_names_field_and_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("elem.json");
    std::fs::write(&path, r#"{"axes": 3, "trunc": [4,4,4], "coeffs": [], "generator": null, "envelope": null}"#)
        .unwrap();
    let out = bin()
        .args(["run", "moyal-check"])
        .arg("--element")
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("axes"), "stderr did not name the field: {err}");
}

#[test]
fn malformed_family_file_names_field_and_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fam.json");
    std::fs::write(
        &path,
        r#"{"d": 2, "points": [{"weight": 0.5, "matrix": [[[1,0],[0,0]]]}], "label": "short"}"#,
    )
    .unwrap();
    let out = bin()
        .args(["run", "quantize", "--family"])
        .arg(format!("file:{}", path.display()))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("matrix"), "stderr did not name the field: {err}");
}

#[test]
fn element_file_verdict_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("elem.json");
    // a tempered polynomial sequence: a two-sided multiplier pointwise
    std::fs::write(
        &path,
        r#"{"axes": 1, "trunc": [16], "generator": {"kind": "power-law", "exponent": 3.0, "scale": [1.0, 0.0]}, "envelope": null}"#,
    )
    .unwrap();
    let out = bin()
        .args(["run", "moyal-check", "--ladder", "16,32"])
        .arg("--element")
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"verdict\": \"Member\""), "{text}");
}

#[test]
fn quantize_accepts_random_family_spec() {
    let out = bin()
        .args(["run", "quantize", "--family", "random:20,3,5", "--samples", "20"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"projector_rank\": 9"));
}

#[test]
fn config_file_is_read_and_flags_override_it() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(
        &cfg,
        "scenario = \"axioms\"\nmodel = \"pointwise\"\ndim = 16\nseed = 3\nsamples = 40\n",
    )
    .unwrap();
    // config alone
    let out = bin().args(["run", "axioms", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"dim\": 16"));
    assert!(text.contains("\"seed\": 3"));

    // flag overrides the file
    let out = bin()
        .args(["run", "axioms", "--config"])
        .arg(&cfg)
        .args(["--dim", "24"])
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"dim\": 24"));
}

#[test]
fn config_file_scenario_mismatch_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "scenario = \"quantize\"\n").unwrap();
    let out = bin().args(["run", "axioms", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn non_tight_family_file_fails_quantize_with_report() {
    // a valid family that is not tight: quantize must exit 2, not 1
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fam.json");
    std::fs::write(
        &path,
        r#"{"d": 2, "points": [{"weight": 1.0, "matrix": [[[1,0],[0,0]],[[0,0],[1,0]]]}], "label": "loose"}"#,
    )
    .unwrap();
    let report = dir.path().join("r.json");
    let out = bin()
        .args(["run", "quantize", "--family"])
        .arg(format!("file:{}", path.display()))
        .args(["--samples", "5"])
        .arg("--out")
        .arg(&report)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(std::fs::read_to_string(&report).unwrap().contains("\"pass\": false"));
}
