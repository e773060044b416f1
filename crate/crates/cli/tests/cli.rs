use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn mfkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mfkit")).args(args).env_remove("MFKIT_DEGREE_CUTOFF").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn conforms(schema: &str, args: &[&str]) -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(schema);
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let o = mfkit(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let v = jsonschema::validator_for(&schema).unwrap();
    if let Err(e) = v.validate(&doc) {
        panic!("{args:?} does not match {schema}: {e}");
    }
    doc
}

#[test]
fn stable_k0_of_d4() {
    let o = mfkit(&["k0", "--ring", "D-inf:4", "--variant", "stable", "--nmax", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "Z/2Z\n");
}

#[test]
fn validate_single_module() {
    let o = mfkit(&["validate", "--ring", "A-inf:1", "--module", "phi:3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS"));
}

#[test]
fn checklist_for_d1_has_seven_sequence_lines() {
    let o = mfkit(&["verify-paper", "--ring", "D-inf:1", "--nmax", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let seq: Vec<&str> = out.lines().filter(|l| l.contains(" sequence ")).collect();
    assert_eq!(seq.len(), 7);
    assert!(seq.iter().all(|l| l.ends_with(": PASS")));
    assert!(seq[2].starts_with("D-inf:1 sequence 3/7 "));
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["k0", "--ring", "E-inf:1"][..],
        &["k0", "--ring", "A-inf:0"],
        &["k0", "--ring", "A-inf"],
        &["k0"],
        &["validate", "--ring", "A-inf:1", "--module", "nope"],
        &["frobnicate"],
        &["k0", "--ring", "A-inf:1", "--format", "dot"],
    ] {
        assert_eq!(mfkit(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn bad_factorization_file_exits_with_one() {
    let good = stdout(&mfkit(&["knorrer", "--ring", "A-inf:1", "--module", "R/(x0)", "--format", "json"]));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    std::fs::write(&path, &good).unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(mfkit(&["validate", "--input", p]).status.code(), Some(0));
    let mut v: Value = serde_json::from_str(&good).unwrap();
    v["A"][0][0] = Value::String("x0 + 1".into());
    std::fs::write(&path, v.to_string()).unwrap();
    let o = mfkit(&["validate", "--input", p]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn sequence_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("seqs.json");
    let p = path.to_str().unwrap();
    let o = mfkit(&["catalog", "sequences", "--ring", "D-inf:2", "--nmax", "2", "--output", p]);
    assert_eq!(o.status.code(), Some(0));
    let o = mfkit(&["seq-check", "--input", p, "--cutoff", "10"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).lines().all(|l| l.ends_with("PASS")));
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    v[1]["inclusion"]["p"][0][0] = Value::String("x1".into());
    std::fs::write(&path, v.to_string()).unwrap();
    assert_eq!(mfkit(&["seq-check", "--input", p]).status.code(), Some(1));
}

#[test]
fn json_outputs_match_the_schemas() {
    let cat = conforms("catalog.schema.json", &["catalog", "emit", "--ring", "D-inf:3", "--nmax", "2"]);
    assert_eq!(cat[0]["label"], "R");
    conforms("matfac.schema.json", &["knorrer", "--ring", "D-inf:2", "--module", "beta+", "--format", "json"]);
    conforms("sequences.schema.json", &["catalog", "sequences", "--ring", "D-inf:1", "--nmax", "2"]);
    let loc = conforms(
        "locus.schema.json",
        &["locus", "--ring", "A-inf:2", "--form", "uv", "--nmax", "2", "--format", "json"],
    );
    let phi = loc["modules"].as_array().unwrap().iter().find(|m| m["label"] == "phi+:1").unwrap();
    let certs = &phi["verdicts"][0]["certificate"];
    assert!(certs.is_object());
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas/local-cert.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert!(jsonschema::is_valid(&schema, certs));
    let k0 = conforms("k0.schema.json", &["k0", "--ring", "D-inf:2", "--nmax", "4", "--format", "json"]);
    assert_eq!(k0["group"], "Z + Z/2Z");
    assert_eq!(k0["classification"]["torsion"][0], 2);
    conforms("quiver.schema.json", &["quiver", "--ring", "D-inf:1", "--nmax", "3", "--format", "json"]);
    conforms("validate.schema.json", &["validate", "--ring", "A-inf:3", "--nmax", "2", "--format", "json"]);
    conforms("seq-check.schema.json", &["seq-check", "--ring", "A-inf:1", "--nmax", "2", "--format", "json"]);
    conforms("verify.schema.json", &["verify-paper", "--ring", "A-inf:2", "--nmax", "2", "--format", "json"]);
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        &["verify-paper", "--ring", "D-inf:2", "--nmax", "3"][..],
        &["quiver", "--ring", "D-inf:1", "--nmax", "3", "--format", "dot"],
        &["locus", "--ring", "D-inf:1", "--nmax", "2", "--format", "json"],
    ] {
        assert_eq!(mfkit(args).stdout, mfkit(args).stdout, "{args:?}");
    }
}

#[test]
fn cutoff_can_come_from_the_environment() {
    let run = |env: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_mfkit"));
        c.args(["seq-check", "--ring", "A-inf:1", "--nmax", "1", "--format", "json"]);
        match env {
            Some(v) => c.env("MFKIT_DEGREE_CUTOFF", v),
            None => c.env_remove("MFKIT_DEGREE_CUTOFF"),
        };
        let v: Value = serde_json::from_slice(&c.output().unwrap().stdout).unwrap();
        v["cutoff"].as_i64().unwrap()
    };
    assert_eq!(run(None), 20);
    assert_eq!(run(Some("7")), 7);
}

#[test]
fn quiver_dot_has_dotted_ties() {
    let o = mfkit(&["quiver", "--ring", "A-inf:1", "--nmax", "3", "--format", "dot"]);
    let out = stdout(&o);
    assert!(out.starts_with("digraph"));
    assert!(out.contains("\"phi:1\" -> \"phi:2\""));
    assert!(out.contains("style=dotted"));
}
