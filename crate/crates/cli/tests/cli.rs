use std::path::PathBuf;
use std::process::{Command as Process, Output};

use serde_json::{json, Value};
use sullivan::commands::{check, run, Command, Options};
use sullivan::document::{parse_document, Document};
use sullivan::library::{builtin, resolve, LIBRARY};

fn bin() -> Process {
    let mut p = Process::new(env!("CARGO_BIN_EXE_sullivan"));
    p.env_remove("SULLIVAN_EXAMPLES");
    p
}

fn sullivan(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn report(args: &[&str]) -> Value {
    let out = sullivan(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("sullivan-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn homotopy_of_the_three_sphere() {
    assert_eq!(report(&["homotopy", "--input", "s3"]), json!({"pi": {"3": 1}, "certified_through": 8}));
    assert_eq!(report(&["homotopy", "--input", "s2"]), json!({"pi": {"2": 1, "3": 1}, "certified_through": 8}));
    assert_eq!(report(&["homotopy", "--input", "cp2"]), json!({"pi": {"2": 1, "5": 1}, "certified_through": 8}));
}

#[test]
fn inhomogeneous_differential_is_rejected() {
    let path = scratch(
        "bad.json",
        r#"{"kind":"cdga","generators":[{"name":"x","degree":2},{"name":"y","degree":3}],"differential":{"y":"x"}}"#,
    );
    let out = sullivan(&["check", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("d(y)"), "{err}");
    assert!(out.stdout.is_empty());
    // every command re-runs check, so nothing is emitted there either
    let out = sullivan(&["homology", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
}

#[test]
fn parse_and_schema_errors_exit_with_two() {
    let path = scratch("typo.json", r#"{"kind":"cdga","generators":[{"name":"x","degree":2}],"differential":{"x":"x +\n z"}}"#);
    let out = sullivan(&["check", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("2:2") && err.contains("\"z\""), "{err}");

    let path = scratch("junk.json", "{not json");
    assert_eq!(sullivan(&["check", "--input", path.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(sullivan(&["check", "--input", "no-such-document"]).status.code(), Some(2));
    assert_eq!(sullivan(&["weil", "--input", "s3"]).status.code(), Some(2));
    assert_eq!(sullivan(&["homology", "--input", "s3", "--window", "3..1"]).status.code(), Some(2));
}

#[test]
fn weil_on_abelian_rank_one() {
    let r = report(&["weil", "--input", "abelian1"]);
    let betti: Vec<u64> = (0..=8).map(|k| r["betti"][k.to_string()].as_u64().unwrap()).collect();
    assert_eq!(betti, vec![1, 0, 0, 0, 0, 0, 0, 0, 0]);
    let basic: Vec<u64> = (0..=8).map(|k| r["basic_betti"][k.to_string()].as_u64().unwrap()).collect();
    assert_eq!(basic, vec![1, 0, 1, 0, 1, 0, 1, 0, 1]);
    assert_eq!(r["cartan"]["identities_hold"], json!(true));
}

#[test]
fn chevalley_eilenberg_reports() {
    let r = report(&["ce", "--input", "so3"]);
    assert_eq!(r["betti"], json!({"0": 1, "1": 0, "2": 0, "3": 1}));
    assert_eq!(r["representatives"]["3"], json!(["e1*e2*e3"]));
    let r = report(&["ce", "--input", "affine"]);
    assert_eq!(r["betti"], json!({"0": 1, "1": 1, "2": 0}));
}

#[test]
fn complex_surgery() {
    let r = report(&["cone", "--input", "interval"]);
    assert_eq!(r["contractible"], json!(true));
    assert_eq!(r["homotopy_verified"], json!(true));
    // the emitted complex is itself a valid input document
    let again = parse_document(&r["complex"].to_string()).unwrap();
    assert_eq!(again.kind(), "complex");

    let r = report(&["cyl", "--input", "collapse"]);
    assert_eq!(r["betti"], json!({"-1": 0, "0": 1, "1": 0}));
    assert_eq!(r["projection_weak_equivalence"], json!(true));
    let r = report(&["cone-map", "--input", "collapse"]);
    assert_eq!(r["acyclic"], json!(true));
    assert_eq!(r["weak_equivalence"], json!(true));
}

#[test]
fn hodge_reports() {
    let r = report(&["hodge", "--input", "interval", "--gram", "weighted"]);
    assert_eq!(r["laplacian_commutes"], json!(true));
    assert_eq!(r["degrees"]["0"]["harmonic"], json!([["1", "1"]]));
    assert_eq!(r["degrees"]["0"]["decomposition_verified"], json!(true));
    let r = report(&["hodge", "--input", "so3"]);
    assert_eq!(r["degrees"]["0"]["harmonic"], json!([["1"]]));
    assert_eq!(r["degrees"]["3"]["basis"], json!(["e1*e2*e3"]));
    assert_eq!(r["degrees"]["3"]["harmonic"], json!([["1"]]));
    assert_eq!(r["degrees"]["1"]["harmonic"], json!([]));
    // a non-positive-definite Gram is a mathematical rejection
    let g = scratch("neg.json", r#"{"kind":"gram","grams":{"1":{"rows":1,"cols":1,"entries":[[0,0,-1]]}}}"#);
    assert_eq!(sullivan(&["hodge", "--input", "interval", "--gram", g.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn number_operator_report() {
    let r = report(&["number-op", "--input", "boundary-pair"]);
    assert_eq!(r["identity_holds"], json!(true));
    assert_eq!(r["cross_terms_cancel"], json!(true));
    assert_eq!(r["residual"], json!({}));
}

#[test]
fn text_format_and_truncation_warning() {
    let out = sullivan(&["homotopy", "--input", "s3", "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "certified_through: 8\npi:\n  3: 1\n");
    let out = sullivan(&["check", "--input", "s3", "--truncation", "17"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}

#[test]
fn windows_and_truncation_flags() {
    let r = report(&["homology", "--input", "cp2", "--window", "2..4"]);
    assert_eq!(r["betti"], json!({"2": 1, "3": 0, "4": 1}));
    let r = report(&["homotopy", "--input", "s2", "--truncation", "5"]);
    assert_eq!(r, json!({"pi": {"2": 1, "3": 1}, "certified_through": 5}));
    assert_eq!(sullivan(&["homology", "--input", "s3", "--truncation", "4", "--window", "0..6"]).status.code(), Some(1));
}

#[test]
fn examples_directory_from_environment() {
    let dir = std::env::temp_dir().join(format!("sullivan-examples-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(dir.join("s5.json"), r#"{"kind":"cdga","generators":[{"name":"f","degree":5}]}"#).unwrap();
    let out = bin().env("SULLIVAN_EXAMPLES", &dir).args(["homotopy", "--input", "s5"]).output().unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v, json!({"pi": {"5": 1}, "certified_through": 8}));
    assert!(resolve("s5", Some(&dir)).is_ok());
    assert!(resolve("s5", None).is_err());
}

#[test]
fn identical_inputs_give_identical_bytes() {
    for (cmd, input) in [("minimal-model", "s2"), ("weil", "affine"), ("hodge", "so3"), ("cone", "interval")] {
        let a = sullivan(&[cmd, "--input", input]);
        let b = sullivan(&[cmd, "--input", input]);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{cmd}");
    }
}

#[test]
fn library_documents_round_trip() {
    for (name, text) in LIBRARY {
        let doc = parse_document(text).unwrap();
        let once = doc.to_value();
        let twice = parse_document(&once.to_string()).unwrap().to_value();
        assert_eq!(once, twice, "{name}");
        assert!(check(&doc, 6).is_ok(), "{name}");
    }
    assert!(builtin("S3.json").is_some());
}

#[test]
fn shipped_schema_lists_every_kind() {
    let schema: Value = serde_json::from_str(include_str!("../schemas/document.v1.schema.json")).unwrap();
    let kinds: Vec<&str> = schema["properties"]["kind"]["enum"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert_eq!(kinds, vec!["cdga", "lie", "complex", "map", "gram"]);
    for (_, text) in LIBRARY {
        let kind = parse_document(text).unwrap().kind();
        assert!(kinds.contains(&kind));
        assert!(schema["$defs"][kind].is_object());
    }
}

#[test]
fn library_api_matches_binary() {
    let Document::Cdga(_) = parse_document(builtin("s3").unwrap()).unwrap() else { panic!("cdga") };
    let doc = parse_document(builtin("s3").unwrap()).unwrap();
    let v = run(Command::Homotopy, &doc, &Options::default()).unwrap();
    assert_eq!(v, report(&["homotopy", "--input", "s3"]));
    for cmd in Command::ALL {
        let args = ["--input", "s3"];
        let out = sullivan(&[cmd.name(), args[0], args[1]]);
        // s3 is a cdga: commands for other document kinds are schema errors
        let expected = match cmd {
            Command::Check | Command::Homology | Command::MinimalModel | Command::Homotopy | Command::Hodge => 0,
            _ => 2,
        };
        assert_eq!(out.status.code(), Some(expected), "{}", cmd.name());
    }
}

#[test]
fn lie_documents_with_boundary_and_cobracket() {
    let good = r#"{"kind":"lie","generators":[{"name":"a","degree":0},{"name":"b","degree":1}],
        "boundary":{"a":"b"}}"#;
    let doc = parse_document(good).unwrap();
    let v = run(Command::NumberOp, &doc, &Options { truncation: Some(5), ..Default::default() }).unwrap();
    assert_eq!(v["identity_holds"], json!(true));

    let bad = r#"{"kind":"lie","generators":[{"name":"a","degree":0},{"name":"b","degree":1}],
        "boundary":{"a":"b"},"cobracket":{"a":[{"left":"a","right":"a","coefficient":1}]}}"#;
    let path = scratch("incompatible.json", bad);
    let out = sullivan(&["check", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains('a'), "{err}");
}
