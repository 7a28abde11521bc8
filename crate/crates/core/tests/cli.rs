use std::fs;
use std::path::Path;

use proptest::prelude::*;
use serde_json::Value;

use dinitz::cli::{run, InstanceFile, EXIT_FAILED, EXIT_GUARD, EXIT_INPUT, EXIT_OK};

fn invoke(args: &[&str]) -> (i32, Value, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["dinitz"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    let stdout = String::from_utf8(out).unwrap();
    let doc = serde_json::from_str(stdout.trim()).unwrap_or(Value::Null);
    (code, doc, String::from_utf8(err).unwrap())
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn circulant_prints_rectangle() {
    let (code, doc, _) = invoke(&["circulant", "--r", "2", "--n", "3"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["rectangle"], serde_json::json!([[0, 1, 2], [1, 2, 0]]));
}

#[test]
fn circulant_rejects_tall() {
    let (code, _, err) = invoke(&["circulant", "--r", "4", "--n", "3"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("rows <= cols"));
}

#[test]
fn verify_parity_single_edge() {
    let (code, doc, _) = invoke(&["verify-parity", "--r", "1", "--n", "2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["de"], 0);
    assert_eq!(doc["do"], 1);
    assert_eq!(doc["gap"], 1);
    assert_eq!(doc["holds"], true);
}

#[test]
fn verify_parity_orderings_and_jobs() {
    for ordering in ["lex", "paper"] {
        for jobs in ["1", "4"] {
            let (code, doc, _) =
                invoke(&["verify-parity", "--r", "2", "--n", "4", "--ordering", ordering, "--jobs", jobs]);
            assert_eq!(code, EXIT_OK);
            assert_eq!(doc["gap"], 1);
            assert_eq!(doc["ordering"], ordering);
            assert_eq!(doc["edges"], 16);
        }
    }
}

#[test]
fn guard_refusal_exit_code() {
    let (code, _, err) = invoke(&["verify-parity", "--r", "3", "--n", "4", "--max-edges", "20"]);
    assert_eq!(code, EXIT_GUARD);
    assert!(err.contains("size guard"));
    let (code, _, _) = invoke(&["uniqueness", "--r", "4", "--n", "5"]);
    assert_eq!(code, EXIT_GUARD);
}

#[test]
fn verify_parity_outside_hypothesis() {
    let (code, _, _) = invoke(&["verify-parity", "--r", "3", "--n", "3"]);
    assert_eq!(code, EXIT_INPUT);
}

#[test]
fn uniqueness_reports_circulant() {
    let (code, doc, _) = invoke(&["uniqueness", "--r", "2", "--n", "3"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["count"], 1);
    assert_eq!(doc["matches_circulant"], true);
    assert_eq!(doc["realizations"], serde_json::json!([[[0, 1, 2], [1, 2, 0]]]));
}

#[test]
fn involution_selfcheck_passes() {
    let (code, doc, _) = invoke(&["involution-selfcheck", "--r", "2", "--n", "3"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["triangle_containing"], 4);
    assert_eq!(doc["even"], doc["odd"]);
    for check in doc["checks"].as_array().unwrap() {
        assert_eq!(check["failed"], 0, "{check}");
    }
}

#[test]
fn bad_arguments_are_input_errors() {
    assert_eq!(invoke(&["bogus"]).0, EXIT_INPUT);
    assert_eq!(invoke(&["circulant", "--r", "x", "--n", "3"]).0, EXIT_INPUT);
    assert_eq!(invoke(&["verify-parity", "--r", "1", "--n", "2", "--ordering", "zig"]).0, EXIT_INPUT);
    assert_eq!(invoke(&["--help"]).0, EXIT_OK);
}

#[test]
fn solve_and_validate_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "in.json", r#"{"r":1,"n":2,"lists":[[[5,7],[5,9]]]}"#);
    let output = dir.path().join("out.json");
    let (code, doc, _) = invoke(&["solve", "--input", &input, "--seed", "3", "--output", output.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["status"], "solved");
    assert_eq!(doc["method"], "rectangle");
    assert_eq!(doc["schema_version"], 1);
    let written: Value = serde_json::from_str(&fs::read_to_string(&output).unwrap()).unwrap();
    assert_eq!(written["rectangle"], doc["rectangle"]);

    let (code, doc, _) = invoke(&["validate", "--input", &input, "--candidate", output.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["valid"], true);
}

#[test]
fn solve_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let lists: Vec<Vec<Vec<i64>>> = (0..3)
        .map(|i| (0..5).map(|j| (0..5).map(|k| (i + j + 2 * k) % 9).collect()).collect())
        .collect();
    let body = serde_json::json!({"r": 3, "n": 5, "lists": lists}).to_string();
    let input = write(dir.path(), "in.json", &body);
    let a = invoke(&["solve", "--input", &input, "--seed", "11"]).1;
    let b = invoke(&["solve", "--input", &input, "--seed", "11"]).1;
    assert_eq!(a["rectangle"], b["rectangle"]);
    assert_eq!(a["stats"]["nodes"], b["stats"]["nodes"]);
}

#[test]
fn solve_square_uses_reduction() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "sq.json", r#"{"r":2,"n":2,"lists":[[[0,1,2],[0,1,2]],[[0,1,2],[0,1,2]]]}"#);
    let (code, doc, _) = invoke(&["solve", "--input", &input]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["method"], "square_plus_one");
    assert_eq!(doc["extended"].as_array().unwrap()[0].as_array().unwrap().len(), 3);
}

#[test]
fn solve_string_symbols() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "s.json", r#"{"r":1,"n":2,"lists":[[["a","b"],["a","c"]]]}"#);
    let (code, doc, _) = invoke(&["solve", "--input", &input]);
    assert_eq!(code, EXIT_OK);
    let row = doc["rectangle"][0].as_array().unwrap();
    assert_ne!(row[0], row[1]);
}

#[test]
fn solve_unsatisfiable() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "u.json", r#"{"r":1,"n":2,"lists":[[[0],[0]]]}"#);
    let (code, doc, err) = invoke(&["solve", "--input", &input]);
    assert_eq!(code, EXIT_FAILED);
    assert_eq!(doc["status"], "unsatisfiable");
    assert!(err.contains("warning"));
}

#[test]
fn solve_parse_errors() {
    let dir = tempfile::tempdir().unwrap();
    let mixed = write(dir.path(), "m.json", r#"{"r":1,"n":2,"lists":[[[0],["a"]]]}"#);
    assert_eq!(invoke(&["solve", "--input", &mixed]).0, EXIT_INPUT);
    let broken = write(dir.path(), "b.json", "{not json");
    assert_eq!(invoke(&["solve", "--input", &broken]).0, EXIT_INPUT);
    let missing = dir.path().join("nope.json");
    assert_eq!(invoke(&["solve", "--input", missing.to_str().unwrap()]).0, EXIT_INPUT);
}

#[test]
fn validate_reports_column_repeat() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "in.json", r#"{"r":2,"n":1,"lists":[[[0]],[[0]]]}"#);
    let cand = write(dir.path(), "c.json", "[[0],[0]]");
    let (code, doc, err) = invoke(&["validate", "--input", &input, "--candidate", &cand]);
    assert_eq!(code, EXIT_FAILED);
    assert_eq!(doc["valid"], false);
    assert_eq!(
        doc["violations"],
        serde_json::json!([{"kind": "column_repeat", "col": 1, "symbol": 0}])
    );
    assert!(err.contains("column 1"));
}

#[test]
fn validate_dimension_mismatch_is_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "in.json", r#"{"r":1,"n":2,"lists":[[[0,1],[0,1]]]}"#);
    let cand = write(dir.path(), "c.json", "[[0]]");
    assert_eq!(invoke(&["validate", "--input", &input, "--candidate", &cand]).0, EXIT_INPUT);
}

fn instance() -> impl Strategy<Value = InstanceFile> {
    (1usize..4, 1usize..4).prop_flat_map(|(r, n)| {
        prop::collection::vec(prop::collection::vec(prop::collection::vec(-5i64..20, 1..6), n), r)
            .prop_map(move |lists| {
                let lists = lists
                    .into_iter()
                    .map(|row| row.into_iter().map(|c| c.into_iter().map(Into::into).collect()).collect())
                    .collect();
                InstanceFile { r, n, lists }
            })
    })
}

proptest! {
    #[test]
    fn canonical_serialization_is_idempotent(file in instance()) {
        let once = file.to_canonical_json();
        let reparsed = InstanceFile::parse(&once).unwrap();
        prop_assert_eq!(reparsed.to_canonical_json(), once.clone());
        let via_assignment = InstanceFile::from_assignment(&reparsed.to_assignment().unwrap());
        prop_assert_eq!(serde_json::to_string(&via_assignment).unwrap(), once);
    }
}
