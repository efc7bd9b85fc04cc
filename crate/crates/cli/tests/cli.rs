//! End-to-end tests of the command-line surface: output forms, exit codes,
//! and determinism.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use splitg2_core::{
    generic_derivation, golden_table, BracketTable, DerivationParams, FieldSpec, ZornMatrix,
};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_splitg2"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is UTF-8")
}

fn write_json(dir: &Path, name: &str, value: &Value) -> std::path::PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, value.to_string()).expect("write test file");
    path
}

#[test]
fn mul_of_basis_names() {
    let out = run(&["mul", "C1", "C2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "(0, (0, 0, 0); (0, 0, 1), 0)\n");

    let out = run(&["mul", "C1", "C1"]);
    assert_eq!(stdout(&out), "(0, (0, 0, 0); (0, 0, 0), 0)\n");

    let out = run(&["mul", "Y", "Y"]);
    assert_eq!(stdout(&out), "(1, (0, 0, 0); (0, 0, 0), 1)\n");
}

#[test]
fn mul_verbose_names_the_product() {
    let out = run(&["mul", "C1", "C2", "--verbose"]);
    assert!(out.status.success());
    assert!(stderr(&out).contains("product equals D3"));
}

#[test]
fn mul_json_output_round_trips() {
    let out = run(&["mul", "C2", "C3", "--format", "json"]);
    assert!(out.status.success());
    let value: Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    let q = FieldSpec::rationals();
    let parsed = ZornMatrix::from_json(&q, &value).unwrap();
    let basis = splitg2_core::octonion_basis(&q);
    assert_eq!(parsed, basis[5]);
}

#[test]
fn mul_accepts_inline_json() {
    let out = run(&[
        "mul",
        r#"{"a": "1/2", "x": ["0", "0", "0"], "y": ["0", "0", "0"], "b": "1/2"}"#,
        "Y",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "(1/2, (0, 0, 0); (0, 0, 0), 1/2)\n");
}

#[test]
fn mul_rejects_unknown_names_and_bad_json() {
    let out = run(&["mul", "c1", "C2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("c1"));

    let out = run(&["mul", "{\"a\":", "C2"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["mul", "--field", "fp:5", r#"{"a": "7", "x": ["0","0","0"], "y": ["0","0","0"], "b": "0"}"#, "A"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn mul_in_a_prime_field_wraps() {
    let out = run(&[
        "mul", "--field", "fp:5",
        r#"{"a": "3", "x": ["0", "0", "0"], "y": ["0", "0", "0"], "b": "0"}"#,
        r#"{"a": "4", "x": ["0", "0", "0"], "y": ["0", "0", "0"], "b": "0"}"#,
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "(2, (0, 0, 0); (0, 0, 0), 0)\n");
}

#[test]
fn derive_reports_dimension_and_basis() {
    let out = run(&["derive"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("dim = 14\n"));
    assert!(text.contains("x1 ="));
    assert!(text.contains("x14 ="));
}

#[test]
fn derive_json_carries_the_labeled_basis() {
    let out = run(&["derive", "--format", "json", "--field", "fp:7"]);
    assert!(out.status.success());
    let value: Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(value["dim"], 14);
    assert_eq!(value["labeled"], true);
    assert_eq!(value["field"], "fp:7");
    let basis = value["basis"].as_array().expect("basis array");
    assert_eq!(basis.len(), 14);
    let f7 = FieldSpec::prime(7).unwrap();
    let x1 = splitg2_core::Map8::from_json(&f7, &basis[0]).unwrap();
    assert_eq!(x1, generic_derivation(&DerivationParams::unit(&f7, 0)));
}

#[test]
fn derive_rejects_nonprime_moduli() {
    let out = run(&["derive", "--field", "fp:4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("not prime"));
}

#[test]
fn table_text_matches_published_cells() {
    let out = run(&["table"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 15);
    let row1: Vec<&str> = lines[1].split_whitespace().collect();
    assert_eq!(row1[0], "x1");
    assert_eq!(row1[1], "0");
    assert_eq!(row1[2], "-2x14");
    assert_eq!(row1[12], "2x4-x8");
    let row4: Vec<&str> = lines[4].split_whitespace().collect();
    assert_eq!(row4[4], "0");
}

#[test]
fn table_json_round_trips_and_is_deterministic() {
    let out1 = run(&["table", "--format", "json"]);
    let out2 = run(&["table", "--format", "json"]);
    assert!(out1.status.success());
    assert_eq!(out1.stdout, out2.stdout);
    let value: Value = serde_json::from_str(&stdout(&out1)).expect("valid JSON");
    let parsed = BracketTable::from_json(&FieldSpec::rationals(), &value).unwrap();
    assert_eq!(parsed, golden_table());
    assert_eq!(parsed.to_json(), value);
}

#[test]
fn table_latex_targets_plain_tabular() {
    let out = run(&["table", "--format", "latex"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("\\begin{tabular}{c|cccccccccccccc}\n"));
    assert!(text.trim_end().ends_with("\\end{tabular}"));
    assert!(text.contains("$-2x_{14}$"));
}

#[test]
fn verify_passes_over_q_and_fp5() {
    let out = run(&["verify"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("5/5 checks passed"));

    let out = run(&["verify", "--field", "fp:5"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("5/5 checks passed"));
}

#[test]
fn verify_names_a_corrupted_golden_cell() {
    let dir = tempfile::tempdir().expect("tempdir");
    let mut tampered = golden_table().to_json();
    let cell = tampered["brackets"]
        .as_array_mut()
        .unwrap()
        .iter_mut()
        .find(|b| b["i"] == 12 && b["j"] == 13)
        .expect("bracket (12, 13) present");
    cell["terms"][0]["c"] = Value::String("7".into());
    let path = write_json(dir.path(), "tampered.json", &tampered);

    let out = run(&["verify", "--golden", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("mismatch at cell (12, 13)"));
    assert!(text.contains("4/5 checks passed"));
}

#[test]
fn verify_with_the_shipped_table_as_a_file_passes() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = write_json(dir.path(), "golden.json", &golden_table().to_json());
    let out = run(&["verify", "--golden", path.to_str().unwrap()]);
    assert!(out.status.success());
}

#[test]
fn verify_rejects_unreadable_or_invalid_golden_files() {
    let out = run(&["verify", "--golden", "/nonexistent/table.json"]);
    assert_eq!(out.status.code(), Some(2));

    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{not json").unwrap();
    let out = run(&["verify", "--golden", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn recon_reads_parameters_back() {
    let dir = tempfile::tempdir().expect("tempdir");
    let q = FieldSpec::rationals();
    let x5 = generic_derivation(&DerivationParams::unit(&q, 4));
    let path = write_json(dir.path(), "x5.json", &x5.to_json());

    let out = run(&["recon", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("u32 = 1"));
    assert_eq!(text.matches("= 0").count(), 13);
}

#[test]
fn recon_of_a_bracket_reads_its_coefficient() {
    let dir = tempfile::tempdir().expect("tempdir");
    let q = FieldSpec::rationals();
    let x1 = generic_derivation(&DerivationParams::unit(&q, 0));
    let x2 = generic_derivation(&DerivationParams::unit(&q, 1));
    let br = x1.bracket(&x2).unwrap();
    let path = write_json(dir.path(), "bracket.json", &br.to_json());

    let out = run(&["recon", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("v13 = -2"));
}

#[test]
fn recon_rejects_non_derivations() {
    let dir = tempfile::tempdir().expect("tempdir");
    let entries: Vec<Value> = (0..64)
        .map(|i| Value::String(if i % 9 == 0 { "1".into() } else { "0".into() }))
        .collect();
    let ident = serde_json::json!({"rows": 8, "cols": 8, "entries": entries});
    let path = write_json(dir.path(), "ident.json", &ident);

    let out = run(&["recon", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("entry (1, 1)"));
}

#[test]
fn recon_json_format_emits_the_parameter_object() {
    let dir = tempfile::tempdir().expect("tempdir");
    let q = FieldSpec::rationals();
    let params = DerivationParams::unit(&q, 13);
    let path = write_json(dir.path(), "x14.json", &generic_derivation(&params).to_json());

    let out = run(&["recon", path.to_str().unwrap(), "--format", "json"]);
    assert!(out.status.success());
    let value: Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(DerivationParams::from_json(&q, &value).unwrap(), params);
}

#[test]
fn missing_subcommand_is_a_usage_error() {
    let out = run(&[]);
    assert_eq!(out.status.code(), Some(2));
}
