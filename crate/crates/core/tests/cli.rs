use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_beurling"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let out = run(args);
    let code = out.status.code().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let value = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}"));
    (code, value)
}

fn data(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn reduce_text() {
    let out = run(&["--format", "text", "reduce", "abA"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("abA\n"));
    assert!(text.contains("length: 3"));
    let (_, v) = json(&["reduce", "abBA"]);
    assert_eq!(v["word"], "1");
    assert_eq!(v["length"], 0);
}

#[test]
fn mul_and_ball() {
    let (code, v) = json(&["mul", "ab", "Ba", "a"]);
    assert_eq!(code, 0);
    assert_eq!(v["product"], "aaa");
    let (_, v) = json(&["ball", "--radius", "2"]);
    assert_eq!(v["size"], 17);
}

#[test]
fn certificate_from_group_file() {
    let (code, v) = json(&["certificate", "--group", &data("even2.json"), "--u", "abab"]);
    assert_eq!(code, 0);
    assert_eq!(v["identity_checked"], true);
    assert_eq!(v["eq2_bound"]["norm"], "5");
    assert_eq!(v["eq2_bound"]["bound"], "16");
    assert_eq!(v["factors"], serde_json::json!(["ab", "ab"]));
}

#[test]
fn non_subgroup_word_is_an_input_error() {
    let out = run(&["certificate", "--group", "even2", "--u", "aba"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("not-in-subgroup"));
}

#[test]
fn group_information() {
    let (_, v) = json(&["group-info", "--group", &data("klein.json")]);
    assert_eq!(v["index"], 4);
    assert_eq!(v["normal"], true);
    assert_eq!(v["radius"], 4);
    let (_, v) = json(&["transversal", "--group", &data("stabilizer3.json")]);
    assert_eq!(v["transversal"], serde_json::json!(["1", "a", "A"]));
    let (_, v) = json(&["ygens", "--group", "even2"]);
    assert_eq!(v["y"].as_array().unwrap().len(), 12);
}

#[test]
fn element_operations() {
    let (_, v) = json(&["conv", "1 - t:a", "1 + t:a"]);
    assert_eq!(v["product"]["terms"].as_array().unwrap().len(), 2);
    let (_, v) = json(&["aug", "3 - 1/2 t:ab + 2i t:b"]);
    assert_eq!(v["augmentation"]["re"], "5/2");
    assert_eq!(v["augmentation"]["im"], "2");
    let (_, v) = json(&["norm", "1 - t:ab"]);
    assert_eq!(v["norm"]["upper"], "5");
    let (_, v) = json(&["coset-sums", "--group", "even2", "t:a - t:b + t:ab"]);
    assert_eq!(v["all_zero"], false);
    let (_, v) = json(&["push", "--group", "even2", "t:a - t:b"]);
    assert_eq!(v["zero"], true);
}

#[test]
fn malformed_element_reports_offset() {
    let out = run(&["aug", "t:aA a"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("parse-error") && err.contains("offset 5"), "{err}");
}

#[test]
fn weights() {
    let (code, v) = json(&["weight-eval", "abA", "--weight", r#"{"kind":"radial","base":"3/2"}"#]);
    assert_eq!(code, 0);
    assert_eq!(v["value"], "27/8");
    let (code, v) = json(&["submult-check", "--weight", &data("broken_weight.json")]);
    assert_eq!(code, 1);
    assert_eq!(v["report"]["passed"], false);
    let (code, _) = json(&["submult-check", "--weight", &data("induced_sym3.json")]);
    assert_eq!(code, 0);
}

#[test]
fn decompose_and_express() {
    let (code, v) = json(&["decompose", "--group", "even2", "1 - t:abab"]);
    assert_eq!(code, 0);
    assert_eq!(v["identity_checked"], true);
    let (code, v) = json(&["express", "--group", "even2", "t:a - t:b"]);
    assert_eq!(code, 0);
    assert_eq!(v["identity_checked"], true);
    let out = run(&["express", "--group", "even2", "t:a"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn finite_models() {
    let (code, v) = json(&["lift", "--model", "z4", "--seeds", "1 + t:aa"]);
    assert_eq!(code, 0);
    assert_eq!(v["codimension"]["formula_holds"], true);
    assert_eq!(v["codimension"]["codim_j"], 2);
    let (code, v) = json(&["extract", "--model", "s3", "--seeds", "1 - t:b", "--g", "t:b - t:bb"]);
    assert_eq!(code, 0);
    assert_eq!(v["identity_checked"], true);
    let out = run(&["lift", "--model", "z4", "--seeds", "t:a"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn separation() {
    let (code, v) = json(&["separate", "1 - t:d"]);
    assert_eq!(code, 0);
    assert_eq!(v["level"], 3);
    let out = run(&["separate", "t:bc - t:d"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["separate", "1 - t:d", "--levels", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("no-separation"));
}

#[test]
fn cancellation_commands() {
    let (code, v) = json(&["lemma23", "--group", "even2", "--u", "abab"]);
    assert_eq!(code, 0);
    assert_eq!(v["y_length"], 2);
    let out = run(&["lemma23", "--group", "even2", "--u", "aa", "--factors", "ab,Ba"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("non-geodesic"));
    let (code, v) = json(&["lemma23", "--group", "even2", "--max-length", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["violations"], serde_json::json!([]));
}

#[test]
fn suites_are_reproducible() {
    let (code, a) = json(&["suite", "lemma23", "--seed", "7"]);
    assert_eq!(code, 0);
    assert_eq!(a["failed"], 0);
    let (_, b) = json(&["suite", "algebra-axioms", "--seed", "3"]);
    let (_, c) = json(&["suite", "algebra-axioms", "--seed", "3"]);
    assert_eq!(b, c);
    assert_eq!(run(&["suite", "nope"]).status.code(), Some(2));
}

#[test]
fn usage_errors_and_output_file() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["--cap-ball", "0", "ball"]).status.code(), Some(2));
    assert_eq!(run(&["--rank", "2", "ball", "--radius", "30", "--cap-ball", "100"]).status.code(), Some(2));
    let dir = std::env::temp_dir().join(format!("beurling-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.json");
    let out = run(&["reduce", "aA", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["word"], "1");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn rank_mismatch_is_reported() {
    let out = run(&["push", "--group", "even2", "--rank", "3", "t:c"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("rank-mismatch"));
}
