//! End-to-end tests of the `schub` binary: the pinned worked examples, the
//! documented JSON schemas, cache behavior, determinism, and exit codes.

use std::path::Path;
use std::process::{Command, Output};

fn schub(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_schub"))
        .args(args)
        .env_remove("SCHUB_CACHE")
        .output()
        .expect("binary runs")
}

fn schub_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_schub"));
    cmd.args(args).env_remove("SCHUB_CACHE");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf8 stderr")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

// ---------------------------------------------------------------------------
// worked examples

#[test]
fn qprod_reproduces_the_a2_product() {
    let out = schub(&["qprod", "--type", "A2", "--u", "1 2", "--v", "1 2 1"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(
        stdout(&out),
        "translation: eta = (-1, -1), kappa = (-1, -1), mu = (-2, -2)\n\
         q^(1, 1) S[s2] : 1\n"
    );
}

#[test]
fn qprod_unit_law() {
    let out = schub(&["qprod", "--type", "A2", "--u", "", "--v", "1"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(
        stdout(&out),
        "translation: eta = (-1, -1), kappa = (-1, -1), mu = (-2, -2)\n\
         q^(0, 0) S[s1] : 1\n"
    );
}

#[test]
fn gw_b3_invariant_is_one() {
    let out = schub(&[
        "gw", "--type", "B3", "--u", "1 2 3 1 2", "--v", "3 1 2 3 1 2", "--w", "1 2 3 2 1",
        "--lambda", "0 2 1",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(stdout(&out), "1\n");
}

#[test]
fn qprod_equivariant_rows() {
    let out = schub(&["qprod", "--type", "A2", "--u", "1 2", "--v", "1 2 1", "--equivariant"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(
        stdout(&out),
        "translation: eta = (-1, -1), kappa = (-1, -1), mu = (-2, -2)\n\
         q^(0, 0) S[s1 s2 s1] : a1^2 + a1*a2\n\
         q^(0, 1) S[s2 s1] : a1 + a2\n\
         q^(1, 1) S[e] : a1\n\
         q^(1, 1) S[s2] : 1\n"
    );
}

#[test]
fn chevalley_closed_form_matches_qprod() {
    let closed = schub(&["chevalley", "--type", "A2", "--u", "1", "--v", "2"]);
    assert_eq!(code(&closed), 0);
    assert_eq!(
        stdout(&closed),
        "q^(0, 0) S[s1 s2] : 1\nq^(0, 0) S[s2 s1] : 1\n"
    );
    // The loop-space route agrees, rendered through the same row format.
    let product = schub(&["qprod", "--type", "A2", "--u", "1", "--v", "2", "--equivariant"]);
    assert_eq!(code(&product), 0);
    let body = stdout(&product);
    let rows: Vec<&str> = body.lines().skip(1).collect();
    assert_eq!(rows, vec!["q^(0, 0) S[s1 s2] : 1", "q^(0, 0) S[s2 s1] : 1"]);
}

// ---------------------------------------------------------------------------
// JSON schemas

#[test]
fn qprod_json_matches_schema() {
    let out = schub(&["qprod", "--type", "A2", "--u", "1 2", "--v", "1 2 1", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(v["type"], "A2");
    assert_eq!(v["u"], serde_json::json!([1, 2]));
    assert_eq!(v["v"], serde_json::json!([1, 2, 1]));
    assert_eq!(v["equivariant"], false);
    assert_eq!(v["translation"]["eta"], serde_json::json!([-1, -1]));
    assert_eq!(v["translation"]["mu"], serde_json::json!([-2, -2]));
    let rows = v["rows"].as_array().expect("rows array");
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["q"], serde_json::json!([1, 1]));
    assert_eq!(rows[0]["w"], serde_json::json!([2]));
    assert_eq!(
        rows[0]["coef"],
        serde_json::json!([{ "exp": [0, 0, 0], "coef": "1" }])
    );
}

#[test]
fn cd_coeff_json_matches_schema() {
    let out = schub(&["cd-coeff", "--type", "A2", "--u", "0", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(v["x"], serde_json::json!({ "w": [1, 2, 1], "lambda": [-1, -1] }));
    assert_eq!(v["word"], serde_json::json!([0]));
    assert_eq!(v["length"], 1);
    // c_{s0,s0} = -1/(α₁+α₂-δ): scalar -1, numerator 1, one denominator form.
    let c = v["c"].as_array().expect("c table");
    assert_eq!(c.len(), 2);
    let s0_entry = c
        .iter()
        .find(|e| e["y"] == serde_json::json!({ "w": [1, 2, 1], "lambda": [-1, -1] }))
        .expect("diagonal entry present");
    assert_eq!(s0_entry["value"]["scalar"], "-1");
    assert_eq!(
        s0_entry["value"]["num"],
        serde_json::json!([{ "exp": [0, 0, 0], "coef": "1" }])
    );
    assert_eq!(
        s0_entry["value"]["den"],
        serde_json::json!([["1", "1", "-1"]])
    );
    // d_{s0,s0} = -α₁-α₂+δ.
    let d = v["d"].as_array().expect("d table");
    let d_s0 = d
        .iter()
        .find(|e| e["y"] == serde_json::json!({ "w": [1, 2, 1], "lambda": [-1, -1] }))
        .expect("diagonal entry present");
    assert_eq!(
        d_s0["value"],
        serde_json::json!([
            { "exp": [1, 0, 0], "coef": "-1" },
            { "exp": [0, 1, 0], "coef": "-1" },
            { "exp": [0, 0, 1], "coef": "1" },
        ])
    );
}

#[test]
fn pontryagin_json_serializes_formal_sum() {
    let out = schub(&["pontryagin", "--type", "A2", "--u", "2 0", "--v", "0", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    let terms = v["terms"].as_array().expect("terms");
    assert_eq!(terms.len(), 4);
    for term in terms {
        assert!(term["z"]["w"].is_array());
        assert!(term["z"]["lambda"].is_array());
        assert!(term["coef"].is_array());
    }
}

#[test]
fn roots_json_lists_the_system() {
    let out = schub(&["roots", "--type", "B3", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(v["rank"], 3);
    assert_eq!(v["weyl_order"], "48");
    assert_eq!(v["positive_roots"].as_array().unwrap().len(), 9);
    assert_eq!(v["theta"], serde_json::json!({ "root": [1, 2, 2], "coroot": [1, 2, 1] }));
}

// ---------------------------------------------------------------------------
// element input forms

#[test]
fn affine_elements_accept_both_serialized_forms() {
    let plain = schub(&["cd-coeff", "--type", "A2", "--u", "0"]);
    let word = schub(&["cd-coeff", "--type", "A2", "--u", r#"{"word": [0]}"#]);
    let split = schub(&["cd-coeff", "--type", "A2", "--u", r#"{"w": [1, 2, 1], "lambda": [-1, -1]}"#]);
    assert_eq!(code(&plain), 0);
    assert_eq!(stdout(&plain), stdout(&word));
    assert_eq!(stdout(&plain), stdout(&split));
}

#[test]
fn words_compose_as_written() {
    // A non-reduced word denotes the same element as its reduced form.
    let direct = schub(&["qprod", "--type", "A2", "--u", "1 2 1", "--v", ""]);
    let braided = schub(&["qprod", "--type", "A2", "--u", "2 1 2", "--v", ""]);
    let padded = schub(&["qprod", "--type", "A2", "--u", "1 1 1 2 1", "--v", ""]);
    assert_eq!(code(&direct), 0);
    assert_eq!(stdout(&direct), stdout(&braided));
    assert_eq!(stdout(&direct), stdout(&padded));
}

// ---------------------------------------------------------------------------
// cache

#[test]
fn cache_round_trip_is_byte_identical_and_idempotent() {
    let dir = tempfile::tempdir().expect("tempdir");
    let cache = dir.path().join("cache.jsonl");
    let cache_str = cache.to_str().unwrap();
    let args = ["qprod", "--type", "A2", "--u", "1 2", "--v", "1 2 1", "--cache", cache_str];

    let first = schub(&args);
    assert_eq!(code(&first), 0, "{}", stderr(&first));
    assert_eq!(lines(&cache), 1, "one record after the first run");

    let second = schub(&args);
    assert_eq!(code(&second), 0);
    assert_eq!(stdout(&first), stdout(&second), "hit renders byte-identically");
    assert_eq!(lines(&cache), 1, "idempotent writes");

    // The cached full sum serves the equivariant view too.
    let equivariant = schub(&[
        "qprod", "--type", "A2", "--u", "1 2", "--v", "1 2 1", "--cache", cache_str,
        "--equivariant",
    ]);
    assert_eq!(code(&equivariant), 0);
    assert!(stdout(&equivariant).contains("q^(0, 0) S[s1 s2 s1] : a1^2 + a1*a2"));
    assert_eq!(lines(&cache), 1);

    // A different key appends a second record.
    let other = schub(&["qprod", "--type", "A2", "--u", "1", "--v", "2", "--cache", cache_str]);
    assert_eq!(code(&other), 0);
    assert_eq!(lines(&cache), 2);
}

#[test]
fn cache_skips_corrupt_lines_with_a_warning() {
    let dir = tempfile::tempdir().expect("tempdir");
    let cache = dir.path().join("cache.jsonl");
    let cache_str = cache.to_str().unwrap();
    let args = ["qprod", "--type", "A2", "--u", "1 2", "--v", "1 2 1", "--cache", cache_str];

    let first = schub(&args);
    assert_eq!(code(&first), 0);

    let mut content = std::fs::read_to_string(&cache).unwrap();
    content = format!("this is not json\n{content}");
    std::fs::write(&cache, content).unwrap();

    let second = schub(&args);
    assert_eq!(code(&second), 0);
    assert_eq!(stdout(&first), stdout(&second), "corruption costs nothing but a warning");
    assert!(stderr(&second).contains("skipping corrupt cache line 1"));
    assert_eq!(lines(&cache), 2, "valid record still recognized, nothing re-appended");
}

#[test]
fn cache_env_var_overrides_the_flag() {
    let dir = tempfile::tempdir().expect("tempdir");
    let flag_path = dir.path().join("flag.jsonl");
    let env_path = dir.path().join("env.jsonl");
    let out = schub_env(
        &["qprod", "--type", "A2", "--u", "1", "--v", "1", "--cache", flag_path.to_str().unwrap()],
        &[("SCHUB_CACHE", env_path.to_str().unwrap())],
    );
    assert_eq!(code(&out), 0);
    assert!(env_path.exists(), "env path is used");
    assert!(!flag_path.exists(), "flag path is ignored");

    // An empty SCHUB_CACHE disables caching entirely.
    let disabled = schub_env(
        &["qprod", "--type", "A2", "--u", "1", "--v", "1", "--cache", flag_path.to_str().unwrap()],
        &[("SCHUB_CACHE", "")],
    );
    assert_eq!(code(&disabled), 0);
    assert!(!flag_path.exists());
}

fn lines(path: &Path) -> usize {
    std::fs::read_to_string(path).unwrap().lines().count()
}

// ---------------------------------------------------------------------------
// determinism

#[test]
fn output_is_byte_identical_across_runs_and_thread_counts() {
    let args = ["qprod", "--type", "B3", "--u", "1 2 3 1 2", "--v", "3 1 2 3 1 2"];
    let once = schub(&args);
    let again = schub(&args);
    assert_eq!(code(&once), 0, "{}", stderr(&once));
    assert_eq!(stdout(&once), stdout(&again));

    let threaded = schub(&[
        "qprod", "--type", "B3", "--u", "1 2 3 1 2", "--v", "3 1 2 3 1 2", "--threads", "4",
    ]);
    assert_eq!(code(&threaded), 0);
    assert_eq!(stdout(&once), stdout(&threaded));

    let json_once = schub(&["pontryagin", "--type", "A2", "--u", "2 0", "--v", "0", "--format", "json"]);
    let json_again = schub(&["pontryagin", "--type", "A2", "--u", "2 0", "--v", "0", "--format", "json"]);
    assert_eq!(stdout(&json_once), stdout(&json_again));
}

#[test]
fn b3_product_lists_the_three_terms() {
    let out = schub(&["qprod", "--type", "B3", "--u", "1 2 3 1 2", "--v", "3 1 2 3 1 2"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let body = stdout(&out);
    let rows: Vec<&str> = body.lines().skip(1).collect();
    assert_eq!(
        rows,
        vec![
            "q^(0, 2, 1) S[s1 s2 s3 s2 s1] : 1",
            "q^(1, 2, 1) S[s2 s3 s2] : 1",
            "q^(1, 2, 1) S[s3 s1 s2] : 1",
        ]
    );
}

// ---------------------------------------------------------------------------
// exit codes

#[test]
fn exit_codes_classify_failures() {
    // 2: unusable input.
    assert_eq!(code(&schub(&["roots", "--type", "Z9"])), 2);
    assert_eq!(code(&schub(&["qprod", "--type", "A2", "--u", "7", "--v", ""])), 2);
    assert_eq!(code(&schub(&["gw", "--type", "A2", "--u", "1", "--v", "1", "--w", "1", "--lambda", "0 0 0"])), 2);
    assert_eq!(code(&schub(&["chevalley", "--type", "A2", "--u", "1 2", "--v", "2"])), 2);
    assert_eq!(code(&schub(&["pontryagin", "--type", "A2", "--u", "1", "--v", "0"])), 2);
    assert_eq!(code(&schub(&["selftest", "bogus"])), 2);
    assert_eq!(code(&schub(&["cd-coeff", "--type", "A2", "--u", r#"{"w": [1], "lambda": [0]}"#])), 2);

    // 3: the length bound refuses cleanly.
    let bounded = schub(&["qprod", "--type", "A2", "--u", "1 2", "--v", "1 2 1", "--bound", "1"]);
    assert_eq!(code(&bounded), 3);
    assert!(stderr(&bounded).contains("length bound exceeded"));
}

// ---------------------------------------------------------------------------
// selftest driver

#[test]
fn selftest_quick_passes_and_reports_each_criterion() {
    let out = schub(&["selftest", "quick"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let body = stdout(&out);
    let lines: Vec<&str> = body.lines().collect();
    assert_eq!(lines.len(), 10, "nine criteria plus the summary:\n{body}");
    for (idx, line) in lines.iter().take(9).enumerate() {
        assert!(
            line.starts_with(&format!("criterion {} PASS ", idx + 1)),
            "unexpected line: {line}"
        );
    }
    assert_eq!(lines[9], "all 9 criteria passed");
}
