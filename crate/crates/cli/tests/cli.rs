//! End-to-end tests against the compiled binary: file round trips,
//! exit codes, machine-readable errors, and byte determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_lipscomb"));
    cmd.env_remove("LIPSCOMB_MAX_POINTS")
        .env_remove("LIPSCOMB_MAX_DEPTH")
        .env_remove("LIPSCOMB_M_MAX");
    cmd
}

fn write(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn error_code(out: &Output) -> String {
    let v: serde_json::Value = serde_json::from_str(stderr(out).lines().last().unwrap()).unwrap();
    v["error"]["code"].as_str().unwrap().to_string()
}

#[test]
fn embed_origin_is_empty_coords() {
    let dir = tempfile::tempdir().unwrap();
    let word = write(dir.path(), "w.json", r#"{"prefix":[],"tail":["z"]}"#);
    let out = bin().args(["embed", "--word"]).arg(&word).output().unwrap();
    assert!(out.status.success());
    assert_eq!(stdout(&out), "{\"coords\":{}}\n");
}

#[test]
fn embed_then_decode_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let word = write(
        dir.path(),
        "w.json",
        r#"{"prefix":["c","a"],"tail":["a","b","b"]}"#,
    );
    let out = bin().args(["embed", "--word"]).arg(&word).output().unwrap();
    assert!(out.status.success());
    let point = write(dir.path(), "p.json", &stdout(&out));
    let out = bin()
        .args(["decode", "--point"])
        .arg(&point)
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let members = v["members"].as_array().unwrap();
    let original: serde_json::Value =
        serde_json::from_str(r#"{"prefix":["c","a"],"tail":["a","b","b"]}"#).unwrap();
    assert!(members.contains(&original), "members: {:?}", members);
}

#[test]
fn identified_words_are_zero_apart_and_equivalent() {
    let dir = tempfile::tempdir().unwrap();
    let w1 = write(dir.path(), "w1.json", r#"{"prefix":["a"],"tail":["b"]}"#);
    let w2 = write(dir.path(), "w2.json", r#"{"prefix":["b"],"tail":["a"]}"#);
    for (w, name) in [(&w1, "p1.json"), (&w2, "p2.json")] {
        let out = bin().args(["embed", "--word"]).arg(w).output().unwrap();
        assert!(out.status.success());
        write(dir.path(), name, &stdout(&out));
    }
    let out = bin()
        .args(["dist", "--point"])
        .arg(dir.path().join("p1.json"))
        .arg("--point")
        .arg(dir.path().join("p2.json"))
        .args(["--p", "2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["exact"], "0");
    let out = bin()
        .args(["equiv", "--word"])
        .arg(&w1)
        .arg("--word")
        .arg(&w2)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(stdout(&out), "true\n");
    let w3 = write(dir.path(), "w3.json", r#"{"prefix":[],"tail":["a"]}"#);
    let out = bin()
        .args(["equiv", "--word"])
        .arg(&w1)
        .arg("--word")
        .arg(&w3)
        .output()
        .unwrap();
    assert_eq!(stdout(&out), "false\n");
}

#[test]
fn attract_depth_one_lists_the_three_images() {
    let dir = tempfile::tempdir().unwrap();
    let alphabet = write(
        dir.path(),
        "al.json",
        r#"{"letters":["z","a","b"],"z":"z"}"#,
    );
    let out = bin()
        .args(["attract", "--letters", "z,a,b", "--depth", "1", "--alphabet"])
        .arg(&alphabet)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(stdout(&out), "a,b\n0,0\n1/2,0\n0,1/2\n");
    assert!(stderr(&out).contains("n=1 points=3"));
}

#[test]
fn attract_output_is_deterministic_and_p_independent() {
    let runs: Vec<Vec<u8>> = ["1", "1.5", "2", "3", "2"]
        .iter()
        .map(|p| {
            let out = bin()
                .args(["attract", "--letters", "z,a,b", "--depth", "4", "--p", p])
                .output()
                .unwrap();
            assert!(out.status.success());
            out.stdout
        })
        .collect();
    for run in &runs[1..] {
        assert_eq!(*run, runs[0]);
    }
}

#[test]
fn random_seed_points_are_reproducible() {
    let out1 = bin()
        .args([
            "attract",
            "--letters",
            "z,a,b",
            "--depth",
            "2",
            "--seed-points",
            "3",
            "--seed",
            "7",
        ])
        .output()
        .unwrap();
    assert!(out1.status.success());
    let out2 = bin()
        .args([
            "attract",
            "--letters",
            "z,a,b",
            "--depth",
            "2",
            "--seed-points",
            "3",
            "--seed",
            "7",
        ])
        .output()
        .unwrap();
    assert_eq!(out1.stdout, out2.stdout);
    let out3 = bin()
        .args([
            "attract",
            "--letters",
            "z,a,b",
            "--depth",
            "2",
            "--seed-points",
            "3",
            "--seed",
            "8",
        ])
        .output()
        .unwrap();
    assert_ne!(out1.stdout, out3.stdout);
}

#[test]
fn converge_reports_the_dichotomy() {
    let dir = tempfile::tempdir().unwrap();
    let mut sequence = Vec::new();
    for n in 1..=9usize {
        let (second, block) = if n % 2 == 0 { ("a", "b") } else { ("b", "a") };
        let mut prefix = vec!["c".to_string(), second.to_string()];
        prefix.extend(std::iter::repeat(block.to_string()).take(n));
        sequence.push(serde_json::json!({"prefix": prefix, "tail": ["z"]}));
    }
    let job = serde_json::json!({
        "limit": {"prefix": ["c", "a"], "tail": ["b"]},
        "sequence": sequence,
        "p": "2",
        "m_max": 8,
    });
    let input = write(dir.path(), "job.json", &job.to_string());
    let out = bin()
        .args(["converge", "--input"])
        .arg(&input)
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["case"]["kind"], "case_ii");
    assert_eq!(v["case"]["n0"], 2);
    assert_eq!(v["lp_converges"]["consistent"], true);
    assert_eq!(v["na_converges"]["consistent"], false);
    assert_eq!(v["window_checks"].as_array().unwrap().len(), 5);
    // m_max above the configured cap is refused.
    let out = bin()
        .args(["converge", "--m-max", "4", "--input"])
        .arg(&input)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_code(&out), "cap_exceeded");
    // Unknown job keys are rejected.
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"limit":{"tail":["a"]},"sequence":[],"p":"2","m_max":4,"extra":1}"#,
    );
    let out = bin().args(["converge", "--input"]).arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_code(&out), "malformed_json");
}

#[test]
fn project_and_classify_match_the_embedding() {
    let dir = tempfile::tempdir().unwrap();
    let word = write(dir.path(), "w.json", r#"{"prefix":["c","a"],"tail":["b"]}"#);
    let out = bin().args(["project", "--word"]).arg(&word).output().unwrap();
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "{\"coords\":{\"a\":\"1/4\",\"b\":\"1/4\",\"c\":\"1/2\"}}\n"
    );
    let out = bin().args(["embed", "--word"]).arg(&word).output().unwrap();
    assert_eq!(
        stdout(&out),
        "{\"coords\":{\"a\":\"1/4\",\"b\":\"1/4\",\"c\":\"1/2\"}}\n"
    );
    let out = bin().args(["classify", "--word"]).arg(&word).output().unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["kind"], "case_ii");
    assert_eq!(v["a"], "a");
    assert_eq!(v["b"], "b");
}

#[test]
fn csv_format_renders_points_as_rows() {
    let dir = tempfile::tempdir().unwrap();
    let word = write(dir.path(), "w.json", r#"{"prefix":[],"tail":["a","b"]}"#);
    let out = bin()
        .args(["embed", "--format", "csv", "--word"])
        .arg(&word)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(stdout(&out), "a,b,c\n2/3,1/3,0\n");
}

#[test]
fn domain_errors_exit_one_with_coded_json() {
    let dir = tempfile::tempdir().unwrap();
    let word = write(dir.path(), "w.json", r#"{"prefix":[],"tail":["q"]}"#);
    let out = bin().args(["embed", "--word"]).arg(&word).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_code(&out), "unknown_letter");
    assert!(stdout(&out).is_empty());

    let garbled = write(dir.path(), "g.json", "not json");
    let out = bin().args(["embed", "--word"]).arg(&garbled).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_code(&out), "malformed_json");

    let missing = dir.path().join("absent.json");
    let out = bin().args(["embed", "--word"]).arg(&missing).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_code(&out), "io");

    let off = write(dir.path(), "off.json", r#"{"coords":{"a":"3/4","b":"3/4"}}"#);
    let out = bin().args(["decode", "--point"]).arg(&off).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_code(&out), "not_on_attractor");
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let p1 = write(dir.path(), "p.json", r#"{"coords":{}}"#);
    let out = bin().args(["dist", "--point"]).arg(&p1).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().args(["frobnicate"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin()
        .args(["attract", "--letters", "z,a", "--depth", "1", "--max-points", "0"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn caps_apply_with_flag_over_env_precedence() {
    let out = bin()
        .args(["attract", "--letters", "z,a,b", "--depth", "3"])
        .env("LIPSCOMB_MAX_POINTS", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_code(&out), "point_cap_exceeded");
    let out = bin()
        .args(["attract", "--letters", "z,a,b", "--depth", "3", "--max-points", "100"])
        .env("LIPSCOMB_MAX_POINTS", "10")
        .output()
        .unwrap();
    assert!(out.status.success());

    let dir = tempfile::tempdir().unwrap();
    let point = write(dir.path(), "p.json", r#"{"coords":{"a":"2/3"}}"#);
    let out = bin()
        .args(["decode", "--point"])
        .arg(&point)
        .env("LIPSCOMB_MAX_DEPTH", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_code(&out), "depth_exceeded");
    let out = bin()
        .args(["decode", "--max-depth", "8", "--point"])
        .arg(&point)
        .env("LIPSCOMB_MAX_DEPTH", "1")
        .output()
        .unwrap();
    assert!(out.status.success());

    let out = bin()
        .args(["attract", "--letters", "z,a", "--depth", "1"])
        .env("LIPSCOMB_MAX_POINTS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_code(&out), "invalid_cap");
}

#[test]
fn custom_alphabet_file_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    let alphabet = write(
        dir.path(),
        "al.json",
        r#"{"letters":["o","x","y"],"z":"o"}"#,
    );
    let word = write(dir.path(), "w.json", r#"{"prefix":[],"tail":["x","y"]}"#);
    let out = bin()
        .args(["embed", "--alphabet"])
        .arg(&alphabet)
        .args(["--word"])
        .arg(&word)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(stdout(&out), "{\"coords\":{\"x\":\"2/3\",\"y\":\"1/3\"}}\n");
    // The built-in alphabet does not know these letters.
    let out = bin().args(["embed", "--word"]).arg(&word).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_code(&out), "unknown_letter");
}
