use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn qlid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qlid")).args(args).env_remove("QLID_CACHE_DIR").output().expect("qlid runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("bad json ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn entry(v: &Value, n: usize) -> &str {
    v["entries"][n][0].as_str().unwrap()
}

#[test]
fn bernoulli_numbers_symbolic() {
    let out = qlid(&["table", "--kind", "bernoulli-num", "--n", "4", "--q", "symbolic"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["upTo"], 4);
    assert_eq!(entry(&v, 0), "(1)/(1)");
    assert_eq!(entry(&v, 1), "(-1)/(2)");
    assert_eq!(entry(&v, 3), "0");
}

#[test]
fn euler_cap_numbers() {
    let v = json(&qlid(&["table", "--kind", "euler-cap", "--n", "2"]));
    assert_eq!(entry(&v, 2), "0");
}

#[test]
fn tangent_number_at_half() {
    let out = qlid(&["table", "--kind", "tangent", "--n", "0", "--q", "1/2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(entry(&json(&out), 0), "1");
}

#[test]
fn numeric_csv_table() {
    let out = qlid(&["table", "--kind", "bernoulli-poly", "--n", "1", "--q", "1/2", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    // B̃_0 = 1, B̃_1 = z − 1/2
    assert_eq!(text, "n,power,value\n0,0,1\n1,0,-0.5\n1,1,1\n");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&qlid(&["table", "--kind", "nope", "--n", "2"])), 2);
    assert_eq!(code(&qlid(&["table", "--kind", "secant", "--n", "2", "--format", "csv"])), 2);
    assert_eq!(code(&qlid(&["verify", "--tags", "no-such-tag"])), 2);
    assert_eq!(code(&qlid(&["roots", "--q", "2"])), 2);
    assert_eq!(code(&qlid(&["roots", "--q", "0"])), 2);
    assert_eq!(code(&qlid(&["roots", "--q", "1/2", "--tol", "-1"])), 2);
    assert_eq!(code(&qlid(&["expand", "--function", "expq:1/2", "--kind", "bernoulli", "--q", "symbolic"])), 2);
    assert_eq!(code(&qlid(&["expand", "--function", "bogus:1", "--kind", "euler", "--q", "1/2"])), 2);
}

#[test]
fn verify_everything() {
    let out = qlid(&["verify", "--tags", "all", "--n", "8"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["passed"], true);
    let tags: Vec<&str> = v["reports"].as_array().unwrap().iter().map(|r| r["tag"].as_str().unwrap()).collect();
    assert_eq!(tags.len(), 19);
    assert_eq!(tags[0], "pochhammer-sum");
}

#[test]
fn verify_selected_tags_in_canonical_order() {
    let out = qlid(&["verify", "--tags", "midpoint-zeros,convolution", "--n", "10"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let tags: Vec<&str> = v["reports"].as_array().unwrap().iter().map(|r| r["tag"].as_str().unwrap()).collect();
    assert_eq!(tags, ["midpoint-zeros", "convolution"]);
    let out = qlid(&["verify", "--tags", "convolution", "--n", "0"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn roots_are_certified_and_deterministic() {
    let a = qlid(&["roots", "--q", "1/2", "--tol", "1e-10"]);
    let b = qlid(&["roots", "--q", "1/2", "--tol", "1e-10"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    let roots = v["roots"].as_array().unwrap();
    assert_eq!(roots.len(), 2);
    for (r, name, expect) in [(&roots[0], "Sq", 3.083341518315228), (&roots[1], "Cq", 1.559081173481806)] {
        assert_eq!(r["function"], name);
        let x: f64 = r["value"].as_str().unwrap().parse().unwrap();
        assert!((x - expect).abs() < 1e-9, "{name}: {x}");
        assert!(r["radius"].as_f64().unwrap() <= 1e-10);
        assert_eq!(r["simple"], true);
    }
}

#[test]
fn further_zeros_increase() {
    let v = json(&qlid(&["roots", "--q", "1/2", "--count", "2"]));
    let xs: Vec<f64> = v["roots"].as_array().unwrap().iter().map(|r| r["value"].as_str().unwrap().parse().unwrap()).collect();
    assert_eq!(xs.len(), 4);
    assert!(xs[0] < xs[1] && xs[2] < xs[3]);
}

#[test]
fn unreachable_tolerance_is_a_search_failure() {
    assert_eq!(code(&qlid(&["roots", "--q", "1/2", "--tol", "1e-300"])), 3);
}

#[test]
fn symbolic_pochhammer_expansion_is_exact() {
    let out = qlid(&["expand", "--function", "pochhammer:4", "--kind", "bernoulli", "--q", "symbolic"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["exact_match"], true);
    let out = qlid(&["expand", "--function", "pochhammer:5", "--kind", "euler", "--q", "symbolic", "--n", "1"]);
    assert_eq!(json(&out)["exact_match"], true);
}

#[test]
fn sharpness_example_warns() {
    let out = qlid(&["expand", "--function", "sq:S1", "--kind", "bernoulli", "--q", "1/2", "--n", "10"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert!(v["warning"].as_str().unwrap().contains("boundary type"));
    assert!(v["max_abs_coefficient"].as_f64().unwrap() < 1e-10);
    assert!(v["max_abs_function"].as_f64().unwrap() > 0.1);
    assert_eq!(v["N"], 10);
}

#[test]
fn numeric_expansion_report_shape() {
    let out = qlid(&["expand", "--function", "expq:0.9S1", "--kind", "bernoulli", "--q", "1/2", "--n", "15", "--grid", "21"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["grid"].as_array().unwrap().len(), 21);
    assert_eq!(v["max_residual_by_n"].as_array().unwrap().len(), 16);
    assert_eq!(v["admissibility"], "admissible");
    assert!(v["warning"].is_null());
}

#[test]
fn csv_expansion_needs_numeric_q() {
    assert_eq!(code(&qlid(&["expand", "--function", "pochhammer:2", "--kind", "euler", "--format", "csv"])), 2);
    let out = qlid(&["expand", "--function", "pochhammer:2", "--kind", "euler", "--q", "1/3", "--grid", "3", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 4);
    assert!(text.starts_with("z,partial_sum,reference\n0,"));
}

#[test]
fn coefficient_file_expansion() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.json");
    std::fs::write(&path, r#"["1", "-2", "0", "(1)/(3)", "u^2"]"#).unwrap();
    let spec = format!("file:{}", path.display());
    let out = qlid(&["expand", "--function", &spec, "--kind", "euler", "--q", "symbolic"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["exact_match"], true);
    let missing = format!("file:{}", dir.path().join("none.json").display());
    assert_eq!(code(&qlid(&["expand", "--function", &missing, "--kind", "euler"])), 2);
}

fn cached_table(dir: &Path, via_env: bool) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qlid"));
    cmd.args(["table", "--kind", "euler-poly", "--n", "5", "--method", "recurrence"]);
    if via_env {
        cmd.env("QLID_CACHE_DIR", dir);
    } else {
        cmd.env_remove("QLID_CACHE_DIR").arg("--cache-dir").arg(dir);
    }
    cmd.output().unwrap()
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let plain = qlid(&["table", "--kind", "euler-poly", "--n", "5", "--method", "recurrence"]);
    let first = cached_table(dir.path(), false);
    let file = dir.path().join("euler-poly-recurrence.json");
    assert!(file.exists());
    let second = cached_table(dir.path(), true);
    assert_eq!(plain.stdout, first.stdout);
    assert_eq!(first.stdout, second.stdout);

    // a damaged cache is ignored, never trusted
    std::fs::write(&file, "{not json").unwrap();
    let third = cached_table(dir.path(), false);
    assert_eq!(code(&third), 0);
    assert_eq!(third.stdout, plain.stdout);
    assert!(String::from_utf8_lossy(&third.stderr).contains("ignoring"));
}
