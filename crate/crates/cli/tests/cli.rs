use std::process::{Command, Output};

use serde_json::Value;

fn isodist(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isodist")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = isodist(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn decompose_minus_36() {
    let v = json(&["quad", "decompose", "--delta", "-36"]);
    assert_eq!(v["v"], 3);
    assert_eq!(v["D_K"], -4);
    assert_eq!(v["per_f"].as_array().unwrap().len(), 2);
    assert_eq!(v["per_f"][1]["h"], 2);
}

#[test]
fn class_number_json() {
    let v = json(&["quad", "class-number", "-D", "-47"]);
    assert_eq!(v["h"], 5);
    assert_eq!(v["h_star"], "5/2");
}

#[test]
fn dist_from_a_class() {
    let v = json(&["dist", "--p", "13", "--t", "4", "--ell", "3"]);
    assert_eq!(v["levels"]["law"]["0"], "1/5");
    assert_eq!(v["levels"]["law"]["1"], "4/5");
    assert_eq!(v["total_mass"], "5/4");
    assert_eq!(v["census"][0]["j_frequency"], "1/3");
}

#[test]
fn dist_from_delta() {
    let v = json(&["dist", "--delta", "-64", "--ell", "2"]);
    let exact: Vec<&str> = v["per_f"].as_array().unwrap().iter().map(|r| r["exact"].as_str().unwrap()).collect();
    assert_eq!(exact, ["1/7", "2/7", "4/7"]);
}

#[test]
fn scan_csv() {
    let out = isodist(&["cheb", "scan", "-D", "-4", "--xmax", "1000", "--output", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,primes_tested,qualifying,empirical,reference,li_over_2h"));
    let last: Vec<&str> = lines.last().unwrap().split(',').collect();
    assert_eq!(&last[..3], ["1000", "167", "80"]);
    let empirical: f64 = last[3].parse().unwrap();
    assert!((empirical - 0.5).abs() < 0.03);
}

#[test]
fn census_class() {
    let v = json(&["census", "--p", "17", "--t", "2"]);
    assert_eq!(v["delta"], -64);
    let counts: Vec<u64> = v["per_f"].as_array().unwrap().iter().map(|r| r["j_count"].as_u64().unwrap()).collect();
    assert_eq!(counts, [1, 1, 2]);
    assert_eq!(v["deuring_holds"], true);
}

#[test]
fn volcano_json_and_dot_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("v.dot");
    let v = json(&["volcano", "--p", "17", "--t", "2", "--ell", "2", "--dot", path.to_str().unwrap()]);
    assert_eq!(v["depth"], 2);
    assert_eq!(v["components"][0]["structure"]["level_sizes"], serde_json::json!([1, 1, 2]));
    let dot = std::fs::read_to_string(&path).unwrap();
    assert!(dot.contains("j=11/f=1"));
    assert!(dot.contains("type=ascending"));
}

#[test]
fn hilbert_commands() {
    let v = json(&["hilbert", "show", "-D", "-23"]);
    assert_eq!(v["coefficients"], serde_json::json!(["12771880859375", "-5151296875", "3491750", "1"]));
    let v = json(&["hilbert", "split", "-D", "-23", "--p", "59"]);
    assert_eq!(v["distinct_roots"], 3);
    assert_eq!(v["splits_completely"], true);
    let out = isodist(&["hilbert", "show", "-D", "-39"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("error[E_HILBERT_TABLE]:"));
}

#[test]
fn cheb_test_agreement_and_disagreement() {
    let v = json(&["cheb", "test", "-D", "-7", "--p", "11"]);
    assert_eq!(v["representation"], serde_json::json!([4, 2]));
    assert_eq!(v["by_census"], true);
    // inert prime: H_{-4} has the supersingular root 1728
    let out = isodist(&["cheb", "test", "-D", "-4", "--p", "7"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).lines().any(|l| l.starts_with("error[E_CM_CHANNELS]:")));
}

#[test]
fn verify_suites_small() {
    let v = json(&["verify", "deuring", "--pmax", "50"]);
    assert!(v["failures"].as_array().unwrap().is_empty());
    let v = json(&["verify", "volcano", "--pmax", "50", "--ell", "2", "--ell", "3", "--ell", "5"]);
    assert!(v["checked"].as_u64().unwrap() > 0);
    let v = json(&["verify", "cm-equivalence", "--pmax", "300", "--census-max", "50", "--split-only"]);
    assert!(v["failures"].as_array().unwrap().is_empty());
    let out = isodist(&["verify", "cm-equivalence", "--pmax", "100", "--census-max", "20"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["quad", "class-number", "-D", "-35", "--bogus"],
        vec!["quad", "class-number", "-D", "-34"],
        vec!["census", "--p", "15"],
        vec!["census", "--p", "7919"],
        vec!["volcano", "--p", "17", "--t", "2", "--ell", "11"],
        vec!["quad", "decompose", "--delta", "-36", "--output", "dot"],
        vec!["nonsense"],
    ] {
        let out = isodist(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let first = stderr(&out).lines().next().unwrap_or_default().to_string();
        assert!(first.starts_with("error[E_"), "{args:?}: {first}");
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["census", "--p", "101", "--threads", "3"];
    let a = isodist(&args);
    let b = isodist(&["census", "--p", "101", "--threads", "1"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = isodist(&["quad", "class-number", "-D", "-23", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(v["h"], 3);
}
