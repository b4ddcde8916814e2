use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_blochjac"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn ok(args: &[&str], stdin: &str) -> Value {
    let out = run(args, stdin);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn example(args: &[&str]) -> String {
    let mut full = vec!["example"];
    full.extend_from_slice(args);
    let out = run(&full, "");
    assert_eq!(out.status.code(), Some(0));
    String::from_utf8(out.stdout).unwrap()
}

fn spectrum(doc: &Value) -> Vec<(f64, f64)> {
    doc["payload"]["spectrum"]
        .as_array()
        .unwrap()
        .iter()
        .map(|iv| (iv[0].as_f64().unwrap(), iv[1].as_f64().unwrap()))
        .collect()
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() < 1e-7
}

#[test]
fn free_scalar_operator_has_one_band() {
    let doc = ok(&["bands"], &example(&["free", "--p", "2", "--m", "1"]));
    let spec = spectrum(&doc);
    assert_eq!(spec.len(), 1);
    assert!(close(spec[0].0, -2.0) && close(spec[0].1, 2.0), "{spec:?}");
    assert_eq!(doc["schema"], "blochjac/1");
    assert_eq!(doc["command"]["name"], "bands");
    assert!(doc["input_digest"].as_str().unwrap().starts_with("sha256:"));
}

#[test]
fn example_document_round_trips_through_a_file() {
    let text = example(&["example3", "--t", "1/3"]);
    let parsed: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(parsed["b"][1][0][1], "1/3");
    let path = std::env::temp_dir().join(format!("blochjac-ex3-{}.json", std::process::id()));
    std::fs::write(&path, &text).unwrap();
    let from_file = ok(&["bands", path.to_str().unwrap()], "");
    let from_stdin = ok(&["bands"], &text);
    std::fs::remove_file(&path).ok();
    assert_eq!(from_file, from_stdin);
}

#[test]
fn example4_at_zero_is_two_decoupled_bands() {
    // a_n = I, b_n = diag(0, 1): spectra [-2, 2] and [-1, 3] overlap.
    let doc = ok(&["bands"], &example(&["example4", "--t", "0"]));
    let spec = spectrum(&doc);
    assert_eq!(spec.len(), 1);
    assert!(close(spec[0].0, -2.0) && close(spec[0].1, 3.0), "{spec:?}");
    let segs = doc["payload"]["segments"].as_array().unwrap();
    let doubled: Vec<_> = segs.iter().filter(|s| s["multiplicity"] == 2).collect();
    assert_eq!(doubled.len(), 1);
    assert!(close(doubled[0]["lo"].as_f64().unwrap(), -1.0) && close(doubled[0]["hi"].as_f64().unwrap(), 2.0));
}

#[test]
fn example3_resonances_move_to_the_real_axis() {
    let small = ok(&["resonances"], &example(&["example3", "--t", "0.5"]));
    assert_eq!(small["payload"]["real_count"], 0);
    assert!(small["payload"]["complex_count"].as_u64().unwrap() > 0);
    assert_eq!(small["payload"]["degenerate"], false);

    let large = ok(&["resonances"], &example(&["example3", "--t", "2"]));
    assert!(large["payload"]["real_count"].as_u64().unwrap() > 0);
    assert_eq!(large["payload"]["complex_count"], 0);
}

#[test]
fn lyapunov_branches_of_the_free_operator() {
    // p = 2, m = 1: Delta(z) = z^2/2 - 1.
    let doc = ok(&["lyapunov", "--z", "1,0", "--z-grid", "-2:2:3"], &example(&["free", "--p", "2", "--m", "1"]));
    let points = doc["payload"]["points"].as_array().unwrap();
    assert_eq!(points.len(), 4);
    for p in points {
        let z = p["z"]["re"].as_f64().unwrap();
        let d = &p["branches"][0];
        assert!(close(d["delta"]["re"].as_f64().unwrap(), z * z / 2.0 - 1.0));
        assert_eq!(d["in_band"], true);
        assert_eq!(d["on_unit_circle"], true);
    }
}

#[test]
fn determinant_is_exact() {
    let doc = ok(&["determinant"], &example(&["free", "--p", "2", "--m", "1"]));
    assert_eq!(doc["payload"]["c"], "-1");
    assert_eq!(doc["payload"]["periodic_q"], serde_json::json!(["-4", "0", "1"]));
}

#[test]
fn verify_passes_on_the_free_operator() {
    let doc = ok(&["verify"], &example(&["free", "--p", "3", "--m", "2"]));
    assert_eq!(doc["payload"]["passed"], true);
    assert!(!doc["payload"]["checks"].as_array().unwrap().is_empty());
}

#[test]
fn spectral_data_then_recover_reproduces_the_determinant() {
    let op = example(&["random", "--p", "3", "--m", "2", "--seed", "4"]);
    let direct = ok(&["determinant"], &op);
    let data = run(&["spectral-data", "--rule", "random", "--seed", "9"], &op);
    assert_eq!(data.status.code(), Some(0));
    let rec = ok(&["recover", "--snap"], std::str::from_utf8(&data.stdout).unwrap());
    assert_eq!(rec["payload"]["exact"]["xi"], direct["payload"]["xi"]);
    assert_eq!(rec["payload"]["exact"]["c"], direct["payload"]["c"]);
}

#[test]
fn asymmetric_b_is_rejected() {
    let mut doc: Value = serde_json::from_str(&example(&["example3", "--t", "1"])).unwrap();
    doc["b"][0][0][1] = Value::String("5".into());
    let out = run(&["bands"], &doc.to_string());
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(err["error"]["code"], 2);
    assert!(!err["error"]["details"]["violations"].as_array().unwrap().is_empty());
    assert!(!out.stderr.is_empty());
}

#[test]
fn malformed_input_is_rejected() {
    for bad in ["not json", r#"{"schema":"blochjac/1","p":1,"m":1,"a":[[["x"]]],"b":[[["0"]]]}"#, r#"{"schema":"other","p":1,"m":1,"a":[[["1"]]],"b":[[["0"]]]}"#] {
        assert_eq!(run(&["bands"], bad).status.code(), Some(2), "{bad}");
    }
    assert_eq!(run(&["bands", "/nonexistent/op.json"], "").status.code(), Some(2));
    assert_eq!(run(&["lyapunov"], &example(&["free"])).status.code(), Some(2));
}

#[test]
fn inconsistent_spectral_data_exits_4() {
    let op = example(&["random", "--p", "2", "--m", "2", "--seed", "1"]);
    let out = run(&["spectral-data"], &op);
    let mut data: Value = serde_json::from_slice(&out.stdout).unwrap();
    for v in data["payload"]["lambda_sets"][1].as_array_mut().unwrap() {
        v["re"] = Value::from(v["re"].as_f64().unwrap() + 40.0);
    }
    let out = run(&["recover"], &data.to_string());
    assert_eq!(out.status.code(), Some(4), "{}", String::from_utf8_lossy(&out.stdout));
    let err: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(err["error"]["details"]["max_root_residual"].is_number());
}

#[test]
fn output_is_deterministic() {
    let op = example(&["example4", "--t", "0.5"]);
    for cmd in ["bands", "resonances", "determinant", "verify"] {
        let a = run(&[cmd], &op);
        let b = run(&[cmd], &op);
        assert_eq!(a.stdout, b.stdout, "{cmd}");
    }
}
