use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::Value;
use signaling::cli::run;
use signaling::facets::k_guessing;
use signaling::sampling::{random_channel, seeded};
use signaling::ClassicalChannel;

fn call(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["signaling"];
    full.extend_from_slice(args);
    let (code, out) = run(full);
    (code, serde_json::from_str(&out).unwrap_or(Value::Null))
}

fn temp_file(name: &str, value: &Value) -> String {
    let path = std::env::temp_dir().join(format!("signaling-cli-{}-{name}.json", std::process::id()));
    std::fs::write(&path, value.to_string()).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn vertex_count() {
    let (code, json) = call(&["vertices", "--n", "6", "--n-prime", "4", "--d", "2", "--count-only"]);
    assert_eq!(code, 0);
    assert_eq!(json["count"], 376);
    let (_, json) = call(&["vertices", "--n", "3", "--n-prime", "3", "--d", "2"]);
    assert_eq!(json["vertices"].as_array().unwrap().len(), 21);
}

#[test]
fn replacer_bounds() {
    let (code, json) = call(&["replacer-bounds", "--mu", "1/2", "--d", "4", "--kind", "depolarizing"]);
    assert_eq!(code, 0);
    assert_eq!((json["lower"].clone(), json["upper"].clone()), (Value::from(3), Value::from(3)));
}

#[test]
fn usage_and_validation_errors() {
    let (code, json) = call(&["vertices", "--n", "3"]);
    assert_eq!(code, 1);
    assert_eq!(json["error"]["code"], "Usage");
    let (code, json) = call(&["replacer-bounds", "--mu", "3/2", "--d", "4"]);
    assert_eq!(code, 2);
    assert_eq!(json["error"]["code"], "ParameterOutOfRange");
    let bad = serde_json::json!({"n": 2, "n_prime": 2, "entries": [["1/2", "1/3"], ["1/2", "1/3"]]});
    let (code, json) = call(&["certify", "--channel", &temp_file("bad", &bad)]);
    assert_eq!(code, 2);
    assert_eq!(json["error"]["code"], "NonStochastic");
}

#[test]
fn budget_exhaustion() {
    let (code, json) = call(&["facets", "--n", "6", "--n-prime", "4", "--d", "2", "--max-classes", "1"]);
    assert_eq!(code, 3);
    assert_eq!(json["budget"]["exhausted"], true);
    let (code, json) = call(&["facets", "--n", "4", "--n-prime", "4", "--d", "2", "--threads", "2"]);
    assert_eq!(code, 0);
    assert_eq!(json["counts"]["nontrivial"], 5);
}

#[test]
fn score_and_verify() {
    let ineq = temp_file("kg", &k_guessing(4, 2, 2).unwrap().to_json());
    let (code, json) = call(&["verify-facet", "--inequality", &ineq, "--n", "6", "--n-prime", "4", "--d", "2"]);
    assert_eq!(code, 0);
    assert_eq!(json["is_tight"], true);
    let p = temp_file("uniform", &ClassicalChannel::uniform(6, 4).to_json());
    let (_, json) = call(&["score", "--inequality", &ineq, "--channel", &p]);
    assert_eq!(json["score"], "3");
    assert_eq!(json["violated"], false);
}

#[test]
fn certify_at_fixed_d() {
    let p = temp_file("id", &ClassicalChannel::identity(3).to_json());
    let (_, json) = call(&["certify", "--channel", &p, "--d", "2"]);
    assert_eq!(json["member"], false);
    let p = temp_file("rand", &random_channel(&mut seeded(4), 5, 5, 2).to_json());
    let (code, json) = call(&["certify", "--channel", &p, "--d", "2"]);
    assert_eq!(code, 0);
    assert_eq!(json["method"], "lp");
}

#[test]
fn emitted_channels_round_trip() {
    for kind in ["erasure", "depolarizing", "identity"] {
        let (code, json) = call(&["generate", "--kind", kind, "--mu", "2/7", "--d", "3"]);
        assert_eq!(code, 0);
        let p = ClassicalChannel::from_json(&json).unwrap();
        assert_eq!(p.to_json(), ClassicalChannel::from_json(&p.to_json()).unwrap().to_json());
        let (code, _) = call(&["certify", "--channel", &temp_file(kind, &json)]);
        assert_eq!(code, 0);
    }
}

#[test]
fn generate_pipes_into_certify() {
    let bin = env!("CARGO_BIN_EXE_signaling");
    let generated =
        Command::new(bin).args(["generate", "--kind", "erasure", "--mu", "1/2", "--d", "3"]).output().unwrap();
    assert!(generated.status.success());
    let mut certify = Command::new(bin)
        .args(["certify", "--channel", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    certify.stdin.take().unwrap().write_all(&generated.stdout).unwrap();
    let out = certify.wait_with_output().unwrap();
    assert!(out.status.success());
    let json: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["kappa_lower"], 3);
    assert_eq!(json["kappa_upper"], 3);
    assert_eq!(json["exact"], true);
}
