use std::process::{Command, Output};

use serde_json::{json, Value};

fn hydra(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hydra")).args(args).env_remove("HYDRA_CAP").output().unwrap()
}

fn json_of(args: &[&str]) -> Value {
    let out = hydra(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn ack_sign_example() {
    assert_eq!(json_of(&["ack", "sign", "A3^-1 A0^-1 A3 A0"]), json!({ "valid": true, "sign": "zero" }));
    assert_eq!(json_of(&["ack", "sign", "A1 A1^-1 A0"]), json!({ "valid": false }));
}

#[test]
fn ack_and_psi_eval() {
    assert_eq!(json_of(&["ack", "eval", "A2^-1 A1 A1 A0"]), json!({ "valid": true, "value": "2" }));
    assert_eq!(json_of(&["psi", "eval", "p3 p1"]), json!({ "valid": true, "value": "-4" }));
    assert_eq!(json_of(&["ack", "eval", "A3 A0^5"]), json!({ "overflow": true }));
}

#[test]
fn member_example() {
    let v = json_of(&["member", "--k", "3", "a3^4 a2 t a1 a2^-1 a3^-4"]);
    assert_eq!(v["member"], json!(true));
    assert_eq!(v["coset_sign"], json!("zero"));
    let v = json_of(&["member", "--k", "2", "t^-3 a2^-1 a1"]);
    assert_eq!(v["member"], json!(false));
    assert_eq!(v["coset_sign"], json!("neg"));
    let v = json_of(&["member", "--k", "2", "a2 t a2^-1"]);
    assert_eq!(v, json!({ "member": false, "coset_psi_word": null, "coset_sign": null }));
}

#[test]
fn hydra_commands() {
    assert_eq!(json_of(&["hydra", "count", "a2 a3 a1"]), json!({ "steps": 5 }));
    assert_eq!(
        json_of(&["hydra", "witness", "--k", "2", "--n", "3"])["word"],
        json!("a2 t a2 t a1 t a2 t a1 t a1 t a1 t")
    );
    let b = json_of(&["hydra", "battle", "a2 a3 a1"]);
    assert_eq!(b["hydras"][1], json!("a3 a2 a1"));
    assert_eq!(b["steps"], json!(5));
}

#[test]
fn hydra_cap_from_env() {
    let out = Command::new(env!("CARGO_BIN_EXE_hydra"))
        .args(["hydra", "count", "a2^3"])
        .env("HYDRA_CAP", "3")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v, json!({ "steps": null, "capped": true }));
}

#[test]
fn group_commands() {
    assert_eq!(json_of(&["nf", "a2 t a2^-1 t^-1"]), json!({ "t_exp": 0, "body": "a2 a1 a2^-1" }));
    assert_eq!(
        json_of(&["pieces", "--rank", "5", "a5 a3 a5^-1 a2 a5 a1 a5^-1 a1 a5^-1"]),
        json!({ "pieces": ["a5 a3 a5^-1", "a2", "a5 a1 a5^-1", "a1 a5^-1"] })
    );
    assert_eq!(json_of(&["wp", "--k", "2", "p a1 t p^-1 t^-1 a1^-1"]), json!({ "trivial": true }));
    assert_eq!(json_of(&["wp", "--k", "2", "p a1 p^-1 a1^-1"]), json!({ "trivial": false }));
    assert_eq!(json_of(&["gk-wp", "--k", "2", "a2 t a2^-1 t^-1"]), json!({ "trivial": false }));
}

#[test]
fn usage_and_parse_errors_exit_2() {
    for args in [
        &["ack", "sign", "A2^^"][..],
        &["psi", "sign", "p0"],
        &["member", "--k", "1", "a2"],
        &["member", "a1"],
        &["frobnicate"],
    ] {
        assert_eq!(hydra(args).status.code(), Some(2), "{args:?}");
    }
    let out = hydra(&["ack", "sign", "A2^^"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("offset 2"));
}

#[test]
fn fixtures_agree_with_oracle() {
    let cases: &[&[&str]] = &[
        &["ack", "sign", "A2^-1 A1 A1 A0"],
        &["ack", "sign", "A0 A2^-1 A1 A0^2 A2 A0"],
        &["ack", "sign", "A0^-6 A1 A0^-1 A5 A0^-4 A2 A1 A2 A0"],
        &["ack", "sign", "A3^-1 A0^-1 A3 A0"],
        &["ack", "sign", "A2 A0^-1"],
        &["ack", "sign", "A1 A1^-1 A0"],
        &["psi", "sign", "p3^-1 p2^-1 p1^2 p2^2 p3 p2 p3 p2 p3 p1 p1^-1"],
        &["psi", "sign", "p1 p2^-1 p1^3"],
        &["member", "--k", "3", "a3^4 a2 t a1 a2^-1 a3^-4"],
        &["member", "--k", "2", "t^-3 a2^-1 a1"],
        &["member", "--k", "3", "t^-2 a3 a1"],
        &["hydra", "count", "a2 a3 a1"],
        &["hydra", "count", "a2^3"],
    ];
    for args in cases {
        let mut a = args.to_vec();
        a.push("--oracle");
        let out = hydra(&a);
        assert_eq!(out.status.code(), Some(0), "{a:?}: {}", String::from_utf8_lossy(&out.stdout));
    }
    let v = json_of(&["member", "--k", "3", "t^-2 a3 a1", "--oracle"]);
    assert_eq!(v["oracle"], json!({ "coset": "-11" }));
}

#[test]
fn trace_goes_to_stderr() {
    let out = hydra(&["ack", "sign", "--trace", "A0 A2^-1 A1 A0^2 A2 A0"]);
    assert!(out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("reduce: A0 A2^-1 A1 A0^2 A2 A0 -> A0^4"), "{err}");
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v, json!({ "valid": true, "sign": "pos" }));
}

#[test]
fn plain_output() {
    let out = hydra(&["--plain", "hydra", "count", "a2^3"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "steps: 7");
}
