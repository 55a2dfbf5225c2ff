//! The JSON documents returned to the browser page.

use linnet_web::{compare, prove, translate};
use serde_json::{json, Value};

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn translate_returns_the_formula() {
    let v = parse(translate("np\\s", 1, 2));
    assert_eq!(v, json!({"status": "success", "exit_code": 0, "formula": "forall x0. (np(x0,1) -o s(x0,2))"}));
    assert_eq!(parse(translate("np\\", 0, 1))["exit_code"], 3);
}

#[test]
fn prove_returns_readings_with_traces() {
    let v = parse(prove("np(0,1), forall x.(np(x,1) -o s(x,2)) |- s(0,2)", 0, 0));
    assert_eq!(v["status"], "derivable");
    let r = &v["readings"][0];
    assert_eq!(r["substitution"], json!([["?0", "0"]]));
    assert_eq!(r["steps"].as_array().unwrap().len(), 5);
    assert_eq!(r["deep"], "h2(h1)");
    assert!(v["rejected"].is_null());
}

#[test]
fn prove_returns_the_rejected_structure() {
    let v = parse(prove("(forall x. a(x)) -o b |- exists y. (a(y) -o b)", 0, 0));
    assert_eq!(v["status"], "underivable");
    assert_eq!(v["exit_code"], 1);
    let irreducible = v["rejected"]["irreducible"].as_array().unwrap();
    assert_eq!(irreducible[0], "FINAL vertices=3 links=2");
    assert!(irreducible.iter().any(|l| l == "BLOCKED u v0 v2 x=!0: !0 also occurs at v4"));
    assert_eq!(parse(prove("a, a -o b |- b", 0, 1))["status"], "budget");
    assert_eq!(parse(prove("a |-", 0, 0))["exit_code"], 3);
}

#[test]
fn compare_returns_the_matrix() {
    let v = parse(compare("8: forall x0 x2. (forall x1. (np(x1,2) -o s(x1,x2))) -o (np(x0,1) -o s(x0,x2))\n\
                           9: forall x0 x1 x2. (np(x1,x1) -o s(2,x2)) -o (np(x0,1) -o s(x0,x2))\n"));
    assert_eq!(v["names"], json!(["8", "9"]));
    assert_eq!(v["matrix"], json!([[true, false], [true, true]]));
    assert_eq!(parse(compare(""))["exit_code"], 3);
}
