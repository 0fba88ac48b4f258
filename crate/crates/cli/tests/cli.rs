use std::process::{Command, Output};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use raminsep::parse::{parse_poly, parse_series};
use raminsep_core::localpoly::KPoly;
use raminsep_core::{FieldCtx, Series, EXACT};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_raminsep")).args(args).output().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn indices_of_quadratic() {
    let out = run(&["indices", "--p", "2", "--m", "1", "--minpoly", "X^2 + t*X + t"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out), serde_json::json!({ "indices": [1, 0], "break": 1 }));
}

#[test]
fn recover_matches_on_f9_instance() {
    let built = run(&["build", "--p", "3", "--m", "2", "--as", "t^-1, a*t^-1", "--emit", "minpoly"]);
    assert_eq!(built.status.code(), Some(0));
    let g = json(&built)["minpoly"].as_str().unwrap().to_string();
    let out = run(&["recover", "--p", "3", "--m", "2", "--minpoly", &g]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["match"], true);
    assert_eq!(v["indices_recovered"], serde_json::json!([8, 8, 0]));
}

#[test]
fn normgroup_methods_agree() {
    let out = run(&["normgroup", "--p", "2", "--m", "2", "--minpoly", "X^2 + t*X + t", "--method", "both"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["equal"], true);
}

#[test]
fn pair_shift_does_not_change_indices() {
    let a = run(&["build", "--p", "2", "--m", "2", "--as", "t^-3 + t^-1,a*t^-3", "--emit", "expansion"]);
    let b = run(&["build", "--p", "2", "--m", "2", "--as", "t^-3 + t^-1,a*t^-3", "--pair-shift", "1"]);
    assert_eq!(json(&a)["indices"], json(&b)["indices"]);
}

#[test]
fn exit_codes() {
    let out = run(&["indices", "--minpoly", "X^2 + t*X + t^"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("offset 14"));
    assert_eq!(run(&["indices", "--minpoly", "X^2 + y"]).status.code(), Some(2));
    assert_eq!(run(&["indices"]).status.code(), Some(2));

    let out = run(&["indices", "--minpoly", "X^2 + X + t"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["error"], "NotEisenstein");
    let out = run(&["build", "--p", "2", "--m", "2", "--as", "t^-1,t^-3"]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["indices", "--p", "4", "--minpoly", "X^2 + t"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn bad_precision_variable_is_a_usage_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_raminsep"))
        .args(["indices", "--minpoly", "X^2 + t*X + t"])
        .env("RAMINSEP_PRECISION", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn printed_series_and_polynomials_parse_back() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (p, m) in [(2, 1), (2, 3), (3, 2), (5, 1)] {
        let k = Arc::new(FieldCtx::new(p, m).unwrap());
        for _ in 0..50 {
            let lo = rng.gen_range(-6..3);
            let terms: Vec<_> = (lo..lo + 6).map(|e| (e, k.from_index(rng.gen_range(0..k.q())))).collect();
            let prec = if rng.gen_bool(0.5) { EXACT } else { lo + rng.gen_range(0..8) };
            let s = Series::from_terms(&k, 't', &terms, prec);
            assert_eq!(parse_series(&k, &s.format()).unwrap(), s, "{}", s.format());

            let coeffs: Vec<Series> = (0..3).map(|_| s.shift(rng.gen_range(0..3))).chain([Series::one(&k, 't', EXACT)]).collect();
            let g = KPoly::new(&k, 't', coeffs);
            let back = parse_poly(&k, &g.format()).unwrap();
            assert_eq!(back.coeffs(), g.coeffs(), "{}", g.format());
        }
    }
}
