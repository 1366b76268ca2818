use std::process::{Command, Output};

use serde_json::Value;

fn crossrank(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crossrank"))
        .args(args)
        .env_remove("CROSSRANK_THREADS")
        .output()
        .expect("spawn crossrank")
}

fn json(args: &[&str]) -> Value {
    let out = crossrank(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn exact(v: &Value) -> (i128, i128) {
    let s = v.as_str().unwrap();
    match s.split_once('/') {
        Some((p, q)) => (p.parse().unwrap(), q.parse().unwrap()),
        None => (s.parse().unwrap(), 1),
    }
}

/// p/q ≤ r/s
fn le(a: (i128, i128), b: (i128, i128)) -> bool {
    a.0 * b.1 <= b.0 * a.1
}

#[test]
fn macci_tribonacci_csv() {
    let out = crossrank(&["macci", "--m", "3", "--upto", "8", "--format", "csv"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "0,1,1,2,4,7,13,24");
}

#[test]
fn odometer_single_component() {
    let v = json(&["components", "--system", "odometer", "--level", "3", "--cutoff", "8"]);
    assert_eq!(v["count"], 1);
    assert_eq!(v["census"][0]["length"], 8);
    assert_eq!(v["covered_mass"], "1");
}

#[test]
fn lamplighter_census_level_zero() {
    let v = json(&["components", "--level", "0", "--cutoff", "6", "--list"]);
    // one component per length when m = 1, of measure len/2^(len+1); tail (L+2)/2^(L+1)
    assert_eq!(v["count"], 6);
    assert_eq!(v["tail_mass"], "1/16");
    let comps = v["components"].as_array().unwrap();
    assert_eq!(comps.len(), 6);
    assert_eq!(comps[2]["length"], 3);
    assert_eq!(comps[2]["measure"], "1/16");
}

#[test]
fn rank_of_one_is_covered_mass() {
    let v = json(&["rank", "--expr", "1", "--cutoff", "20"]);
    assert_eq!(v["upper"], "1");
    assert_eq!(v["lower"], v["covered_mass"]);
    assert_eq!(v["lower"], "1048565/1048576");
}

#[test]
fn rank_defaults_to_target_width() {
    let v = json(&["rank", "--expr", "1", "--json"]);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["lower"], v["covered_mass"]);
    assert!(le(exact(&v["width"]), (1, 1_000_000)));
}

#[test]
fn rank_complement_of_kernel() {
    let v = json(&[
        "rank",
        "--expr",
        "(1/2)*(1+a(0))*t + ((1/2)*(1+a(0))*t)'",
        "--width",
        "1e-6",
    ]);
    assert!(le(exact(&v["lower"]), (2, 3)) && le((2, 3), exact(&v["upper"])));
    assert!(le(exact(&v["width"]), (1, 1_000_000)));
}

#[test]
fn rank_of_projection_brackets_half() {
    let v = json(&["rank", "--expr", "e(0)", "--cutoff", "16"]);
    assert!(le(exact(&v["lower"]), (1, 2)) && le((1, 2), exact(&v["upper"])));
}

#[test]
fn s_plus_star_kernel_contains_one_third() {
    let v = json(&[
        "betti",
        "--expr",
        "(1/2)*(1+a(0))*t + (1/2)*t^-1*(1+a(0))",
        "--cutoff",
        "20",
    ]);
    assert!(le(exact(&v["lower"]), (1, 3)) && le((1, 3), exact(&v["upper"])));
    assert!(le(exact(&v["width"]), (1, 10_000)));
}

#[test]
fn budget_exceeded_exits_two_with_best_bracket() {
    let out = crossrank(&[
        "rank",
        "--expr",
        "1+t",
        "--width",
        "1e-9",
        "--max-level",
        "1",
        "--cutoff",
        "12",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["status"], "budget_exceeded");
    assert!(le(exact(&v["lower"]), (1, 1)));
}

#[test]
fn converge_meets_width() {
    let v = json(&["rank", "--expr", "e(0)", "--width", "1e-4", "--cutoff", "24"]);
    assert!(le(exact(&v["width"]), (1, 10_000)));
    assert_eq!(v["status"], "ok");
}

#[test]
fn output_independent_of_threads() {
    let run = |t: &str| {
        let out = crossrank(&[
            "--threads",
            t,
            "rank",
            "--expr",
            "1+e(0)*t",
            "--level",
            "1",
            "--cutoff",
            "12",
            "--format",
            "csv",
        ]);
        assert!(out.status.success());
        out.stdout
    };
    let one = run("1");
    assert_eq!(one, run("3"));
    assert_eq!(one, run("0"));
}

#[test]
fn finite_field_rank() {
    let v = json(&["--field", "GF(7)", "rank", "--expr", "e(0)+e(1)", "--cutoff", "12"]);
    assert_eq!(v["field"], "GF(7)");
    assert!(le(exact(&v["lower"]), (3, 4)) && le((3, 4), exact(&v["upper"])));
}

#[test]
fn quotient_at_fixed_point() {
    let v = json(&["quotient", "--expr", "1+t", "--orbit", "0"]);
    assert_eq!(v["period"], 1);
    assert_eq!(v["matrix"], "[[1 + (1)*s]]");
}

#[test]
fn series_inverse_and_factorization() {
    let v = json(&["series", "invert", "--expr", "1+e(0)*t", "--level", "1", "--order", "3"]);
    assert_eq!(v["inverse"].as_array().unwrap().len(), 4);
    let v = json(&["series", "factor", "--word", "11011011", "--level", "1"]);
    assert_eq!(v["factors"], serde_json::json!(["11011", "11011"]));
    assert_eq!(v["term"]["pure"], false);
}

#[test]
fn relative_inverse_of_special_series() {
    let v = json(&["series", "hadamard", "--expr", "1+2*S(\"11011\")", "--inverse"]);
    let r = v["result"].as_array().unwrap();
    assert_eq!(r.len(), 2);
    assert_eq!(r[1]["degree"], 3);
    assert_eq!(r[1]["coefficient"], "1/2");
}

#[test]
fn bad_input_exits_one() {
    assert_eq!(
        crossrank(&["--field", "bogus", "macci", "--m", "2", "--upto", "3"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(crossrank(&["rank", "--expr", "1+"]).status.code(), Some(1));
}

#[test]
fn verify_reports_failing_criterion() {
    let out = crossrank(&["verify", "--quick", "--only", "5,6"]);
    assert_eq!(out.status.code(), Some(1));
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("FAIL AC5"));
    assert!(s.contains("PASS AC6"));
}
