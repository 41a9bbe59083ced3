use fp2_uncertainty::arith::rat_int;
use fp2_uncertainty::cli::{curve_value, emit_curves, run, run_with_ceiling, EXIT_OK, EXIT_USAGE, EXIT_VIOLATION};
use serde_json::Value;

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["fp2u"];
    full.extend_from_slice(args);
    let out = run(full);
    assert!(out.stderr.is_empty() || out.code != EXIT_OK, "{}", out.stderr);
    (out.code, serde_json::from_str(&out.stdout).unwrap_or(Value::Null))
}

#[test]
fn verify_difference_of_subgroups() {
    let (code, v) = json(&["verify", "--family", "diff-of-subgroups", "--p", "3", "--theorem", "rational"]);
    assert_eq!(code, EXIT_OK);
    let r = &v["result"]["reports"][0];
    assert_eq!(r["verdict"], "holds-with-equality");
    assert_eq!(r["lhs"], "4");
    assert_eq!(r["rhs"], "4");
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["config"]["subcommand"], "verify");
}

#[test]
fn verify_literal_and_skips() {
    let (code, v) = json(&["verify", "3; 2; 1,z,0,0,0,0,0,0,0"]);
    assert_eq!(code, EXIT_OK);
    let skipped: Vec<&str> = v["result"]["skipped"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["theorem"].as_str().unwrap())
        .collect();
    assert_eq!(skipped, vec!["rational"]);
}

#[test]
fn geometry_blocking_minimum() {
    let (code, v) = json(&["geometry", "blocking-min", "--p", "3"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["result"]["min_blocking_size"], 5);
    let (_, v) = json(&["geometry", "directions", "--set", "5; (0,0),(1,1),(2,4)"]);
    assert_eq!(v["result"]["count"], 3);
}

#[test]
fn classify_reports_descriptor() {
    let (code, v) = json(&["classify", "3; 2; 1,z,z^2,0,0,0,0,0,0"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["result"]["descriptor"]["kind"], "single-coset-character");
    let (_, v) = json(&["classify", "3; 2; 1,1,1,0,0,0,0,0,0"]);
    assert_eq!(v["result"]["descriptor"]["kind"], "h-periodic");
    let (_, v) = json(&["classify", "5; 2; 1,2,0,1,1,0,1,1,2,0,1,0,1,1,2,2,1,0,1,1,1,1,2,0,1"]);
    assert!(v["result"]["descriptor"].is_null());
}

#[test]
fn usage_errors() {
    for args in [
        vec!["fp2u", "verify", "4; 2; 1"],
        vec!["fp2u", "verify", "3; 2; 1,2"],
        vec!["fp2u", "sweep", "--p", "6"],
        vec!["fp2u", "frobnicate"],
        vec!["fp2u", "hunt", "--p", "3", "--alphabet", "0,1", "--theorem", "as2"],
        vec!["fp2u", "classify", "3; 2; 1,1,1,0,0,0,0,0,0", "--format", "csv"],
    ] {
        assert_eq!(run(args.clone()).code, EXIT_USAGE, "{args:?}");
    }
    let out = run_with_ceiling(["fp2u", "sweep", "--p", "5"], Some(1000));
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("ceiling"), "{}", out.stderr);
}

#[test]
fn hunt_reports_search_scope() {
    let (code, v) = json(&["hunt", "--p", "3", "--alphabet=-1,0,1", "--theorem", "roots"]);
    assert_eq!(code, EXIT_OK);
    let r = &v["result"];
    assert!(r["violation"].is_null());
    assert_eq!(r["theorem"], "roots");
    assert_eq!(r["candidates"], 19683);
    assert_eq!(r["excused"], 120);
    assert!(r["first_excused"]["cover"]["applies"].as_bool().unwrap());
    assert_ne!(EXIT_VIOLATION, EXIT_USAGE);
}

#[test]
fn sweeps_are_byte_identical() {
    let args = ["fp2u", "sweep", "--p", "5", "--budget", "300", "--seed", "9", "--theorem", "basic,roots"];
    let a = run(args);
    let b = run(args);
    assert_eq!(a.code, EXIT_OK);
    assert_eq!(a.stdout, b.stdout);
    let c = run(["fp2u", "--jobs", "1", "sweep", "--p", "5", "--budget", "300", "--seed", "9", "--theorem", "basic,roots"]);
    let strip = |s: &str| {
        let mut v: Value = serde_json::from_str(s).unwrap();
        v["config"].as_object_mut().unwrap().remove("jobs");
        v
    };
    assert_eq!(strip(&a.stdout), strip(&c.stdout));
}

#[test]
fn frontier_csv_rows() {
    let out = run(["fp2u", "frontier", "--p", "3", "--alphabet", "0,1"]);
    assert_eq!(out.code, EXIT_OK);
    let rows: Vec<&str> = out.stdout.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows[0], "S_size,X_size,witness_literal");
    assert!(rows.contains(&"9,1,\"3; 2; 1,1,1,1,1,1,1,1,1\""));
    assert!(out.stdout.starts_with("# fp2u "));
}

#[test]
fn emitted_hyperbola_has_constant_product() {
    let rows = emit_curves(11).unwrap();
    let hyperbola: Vec<_> = rows.iter().filter(|r| r.curve == "theorem-a").collect();
    assert_eq!(hyperbola.len(), 11);
    for r in hyperbola {
        assert_eq!(curve_value(r).unwrap() * rat_int(r.min as i64), rat_int(121));
    }
    let dots = rows.iter().filter(|r| r.curve == "yellow_dot").count();
    assert_eq!(dots, 121);
    let out = run(["fp2u", "emit-curves", "--p", "11"]);
    assert!(out.stdout.contains("\ncurve,param,min,max,exact\n"));
    assert!(out.stdout.contains("conjecture,k=11,"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_fp2u");
    let status = std::process::Command::new(bin)
        .args(["geometry", "blocking-min", "--p", "2"])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(EXIT_OK));
    let status = std::process::Command::new(bin).args(["verify"]).output().unwrap();
    assert_eq!(status.status.code(), Some(EXIT_USAGE));
}
