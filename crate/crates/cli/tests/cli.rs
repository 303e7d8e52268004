use std::io::Write;
use std::process::{Command, Output, Stdio};
use std::time::{Duration, Instant};

use fthresh_core::filtration::Filtration;
use fthresh_core::rational;
use fthresh_core::text::parse_ideal;
use serde_json::Value;

fn fthresh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fthresh"))
        .args(args)
        .stdin(Stdio::null())
        .output()
        .expect("binary runs")
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_fthresh"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

/// Every string that parses as a rational must print back unchanged.
fn assert_lowest_terms(v: &Value) {
    match v {
        Value::String(s) => {
            if let Ok(r) = rational::parse(s) {
                assert_eq!(rational::to_string(&r), *s);
            }
        }
        Value::Array(xs) => xs.iter().for_each(assert_lowest_terms),
        Value::Object(m) => m.values().for_each(assert_lowest_terms),
        _ => {}
    }
}

#[test]
fn ordinary_threshold_example() {
    let o = fthresh(&["fthreshold", "--ideal", "x1^2;x2^3", "--target", "m"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["value"], "5/6");
    assert_eq!(v["method"], "rees_valuation");
    assert_lowest_terms(&v);
}

#[test]
fn symbolic_threshold_example() {
    let o = fthresh(&["symbolic", "--ideal", "x1*x2;x2*x3;x1*x3"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["value"], "2");
    assert_eq!(v["method"], "symbolic_squarefree");
}

#[test]
fn prime_power_components() {
    let o = fthresh(&[
        "symbolic",
        "--components",
        r#"[{"vars":[0,1],"omega":1},{"vars":[1,2],"omega":2}]"#,
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["value"], "1");
}

#[test]
fn gallery_passes_within_budget() {
    let start = Instant::now();
    let o = fthresh(&["verify-examples", "--primes", "2,3,5", "--emax", "5", "--format", "json"]);
    assert!(start.elapsed() < Duration::from_secs(60));
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let v = json(&o);
    let rows = v["rows"].as_array().unwrap();
    let names = stdout(&fthresh(&["verify-examples", "--list"]));
    assert_eq!(rows.len(), names.lines().count());
    assert!(rows.iter().all(|r| r["status"] == "pass"));
    assert_eq!(v["failed"], 0);
    assert_lowest_terms(&v);
}

#[test]
fn gallery_filter_gives_one_row() {
    let o = fthresh(&["verify-examples", "--only", "odd-cycle-bracket", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["computed"], "[6248/3125, 2]");
}

#[test]
fn corrupted_expectation_fails() {
    let o = fthresh(&[
        "verify-examples",
        "--corrupt",
        "pairwise-primes-threshold",
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    let bad: Vec<&Value> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["status"] == "fail")
        .collect();
    assert_eq!(bad.len(), 1);
    assert_eq!(bad[0]["fixture"], "pairwise-primes-threshold");
    assert_eq!(bad[0]["expected"], "3");
}

#[test]
fn unknown_fixture_is_usage_error() {
    assert_eq!(code(&fthresh(&["verify-examples", "--only", "nope"])), 2);
}

#[test]
fn parse_error_names_token_and_position() {
    let o = fthresh(&["fthreshold", "--ideal", "x1^2;x2^a"]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    assert_eq!(v["error"], "parse");
    assert_eq!(v["token"], "x2^a");
    assert_eq!(v["position"], 5);
}

#[test]
fn domain_errors_exit_one() {
    let o = fthresh(&["symbolic", "--ideal", "x1^2*x2;x2*x3"]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o)["error"], "unsupported_symbolic");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&fthresh(&["frobnicate"])), 2);
    assert_eq!(code(&fthresh(&["nu", "--ideal", "x1", "-p", "4"])), 2);
    assert_eq!(code(&fthresh(&["nu", "--ideal", "x1", "--filtration", "{}"])), 2);
    assert_eq!(code(&fthresh(&["rees", "--ideal", "x1", "--format", "csv"])), 2);
    assert_eq!(code(&fthresh(&["nu"])), 2);
}

#[test]
fn stdin_matches_inline() {
    let inline = fthresh(&["nu-seq", "--ideal", "x1^2;x2^3", "-p", "3", "--emax", "3"]);
    let piped = with_stdin(&["nu-seq", "-p", "3", "--emax", "3"], "x1^2;x2^3\n");
    assert_eq!(code(&piped), 0);
    assert_eq!(stdout(&inline), stdout(&piped));
}

#[test]
fn filtration_json_matches_rule_flag() {
    let i = parse_ideal("x1*x2;x2*x3;x1*x3", None).unwrap();
    let desc = Filtration::symbolic_squarefree(i).unwrap().to_json();
    let a = fthresh(&["nu-seq", "--filtration", &desc, "-p", "5", "--emax", "3"]);
    let b = fthresh(&["nu-seq", "--ideal", "x1*x2;x2*x3;x1*x3", "--rule", "symbolic", "-p", "5", "--emax", "3"]);
    assert_eq!(code(&a), 0);
    assert_eq!(stdout(&a), stdout(&b));
    let piped = with_stdin(&["nu-seq", "-p", "5", "--emax", "3"], &desc);
    assert_eq!(stdout(&a), stdout(&piped));
    let nus: Vec<u64> = json(&a)["records"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["nu"].as_u64().unwrap())
        .collect();
    assert_eq!(nus, vec![0, 8, 48, 248]);
}

#[test]
fn csv_sequence() {
    let o = fthresh(&["nu-seq", "--ideal", "x1^2;x2^3", "-p", "3", "--emax", "3", "--format", "csv"]);
    assert_eq!(stdout(&o), "e,q,nu,ratio\n0,1,0,0\n1,3,1,1/3\n2,9,6,2/3\n3,27,21,7/9\n");
}

#[test]
fn decimal_rendering_is_additive() {
    let o = fthresh(&["fthreshold", "--ideal", "x1^2;x2^3", "--decimal", "5"]);
    let v = json(&o);
    assert_eq!(v["value"], "5/6");
    assert_eq!(v["value_decimal"], "0.83333");
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let args = ["nu-seq", "--ideal", "x1^3*x2;x2^2*x3;x1*x3^4", "-p", "3", "--emax", "5"];
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_fthresh"))
            .args(args)
            .env("RAYON_NUM_THREADS", threads)
            .output()
            .unwrap()
            .stdout
    };
    let one = run("1");
    assert!(!one.is_empty());
    assert_eq!(one, run("4"));
    assert_eq!(one, run("4"));
    let g1 = fthresh(&["verify-examples", "--format", "json"]).stdout;
    assert_eq!(g1, fthresh(&["verify-examples", "--format", "json"]).stdout);
}

#[test]
fn hypergraph_report_for_five_cycle() {
    let o = fthresh(&[
        "hypergraph",
        "--hypergraph",
        r#"{"n":5,"edges":[[0,1],[1,2],[2,3],[3,4],[4,0]]}"#,
    ]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["fractional_matching"], "5/2");
    assert_eq!(v["ordinary_threshold"], "5/2");
    assert_eq!(v["symbolic_threshold"], "3");
    assert_eq!(v["chordal"], false);
    let from_ideal = fthresh(&["hypergraph", "--ideal", "x1*x2;x2*x3;x3*x4;x4*x5;x1*x5"]);
    assert_eq!(stdout(&o), stdout(&from_ideal));
}

#[test]
fn min_law_on_two_ideals() {
    let o = fthresh(&["laws", "--left", "x1^2;x2", "--right", "x1*x2", "-p", "3", "--emax", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["holds"], true);
    let sp = fthresh(&[
        "laws", "--left", "x1^2;x2^3", "--right", "x1*x2", "--law", "sum-product", "--emax", "3",
    ]);
    assert_eq!(json(&sp)["holds"], true);
}

#[test]
fn newton_and_rees() {
    let n = json(&fthresh(&["newton", "--ideal", "x1^2;x2^3;x1*x2"]));
    assert_eq!(n["essential"].as_array().unwrap().len(), 2);
    assert_eq!(n["irredundant"], true);
    let r = json(&fthresh(&["rees", "--ideal", "x1^2;x2^3"]));
    assert_eq!(r["valuations"][0]["value"], 6);
}
