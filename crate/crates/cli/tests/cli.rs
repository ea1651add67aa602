use std::io::Write;
use std::process::{Command, Output, Stdio};

use chromapath::verify::fixtures::{build_elsahili_example, build_t5};
use chromapath::Digraph;
use serde_json::Value;

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_chromapath"))
        .args(args)
        .env_remove("CHROMAPATH_SEED")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary starts");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn c5() -> String {
    Digraph::directed_cycle(5).to_arclist()
}

#[test]
fn chi_of_odd_circuit() {
    let out = run(&["chi"], &c5());
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["chi"], 3);
    assert_eq!(v["coloring"].as_array().unwrap().len(), 5);
}

#[test]
fn t5_has_no_p4() {
    let out = run(&["find", "--p4"], &build_t5().to_arclist());
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out), serde_json::json!({ "found": false }));
}

#[test]
fn p4_found_in_transitive_tournament() {
    let out = run(&["find", "--p4", "-"], &Digraph::transitive_tournament(5).to_arclist());
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["found"], true);
    assert_eq!(v["certificate"]["embedding"]["vertices"].as_array().unwrap().len(), 5);
}

#[test]
fn two_block_returns_a_certificate_either_way() {
    let hit = run(&["find", "--two-block", "1", "2"], &build_elsahili_example().to_arclist());
    assert_eq!(hit.status.code(), Some(0));
    assert_eq!(json(&hit)["found"], true);
    assert!(json(&hit)["rule"].is_string());

    let miss = run(&["find", "--two-block", "2", "2"], &c5());
    assert_eq!(miss.status.code(), Some(1));
    let v = json(&miss);
    assert_eq!(v["found"], false);
    assert_eq!(v["certificate"]["coloring"]["colors"].as_array().unwrap().len(), 5);
}

#[test]
fn pattern_spec() {
    let out = run(&["find", "--pattern", "f4"], &c5());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["pattern"], "f4");
    let bad = run(&["find", "--pattern", "x3"], &c5());
    assert_eq!(bad.status.code(), Some(2));
    json(&bad);
}

#[test]
fn forest_dot_marks_non_forest_arcs() {
    let out = run(&["forest", "--format", "dot"], &c5());
    assert_eq!(out.status.code(), Some(0));
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("dashed").count(), 1);
}

#[test]
fn forest_json_levels() {
    let v = json(&run(&["forest"], &c5()));
    assert_eq!(v["max_level"], 5);
    assert_eq!(v["levels"].as_array().unwrap().len(), 5);
}

#[test]
fn circuits_and_handles() {
    let good = json(&run(&["circuit", "--k", "3", "--good"], &c5()));
    assert_eq!(good["length"], 5);
    let handles = json(&run(&["circuit", "--handles"], &c5()));
    assert_eq!(handles["r"], 1);
    let not_strong = run(&["circuit", "--k", "3", "--good"], &Digraph::transitive_tournament(4).to_arclist());
    assert_eq!(not_strong.status.code(), Some(3));
    assert!(json(&not_strong)["error"].is_object());
}

#[test]
fn contract_set_and_circuit() {
    let v = json(&run(&["contract", "--set", "0,1"], &c5()));
    assert_eq!(v["n"], 4);
    let v = json(&run(&["contract", "--circuit"], &c5()));
    assert_eq!(v["n"], 1);
    let out = run(&["contract", "--set", "0,9"], &c5());
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn input_errors_exit_3_with_json_error() {
    let out = run(&["chi"], "3 1\n0 0\n");
    assert_eq!(out.status.code(), Some(3));
    assert!(!out.stderr.is_empty());
    assert_eq!(json(&out)["error"]["kind"], "input");
    assert_eq!(run(&["chi", "/nonexistent/file"], "").status.code(), Some(3));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["find"], "").status.code(), Some(2));
    assert_eq!(run(&["chi", "--bogus"], "").status.code(), Some(2));
    assert_eq!(run(&["find", "--p4", "--pattern", "f1"], "").status.code(), Some(2));
    assert_eq!(run(&["verify", "--campaign", "nope"], "").status.code(), Some(2));
}

#[test]
fn verify_grunbaum_passes() {
    let out = run(&["verify", "--campaign", "grunbaum"], "");
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["campaign"], "grunbaum");
    assert!(v["failures"].as_array().unwrap().is_empty());
    assert_eq!(v["elapsed_ms"], 0);
}

#[test]
fn verify_is_deterministic_across_job_counts() {
    let args = ["verify", "--campaign", "thm36", "--max-n", "6", "--samples", "40", "--seed", "11"];
    let one = run(&[&args[..], &["--jobs", "1"]].concat(), "");
    let four = run(&[&args[..], &["--jobs", "4"]].concat(), "");
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn seed_falls_back_to_environment() {
    let run_env = |seed: &str| {
        Command::new(env!("CARGO_BIN_EXE_chromapath"))
            .args(["verify", "--campaign", "gallai", "--max-n", "7", "--samples", "20"])
            .env("CHROMAPATH_SEED", seed)
            .output()
            .unwrap()
    };
    let a = run_env("5");
    let flag = run(&["verify", "--campaign", "gallai", "--max-n", "7", "--samples", "20", "--seed", "5"], "");
    assert_eq!(a.stdout, flag.stdout);
    assert_eq!(json(&a)["scope"]["seed"], 5);
}

#[test]
fn text_format() {
    let out = run(&["chi", "--format", "text"], &c5());
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("chi 3"));
}
