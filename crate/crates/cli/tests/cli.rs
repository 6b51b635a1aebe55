//! End-to-end checks of the command-line interface: the documented exit
//! codes, the pipe-friendly file formats, and report determinism.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_simplexkit"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write_temp(content: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(content.as_bytes()).unwrap();
    f
}

#[test]
fn decompose_delta_family_file() {
    let family = run(&["delta-family", "-a", "1,2", "-n", "5"]);
    assert!(family.status.success());
    let f = write_temp(&stdout(&family));
    let out = run(&["decompose", f.path().to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("n: 5"));
    assert!(text.contains("verified: true"));
}

#[test]
fn counterexample_pipes_into_classify() {
    let ce = run(&["counterexample", "-p", "2", "-q", "2"]);
    assert!(ce.status.success());
    let mut child = bin()
        .args(["--machine", "classify-simplex", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(&ce.stdout).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success(), "all-false but consistent exits 0");
    let text = stdout(&out);
    assert!(text.contains("cond1_points_in_vertex_lattice: false"));
    assert!(text.contains("cond2_interiors_empty_facets_basic: false"));
    assert!(text.contains("cond3_h_star_form: false"));
    assert!(text.contains("consistent: true"));
    // machine mode emits key: value lines only
    assert!(text.lines().all(|l| l.contains(": ")));
}

#[test]
fn stickelberger_rank_reports_phi_half() {
    let out = run(&["stickelberger-rank", "-n", "5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("rank: 2"));
    assert!(text.contains("expected: 2"));
}

#[test]
fn exit_code_input_error() {
    let out = run(&["hstar", "/definitely/not/a/file"]);
    assert_eq!(out.status.code(), Some(2));
    let bad = write_temp("not a simplex\n");
    let out = run(&["hstar", bad.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let degenerate = write_temp("3 4\n0 0 0\n1 0 0\n2 0 0\n0 0 1\n");
    let out = run(&["hstar", degenerate.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exit_code_verification_failure() {
    let ce = run(&["counterexample", "-p", "2", "-q", "3"]);
    let f = write_temp(&stdout(&ce));
    let out = run(&["decompose", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn exit_code_resource_limit() {
    let family = run(&["delta-family", "-a", "1,2", "-n", "5"]);
    let f = write_temp(&stdout(&family));
    let out = run(&[
        "--budget",
        "5",
        "classify-simplex",
        f.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    // environment variable drives the same cap
    let out = bin()
        .args(["classify-simplex", f.path().to_str().unwrap()])
        .env("SIMPLEXKIT_BUDGET", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn scramble_is_reproducible() {
    let family = run(&["delta-family", "-a", "1,1", "-n", "3"]);
    let f = write_temp(&stdout(&family));
    let a = run(&["scramble", f.path().to_str().unwrap(), "--seed", "7"]);
    let b = run(&["scramble", f.path().to_str().unwrap(), "--seed", "7"]);
    assert_eq!(stdout(&a), stdout(&b), "byte-identical given the seed");
    assert!(stdout(&a).starts_with("# seed: 7\n"));
    let c = run(&["scramble", f.path().to_str().unwrap(), "--seed", "8"]);
    assert_ne!(stdout(&a), stdout(&c));
}

#[test]
fn classify_sing_accepts_line_and_file() {
    let out = run(&["classify-sing", "7 1 1 6 6"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("mld=2"));

    let f = write_temp("# two types\n5 1 4 2 3\n7 1 1 1 4\n");
    let out = run(&["classify-sing", f.path().to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("types: 2"));
    assert!(text.contains("inconsistent: 0"));
}

#[test]
fn mld_not_isolated_is_input_error() {
    let out = run(&["mld", "4 1 2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_bernoulli_small() {
    let out = run(&["verify-bernoulli", "-n", "5", "-d", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("violations: 0"));
}

#[test]
fn batch_verify_thm31_limited_run_is_deterministic() {
    // use the smaller suites to keep the test fast
    let a = run(&["--machine", "batch-verify", "thm18"]);
    assert!(a.status.success());
    let b = run(&["--machine", "batch-verify", "thm18"]);
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).contains("violations: 0"));
}

#[test]
fn b1chi_lists_characters() {
    let out = run(&["b1chi", "-n", "12"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("characters: 4"));
    assert!(text.contains("odd: 2"));
    assert!(text.contains("odd_with_vanishing_b1chi: 0"));
}
