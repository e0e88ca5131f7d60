//! End-to-end tests of the `idp` binary: exit codes, output grammar, and
//! pipe composition.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_idp"))
}

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../idp/tests/golden").join(name)
}

fn tmp(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write_tmp(name: &str, content: &str) -> PathBuf {
    let path = tmp(name);
    std::fs::write(&path, content).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn path_arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn solve_prints_the_solution_and_exits_zero() {
    let out = run(&["solve", path_arg(&golden("three.idp"))]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "yes\npath 1 u a v\n");
}

#[test]
fn refused_instances_exit_one_with_the_step_certificate() {
    let file = write_tmp(
        "step2.idp",
        "idp interval n=2 k=1\nv u 1 2\nv v 3 4\np u v 2\n",
    );
    let out = run(&["solve", path_arg(&file)]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "no step=2 pair=1\n");
    assert!(stderr(&out).is_empty());

    let out = run(&["solve", path_arg(&file), "--certify"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("step=2 pair=1"), "stderr: {}", stderr(&out));
}

#[test]
fn malformed_input_exits_two_with_a_line_diagnostic() {
    let file = write_tmp("bad.idp", "idp interval n=1 k=0\nv u 0 2\n");
    let out = run(&["solve", path_arg(&file)]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("error:") && err.contains("line"), "stderr: {err}");
}

#[test]
fn verify_accepts_the_solver_output() {
    let inst = golden("three.idp");
    let solved = run(&["solve", path_arg(&inst)]);
    let sol = write_tmp("three.sol", &stdout(&solved));
    let out = run(&["verify", path_arg(&inst), path_arg(&sol)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "ok\n");
}

#[test]
fn verify_lists_violations_of_a_tampered_solution() {
    let sol = write_tmp("tampered.sol", "yes\npath 1 u v\n");
    let out = run(&["verify", path_arg(&golden("three.idp")), path_arg(&sol)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("violation:"), "stdout: {}", stdout(&out));
}

#[test]
fn verify_refuses_a_no_answer_file() {
    let sol = write_tmp("refusal.sol", "no step=2 pair=1\n");
    let out = run(&["verify", path_arg(&golden("three.idp")), path_arg(&sol)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("no"), "stderr: {}", stderr(&out));
}

#[test]
fn generation_is_deterministic_under_the_seed() {
    let args = ["gen", "--kind", "interval", "--n", "40", "--k", "3", "--seed", "11"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    let c = run(&["gen", "--kind", "interval", "--n", "40", "--k", "3", "--seed", "12"]);
    assert_ne!(stdout(&a), stdout(&c));
}

#[test]
fn generated_planted_instances_pipe_into_solve() {
    let gen = run(&[
        "gen", "--kind", "circular", "--n", "30", "--k", "2", "--planted", "--seed", "7",
    ]);
    assert_eq!(gen.status.code(), Some(0));
    let mut solve = bin()
        .args(["solve", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    solve.stdin.as_mut().unwrap().write_all(&gen.stdout).unwrap();
    let out = solve.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("yes\n"));
}

#[test]
fn planted_witness_passes_verification() {
    let w = tmp("witness.sol");
    let gen = run(&[
        "gen", "--kind", "interval", "--n", "36", "--k", "2", "--max-req", "2", "--planted",
        "--seed", "3", "--witness-out", path_arg(&w),
    ]);
    assert_eq!(gen.status.code(), Some(0));
    let inst = write_tmp("planted.idp", &stdout(&gen));
    let out = run(&["verify", path_arg(&inst), path_arg(&w)]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
}

#[test]
fn witness_out_without_planted_is_a_usage_error() {
    let w = tmp("unused.sol");
    let out = run(&[
        "gen", "--kind", "interval", "--n", "10", "--witness-out", path_arg(&w),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oracle_matches_solve_on_the_golden_instances() {
    let yes = run(&["oracle", path_arg(&golden("three.idp"))]);
    assert_eq!(yes.status.code(), Some(0));
    assert_eq!(stdout(&yes), "yes\npath 1 u a v\n");
    let no = run(&["oracle", path_arg(&golden("distant.idp"))]);
    assert_eq!(no.status.code(), Some(1));
    assert_eq!(stdout(&no), "no\n");
}

#[test]
fn oracle_refuses_oversized_instances() {
    let out = run(&["oracle", path_arg(&golden("three.idp")), "--max-n", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bench_emits_a_parseable_report() {
    let out = run(&[
        "bench", "--sizes", "200,400", "--reps", "5", "--k", "2", "--seed", "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = idp::format::parse_bench(&stdout(&out)).expect("report parses");
    assert_eq!(report.records.len(), 4);
    assert!(report.exponent.is_some());
    for r in &report.records {
        assert_eq!(r.reps, 5);
        assert!(r.median_ns > 0);
    }
}
