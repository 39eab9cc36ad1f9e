mod common;

use std::io::Write;
use std::process::{Command, Stdio};

use bintrans::cli::{parse_sequence_file, render_sequence, EXIT_FAILED, EXIT_OK, EXIT_USAGE, PLACEHOLDER};
use bintrans::register_builtin_identities;
use common::*;
use proptest::prelude::*;

#[test]
fn transform_examples() {
    let reg = register_builtin_identities();
    assert_eq!(run_cli(&reg, &["transform", "-"], "1\n1\n1"), (0, "-1\n0\n0\n".into(), String::new()));
    assert_eq!(run_cli(&reg, &["transform", "-"], "0\n1\n1/2\n1/3").1, "0\n1\n3/2\n11/6\n");

    let input = "3/7\n-2\n0\n5/3\n";
    let (_, once, _) = run_cli(&reg, &["transform", "-"], input);
    assert_eq!(run_cli(&reg, &["transform", "-"], &once).1, input);

    let (_, up, _) = run_cli(&reg, &["transform", "--unsigned", "-"], input);
    assert_eq!(run_cli(&reg, &["transform", "--unsigned", "--inverse", "-"], &up).1, input);
    assert_eq!(run_cli(&reg, &["transform", "--inverse", "-"], input).1, once);
}

#[test]
fn op_examples() {
    let reg = register_builtin_identities();
    assert_eq!(run_cli(&reg, &["op", "n-nabla", "-"], "0\n1\n3/2\n11/6\n").1, "·\n1\n1\n1\n");
    assert_eq!(run_cli(&reg, &["op", "nabla", "-"], "4\n4\n4\n").1, "·\n0\n0\n");
    let (code, out, _) = run_cli(&reg, &["op", "n-nabla", "--p", "2", "--valid-from", "1", "-"], "0\n1\n1/2\n1/3\n");
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().nth(3), Some("3/2"));
    let (_, out, _) = run_cli(&reg, &["op", "n-nabla", "--machine", "-"], "_\n1\n1/2\n");
    assert_eq!(out, "_\n_\n-1\n");
    let (code, _, err) = run_cli(&reg, &["op", "n-nabla", "--p", "3", "-"], "0\n1\n1/2\n");
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("past the last index"), "{err}");
    assert_eq!(run_cli(&reg, &["op", "nabla", "--valid-from", "9", "-"], "1\n2\n").0, EXIT_USAGE);
}

#[test]
fn gen_examples() {
    let reg = register_builtin_identities();
    assert_eq!(run_cli(&reg, &["gen", "fibonacci", "5"], "").1, "0\n1\n1\n2\n3\n");
    assert_eq!(run_cli(&reg, &["gen", "laguerre", "3", "--x", "1"], "").1, "1\n0\n-1/2\n");
    assert_eq!(run_cli(&reg, &["gen", "mhs", "4", "--m", "2"], "").1, "0\n1\n7/4\n85/36\n");
    assert_eq!(run_cli(&reg, &["gen", "geometric", "--count", "3", "--param", "x=-1/2"], "").1, "1\n-1/2\n1/4\n");
    assert_eq!(run_cli(&reg, &["gen", "lucas", "5"], "").1, "2\n1\n3\n4\n7\n");
    assert_eq!(run_cli(&reg, &["gen", "unknown", "5"], "").0, EXIT_USAGE);
    assert_eq!(run_cli(&reg, &["gen", "power-sum", "5"], "").0, EXIT_USAGE);
    assert_eq!(run_cli(&reg, &["gen", "harmonic"], "").0, EXIT_USAGE);
}

#[test]
fn verify_exit_codes() {
    let reg = register_builtin_identities();
    let (code, out, _) = run_cli(&reg, &["verify", "harmonic_bt", "--n-max", "40"], "");
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("PASS"), "{out}");
    assert_eq!(run_cli(&reg, &["verify", "harmonic_lambda", "--n-max", "0"], "").0, EXIT_OK);

    let (code, _, err) = run_cli(&reg, &["verify", "nope", "--n-max", "5"], "");
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("dilcher"), "{err}");
    assert_eq!(run_cli(&reg, &["verify", "--n-max", "5"], "").0, EXIT_USAGE);
    assert_eq!(run_cli(&reg, &["verify", "dilcher"], "").0, EXIT_USAGE);
    assert_eq!(run_cli(&reg, &["verify", "dilcher", "--n-max", "5", "--param", "m"], "").0, EXIT_USAGE);

    let bad = falsified_registry();
    let (code, out, _) = run_cli(&bad, &["verify", "--all", "--n-max", "6", "--machine"], "");
    assert_eq!(code, EXIT_FAILED);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["status"], "fail");
    assert_eq!(v["counterexample.n"], 3);
    assert_eq!(v["counterexample.lhs"], "11/6");
    assert_eq!(v["counterexample.rhs"], "35/18");
}

#[test]
fn verify_with_params() {
    let reg = register_builtin_identities();
    let (code, out, _) = run_cli(&reg, &["verify", "harmonic_lambda", "--n-max", "12", "--param", "lambda=-1/2", "--machine"], "");
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["params"]["lambda"], "-1/2");
    assert_eq!(v["status"], "pass");
    let (code, out, _) = run_cli(&reg, &["verify", "harmonic_lambda", "--n-max", "12", "--param", "λ=-5"], "");
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("SKIPPED"), "{out}");
}

#[test]
fn parse_errors_name_the_line() {
    let reg = register_builtin_identities();
    let (code, _, err) = run_cli(&reg, &["transform", "-"], "# c\n1\n\n1.5\n");
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("line 4"), "{err}");
    assert_eq!(run_cli(&reg, &["transform", "-"], "# only a comment\n").0, EXIT_USAGE);
    assert_eq!(run_cli(&reg, &["transform", "/definitely/not/here"], "").0, EXIT_USAGE);
    assert_eq!(run_cli(&reg, &["frobnicate"], "").0, EXIT_USAGE);
    assert_eq!(run_cli(&reg, &["--help"], "").0, EXIT_OK);
}

#[test]
fn reads_files_from_disk() {
    let path = std::env::temp_dir().join(format!("bintrans-cli-{}.txt", std::process::id()));
    std::fs::write(&path, "# ones\n1\n1\n1\n").unwrap();
    let reg = register_builtin_identities();
    let out = run_cli(&reg, &["transform", path.to_str().unwrap()], "");
    std::fs::remove_file(&path).unwrap();
    assert_eq!(out.1, "-1\n0\n0\n");
}

#[test]
fn real_binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_bintrans");
    let mut child = Command::new(bin)
        .args(["transform", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"1\n1\n1\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(out.stdout, b"-1\n0\n0\n");

    let status = Command::new(bin).args(["gen", "nope", "3"]).output().unwrap().status;
    assert_eq!(status.code(), Some(2));
    let status = Command::new(bin).args(["verify", "harmonic_bt", "--n-max", "10"]).output().unwrap().status;
    assert_eq!(status.code(), Some(0));
}

proptest! {
    #[test]
    fn transform_output_reparses(a in sequence(1..20)) {
        let reg = register_builtin_identities();
        let (code, out, _) = run_cli(&reg, &["transform", "-"], &render_sequence(&a, PLACEHOLDER));
        prop_assert_eq!(code, 0);
        let parsed = parse_sequence_file(&out).unwrap();
        prop_assert_eq!(parsed, bintrans::transform::binomial_transform(&a).unwrap());
        prop_assert!(!out.contains('.'));
    }
}
