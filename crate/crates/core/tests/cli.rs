use std::path::Path;
use std::process::{Command, Output};

use braidforge::report::{RunReport, Status};

fn run(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_braidforge"))
        .args(args)
        .current_dir(dir)
        .env("SOURCE_DATE_EPOCH", "0")
        .env("BRAIDFORGE_THREADS", "2")
        .output()
        .unwrap()
}

fn tmp(name: &str) -> std::path::PathBuf {
    let d = std::env::temp_dir().join(format!("braidforge-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

#[test]
fn constant_cases_pass() {
    let d = tmp("ybe");
    let out = run(
        &[
            "verify-ybe",
            "--constant",
            "--all-cases",
            "--json",
            "r.json",
        ],
        &d,
    );
    assert_eq!(out.status.code(), Some(0));
    let r = RunReport::from_json(&std::fs::read_to_string(d.join("r.json")).unwrap()).unwrap();
    assert_eq!(r.records.len(), 16);
    assert!(r
        .records
        .iter()
        .all(|x| x.status == Status::Pass && !x.anchor.is_empty()));
    assert_eq!(r.timestamp.as_deref(), Some("0"));
}

#[test]
fn derive_with_diff() {
    let out = run(&["derive", "--case=+++", "--diff-paper"], &tmp("derive"));
    assert_eq!(out.status.code(), Some(0));
    let out = run(
        &["derive", "--case", "---", "--diff-paper"],
        &tmp("derive2"),
    );
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn single_dual_identity() {
    let out = run(&["dual", "--max-degree=2", "--identity=P*P"], &tmp("dual"));
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("PASS P*P = 0"));
    let out = run(
        &["dual", "--max-degree=2", "--identity=[K,P]-3P"],
        &tmp("dual2"),
    );
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_2() {
    let d = tmp("usage");
    assert_eq!(run(&["frobnicate"], &d).status.code(), Some(2));
    assert_eq!(run(&["derive", "--case=+?+"], &d).status.code(), Some(2));
    assert_eq!(run(&["dual", "--bogus"], &d).status.code(), Some(2));
}

#[test]
fn reports_are_byte_identical() {
    let d = tmp("det");
    for (i, args) in [
        vec!["verify-ybe", "--seed", "7", "--samples", "20"],
        vec!["classify"],
        vec!["dual", "--max-degree=3"],
    ]
    .into_iter()
    .enumerate()
    {
        let a = format!("a{i}.json");
        let b = format!("b{i}.json");
        let mut x = args.clone();
        x.extend(["--json", &a]);
        let mut y = args.clone();
        y.extend(["--json", &b]);
        let (ox, oy) = (run(&x, &d), run(&y, &d));
        assert_eq!(ox.stdout, oy.stdout);
        let ja = std::fs::read(d.join(&a)).unwrap();
        let jb = std::fs::read(d.join(&b)).unwrap();
        assert_eq!(ja, jb, "{args:?}");
        let r = RunReport::from_json(std::str::from_utf8(&ja).unwrap()).unwrap();
        assert_eq!(r.to_json().unwrap().as_bytes(), &ja[..]);
    }
}
