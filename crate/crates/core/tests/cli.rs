use std::process::{Command, Output};

use lashof::verify::{RunReport, Status};

fn lashof(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lashof")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = lashof(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).expect("utf-8")
}

#[test]
fn normalize_examples() {
    assert_eq!(stdout(&["normalize", "--space", "QS0", "Q[3] x(1)"]), "x(1)^4\n");
    assert_eq!(stdout(&["normalize", "--pi0", "k=1", "Q[2][eta] * Q[2][eta]"]), "0\n");
    assert_eq!(stdout(&["normalize", "[0]"]), "[0]\n");
}

#[test]
fn errors_exit_two() {
    let out = lashof(&["normalize", "Q["]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("syntax error"));
    let out = lashof(&["--prime", "3", "normalize", "[0]"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(lashof(&["verify", "no-such-suite"]).status.code(), Some(2));
}

#[test]
fn verify_nilpotency_d3() {
    let text = stdout(&["verify", "nilpotency", "--d", "3", "--max-dim", "12", "--format", "report"]);
    let r = RunReport::parse_report(&text).unwrap();
    assert!(!r.checks.is_empty());
    assert!(r.checks.iter().all(|c| c.id.contains("/d=3/") && c.status == Status::Pass));
}

#[test]
fn verify_hopf_one_to_127() {
    let text = stdout(&["verify", "hopf-one", "--max-dim", "127"]);
    assert!(text.contains("{1, 3, 7, 15, 31, 63, 127}"), "{text}");
}

#[test]
fn reports_are_deterministic() {
    let args = ["--seed", "0", "verify", "q3x1", "iota", "coherence", "--cases", "200", "--format", "report"];
    let a = lashof(&args);
    let b = lashof(&args);
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let r = RunReport::parse_report(&text).unwrap();
    assert_eq!(r.render_report(), text);
    assert!(r.checks.iter().all(|c| !c.anchor.is_empty() && c.ms.is_none()));
    // the literal square-root check fails, so the run does too
    assert_eq!(a.status.code(), Some(1));
}

#[test]
fn timing_adds_ms() {
    let text = stdout(&["verify", "q3x1", "--timing", "--format", "report"]);
    assert!(RunReport::parse_report(&text).unwrap().checks[0].ms.is_some());
}

#[test]
fn atlas_queries() {
    assert!(stdout(&["atlas", "--x", "15", "8"]).contains("trivial\n"));
    assert!(stdout(&["atlas", "--x", "14", "8"]).contains("nontrivial"));
    assert!(stdout(&["atlas", "--nu", "1"]).starts_with("nu_1 = 4\n"));
    assert!(stdout(&["atlas", "--qp", "3"]).starts_with("q(3) = 2\n"));
    assert!(stdout(&["atlas", "--show", "BU"]).contains("c2"));
}

#[test]
fn desusp_and_basis() {
    assert_eq!(stdout(&["desusp", "--decompose", "c(2)"]), "p[(2)]\n");
    assert_eq!(stdout(&["desusp", "--basis", "7"]), "Q[5] p[(2)]\n");
    assert!(stdout(&["desusp", "--w", "p[(2)]", "--k", "1"]).contains("degree 1"));
    assert_eq!(stdout(&["basis", "--space", "BU", "--max-dim", "6"]), "1 0 1 0 3 1 7\n");
    assert_eq!(stdout(&["basis", "--pi0", "k=1", "--dim", "1"]), "Q[1][eta]\n");
}

#[test]
fn steenrod_and_pi0() {
    let out = stdout(&["steenrod", "--annihilated", "SO", "--max-dim", "16"]);
    let dims: Vec<&str> = out.lines().map(|l| l.split(':').next().unwrap()).collect();
    assert_eq!(dims, ["1", "3", "7", "15"]);
    assert!(stdout(&["pi0", "--k", "3", "--verify-truncation", "-", "1", "1"]).contains("both routes vanish"));
    assert_eq!(stdout(&["pi0", "--k", "3", "--expr", "[nu] * [nu]", "--component"]), "[2 nu]\n");
}
