use std::path::PathBuf;
use std::process::{Command, Output};

use interpkit_core::interp::identity_translation;
use interpkit_core::theories::{builtin_language, named_stream};
use interpkit_core::zx::demo::{linear_order, reversal_translation};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_interpkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, text: &str) -> String {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn parse_classifies() {
    let o = run(&["parse", "forall x (exists y (x < y))"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("Pi(2)"), "{}", stdout(&o));
    let o = run(&["--json", "parse", "exists x (x = 0)"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v.is_object());
}

#[test]
fn bad_input_exits_two() {
    assert_eq!(run(&["parse", "forall x x = x"]).status.code(), Some(2));
    assert_eq!(run(&["emit-theory", "nope"]).status.code(), Some(2));
    assert_eq!(
        run(&["zx", "--op", "add", "--poly", "X+"]).status.code(),
        Some(2)
    );
}

#[test]
fn emitted_axioms_are_stable() {
    let a = run(&["emit-theory", "isigma", "1", "--from", "10", "--to", "40"]);
    let b = run(&["emit-theory", "isigma", "1", "--from", "10", "--to", "40"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let t = named_stream("isigma", Some(1)).unwrap();
    let want: Vec<String> = (10..=40).map(|i| t.axiom_at(i).to_string()).collect();
    assert_eq!(stdout(&a).lines().collect::<Vec<_>>(), want);
}

#[test]
fn codes_round_trip() {
    let o = run(&["encode", "forall x (0 < x + 1)"]);
    assert!(o.status.success());
    let code = stdout(&o).trim().to_string();
    let back = run(&["decode", &code]);
    assert!(
        stdout(&back).contains("forall x (0 < (x+1))"),
        "{}",
        stdout(&back)
    );
}

#[test]
fn polynomial_maps() {
    let o = run(&["zx", "--op", "hx", "--poly", "X^2+1"]);
    assert_eq!(stdout(&o).trim(), "X^2+2*X+2");
    let o = run(&["zx", "--op", "h", "--z", "X^2", "--poly", "X"]);
    assert!(stdout(&o).contains("undefined"));
}

#[test]
fn interpretation_checks() {
    let lang = builtin_language("order").unwrap();
    let s = scratch("chain.json", &linear_order(&[2, 0, 1]).to_json());
    let id = scratch("id.json", &identity_translation(&lang).to_json());
    let rev = scratch("rev.json", &reversal_translation(&lang, "<").to_json());
    assert!(run(&["check-interp", &id, &s]).status.success());
    assert!(run(&["check-retraction", &s, &rev, &rev]).status.success());
    // reversal once is an interpretation but not the identity
    assert!(run(&["check-retraction", &s, &id, &rev]).status.code() == Some(1));
    let q = run(&["quotient", &rev, &s]);
    assert!(q.status.success());
}

#[test]
fn demo_passes() {
    assert!(run(&["demo-dlo"]).status.success());
}
