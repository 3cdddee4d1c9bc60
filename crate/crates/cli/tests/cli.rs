use std::path::PathBuf;
use std::process::{Command, Output};

fn example(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "examples", name].iter().collect();
    p.display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superhopf"))
        .args(args)
        .env_remove("SUPERHOPF_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["check-lie", &example("gl11.alg")]).status.code(), Some(0));
    let broken = run(&["check-lie", &example("gl11-broken.alg")]);
    assert_eq!(broken.status.code(), Some(1));
    assert!(stdout(&broken).contains("violation check=lie-axioms/iv witness=\"(e,e,f)"));
    assert_eq!(run(&["check-lie", "no/such/file.alg"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn normal_forms() {
    let out = run(&["normal-form", &example("gl11.alg"), "--word", "f e"]);
    assert!(stdout(&out).lines().any(|l| l == "-1*e.f + 1*a + 1*b"), "{}", stdout(&out));
    let out = run(&["normal-form", &example("osp12.alg"), "--word", "x x"]);
    assert!(stdout(&out).lines().any(|l| l == "1*E"));
}

#[test]
fn ambiguities() {
    assert_eq!(run(&["ambiguities", &example("osp12.alg")]).status.code(), Some(0));
    assert_eq!(run(&["ambiguities", &example("osp12-z4.alg")]).status.code(), Some(0));
    assert_eq!(run(&["ambiguities", &example("osp12-badq.alg")]).status.code(), Some(1));
}

#[test]
fn pbw_count() {
    let out = stdout(&run(&["pbw", &example("gl11.alg"), "--degree", "2"]));
    assert!(out.contains("\ncount=13\n"));
    assert!(out.contains("check=phi status=pass"));
}

#[test]
fn pairs() {
    let out = run(&["hcp-roundtrip", &example("gl11.hcp"), "--max-support", "2", "--random", "2", "--seed", "9"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("recovered pair identical"));
    assert!(text.contains("seed=9"));
    let bad = run(&["hcp-build", &example("gl11-badweight.hcp")]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("check=hcp status=fail"));
}

#[test]
fn kostant() {
    assert_eq!(run(&["kostant", &example("osp12.zform")]).status.code(), Some(0));
    assert_eq!(run(&["kostant", &example("gl11.zform")]).status.code(), Some(0));
    let bad = run(&["kostant", &example("sl2-hdivided.zform")]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).lines().any(|l| l.starts_with("first-violation:") && l.contains("1/2")));
}

#[test]
fn json_output() {
    let out = run(&["--format", "json", "check-lie", &example("gl11-broken.alg")]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["status"], "fail");
    assert_eq!(v["command"], "check-lie");
    assert!(v["digest"].as_str().unwrap().starts_with("sha256:"));
    assert!(v["checks"].as_array().unwrap().iter().any(|c| c["status"] == "fail"));
}

#[test]
fn deterministic_and_seeded() {
    let args = ["check-lie", &example("osp12.alg")];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("seed=0"));
    let seeded = Command::new(env!("CARGO_BIN_EXE_superhopf"))
        .args(args)
        .env("SUPERHOPF_SEED", "41")
        .output()
        .unwrap();
    assert!(stdout(&seeded).contains("seed=41"));
    let flag = run(&["--seed", "41", "check-lie", &example("osp12.alg")]);
    assert_eq!(flag.stdout, seeded.stdout);
}

#[test]
fn exterior_gram() {
    let out = run(&["ext-gram", "--rank", "3", "--ring", "Z/4"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("check=hopf-pairing status=pass"));
}
