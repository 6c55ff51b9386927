use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use tempfile::TempDir;

const EX2: &str = "p.\n-p.\n#update.\nnot p.\n";
const STRATIFIED: &str =
    "p :- q, not r.\nnot p :- s.\nq.\ns :- q.\n#update.\n-p.\nr :- q.\n-r :- q, s.\n#update.\nnot r.\n";
const IRRELEVANT: &str =
    "day :- not night.\nnight :- not day.\nstars :- night, not cloudy.\nnot stars.\n#update.\nstars :- stars.\n";

struct Files(TempDir);

impl Files {
    fn new() -> Self {
        Files(tempfile::tempdir().unwrap())
    }

    fn add(&self, name: &str, text: &str) -> PathBuf {
        let path = self.0.path().join(name);
        std::fs::write(&path, text).unwrap();
        path
    }
}

fn dlp(args: &[&str]) -> Output {
    dlp_with_stdin(args, "")
}

fn dlp_with_stdin(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_dlp"))
        .args(args)
        .env_remove("DLP_ENGINE_LIMIT")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn models_of_example_two_under_erd() {
    let files = Files::new();
    let f = files.add("ex2.lp", EX2);
    let out = dlp(&["models", "--semantics", "erd", path_str(&f)]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(stdout(&out), "{-p}\n");
}

#[test]
fn exptwo_loses_the_model() {
    let files = Files::new();
    let f = files.add("ex2.lp", EX2);
    let out = dlp(&["models", "--semantics", "rd+exptwo", path_str(&f)]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "");
}

#[test]
fn stratified_example_has_one_model() {
    let files = Files::new();
    let f = files.add("strat.lp", STRATIFIED);
    for sem in ["erd", "ews"] {
        let out = dlp(&["models", "-s", sem, path_str(&f)]);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(stdout(&out), "{-p, q, -r, s}\n");
    }
}

#[test]
fn json_output_schema() {
    let files = Files::new();
    let f = files.add("strat.lp", STRATIFIED);
    let out = dlp(&["models", "--json", path_str(&f)]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["semantics"], "erd");
    assert_eq!(value["count"], 1);
    assert_eq!(value["models"], serde_json::json!([["-p", "q", "-r", "s"]]));

    let g = files.add("ex2.lp", EX2);
    let out = dlp(&["models", "--json", "-s", "rd+exptwo", path_str(&g)]);
    assert_eq!(out.status.code(), Some(1));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["count"], 0);
    assert_eq!(value["models"], serde_json::json!([]));
}

#[test]
fn multiple_files_are_components_and_separators_are_honoured() {
    let files = Files::new();
    let a = files.add("a.lp", "p.\n-p.\n");
    let b = files.add("b.lp", "not p.\n");
    let out = dlp(&["models", path_str(&a), path_str(&b)]);
    assert_eq!(stdout(&out), "{-p}\n");

    // the same DLP split as one file with a separator, then one more update
    let c = files.add("c.lp", "p.\n#update.\nnot p.\n");
    let d = files.add("d.lp", "p.\n");
    let out = dlp(&["models", path_str(&c), path_str(&d)]);
    assert_eq!(stdout(&out), "{p}\n");
}

#[test]
fn stdin_is_read_when_no_file_is_given() {
    let out = dlp_with_stdin(&["models"], EX2);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "{-p}\n");
}

#[test]
fn check_reports_rejections_and_trace() {
    let files = Files::new();
    let f = files.add("irr.lp", IRRELEVANT);
    let out = dlp(&["check", "-s", "rd", "--candidate", "{night, stars}", "--trace", path_str(&f)]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("is not a model under RD"), "{text}");
    assert!(text.contains("rejected rules: 2"), "{text}");
    assert!(text.contains("stars :- not cloudy, night."), "{text}");
    assert!(text.contains("not stars."), "{text}");
    assert!(text.contains("T^0 = {}"), "{text}");

    let out = dlp(&["check", "-s", "rd", "--candidate", "{day}", path_str(&f)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("{day} is a model under RD"));
}

#[test]
fn check_under_erd_with_trace() {
    let files = Files::new();
    let f = files.add("ex2.lp", EX2);
    let out = dlp(&["check", "--candidate", "{p}", path_str(&f)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("0:0  p."));

    let out = dlp(&["check", "--candidate", "{-p}", "--trace", path_str(&f)]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("T^1 = "), "{text}");

    let out = dlp(&["check", "--json", "--candidate", "{-p}", path_str(&f)]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["is_model"], true);
    assert_eq!(value["candidate"], serde_json::json!(["-p"]));
}

#[test]
fn transform_prints_reparseable_programs() {
    let files = Files::new();
    let f = files.add("ex2.lp", EX2);
    let out = dlp(&["transform", "exptwo", path_str(&f)]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let parsed = dlp_engine::parse_dlp(&text).unwrap();
    let expected = dlp_engine::parse_dlp("p.\n-p.\nnot -p.\nnot p.\n#update.\nnot p.").unwrap();
    assert_eq!(parsed, expected);

    let out = dlp_with_stdin(&["transform", "expone", "--alphabet", "p"], "");
    assert_eq!(out.status.code(), Some(0));
    let parsed = dlp_engine::parse_dlp(&stdout(&out)).unwrap();
    assert_eq!(parsed.rule_count(), 2);

    let out = dlp_with_stdin(&["transform", "exptwo"], "");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(dlp_engine::parse_dlp(&stdout(&out)).unwrap().rule_count(), 0);
}

#[test]
fn properties_report_expected_failures() {
    let out = dlp(&["properties", "-s", "rd+expone", "--case", "empty-update", "--random", "5"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("expected"));

    let out = dlp(&["properties", "-s", "erd", "--random", "20", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(!stdout(&out).contains("FAIL"));

    let out = dlp(&["properties", "-s", "erd", "--case", "early-recovery", "--random", "200"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn properties_on_given_files() {
    let files = Files::new();
    let f = files.add("ex2.lp", EX2);
    let out = dlp(&["properties", "-s", "rd+exptwo", "--case", "early-recovery", path_str(&f)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("expected"));
}

#[test]
fn output_is_deterministic() {
    let run = || stdout(&dlp(&["properties", "-s", "ews", "--random", "10", "--seed", "3"]));
    assert_eq!(run(), run());
}

#[test]
fn input_errors_exit_with_two() {
    let files = Files::new();
    let bad = files.add("bad.lp", "p :- .\n");
    let out = dlp(&["models", path_str(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("bad.lp"), "{}", stderr(&out));

    let f = files.add("ex2.lp", EX2);
    let out = dlp(&["models", "-s", "rd", path_str(&f)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("strong negation"));

    let out = dlp(&["models", "-s", "nope", path_str(&f)]);
    assert_eq!(out.status.code(), Some(2));

    let out = dlp(&["models", "/definitely/not/here.lp"]);
    assert_eq!(out.status.code(), Some(2));

    let out = dlp(&["check", "--candidate", "{p, -p}", path_str(&f)]);
    assert_eq!(out.status.code(), Some(2));

    let out = dlp(&["properties", "--random", "3", path_str(&f)]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn enumeration_limit_flag_and_environment() {
    let files = Files::new();
    let f = files.add("ex2.lp", "a.\nb.\nc.\n");
    let out = dlp(&["models", "--limit", "2", path_str(&f)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("enumeration limit"), "{}", stderr(&out));

    let out = Command::new(env!("CARGO_BIN_EXE_dlp"))
        .args(["models", path_str(&f)])
        .env("DLP_ENGINE_LIMIT", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = dlp(&["models", "--limit", "3", path_str(&f)]);
    assert_eq!(stdout(&out), "{a, b, c}\n");
}

#[test]
fn extra_alphabet_atoms_enlarge_the_universe() {
    let out = dlp_with_stdin(&["models", "-s", "sm", "--alphabet", "q"], "p :- not q.\n");
    assert_eq!(stdout(&out), "{p}\n");
    let out = dlp_with_stdin(&["models", "-s", "sm", "--limit", "1", "--alphabet", "q"], "p.\n");
    assert_eq!(out.status.code(), Some(2));
}
