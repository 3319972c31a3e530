use std::process::Command;

use tri_cli::{run, Outcome, EXIT_OK, EXIT_USAGE};
use tri_core::ranking::{ranking_of_formula, Ranking};
use tri_core::syntax::parse;

fn tri(args: &[&str]) -> Outcome {
    run(std::iter::once("tri").chain(args.iter().copied()))
}

fn ok(args: &[&str]) -> String {
    let out = tri(args);
    assert_eq!(out.code, EXIT_OK, "{args:?}: {}", out.stderr);
    out.stdout
}

fn usage(args: &[&str]) {
    let out = tri(args);
    assert_eq!(out.code, EXIT_USAGE, "{args:?}");
    assert!(out.stdout.is_empty(), "{args:?} wrote {:?}", out.stdout);
    assert!(!out.stderr.is_empty());
}

#[test]
fn eval_prints_one_value() {
    assert_eq!(ok(&["eval", "-n", "1", "x0 & ~x0", "--at", "u"]), "u\n");
    assert_eq!(ok(&["eval", "-n", "2", "x0 -> x1", "--at", "1,0"]), "0\n");
    assert_eq!(ok(&["eval", "-n", "1", "[]1 x0", "--at", "0"]), "u\n");
}

#[test]
fn table_lists_every_interpretation() {
    let out = ok(&["table", "-n", "2", "x0 | x1"]);
    assert_eq!(out.lines().count(), 9);
    assert_eq!(out.lines().next(), Some("0 0 : 0"));
    assert_eq!(out.lines().last(), Some("1 1 : 1"));
}

#[test]
fn classify_groups_interpretations() {
    let out = ok(&["classify", "-n", "1", "x0 & ~x0"]);
    assert_eq!(out, "models:\nquasi-models: u\ncountermodels: 0 1\n");
    let out = ok(&["classify", "-n", "1", "<>2 x0 & ~x0"]);
    assert!(out.ends_with("contradiction\n"));
    let machine = ok(&["--machine", "classify", "-n", "1", "x0"]);
    assert_eq!(machine, "1 M\nu Q\n0 C\n");
}

#[test]
fn capture_single_and_set() {
    let f = ok(&["capture", "--at", "1,u"]);
    let r = ranking_of_formula(&parse(f.trim()).unwrap(), 2).unwrap();
    assert_eq!(r.block_indices(tri_core::ranking::Level::One).into_iter().collect::<Vec<_>>(), [7]);

    let f = ok(&["capture", "-n", "1", "--at", "0", "--at", "1"]);
    let r = ranking_of_formula(&parse(f.trim()).unwrap(), 1).unwrap();
    // only the listed interpretations are models; u is left undetermined
    assert_eq!(r.to_string(), "121");
}

#[test]
fn encode_ranking_reads_a_file() {
    let path = std::env::temp_dir().join(format!("tri-cli-test-{}.rank", std::process::id()));
    std::fs::write(&path, "# comment\n1 : 1\nu : 3\n\n0 : 2\n").unwrap();
    let f = ok(&["encode-ranking", path.to_str().unwrap()]);
    std::fs::remove_file(&path).unwrap();
    let r = ranking_of_formula(&parse(f.trim()).unwrap(), 1).unwrap();
    assert_eq!(r, "231".parse::<Ranking>().unwrap());
}

#[test]
fn encode_ranking_rejects_bad_files() {
    let path = std::env::temp_dir().join(format!("tri-cli-bad-{}.rank", std::process::id()));
    std::fs::write(&path, "1 : 1\nu : 3\n").unwrap();
    usage(&["encode-ranking", path.to_str().unwrap()]);
    std::fs::remove_file(&path).unwrap();
    usage(&["encode-ranking", "/nonexistent/tri/ranking"]);
}

#[test]
fn revise_prints_the_ranking_file() {
    let out = ok(&["--machine", "revise", "-n", "1", "--op", "ci", "x0", "~x0"]);
    assert_eq!(out, "0 : 2\nu : 2\n1 : 2\n");
    let human = ok(&["revise", "-n", "1", "--op", "ci", "x0", "~x0"]);
    assert!(human.starts_with("0 : 2\nu : 2\n1 : 2\n# formula: "));
    // drastic keeps the input ranking
    let out = ok(&["--machine", "revise", "-n", "1", "--op", "drastic", "x0", "~x0"]);
    assert_eq!(out, "0 : 1\nu : 2\n1 : 3\n");
    let out = ok(&["--machine", "revise", "-n", "1", "--op", "123123123", "x0", "~x0"]);
    assert_eq!(out, "0 : 1\nu : 2\n1 : 3\n");
}

#[test]
fn check_ci_passes() {
    let out = ok(&["check", "ci", "-n", "1"]);
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS")).count(), 10);
    assert!(out.contains("PASS CI1 (729 pairs)"));
    let sampled = ok(&["check", "ci", "-n", "2", "--samples", "50", "--seed", "7"]);
    assert!(sampled.contains("PASS CI8 (50 pairs)"));
}

#[test]
fn check_charac_for_named_tables() {
    assert!(ok(&["check", "charac", "--op", "ci", "-n", "1"]).starts_with("PASS"));
    assert_eq!(ok(&["--machine", "check", "charac", "--op", "drastic", "-n", "1"]), "123123123 PASS\n");
    usage(&["check", "charac", "--op", "ci", "-n", "2"]);
}

#[test]
fn closure_reports() {
    let out = tri(&["--machine", "closure", "--variant", "box2"]);
    assert_eq!(out.code, EXIT_OK);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines.len(), 15);
    assert!(lines.iter().all(|l| l.ends_with(" OUT")));
    let out = ok(&["closure", "--variant", "box1", "--include-bot"]);
    assert!(out.contains("17"));
    usage(&["closure", "--variant", "box3"]);
}

#[test]
fn usage_errors_exit_two() {
    usage(&[]);
    usage(&["frobnicate"]);
    usage(&["eval", "-n", "1", "x0 &", "--at", "1"]);
    usage(&["eval", "-n", "1", "x3", "--at", "1"]);
    usage(&["eval", "-n", "2", "x0", "--at", "1"]);
    usage(&["eval", "-n", "1", "x0", "--at", "2"]);
    usage(&["eval", "-n", "99", "x0", "--at", "1"]);
    usage(&["revise", "-n", "1", "--op", "12312312", "x0", "x0"]);
    usage(&["revise", "-n", "1", "--op", "123123124", "x0", "x0"]);
    usage(&["check", "all-operators", "-n", "2"]);
}

#[test]
fn help_and_version_exit_zero() {
    assert!(ok(&["--help"]).contains("revise"));
    assert!(!ok(&["--version"]).is_empty());
}

#[test]
fn output_is_deterministic() {
    let args = ["check", "ci", "-n", "2", "--samples", "20", "--seed", "3"];
    assert_eq!(ok(&args), ok(&args));
}

#[test]
fn binary_end_to_end() {
    let out = Command::new(env!("CARGO_BIN_EXE_tri"))
        .args(["eval", "-n", "1", "<>1 x0", "--at", "1"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "u\n");

    let out = Command::new(env!("CARGO_BIN_EXE_tri")).arg("nope").output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
    assert!(out.stdout.is_empty());
}
