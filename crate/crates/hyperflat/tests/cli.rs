use std::fs;
use std::process::{Command, Output};

fn hyperflat(args: &[&str]) -> Output {
  Command::new(env!("CARGO_BIN_EXE_hyperflat")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
  String::from_utf8(o.stdout.clone()).unwrap()
}

const JACOBI_BROKEN: &str = "\
name broken
dim 4
bracket 1 2 -> 3:1
bracket 1 3 -> 1:1
matrix I
0 -1 0 0
1 0 0 0
0 0 0 -1
0 0 1 0
matrix J
0 0 -1 0
0 0 0 1
1 0 0 0
0 -1 0 0
matrix K
0 0 0 -1
0 0 -1 0
0 1 0 0
1 0 0 0
";

#[test]
fn check_bundled_entry_passes() {
  let out = hyperflat(&["check", "catalog:abelian-h1"]);
  assert_eq!(out.status.code(), Some(0));
  let text = stdout(&out);
  assert!(text.contains("filtration: 4 > 0"), "{text}");
  assert!(text.ends_with("overall: PASS\n"));
}

#[test]
fn machine_output_matches_golden() {
  let out = hyperflat(&["check", "--machine", "catalog:quaternionic-heisenberg-r1"]);
  let golden = include_str!("golden/quaternionic-heisenberg-r1.txt");
  assert_eq!(stdout(&out), golden);
}

#[test]
fn verb_selects_checks() {
  let out = hyperflat(&["curvature", "--machine", "catalog:three-step-nonflat-12"]);
  assert_eq!(out.status.code(), Some(0));
  let text = stdout(&out);
  assert!(text.contains("check.curvature.flat = false"));
  assert!(!text.contains("check.descent"));
  assert!(!text.contains("check.unipotence"));

  let text = stdout(&hyperflat(&["holonomy", "--machine", "catalog:three-step-nonflat-12"]));
  assert!(text.contains("check.unipotence.verdict = not-applicable\ncheck.unipotence.reason = not-flat\n"));

  let text = stdout(&hyperflat(&["filtration", "--machine", "catalog:complex-heisenberg-r2"]));
  assert!(text.contains("filtration.chain = 8 > 4 > 0"));
  assert!(!text.contains("check.torsion"));
}

#[test]
fn verdict_failure_exits_one() {
  let dir = tempfile::tempdir().unwrap();
  let path = dir.path().join("broken.alg");
  fs::write(&path, JACOBI_BROKEN).unwrap();
  let out = hyperflat(&["check", "--machine", path.to_str().unwrap()]);
  assert_eq!(out.status.code(), Some(1));
  let text = stdout(&out);
  assert!(text.contains("check.jacobi.verdict = fail"));
  assert!(text.contains("check.obata.verdict = skipped\ncheck.obata.reason = jacobi-failed\n"));
}

#[test]
fn input_errors_exit_two() {
  let dir = tempfile::tempdir().unwrap();
  let path = dir.path().join("bad.alg");
  fs::write(&path, JACOBI_BROKEN.replace("bracket 1 2", "bracket 2 1")).unwrap();
  let out = hyperflat(&["check", path.to_str().unwrap()]);
  assert_eq!(out.status.code(), Some(2));
  let err = String::from_utf8(out.stderr).unwrap();
  assert!(err.contains("line 3, column 9"), "{err}");

  assert_eq!(hyperflat(&["check", "/nonexistent/x.alg"]).status.code(), Some(2));
  assert_eq!(hyperflat(&["check", "catalog:nope"]).status.code(), Some(2));
  assert_eq!(hyperflat(&["check", "--format", "json", "catalog:abelian-h1"]).status.code(), Some(2));
}

#[test]
fn directory_reports_are_sorted() {
  let dir = tempfile::tempdir().unwrap();
  for name in ["zeta", "alpha", "mid"] {
    let text = hyperflat_text("abelian-h1").replace("name abelian-h1", &format!("name {name}"));
    fs::write(dir.path().join(format!("{name}.alg")), text).unwrap();
  }
  fs::write(dir.path().join("notes.txt"), "ignored").unwrap();
  let out = hyperflat(&["check", "--machine", dir.path().to_str().unwrap()]);
  assert_eq!(out.status.code(), Some(0));
  let names: Vec<String> =
    stdout(&out).lines().filter_map(|l| l.strip_prefix("report.name = ")).map(str::to_string).collect();
  assert_eq!(names, ["alpha", "mid", "zeta"]);
}

#[test]
fn format_flag_and_catalog_listing() {
  let machine = stdout(&hyperflat(&["check", "--format", "machine", "catalog:abelian-h2"]));
  assert_eq!(machine, stdout(&hyperflat(&["check", "--machine", "catalog:abelian-h2"])));

  let listing = stdout(&hyperflat(&["catalog"]));
  assert_eq!(listing.lines().count(), 7);
  assert!(listing.contains("three-step-nonflat-12"));
}

fn hyperflat_text(name: &str) -> String {
  stdout(&hyperflat(&["catalog", name]))
}
