use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use coxchar::group::build_group;
use coxchar::table::TableErrorKind;
use coxchar::{shipped_tables_dir, Report, Status, TableFile};
use coxeter_core::Cyclotomic;

fn coxchar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coxchar")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn shipped(name: &str) -> PathBuf {
    shipped_tables_dir().join(name)
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn shipped_pair_table_passes() {
    let t = shipped("b5_1245.tbl");
    let o = coxchar(&["verify-c", "--group", "B5", "--L", "1,2,4,5", "--table", path_str(&t)]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains("ThmC-sum   PASS"));
    assert!(text.contains("ThmC-omega PASS"));
    assert!(text.ends_with("2/2 identities passed\n"));
}

#[test]
fn negated_value_fails_with_diffs() {
    let text = std::fs::read_to_string(shipped("b5_1245.tbl")).unwrap();
    let broken = text.replacen("gen 1245 value E(6)", "gen 1245 value -E(6)", 1);
    assert_ne!(broken, text);
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("broken.tbl");
    std::fs::write(&p, broken).unwrap();
    let o = coxchar(&["verify-c", "--group", "B5", "--L", "1,2,4,5", "--table", path_str(&p)]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("ThmC-sum   FAIL"), "{out}");
    assert!(out.contains("class") && out.contains("expected"), "{out}");
}

#[test]
fn parse_errors_exit_2_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.tbl");
    for (body, want) in [
        ("gen 1245 valeu E(6)", "4:1: syntax error"),
        ("gen 1245 value E(6", "4:16: syntax error"),
    ] {
        std::fs::write(&p, format!("group B 5\nL 1 2 4 5\nclass x rep 1245\n{body}\n")).unwrap();
        let o = coxchar(&["verify-c", "--group", "B5", "--L", "1,2,4,5", "--table", path_str(&p)]);
        assert_eq!(o.status.code(), Some(2));
        let err = String::from_utf8_lossy(&o.stderr);
        assert!(err.contains(want), "{err}");
    }
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(coxchar(&["verify-c", "--group", "B5", "--L", "1,2"]).status.code(), Some(2));
    assert_eq!(coxchar(&["verify-c", "--group", "Q5", "--L", "1", "--solve"]).status.code(), Some(2));
    assert_eq!(coxchar(&["verify-c", "--group", "B5", "--L", "1,9", "--solve"]).status.code(), Some(2));
    assert_eq!(coxchar(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn machine_format_round_trips_and_ignores_thread_count() {
    let t = shipped("d5_D4.tbl");
    let args = ["--format", "machine", "verify-c", "--group", "D5", "--L", "1',2,3,4", "--table", path_str(&t)];
    let one = coxchar(&[&["--jobs", "1"][..], &args[..]].concat());
    let two = coxchar(&[&["--jobs", "2"][..], &args[..]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, two.stdout);
    let text = stdout(&one);
    let report = Report::parse_machine(&text).unwrap();
    assert_eq!(report.records.len(), 2);
    assert!(report.records.iter().all(|r| r.status == Status::Pass && r.subset == "{1',2,3,4}"));
    assert_eq!(report.render_machine(), text);
}

#[test]
fn solve_mode_and_whole_group() {
    let o = coxchar(&["verify-c", "--group", "B3", "--L", "S", "--solve", "--oracle"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("Oracle-rho PASS"));
    let o = coxchar(&["verify-a", "--group", "A2", "--solve"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn whole_group_without_tables_needs_solve() {
    let dir = tempfile::tempdir().unwrap();
    let o = coxchar(&["verify-a", "--group", "B3", "--tables", path_str(dir.path())]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no table for the shape"));
}

#[test]
fn omega_command_with_oracle() {
    let o = coxchar(&["omega", "--group", "A2", "--rep", "12", "--oracle"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("degree 2: -1"), "{out}");
    assert!(out.contains("oracle: PASS"), "{out}");
    let o = coxchar(&["--format", "machine", "omega", "--group", "B3", "--rep", "id", "--top-only"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["total"], 15);
}

#[test]
fn table_value_literals_are_exact() {
    let text = "group B 5\nL 1 2 4 5\n\nclass w15 rep 12 45\ngen 1245 value E(3)+E(3)^2\n";
    let t = TableFile::parse(text).unwrap();
    assert_eq!(t.entries[0].gens[0].value, Cyclotomic::from_integer(-1));
}

#[test]
fn missing_centralizer_generator_is_semantic() {
    let gb = build_group("B5").unwrap();
    let text = std::fs::read_to_string(shipped("b5_1245.tbl")).unwrap();
    let t = TableFile::parse(&text.replacen("gen w0 value 1\n", "", 1)).unwrap();
    let e = t.resolve(&gb).unwrap_err();
    assert_eq!(e.kind, TableErrorKind::Semantic);
    assert!(e.to_string().contains("w13"), "{e}");
}

#[test]
fn every_shipped_table_validates() {
    let files = coxchar::read_table_dir(shipped_tables_dir()).unwrap();
    assert_eq!(files.len(), 14);
    for t in files {
        let gb = build_group(&t.group_name()).unwrap();
        let r = t.resolve(&gb).unwrap();
        assert!(!r.assignments.is_empty());
    }
}
