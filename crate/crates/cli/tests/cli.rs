use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn spinal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinal"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn value<'a>(text: &'a str, key: &str) -> &'a str {
    let prefix = format!("{key}=");
    text.lines()
        .find_map(|l| l.strip_prefix(prefix.as_str()))
        .unwrap_or_else(|| panic!("no `{key}=` line in:\n{text}"))
}

fn write(dir: &TempDir, name: &str, contents: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Decoded T(1,1,1), through the CLI.
fn smallest_member(dir: &TempDir) -> PathBuf {
    let graph = spinal(&["family", "generate", "1", "1", "1"]);
    assert!(graph.status.success());
    let og = write(dir, "g111.og", &stdout(&graph));
    let tri = spinal(&["decode", path(&og)]);
    assert!(tri.status.success());
    write(dir, "t111.tri", &stdout(&tri))
}

#[test]
fn analyze_reports_the_smallest_family_member() {
    let dir = TempDir::new().unwrap();
    let tri = smallest_member(&dir);
    let out = spinal(&["analyze", path(&tri)]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(value(&text, "tets"), "12");
    assert_eq!(value(&text, "edges"), "3");
    assert_eq!(value(&text, "chi"), "-9");
    assert_eq!(value(&text, "degrees"), "24,24,24");
    assert_eq!(value(&text, "link_euler_total"), "-18");
    assert_eq!(value(&text, "verdict"), "Minimal/PoorThreeEdge");
}

#[test]
fn epsilon_prints_the_exact_value() {
    let dir = TempDir::new().unwrap();
    let tri = smallest_member(&dir);
    let out = spinal(&["epsilon", path(&tri)]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(value(&text, "epsilon"), "(-17710,10946)");
    assert!(text.starts_with("-17710 + 10946*eps"));
    assert_eq!(value(&text, "terms"), "2");
}

#[test]
fn spine_and_subpoly_agree() {
    let dir = TempDir::new().unwrap();
    let tri = smallest_member(&dir);
    let spine = stdout(&spinal(&["spine", path(&tri)]));
    assert_eq!(value(&spine, "components"), "3");
    assert_eq!(value(&spine, "vertices"), "12");
    assert_eq!(value(&spine, "edges"), "24");
    assert_eq!(spine.lines().filter(|l| l.starts_with("edge ")).count(), 24);
    let sub = stdout(&spinal(&["subpoly", path(&tri)]));
    assert!(sub.lines().any(|l| l == "{} v=0 chi=0"));
    assert!(sub.lines().any(|l| l == "{0 1 2} v=12 chi=-9"));
    assert_eq!(value(&sub, "poor"), "true");
}

#[test]
fn unpaired_face_is_a_validation_error() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.tri", "tets 1\n0 0 0 1 1023\n0 1 0 0 1023\n");
    let out = spinal(&["analyze", path(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(value(&stdout(&out), "error_kind"), "UnpairedFace");
}

#[test]
fn missing_file_and_bad_usage_exit_with_one() {
    assert_eq!(spinal(&["analyze", "/nonexistent/file.tri"]).status.code(), Some(1));
    assert_eq!(spinal(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(spinal(&["--help"]).status.code(), Some(0));
}

#[test]
fn moves_round_trip() {
    let dir = TempDir::new().unwrap();
    let tri = smallest_member(&dir);
    let moved = spinal(&["move", "23", path(&tri), "0", "0"]);
    assert_eq!(moved.status.code(), Some(0));
    let moved_path = write(&dir, "moved.tri", &stdout(&moved));
    let report = stdout(&spinal(&["analyze", path(&moved_path)]));
    assert_eq!(value(&report, "edges"), "4");
    assert_eq!(value(&report, "verdict"), "Unknown/None");
    let eps = stdout(&spinal(&["epsilon", path(&moved_path)]));
    assert_eq!(value(&eps, "epsilon"), "(-17710,10946)");

    let degrees = value(&report, "degrees").split(',').collect::<Vec<_>>();
    let edge = degrees.iter().position(|&d| d == "3").unwrap().to_string();
    let back = spinal(&["move", "32", path(&moved_path), &edge]);
    assert_eq!(back.status.code(), Some(0));
    let back_path = write(&dir, "back.tri", &stdout(&back));
    let report = stdout(&spinal(&["analyze", path(&back_path)]));
    assert_eq!(value(&report, "verdict"), "Minimal/PoorThreeEdge");

    let refused = spinal(&["move", "32", path(&tri), "0"]);
    assert_eq!(refused.status.code(), Some(1));
    assert_eq!(value(&stdout(&refused), "error_kind"), "MoveNotApplicable");
}

#[test]
fn family_verify_covers_all_triples() {
    let out = spinal(&["family", "verify", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(value(&text, "checked"), "8");
    assert_eq!(value(&text, "failed"), "0");
    assert!(text.contains("T(2,2,2) tets=18 edges=3 degrees=36,36,36 poor=true verdict=Minimal/PoorThreeEdge ok=true"));
}

#[test]
fn family_verify_with_bad_blocks_is_an_invariant_violation() {
    let dir = TempDir::new().unwrap();
    let blocks = write(
        &dir,
        "blocks",
        "A junction 0 2 center 0 2 colors 0 0 0 0\nB junction 0 2 center 0 2 colors 0 0 0 0\n",
    );
    let out = spinal(&["family", "verify", "1", "--blocks", path(&blocks)]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(value(&stdout(&out), "failed"), "1");

    let garbage = write(&dir, "garbage", "A junction 0 1 center 0 2 colors 0 0 0 0\n");
    let out = spinal(&["family", "generate", "1", "1", "1", "--blocks", path(&garbage)]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(value(&stdout(&out), "error_kind"), "BadBlockDecoration");
}

#[test]
fn census_lists_members_and_gates_the_long_run() {
    let out = spinal(&["census", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(value(&text, "members"), "11");
    assert_eq!(text.lines().filter(|l| l.contains(" verdict=")).count(), 11);

    let out = spinal(&["census", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(value(&stdout(&out), "error_kind"), "LongRunNotEnabled");
}

#[test]
fn thread_cap_is_honoured_and_validated() {
    let out = Command::new(env!("CARGO_BIN_EXE_spinal"))
        .args(["census", "2"])
        .env("SPINAL_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(value(&stdout(&out), "members"), "173");

    let out = Command::new(env!("CARGO_BIN_EXE_spinal"))
        .args(["census", "1"])
        .env("SPINAL_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn decode_rejects_malformed_graphs() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.og", "vertex 0 over 0 2\nedge 0 0 0 2 color 5\nedge 0 1 0 3 color 0\n");
    let out = spinal(&["decode", path(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(value(&stdout(&out), "error_kind"), "BadColor");
}
