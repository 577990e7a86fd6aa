mod common;

use std::fs;
use std::path::Path;

use nnc::cli::run;
use nnc::Subset;
use tempfile::TempDir;

fn nnc(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let code = run(std::iter::once("nnc").chain(args.iter().copied()), &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

#[test]
fn condense_circle_writes_artifacts() {
    let dir = TempDir::new().unwrap();
    let d = dir.path().to_str().unwrap();
    let (code, out) = nnc(&[
        "condense", "--algo", "rss", "--gen", "circle", "--n", "10000", "--seed", "42", "--out-dir", d,
    ]);
    assert_eq!(code, 0, "{out}");
    let subset = Subset::from_json_path(dir.path().join("subset.rss.json")).unwrap();
    assert_eq!(subset.source_size, 10_000);
    let csv = fs::read_to_string(dir.path().join("subset.rss.csv")).unwrap();
    assert_eq!(csv.lines().count(), subset.len() + 1);
    assert!(out.contains("RSS"));
}

#[test]
fn banana_table_has_five_rows() {
    let dir = TempDir::new().unwrap();
    let banana = common::banana_path();
    let (code, out) = nnc(&[
        "condense",
        "--input",
        banana.to_str().unwrap(),
        "--on-conflict",
        "keep-first",
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let rss: usize = out
        .lines()
        .find(|l| l.starts_with("RSS"))
        .and_then(|l| l.split_whitespace().nth(1))
        .unwrap()
        .parse()
        .unwrap();
    assert!((rss as f64 - 1025.0).abs() <= 102.5, "{rss}");
    for alg in ["fcnn", "mss", "rss", "vss", "net"] {
        assert!(dir.path().join(format!("subset.{alg}.json")).is_file());
    }

    // the conflicting duplicate is rejected by default
    let (code, _) = nnc(&["condense", "--input", banana.to_str().unwrap(), "--out-dir", dir.path().to_str().unwrap()]);
    assert_eq!(code, 3);
}

#[test]
fn error_exit_codes() {
    let dir = TempDir::new().unwrap();
    let single = path(dir.path(), "single.csv");
    fs::write(&single, "0,0,a\n1,1,a\n2,2,a\n").unwrap();
    let d = dir.path().to_str().unwrap();
    assert_eq!(nnc(&["condense", "--algo", "mss", "--input", &single, "--out-dir", d]).0, 3);
    assert_eq!(nnc(&["condense", "--input", &path(dir.path(), "missing.csv")]).0, 2);
    assert_eq!(nnc(&["condense", "--gen", "circle", "--n", "50", "--out-dir", &path(dir.path(), "nope")]).0, 2);

    let cube = path(dir.path(), "cube.csv");
    assert_eq!(nnc(&["generate", "--gen", "sphere", "--dim", "3", "-o", &cube]).0, 0);
    assert_eq!(nnc(&["plot", "--input", &cube]).0, 5);
}

#[test]
fn verify_and_evaluate_check_provenance() {
    let dir = TempDir::new().unwrap();
    let d = dir.path().to_str().unwrap();
    assert_eq!(nnc(&["condense", "--gen", "circle", "--n", "400", "--seed", "1", "--out-dir", d]).0, 0);
    let rss = path(dir.path(), "subset.rss.json");

    let (code, out) = nnc(&["verify", "--gen", "circle", "--n", "400", "--seed", "1", "--subset", &rss]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("NeCharging: PASS"));

    let report = path(dir.path(), "eval.json");
    let (code, out) = nnc(&[
        "evaluate", "--gen", "circle", "--n", "400", "--seed", "1", "--subset", &rss, "--report", &report,
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["subsetAccuracy"], 1.0);
    assert_eq!(v["fullAccuracy"], 1.0);
    assert!(Path::new(&report).is_file());

    assert_eq!(nnc(&["verify", "--gen", "circle", "--n", "400", "--seed", "2", "--subset", &rss]).0, 4);
    assert_eq!(nnc(&["evaluate", "--gen", "circle", "--n", "400", "--seed", "2", "--subset", &rss]).0, 4);
}

#[test]
fn verify_fails_a_bad_subset() {
    let dir = TempDir::new().unwrap();
    let d = dir.path().to_str().unwrap();
    assert_eq!(nnc(&["condense", "--algo", "mss", "--gen", "circle", "--n", "300", "--out-dir", d]).0, 0);
    let file = path(dir.path(), "subset.mss.json");
    let mut subset = Subset::from_json_path(&file).unwrap();
    subset.indices.truncate(1);
    subset.to_json(fs::File::create(&file).unwrap()).unwrap();
    assert_eq!(nnc(&["verify", "--gen", "circle", "--n", "300", "--subset", &file]).0, 1);
}

#[test]
fn plot_outputs() {
    let dir = TempDir::new().unwrap();
    let d = dir.path().to_str().unwrap();
    assert_eq!(nnc(&["condense", "--algo", "fcnn", "--gen", "circle", "--n", "500", "--out-dir", d]).0, 0);
    let csv = path(dir.path(), "plot.csv");
    let svg = path(dir.path(), "plot.svg");
    let subset = path(dir.path(), "subset.fcnn.json");
    let (code, _) = nnc(&["plot", "--gen", "circle", "--n", "500", "--subset", &subset, "--csv", &csv, "--svg", &svg]);
    assert_eq!(code, 0);
    let rows = fs::read_to_string(&csv).unwrap();
    assert_eq!(rows.lines().count(), 501);
    let selected = Subset::from_json_path(&subset).unwrap().len();
    assert_eq!(rows.matches(",true").count(), selected);
    let svg = fs::read_to_string(&svg).unwrap();
    assert_eq!(svg.matches("<circle").count(), 500);
}

#[test]
fn seeded_commands_are_reproducible() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (path(dir.path(), "a.csv"), path(dir.path(), "b.csv"));
    for p in [&a, &b] {
        assert_eq!(nnc(&["generate", "--gen", "circle", "--n", "200", "--seed", "7", "-o", p]).0, 0);
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());

    let (tr, te) = (path(dir.path(), "train.csv"), path(dir.path(), "test.csv"));
    assert_eq!(nnc(&["split", "--input", &a, "--train-out", &tr, "--test-out", &te]).0, 0);
    assert_eq!(fs::read_to_string(&te).unwrap().lines().count(), 41);

    let (code, out) = nnc(&["bench", "--algo", "rss", "--sizes", "100,200", "--runs", "1"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("algorithm,n,elapsed,comparisons,subsetSize"));
    assert_eq!(out.lines().count(), 3);
}
