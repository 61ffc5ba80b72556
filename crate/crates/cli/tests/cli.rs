use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symlabel"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

fn bundled(rel: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(rel)
        .to_str()
        .unwrap()
        .to_string()
}

fn count_of(report: &str) -> usize {
    let v: serde_json::Value = serde_json::from_str(report).unwrap();
    v["count"].as_u64().unwrap() as usize
}

fn scrambled(dir: &TempDir, gen: &[&str], seed: &str) -> String {
    let table = path(dir, "table.json");
    let mut args = vec!["gen", "--out", &table];
    args.extend_from_slice(gen);
    assert!(run(&args).status.success());
    let x = path(dir, "x.json");
    assert!(run(&["scramble", "--in", &table, "--seed", seed, "--out", &x])
        .status
        .success());
    x
}

#[test]
fn gen_a5_writes_surds() {
    let o = run(&["gen", "--group", "A", "--n", "5"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains(r#"{"a":1,"b":1,"D":5}"#));
    assert!(text.contains(r#"{"a":1,"b":-1,"D":5}"#));
}

#[test]
fn gen_output_is_canonical() {
    let dir = TempDir::new().unwrap();
    let first = path(&dir, "a.json");
    assert!(run(&["gen", "--group", "A", "--n", "7", "--out", &first])
        .status
        .success());
    let bytes = std::fs::read(&first).unwrap();
    let o = run(&["gen", "--group", "A", "--n", "7"]);
    assert_eq!(o.stdout, bytes);
}

#[test]
fn gen_brauer_s4_mod_2() {
    let o = run(&[
        "gen",
        "--group",
        "S",
        "--n",
        "4",
        "--p",
        "2",
        "--decomp",
        &bundled("decomp/d4p2.json"),
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("[1, 1],\n    [2, -1]"));
}

#[test]
fn scramble_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let table = path(&dir, "t.json");
    assert!(run(&["gen", "--group", "S", "--n", "6", "--out", &table])
        .status
        .success());
    let (a, b) = (path(&dir, "a.json"), path(&dir, "b.json"));
    assert!(run(&["scramble", "--in", &table, "--seed", "9", "--out", &a])
        .status
        .success());
    assert!(run(&["scramble", "--in", &table, "--seed", "9", "--out", &b])
        .status
        .success());
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert!(Path::new(&format!("{a}.perm.json")).exists());
    assert!(!std::fs::read_to_string(&a).unwrap().contains("rowLabels"));
}

#[test]
fn relabel_counts() {
    let dir = TempDir::new().unwrap();
    for (group, n, want) in [("S", "5", 1), ("S", "6", 2), ("A", "6", 4), ("S", "8", 1)] {
        let x = scrambled(&dir, &["--group", group, "--n", n], "4");
        let o = run(&["relabel", "--in", &x, "--group", group, "--n", n]);
        assert!(o.status.success(), "{group}{n}");
        assert_eq!(count_of(&stdout(&o)), want, "{group}{n}");
    }
}

#[test]
fn relabel_brauer_with_decomposition_directory() {
    let dir = TempDir::new().unwrap();
    let x = scrambled(&dir, &["--group", "S", "--n", "8", "--p", "3"], "1");
    let o = run(&[
        "relabel",
        "--in",
        &x,
        "--group",
        "S",
        "--n",
        "8",
        "--p",
        "3",
        "--decomp",
        &bundled("decomp"),
    ]);
    assert!(o.status.success());
    assert_eq!(count_of(&stdout(&o)), 1);
}

#[test]
fn random_matrix_is_not_a_table() {
    let dir = TempDir::new().unwrap();
    let x = path(&dir, "r.json");
    std::fs::write(&x, r#"{"group":"S","n":3,"values":[[1,2,3],[4,5,6],[7,8,9]]}"#).unwrap();
    let o = run(&["relabel", "--in", &x, "--group", "S", "--n", "3"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn aut_on_c2_d8() {
    let o = run(&["aut", "--in", &bundled("printed/c2xd8.json")]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["order"], 48);
    assert_eq!(v["caut"]["orbitSizes"], serde_json::json!([4, 3, 2, 1]));
    assert_eq!(v["claut"]["orbitSizes"], serde_json::json!([6, 2, 1, 1]));
    assert_eq!(v["permutationIsomorphic"], false);
}

#[test]
fn orders_on_scrambled_s4() {
    let dir = TempDir::new().unwrap();
    let x = scrambled(&dir, &["--group", "S", "--n", "4"], "1");
    let side: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(format!("{x}.perm.json")).unwrap()).unwrap();
    // column order of the generated table: (1^4), (2,1,1), (2,2), (3,1), (4)
    let pos = side["cols"].as_array().unwrap().iter().position(|c| c == 3).unwrap();
    let o = run(&["orders", "--in", &x, "--group", "S", "--n", "4"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["orders"][pos], 2);
}

#[test]
fn validate_reports_triangularity() {
    let dir = TempDir::new().unwrap();
    let text = std::fs::read_to_string(bundled("decomp/d4p2.json")).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["entries"][0][1] = serde_json::json!(1);
    let bad = path(&dir, "bad.json");
    std::fs::write(&bad, v.to_string()).unwrap();
    let o = run(&["validate", "--in", &bad]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("does not dominate"));
    assert!(run(&["validate", "--in", &bundled("decomp/d4p2.json")])
        .status
        .success());
    assert!(run(&["validate", "--in", &bundled("printed/a5.json")]).status.success());
}

#[test]
fn brauer_gen_from_file() {
    let o = run(&["brauer-gen", "--decomp", &bundled("decomp/d5p5.json")]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("\"p\": 5"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["gen", "--group", "Q", "--n", "3"]).status.code(), Some(2));
    assert_eq!(run(&["gen", "--group", "S", "--n", "0"]).status.code(), Some(2));
    assert_eq!(
        run(&["scramble", "--in", "/nonexistent", "--seed", "0", "--out", "/tmp/x"])
            .status
            .code(),
        Some(2)
    );
}
