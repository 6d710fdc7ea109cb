use std::path::PathBuf;

use kmn_cli::app::{run, Exit};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(data(name)).unwrap()
}

fn kmn(args: &[&str]) -> Exit {
    run(std::iter::once("kmn").chain(args.iter().copied()))
}

fn ok(args: &[&str]) -> String {
    let exit = kmn(args);
    assert_eq!(exit.code, 0, "{args:?}: {}", exit.stderr);
    exit.stdout
}

#[test]
fn mult_reproduces_the_worked_example() {
    let out = ok(&["mult", &data("worked_left.json"), &data("worked_right.json"), "--trace"]);
    assert_eq!(out, golden("worked_mult.golden.json"));
    let other = ok(&["mult", &data("worked_left.json"), &data("worked_right.json"), "--order", "right-to-left"]);
    let a: serde_json::Value = serde_json::from_str(&out).unwrap();
    let b: serde_json::Value = serde_json::from_str(&other).unwrap();
    assert_eq!(a["product"], b["product"]);
}

#[test]
fn dict_roundtrip_is_byte_identical() {
    for (file, other) in [("gl_weights.json", "diagrams.json"), ("diagrams.json", "gl_weights.json")] {
        let once = ok(&["dict", &data(file)]);
        assert_eq!(once, golden(other));
        let dir = std::env::temp_dir().join(format!("kmn-dict-{}-{file}", std::process::id()));
        std::fs::write(&dir, &once).unwrap();
        let twice = ok(&["dict", &dir.display().to_string()]);
        std::fs::remove_file(&dir).unwrap();
        assert_eq!(twice, golden(file));
    }
}

#[test]
fn stretched_total_for_rank_two() {
    let out = ok(&["stretched", "--m", "2", "--n", "2", "--p", "0", "--q", "0", "--d", "2"]);
    assert_eq!(out, golden("stretched_2_2_0_0_2.golden.json"));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["total"], 8);
}

#[test]
fn golden_outputs() {
    let cases: [(&[&str], &str); 6] = [
        (&["render", &data("worked_left.json")], "worked_left.golden.txt"),
        (&["render", &data("weight_2_2.json")], "weight_2_2.golden.txt"),
        (&["crystal", "--m", "1", "--n", "1", "--p", "0", "--q", "1"], "crystal_1_1_0_1.golden.dot"),
        (&["cartan", "--m", "1", "--n", "1", "--p", "0", "--q", "2", "--graded", "--format", "csv"], "cartan_1_1_0_2_graded.golden.csv"),
        (&["kac", &data("weight_2_2.json")], "kac_2_2.golden.json"),
        (&["path", &data("weight_2_1.json")], "path_2_1.golden.json"),
    ];
    for (args, file) in cases {
        assert_eq!(ok(args), golden(file), "{args:?}");
    }
}

#[test]
fn outputs_are_deterministic() {
    let runs: [&[&str]; 4] = [
        &["block", "--m", "2", "--n", "1", "--p", "0", "--q", "1"],
        &["decomp", "--m", "2", "--n", "1", "--p", "0", "--q", "1", "--graded"],
        &["oracle", "eigen", "--m", "1", "--n", "1", "--p", "0", "--q", "1", "--d", "2"],
        &["sample", "--m", "2", "--n", "1", "--p", "0", "--q", "1", "--count", "5", "--seed", "7"],
    ];
    for args in runs {
        assert_eq!(ok(args), ok(args), "{args:?}");
    }
    let a = ok(&["assoc", "--m", "1", "--n", "1", "--p", "0", "--q", "2", "--samples", "50", "--seed", "3"]);
    let b = ok(&["assoc", "--m", "1", "--n", "1", "--p", "0", "--q", "2", "--samples", "50", "--seed", "3"]);
    assert_eq!(a, b);
    assert!(a.contains("\"passed\": true"));
}

#[test]
fn crystal_node_ids_hash_weights() {
    let out = ok(&["crystal", "--m", "1", "--n", "1", "--p", "0", "--q", "1", "--restricted"]);
    assert!(out.starts_with("digraph crystal {\n"));
    let ids: Vec<&str> = out.lines().filter(|l| l.contains("[label=") && !l.contains("->")).map(|l| l.trim().split(' ').next().unwrap()).collect();
    assert!(ids.iter().all(|id| id.len() == 17 && id.starts_with('w')));
    let mut unique = ids.clone();
    unique.sort();
    unique.dedup();
    assert_eq!(unique.len(), ids.len());
}

#[test]
fn xcheck_passes_on_small_windows() {
    for (m, n, p, q, d) in [("1", "1", "0", "1", "2"), ("2", "1", "0", "1", "2")] {
        let exit = kmn(&["xcheck", "--m", m, "--n", n, "--p", p, "--q", q, "--d", d]);
        assert_eq!(exit.code, 0, "{}", exit.stderr);
        let v: serde_json::Value = serde_json::from_str(&exit.stdout).unwrap();
        assert_eq!(v["passed"], true);
    }
}

#[test]
fn endo_reports_exterior_algebras() {
    let out = ok(&["endo", "--m", "2", "--n", "2", "--p", "0", "--q", "0"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["passed"], true);
    assert!(!v["rings"].as_array().unwrap().is_empty());
}

#[test]
fn oracle_suites_pass() {
    for suite in ["hecke", "casimir"] {
        let out = ok(&["oracle", suite, "--m", "1", "--n", "1", "--p", "0", "--q", "1", "--d", "2"]);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["passed"], true, "{suite}: {out}");
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(kmn(&["stretched", "--m", "1"]).code, 2);
    assert_eq!(kmn(&["cartan", "--m", "1", "--n", "1", "--p", "0", "--q", "1", "--format", "dot"]).code, 2);
    assert_eq!(kmn(&["frobnicate"]).code, 2);
    assert_eq!(kmn(&["--help"]).code, 0);
}

#[test]
fn domain_errors_exit_one_with_json() {
    let exit = kmn(&["block", "--m", "1", "--n", "1", "--p", "2", "--q", "0"]);
    assert_eq!(exit.code, 1);
    let v: serde_json::Value = serde_json::from_str(exit.stderr.trim()).unwrap();
    assert_eq!(v["error"], "domain");
    let missing = kmn(&["kac", "/nonexistent/weight.json"]);
    assert_eq!(missing.code, 1);
    let v: serde_json::Value = serde_json::from_str(missing.stderr.trim()).unwrap();
    assert_eq!(v["error"], "io");
    let big = kmn(&["oracle", "eigen", "--m", "3", "--n", "3", "--p", "0", "--q", "0", "--d", "6"]);
    assert_eq!(big.code, 1);
    let v: serde_json::Value = serde_json::from_str(big.stderr.trim()).unwrap();
    assert_eq!(v["error"], "oracle");
}
