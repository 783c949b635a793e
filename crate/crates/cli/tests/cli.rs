use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_recperm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let o = run(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout).unwrap()
}

#[test]
fn single_point() {
    assert_eq!(stdout(&["sample", "--model", "two-param", "--theta", "1", "--zeta", "1", "--n", "1"]), "1\n");
}

#[test]
fn stirling_n3() {
    assert_eq!(
        stdout(&["exact", "stirling", "--n", "3"]),
        "{(0,1):1,(0,2):1,(1,0):1,(1,1):2,(2,0):1}\n"
    );
}

#[test]
fn class_size() {
    assert_eq!(stdout(&["exact", "d", "--composition", "3,1,^1,3,2"]), "3024\n");
    let j: serde_json::Value =
        serde_json::from_str(&stdout(&["--format", "json", "exact", "d", "--composition", "3,1,^1,3,2"])).unwrap();
    assert_eq!(j["d"], "3024");
}

#[test]
fn exact_table_sums_to_one() {
    let out = stdout(&["exact", "table", "--n", "3", "--theta", "1", "--zeta", "2"]);
    assert_eq!(out.lines().count(), 6);
    assert!(out.contains("1,2,3\t1/3"));
    assert!(out.contains("3,2,1\t1/12"));
}

#[test]
fn pe_law() {
    assert_eq!(stdout(&["exact", "pe", "--n", "3", "--theta", "2", "--zeta", "3"]), "1\t2/5\n2\t2/5\n3\t1/5\n");
}

#[test]
fn samples_are_seeded() {
    let a = stdout(&["sample", "--n", "20", "--trials", "5", "--seed", "9", "--theta", "1/2", "--zeta", "3"]);
    let b = stdout(&["sample", "--n", "20", "--trials", "5", "--seed", "9", "--theta", "1/2", "--zeta", "3"]);
    let c = stdout(&["sample", "--n", "20", "--trials", "5", "--seed", "10", "--theta", "1/2", "--zeta", "3"]);
    assert_eq!(a, b);
    assert_ne!(a, c);
    assert_eq!(a.lines().count(), 5);
    for line in a.lines() {
        let mut v: Vec<usize> = line.split(',').map(|x| x.parse().unwrap()).collect();
        v.sort();
        assert_eq!(v, (1..=20).collect::<Vec<_>>());
    }
}

#[test]
fn conditioned_keeps_record_values() {
    let out = stdout(&[
        "--format",
        "json",
        "sample",
        "--model",
        "conditioned",
        "--profile",
        "1,4,[5],8,10",
        "--trials",
        "20",
    ]);
    for line in out.lines() {
        let j: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(j["record_values"], serde_json::json!([1, 4, 5, 8, 10]));
        assert_eq!(j["n"], 10);
    }
}

#[test]
fn shape_output_round_trips() {
    let out = stdout(&["sample", "--model", "shape", "--theta", "2", "--zeta", "1", "--k", "4", "--seed", "3"]);
    let j: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(j["rho"].as_array().unwrap().len(), 9);
    assert_eq!(j["center_index"], 4);

    let dir = std::env::temp_dir().join(format!("recperm-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("shape.json");
    std::fs::write(&path, out).unwrap();
    let p = path.to_str().unwrap();
    let w = stdout(&["sample", "--model", "from-shape", "--shape-file", p, "--n", "3"]);
    assert_eq!(w.trim().split(',').count(), 3);
}

#[test]
fn csv_has_header() {
    let out = stdout(&["--format", "csv", "sample", "--n", "4", "--trials", "2"]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("perm,l,u"));
    assert_eq!(lines.count(), 2);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["sample", "--n", "0"][..],
        &["sample", "--theta=-1", "--n", "3"],
        &["verify", "--suite", "nonsense"],
        &["exact", "d", "--composition", "1,2"],
        &["mc", "--experiment", "nothing"],
        &["sample", "--model", "limit", "--n", "3"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn truncation_is_reported() {
    let dir = std::env::temp_dir().join(format!("recperm-trunc-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("shape.json");
    std::fs::write(&path, r#"{"rho":[0.2,0.5,0.9],"center_index":1}"#).unwrap();
    let o = run(&["sample", "--model", "from-shape", "--shape-file", path.to_str().unwrap(), "--n", "50"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("truncation"));
}

#[test]
fn verify_passes_and_negative_control_fails() {
    assert!(stdout(&["verify", "--suite", "errata"]).contains("PASS suite errata"));
    let j: serde_json::Value = serde_json::from_str(&stdout(&["--format", "json", "verify", "--suite", "identities"])).unwrap();
    assert_eq!(j["verdict"], true);
    let o = run(&["verify", "--suite", "samplers", "--negative-control", "--trial-scale", "0.25"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn mc_runs() {
    let out = stdout(&["mc", "--experiment", "gaussian-counts", "--n", "2000", "--trials", "100", "--seed", "1"]);
    assert!(out.starts_with("PASS gaussian-counts"));
    let out = stdout(&["mc", "--experiment", "record-moments", "--n", "500", "--trials", "200", "--jobs", "2"]);
    assert!(out.starts_with("PASS record-moments"));
}
