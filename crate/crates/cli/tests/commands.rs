//! End-to-end runs of the `homaut` binary.

use std::process::{Command, Output};

fn homaut(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_homaut"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

#[test]
fn decide_example() {
    let o = homaut(&[
        "decide", "--class", "torsion", "--gl", "C2", "--gn", "C4", "--m", "C2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "holds, COND_II, r=1\n");
}

#[test]
fn decide_json_and_failure() {
    let o = homaut(&[
        "--format", "json", "decide", "--class", "torsion", "--gl", "C2", "--gn", "C4", "--m",
        "C2 x C2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"]["holds"], false);
    assert_eq!(v["verdict"]["reason"], "PART_NOT_CYCLIC");
}

#[test]
fn decide_requires_class_and_compatible_input() {
    let o = homaut(&["decide", "--gl", "C2", "--gn", "C4", "--m", "C2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = homaut(&[
        "decide", "--class", "torsion", "--gl", "C3", "--gn", "C4", "--m", "C2",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("incompatible"));
}

#[test]
fn hom_example() {
    let o = homaut(&["hom", "C4 x C2", "C8"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "C4 x C2\n");
    assert_eq!(
        stdout(&homaut(&["hom", "Z^2", "C6"])),
        "C2 x C2 x C3 x C3\n"
    );
}

#[test]
fn iso_and_parse_errors() {
    assert_eq!(stdout(&homaut(&["iso", "C6", "C3 x C2"])), "true\n");
    assert_eq!(stdout(&homaut(&["iso", "C4", "C2 x C2"])), "false\n");
    let o = homaut(&["hom", "C4 x C0", "C2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("position 6"));
}

#[test]
fn snf_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.txt");
    std::fs::write(&path, "2 2\n2 4\n6 8\n").unwrap();
    let o = homaut(&["--format", "json", "snf", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["diagonal"], serde_json::json!([2, 4]));
    std::fs::write(&path, "2 2\n1 2 3\n").unwrap();
    assert_eq!(
        homaut(&["snf", path.to_str().unwrap()]).status.code(),
        Some(2)
    );
    assert_eq!(
        homaut(&["snf", "/nonexistent/matrix"]).status.code(),
        Some(2)
    );
}

#[test]
fn group_queries() {
    let info = stdout(&homaut(&["group", "info", "dihedral(8)"]));
    assert!(info.contains("order: 8"), "{info}");
    assert!(info.contains("center: C2"), "{info}");
    let aut = stdout(&homaut(&[
        "--format",
        "json",
        "group",
        "aut",
        "quaternion(8)",
    ]));
    let v: serde_json::Value = serde_json::from_str(&aut).unwrap();
    assert_eq!(v["aut_order"], 24);
    assert_eq!(v["inn"], "C2 x C2");
    let var = stdout(&homaut(&[
        "--format",
        "json",
        "group",
        "var",
        "builtin:quaternion(8)",
    ]));
    let v: serde_json::Value = serde_json::from_str(&var).unwrap();
    assert_eq!(v["var_equals_inn"], true);
    let l = stdout(&homaut(&[
        "--format",
        "json",
        "group",
        "abs-center",
        "cyclic(4)",
    ]));
    let v: serde_json::Value = serde_json::from_str(&l).unwrap();
    assert_eq!(v["absolute_center_order"], 2);
    let series = stdout(&homaut(&["group", "series", "dihedral(16)"]));
    assert!(
        series.contains("lower_central_orders: 16, 4, 2, 1"),
        "{series}"
    );
    assert_eq!(
        homaut(&["group", "info", "nosuch(3)"]).status.code(),
        Some(2)
    );
}

#[test]
fn group_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c3.json");
    std::fs::write(
        &path,
        r#"{"name": "c3", "table": [[0,1,2],[1,2,0],[2,0,1]]}"#,
    )
    .unwrap();
    let info = stdout(&homaut(&["group", "info", path.to_str().unwrap()]));
    assert!(info.contains("name: c3"), "{info}");
    assert!(info.contains("abelian: true"), "{info}");
}

#[test]
fn order_bound_is_an_input_error() {
    let o = homaut(&["--max-order", "4", "group", "aut", "quaternion(8)"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    assert_eq!(
        homaut(&["verify", "COR24", "dihedral(8)"]).status.code(),
        Some(0)
    );
    assert_eq!(
        homaut(&["verify", "attar", "quaternion(8)"]).status.code(),
        Some(0)
    );
    // the pointwise-inner comparison disagrees on this group
    assert_eq!(
        homaut(&["verify", "COR26", "dihedral(16)"]).status.code(),
        Some(1)
    );
    assert_eq!(
        homaut(&["verify", "COR24", "cyclic(4)"]).status.code(),
        Some(2)
    );
    assert_eq!(
        homaut(&["verify", "COR99", "cyclic(4)"]).status.code(),
        Some(2)
    );
    assert_eq!(
        homaut(&["verify", "LEMMA21_SWEEP", "cyclic(4)"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn small_sweep() {
    let args = [
        "--format",
        "json",
        "sweep",
        "--max-len",
        "2",
        "--max-exp",
        "2",
        "--max-rank",
        "1",
    ];
    let o = homaut(&args);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["report"]["summary"]["disagree"], 0);
    assert!(v["stats"]["cases"].as_u64().unwrap() > 10_000);
    assert_eq!(homaut(&["sweep", "--primes", "4"]).status.code(), Some(2));
}

#[test]
fn corpus_from_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("manifest.txt");
    std::fs::write(
        &path,
        "# small\nbuiltin:quaternion(8)\nbuiltin:dihedral(8)\n",
    )
    .unwrap();
    let o = homaut(&["corpus", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("2 groups"));
    std::fs::write(&path, "builtin:nosuch(1)\n").unwrap();
    assert_eq!(
        homaut(&["corpus", path.to_str().unwrap()]).status.code(),
        Some(2)
    );
    std::fs::write(&path, "garbage\n").unwrap();
    assert_eq!(
        homaut(&["corpus", path.to_str().unwrap()]).status.code(),
        Some(2)
    );
}

#[test]
fn json_output_is_stable() {
    let args = ["--format", "json", "corpus", "default"];
    let a = homaut(&args);
    let b = homaut(&args);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn corpus_default_has_no_disagreements() {
    let o = homaut(&["--format", "json", "corpus", "default"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        v["summary"]["disagree"],
        0,
        "{}",
        stdout(&homaut(&["corpus", "default"]))
    );
    assert_eq!(o.status.code(), Some(0));
}
