use std::path::PathBuf;
use std::process::{Command, Output};

fn gridtau(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_gridtau"));
    cmd.args(args).env_remove("GRIDTAU_THREADS");
    if let Some(t) = threads {
        cmd.env("GRIDTAU_THREADS", t);
    }
    cmd.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fixture_file(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    root.join(name).to_str().unwrap().to_string()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(o)).unwrap()
}

#[test]
fn compute_trefoil_json() {
    let o = gridtau(
        &["compute", "--braid", "2: 1 1 1", "--format", "json"],
        None,
    );
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["tau_top"], "1");
    assert_eq!(v["tau_function"][0]["k"], "0");
    assert!(v.get("bigraded_homology").is_none());
}

#[test]
fn compute_unknot_grid_file() {
    let o = gridtau(
        &[
            "compute",
            "--grid",
            &fixture_file("unknot2.grid"),
            "--format",
            "json",
        ],
        None,
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(
        (v["tau_top"].as_str(), v["tau_bot"].as_str()),
        (Some("0"), Some("0"))
    );
}

#[test]
fn every_fixture_file_matches_builtin() {
    for name in [
        "unknot2",
        "trefoil5",
        "figure8_6",
        "hopf4",
        "torus24_6",
        "torus25_7",
    ] {
        let file = json(&gridtau(
            &[
                "compute",
                "--grid",
                &fixture_file(&format!("{name}.grid")),
                "--format",
                "json",
            ],
            None,
        ));
        let builtin = json(&gridtau(
            &["compute", "--fixture", name, "--format", "json"],
            None,
        ));
        for key in [
            "tau_top",
            "tau_bot",
            "tau_function",
            "components",
            "grid_size",
        ] {
            assert_eq!(file[key], builtin[key], "{name} {key}");
        }
    }
}

#[test]
fn compute_hopf_quasipositive() {
    let o = gridtau(
        &["compute", "--qp", "2: (|1)(|1)", "--format", "json"],
        None,
    );
    let v = json(&o);
    assert_eq!(v["tau_top"], "1");
    let checks = v["checks"].as_array().unwrap();
    let qp = checks
        .iter()
        .find(|c| c["name"] == "quasipositive")
        .unwrap();
    assert_eq!(qp["status"], "pass");
}

#[test]
fn assoc_graded_table() {
    let o = gridtau(
        &[
            "compute",
            "--fixture",
            "trefoil5",
            "--assoc-graded",
            "--format",
            "json",
        ],
        None,
    );
    let v = json(&o);
    assert_eq!(v["delta"], "1");
    let table = v["bigraded_homology"].as_array().unwrap();
    let total: i64 = table.iter().map(|g| g["rank"].as_i64().unwrap()).sum();
    assert_eq!(total, 3);
}

#[test]
fn output_independent_of_threads() {
    let args = [
        "compute",
        "--braid",
        "3: 1 -2 1 -2",
        "--format",
        "json",
        "--assoc-graded",
    ];
    let one = gridtau(&args, Some("1"));
    let four = gridtau(&args, Some("4"));
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
    let flag = gridtau(&[&args[..], &["--threads", "2"]].concat(), None);
    assert_eq!(one.stdout, flag.stdout);
}

#[test]
fn convert_round_trip() {
    let o = gridtau(&["convert", "--braid", "2: 1 1"], None);
    assert!(o.status.success());
    let dir = std::env::temp_dir().join(format!("gridtau-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("hopf.grid");
    std::fs::write(&path, &o.stdout).unwrap();
    let via_file = json(&gridtau(
        &[
            "compute",
            "--grid",
            path.to_str().unwrap(),
            "--format",
            "json",
        ],
        None,
    ));
    let direct = json(&gridtau(
        &["compute", "--braid", "2: 1 1", "--format", "json"],
        None,
    ));
    assert_eq!(via_file["components"], 2);
    assert_eq!(via_file["tau_function"], direct["tau_function"]);
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn exit_codes() {
    assert_eq!(
        gridtau(&["compute", "--braid", "2: 7"], None).status.code(),
        Some(1)
    );
    assert_eq!(
        gridtau(&["compute", "--grid", "/nonexistent.grid"], None)
            .status
            .code(),
        Some(1)
    );
    assert_eq!(gridtau(&["compute"], None).status.code(), Some(1));
    let o = gridtau(
        &[
            "compute",
            "--braid",
            "4: 1 2 3 1 2 3 1 2 3",
            "--max-grid",
            "6",
        ],
        None,
    );
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("limit"));
    assert_eq!(
        gridtau(&["convert", "--braid", "1:"], None).status.code(),
        Some(0)
    );
}

#[test]
fn verify_fixtures_suite() {
    let o = gridtau(&["verify", "--suite", "fixtures"], None);
    assert!(o.status.success());
    assert!(stdout(&o).contains("[fixtures] 8 of 8 cases passed"));
}

#[test]
fn verify_is_seeded() {
    let args = [
        "verify",
        "--suite",
        "crossing",
        "--seed",
        "7",
        "--samples",
        "5",
    ];
    let a = gridtau(&args, Some("1"));
    let b = gridtau(&args, Some("3"));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}
