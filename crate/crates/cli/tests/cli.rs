use std::process::{Command, Output};

fn metab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_metab"))
        .args(args)
        .env_remove("METAB_RANK")
        .output()
        .expect("metab runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn depth_of_mu_image() {
    let o = metab(&["depth", "--rank", "3", "x1^-1 * x1*[x1^-1,[x1,[x2,x3]]]"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "4\n");
    let o = metab(&["depth", "--rank", "3", "--zoo", "mu"]);
    assert_eq!(stdout(&o), "4\n");
}

#[test]
fn rank_table() {
    let o = metab(&["ranks", "--rank", "4", "--weight", "3", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(
        v["params"]["computed"],
        serde_json::json!({ "gr": 20, "total": 80, "pq": 70, "r": 10 })
    );
    let text = stdout(&metab(&["ranks", "--rank", "4", "--weight", "3"]));
    assert!(text.contains("P+Q") && text.contains("70"));
}

#[test]
fn suite_json_is_stable_and_written_to_file() {
    let dir = std::env::temp_dir().join(format!("metab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("suite.json");
    let args = ["verify-suite", "--rank", "4", "--weight", "3", "--format", "json"];
    let o = metab(&[&args[..], &["--out", path.to_str().unwrap()]].concat());
    assert_eq!(o.status.code(), Some(0));
    let a = std::fs::read(&path).unwrap();
    assert_eq!(a, metab(&args).stdout);
    let v: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["schema"], 1);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn automorphism_files() {
    let dir = std::env::temp_dir().join(format!("metab-auto-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("pi12.txt");
    std::fs::write(&path, "x1*[x1,x2]  # moved\nx2\nx3\n").unwrap();
    let p = path.to_str().unwrap();
    let o = metab(&["jacobian", "--auto", p, "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["is_automorphism"], true);
    assert_eq!(v["det"], "a2^-1");
    let o = metab(&["invert", "--auto", p]);
    assert!(stdout(&o).starts_with("x1 -> x1*[x1,x2]^(-a2^-1)"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn actions_agree() {
    let o = metab(&[
        "act",
        "--weight",
        "2",
        "--zoo",
        "pi(1,2)*tau(3,1,2)",
        "--matrix",
        "1,1,0;0,1,0;0,0,1",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).ends_with("agree: true\n"));
}

#[test]
fn basis_and_eval() {
    let o = metab(&["basis", "--rank", "4", "--weight", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["size"], 20);
    let o = metab(&["eval", "--format", "json", "[x2, 2 x1]"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["abelianization"], serde_json::json!([0, 0, 0]));
}

#[test]
fn rank_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_metab"))
        .args(["basis", "--weight", "2", "--format", "json"])
        .env("METAB_RANK", "5")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rank"], 5);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["eval", "x1*(x2"][..],
        &["eval", "--rank", "3", "x4"],
        &["jacobian"],
        &["jacobian", "--zoo", "nope(1)"],
        &["act", "--zoo", "mu", "--matrix", "2,0,0;0,1,0;0,0,1"],
        &["verify-equation", "9.9"],
        &["frobnicate"],
    ] {
        let o = metab(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
        assert!(o.stdout.is_empty());
    }
    let o = metab(&["eval", "x1*(x2"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("column 7"));
}

#[test]
fn failing_checks_exit_one() {
    let o = metab(&["verify-equation", "3.7", "--rank", "4", "--weight", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let o = metab(&[
        "verify-equation",
        "3.7",
        "--rank",
        "4",
        "--weight",
        "4",
        "--printed-only",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("\"r\":[0,2,0,0]"));
}
