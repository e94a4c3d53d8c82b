use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn lab(out: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_moment-lab"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .expect("binary runs")
}

fn read(path: impl AsRef<Path>) -> String {
    fs::read_to_string(path).expect("artifact exists")
}

#[test]
fn table1_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let out = lab(dir.path(), &["table1"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = read(dir.path().join("table1/table_1.csv"));
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("n,i,phi_pow"));
    assert_eq!(lines.count(), 20);
    assert!(!csv.contains('\r'));
    let summary: serde_json::Value = serde_json::from_str(&read(dir.path().join("table1/summary.json"))).unwrap();
    assert_eq!(summary["name"], "table1");
    assert_eq!(summary["artifacts"], serde_json::json!(["table_1.csv", "summary.json"]));
}

#[test]
fn gramian_decay_schema_and_plot() {
    let dir = tempfile::tempdir().unwrap();
    let out = lab(dir.path(), &["gramian-decay", "--n", "40", "--i-max", "20", "--digits", "40", "--svg"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = read(dir.path().join("gramian-decay/table_1.csv"));
    assert_eq!(csv.lines().next(), Some("i,sigma,trusted,reference"));
    assert!(read(dir.path().join("gramian-decay/plot.svg")).contains("<polyline"));
    let text = read(dir.path().join("gramian-decay/summary.json"));
    let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
    let again = serde_json::to_string_pretty(&parsed).unwrap() + "\n";
    assert_eq!(again, text);
    assert_eq!(parsed["checks"]["norm_bound"]["verdict"]["status"], "holds");
    assert_eq!(parsed["metrics"]["sigma_1"]["precision_digits"], 40);
}

#[test]
fn reruns_are_byte_identical() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = ["product-bound", "--n", "16", "--digits", "40"];
    assert_eq!(lab(a.path(), &args).status.code(), Some(0));
    assert_eq!(lab(b.path(), &args).status.code(), Some(0));
    for f in ["table_1.csv", "summary.json"] {
        assert_eq!(
            fs::read(a.path().join("product-bound").join(f)).unwrap(),
            fs::read(b.path().join("product-bound").join(f)).unwrap()
        );
    }
}

#[test]
fn usage_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(lab(dir.path(), &["norm-diff", "--n", "999"]).status.code(), Some(1));
    assert_eq!(lab(dir.path(), &["frobnicate"]).status.code(), Some(1));
    assert_eq!(lab(dir.path(), &["beckermann", "--digits", "5"]).status.code(), Some(1));
    assert_eq!(lab(dir.path(), &["discretized-decay", "--n", "5000"]).status.code(), Some(1));
    assert!(fs::read_dir(dir.path()).unwrap().next().is_none());
}

#[test]
fn unwritable_output_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("plain-file");
    fs::write(&file, b"x").unwrap();
    let out = lab(&file.join("sub"), &["table1"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn help_exits_zero() {
    let out = Command::new(env!("CARGO_BIN_EXE_moment-lab")).arg("--help").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("hilbert-asymptotics"));
}
