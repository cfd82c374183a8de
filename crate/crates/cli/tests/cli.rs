use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn out_dir(tag: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("novikov-cli-{}-{tag}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    d
}

fn novikov(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_novikov")).current_dir(root()).args(args).output().expect("binary runs")
}

fn read(dir: &Path, name: &str) -> String {
    std::fs::read_to_string(dir.join(name)).unwrap()
}

#[test]
fn fibonacci_row() {
    let out = out_dir("fib");
    let o = novikov(&["novikov", "problems/fibonacci.json", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let rational = read(&out, "rational.csv");
    assert!(rational.starts_with("# config: {"));
    assert!(rational.lines().any(|l| l == "a,b,0,1,1 -1 -1"), "{rational}");
    let series = read(&out, "series.csv");
    let fib: Vec<String> = series.lines().skip(2).map(|l| l.rsplit(',').next().unwrap().to_string()).collect();
    assert_eq!(&fib[..8], ["0", "1", "1", "2", "3", "5", "8", "13"]);
    let report: serde_json::Value = serde_json::from_str(&read(&out, "report.json")).unwrap();
    assert_eq!(report["verified"], true);
    assert_eq!(report["pairs"][0]["closed_form"], "(1) / (1 - t - t^2)");
}

#[test]
fn empty_problem_gives_empty_tables() {
    let out = out_dir("empty");
    let o = novikov(&["novikov", "problems/empty.json", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(read(&out, "series.csv").lines().count(), 2);
    assert_eq!(read(&out, "rational.csv").lines().count(), 2);
}

#[test]
fn malformed_problem_reports_position() {
    let dir = out_dir("bad");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\"indices\": {\"a\": 1,}\n").unwrap();
    let o = novikov(&["novikov", bad.to_str().unwrap(), "--out", dir.join("o").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 1, column 21"), "{err}");
}

#[test]
fn twisted_problem_runs() {
    let out = out_dir("klein");
    let o = novikov(&["novikov", "problems/klein-twist.json", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&read(&out, "report.json")).unwrap();
    assert!(report["pairs"][0]["type_l"]["growth"]["N"].is_string());
    assert!(read(&out, "series.csv").lines().any(|l| l == "a,b,1,h1"));
}

#[test]
fn fibration_has_no_critical_points() {
    let out = out_dir("fibration");
    let o = novikov(&["flow", "scenarios/fibration.json", "--out", out.to_str().unwrap(), "--no-svg"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(read(&out, "critical.csv").lines().count(), 2);
    assert_eq!(read(&out, "nk.csv").lines().count(), 2);
    assert!(!out.join("flow.svg").exists());
    let flow: serde_json::Value = serde_json::from_str(&read(&out, "flow.json")).unwrap();
    assert_eq!(flow["route_b"]["h0"], 1);
    assert_eq!(flow["route_b"]["h1"], 1);
}

#[test]
fn torus_report_is_verified_and_deterministic() {
    let (a, b) = (out_dir("torus-a"), out_dir("torus-b"));
    for d in [&a, &b] {
        let o = novikov(&["flow", "scenarios/torus-four-point.json", "--out", d.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    }
    for f in ["critical.csv", "nk.csv", "condition_c.csv", "flow.json", "flow.svg"] {
        assert_eq!(read(&a, f), read(&b, f), "{f}");
    }
    let nk = read(&a, "nk.csv");
    assert!(nk.lines().any(|l| l == "c2_0,c1_1,-1,-1,-1"), "{nk}");
    assert_eq!(read(&a, "critical.csv").lines().count(), 6);
}

#[test]
fn negative_tolerance_is_a_validation_error() {
    let dir = out_dir("negtol");
    std::fs::create_dir_all(&dir).unwrap();
    let tol = dir.join("tol.json");
    std::fs::write(&tol, r#"{"ode": -1e-3}"#).unwrap();
    let o = novikov(&["flow", "scenarios/torus-four-point.json", "--tol-file", tol.to_str().unwrap(), "--out", dir.join("o").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("ode"));
}

#[test]
fn selftest_fault_injection_fails_two_route() {
    let o = novikov(&["selftest", "--only", "6", "--inject-fault"]);
    assert_eq!(o.status.code(), Some(3));
    let s = String::from_utf8_lossy(&o.stdout);
    assert!(s.contains("criterion  6 [geometric-algebraic equality]: FAIL"), "{s}");
}

#[test]
fn selftest_is_deterministic() {
    let a = novikov(&["selftest", "--only", "6"]);
    let b = novikov(&["selftest", "--only", "6"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(String::from_utf8_lossy(&a.stdout).starts_with("tolerances: {"));
}
