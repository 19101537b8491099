use std::path::PathBuf;
use std::process::{Command, Output};

fn symcomp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symcomp"))
        .args(args)
        .env_remove("SYMCOMP_SEED")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn script(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("symcomp-cli-{}", std::process::id()));
    std::fs::create_dir_all(dir.join("goldens")).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn sessions_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("sessions")
}

#[test]
fn run_z1_passes() {
    let o = symcomp(&["run", sessions_dir().join("z1.scs").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS  Z1"));
}

#[test]
fn run_m_from_disk_uses_golden_directory() {
    let o = symcomp(&["run", sessions_dir().join("m.scs").to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["checks"].as_array().unwrap().len(), 16);
}

#[test]
fn failed_assertion_exits_one() {
    let p = script("sym.scs", "vectors x, y;\nlet e = b(x,y) - b(y,x);\nassert_zero e;\n");
    let o = symcomp(&["run", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL  e"));
}

#[test]
fn malformed_script_exits_two_with_span() {
    let p = script("bad.scs", "vectors x, y;\nlet e = x.y.x;\n");
    let o = symcomp(&["run", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("2:9"), "{err}");
    assert!(err.contains("^^^^^"), "{err}");
}

#[test]
fn missing_file_exits_two() {
    assert_eq!(symcomp(&["run", "/nonexistent/x.scs"]).status.code(), Some(2));
}

#[test]
fn paper_all_and_unknown() {
    let o = symcomp(&["paper", "--all"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let order: Vec<usize> = ["session L1", "session L2", "session Z1", "session Z4", "session M"]
        .iter()
        .map(|s| text.find(s).unwrap())
        .collect();
    assert!(order.windows(2).all(|w| w[0] < w[1]));
    assert!(text.contains("7 sessions, 24 checks, 0 failed"));
    assert_eq!(symcomp(&["paper", "nope"]).status.code(), Some(2));
}

#[test]
fn paper_m_lists_checkpoints() {
    let text = stdout(&symcomp(&["paper", "M"]));
    for label in ["C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10"] {
        assert!(text.contains(&format!("PASS  {label} ")), "{label}");
    }
}

#[test]
fn oracle_expressions() {
    assert_eq!(symcomp(&["oracle", "q(x.y) - q(x)*q(y)"]).status.code(), Some(0));
    let o = symcomp(&["oracle", "q(x)-q(y)", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["pass"], false);
    assert!(v["counterexample"]["vectors"]["x"].is_array());
    let one = symcomp(&["oracle", "--trials", "1", "(x.y).x - q(x)*y", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&one.stdout).unwrap();
    assert_eq!(v["trials"], 1);
    assert_eq!(symcomp(&["oracle", "q(x"]).status.code(), Some(2));
    assert_eq!(symcomp(&["oracle", "--trials", "0", "q(x)"]).status.code(), Some(2));
}

#[test]
fn oracle_script_checks_last_binding() {
    let p = script(
        "flex.scs",
        "scalars alpha;\nvectors x, y;\nlet e = (x.y).x - q(x)*y;\nlet f = alpha*e;\n",
    );
    assert_eq!(symcomp(&["oracle", p.to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn seed_is_reproducible_and_overridable() {
    let a = symcomp(&["oracle", "q(x) - q(y)", "--json", "--seed", "7"]);
    let b = Command::new(env!("CARGO_BIN_EXE_symcomp"))
        .args(["oracle", "q(x) - q(y)", "--json"])
        .env("SYMCOMP_SEED", "7")
        .output()
        .unwrap();
    assert_eq!(a.stdout, b.stdout);
    let c = symcomp(&["oracle", "q(x) - q(y)", "--json"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn verbose_prints_intermediate_forms() {
    let text = stdout(&symcomp(&["paper", "Z1", "--verbose"]));
    assert!(text.contains("| e3 = q(x)*q(y)*b(x,y) - q(x)*q(y)*b(y,x)"), "{text}");
}
