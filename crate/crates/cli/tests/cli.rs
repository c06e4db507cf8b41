use std::process::{Command, Output};

fn crossed(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crossed")).args(args).output().expect("spawn crossed")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn eval_normalizes() {
    let o = crossed(&["eval", "eq2", "n*v"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "q^-2 * v*n");
    let o = crossed(&["eval", "eq2", "z*zb - q^2*zb*z"]);
    assert_eq!(stdout(&o).trim(), "(1 - q^2)");
}

#[test]
fn eval_with_numeric_q() {
    let o = crossed(&["eval", "eq2", "n*v", "--q", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "1/4 * v*n");
}

#[test]
fn cross_mul_and_membership() {
    let o = crossed(&["cross-mul", "eq2", "1 # c_1", "z # c_0"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(!stdout(&o).trim().is_empty());
    let o = crossed(&["cross-mul", "eq2", "v # c_1", "1 # c_0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("M⊗C"));
}

#[test]
fn exit_codes() {
    let ok = crossed(&["check", "eq2", "--suites", "crossed", "--samples", "5"]);
    assert_eq!(ok.status.code(), Some(0));
    let bad = crossed(&["check", "eq2", "--suites", "crossed", "--samples", "5", "--mutate", "psi-shift"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("FAIL"));
    for args in [
        &["check", "eq2", "--suites", "nope"][..],
        &["check", "nope"],
        &["check", "eq2", "--mutate", "nope"],
        &["check", "eq2", "--mutate", "dual-rho"],
        &["check", "eq2", "--samples", "0"],
        &["eval", "conj-s3", "v"],
        &["eval", "eq2", "v * w"],
        &["frobnicate"],
    ] {
        assert_eq!(crossed(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn json_report_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let args = ["check", "conj-s3", "--seed", "7", "--json"];
    let a = crossed(&args);
    assert!(a.status.success());
    let o = crossed(&[&args[..], &[path.to_str().unwrap()]].concat());
    assert!(o.status.success());
    let b = std::fs::read_to_string(&path).unwrap();
    let strip = |s: &str| s.lines().filter(|l| !l.contains("wallTimeMs")).collect::<Vec<_>>().join("\n");
    assert_eq!(strip(&stdout(&a)), strip(&b));
    let v: serde_json::Value = serde_json::from_str(&b).unwrap();
    assert_eq!(v["instance"], "conj-s3");
    assert_eq!(v["seed"], 7);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] != "fail"));
}

#[test]
fn list_instances_names_everything() {
    let o = crossed(&["list-instances"]);
    let s = stdout(&o);
    for name in ["eq2", "bialg-z<N>", "regular-z<N>", "psi-shift", "dual-sigma-twist"] {
        assert!(s.contains(name), "{name}");
    }
}
