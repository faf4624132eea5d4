use std::process::{Command, Output};

use serde_json::Value;

fn monhom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_monhom"))
        .args(args)
        .env_remove("MONHOM_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn error_kind(o: &Output) -> String {
    let line = String::from_utf8(o.stderr.clone()).unwrap();
    let v: Value = serde_json::from_str(line.lines().last().unwrap()).unwrap();
    v["error"].as_str().unwrap().to_string()
}

const Z2: &str = "builtin:cyclic_group(2)";

#[test]
fn hochschild_of_z2() {
    let o = monhom(&["compute", "hh", "--monoid", Z2, "--coeff", "trivialZ", "--max-degree", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "HH_0 = Z\nHH_1 = Z/2\nHH_2 = 0\nHH_3 = Z/2\n");
    let o = monhom(&["compute", "hh", "--monoid", Z2, "--max-degree", "3", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["results"][1]["group"]["torsion"], serde_json::json!([2]));
    assert_eq!(v["results"][2]["group"]["free_rank"], 0);
}

#[test]
fn omega_and_derivations() {
    let o = monhom(&["compute", "omega", "--monoid", "builtin:trivial"]);
    assert_eq!(stdout(&o), "Omega(0) = 0\n");
    let o = monhom(&["compute", "der", "--monoid", Z2, "--coeff", "jstar:Zmod4:trivial"]);
    assert_eq!(stdout(&o), "Der = Z/2\n");
    let o = monhom(&["compute", "tensor", "--monoid", Z2, "--coeff", "projective:right:1"]);
    assert_eq!(stdout(&o), "N ⊗ M = Z/2\n");
}

#[test]
fn other_targets() {
    let o = monhom(&["compute", "leech", "--monoid", Z2, "--max-degree", "2"]);
    assert_eq!(stdout(&o), "HH^0 = Z\nHH^1 = 0\nHH^2 = Z/2\n");
    let o = monhom(&["compute", "harrison", "--monoid", Z2, "--coeff", "trivialQ", "--max-degree", "2"]);
    assert_eq!(stdout(&o), "Harr_0 = Z\nHarr_1 = 0\nHarr_2 = 0\n");
    let o = monhom(&["compute", "hodge", "--monoid", "builtin:semilattice_chain(1)", "--coeff", "jstar:Q:regular", "--max-degree", "2"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("HH_1: weights"));
    let o = monhom(&["compute", "grillet", "--monoid", Z2, "--max-degree", "1"]);
    assert_eq!(stdout(&o), "D_0 = Z/2 (exact)\nD_1 = 0 (char0)\n");
    let o = monhom(&["compute", "complex", "--monoid", Z2, "--max-degree", "2", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["results"]["degrees"][2]["dim"], 4);
}

#[test]
fn json_is_byte_stable() {
    let args = ["compute", "hh", "--monoid", "builtin:cyclic_group(2)*cyclic_group(2)", "--coeff", "jstar:Z:regular", "--max-degree", "3", "--format", "json"];
    assert_eq!(monhom(&args).stdout, monhom(&args).stdout);
    let args = ["verify", "lemma-nuli", "--format", "json"];
    let (a, b) = (monhom(&args), monhom(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_suites() {
    let o = monhom(&["verify", "lemma-sizuste"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("PASS y-exactness"));
    let stderr = String::from_utf8(o.stderr).unwrap();
    assert!(stderr.starts_with("timing y-exactness"));
    let o = monhom(&["verify", "hodge", "--monoid", "builtin:truncated_add(2)"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let o = monhom(&["verify", "nonsense"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn corrupted_monoid_file() {
    let dir = std::env::temp_dir().join(format!("monhom-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    // 1·1 = 2 is outside the two-element carrier.
    std::fs::write(&bad, r#"{"identity":0,"size":2,"table":[[0,1],[1,2]]}"#).unwrap();
    let o = monhom(&["verify", "all", "--monoid", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(error_kind(&o), "ValidationError");

    let extra = dir.join("extra.json");
    std::fs::write(&extra, r#"{"identity":0,"size":1,"table":[[0]],"name":"one"}"#).unwrap();
    let o = monhom(&["compute", "hh", "--monoid", extra.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(error_kind(&o), "ParseError");

    let good = dir.join("z2.json");
    std::fs::write(&good, r#"{"identity":0,"size":2,"table":[[0,1],[1,0]]}"#).unwrap();
    let out = dir.join("report.txt");
    let o = monhom(&["compute", "hh", "--monoid", good.to_str().unwrap(), "--max-degree", "1", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(std::fs::read_to_string(&out).unwrap(), "HH_0 = Z\nHH_1 = Z/2\n");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn bad_coefficients() {
    let o = monhom(&["compute", "hh", "--monoid", Z2, "--coeff", "projective:left:0"]);
    assert_eq!(o.status.code(), Some(1));
    let o = monhom(&["compute", "hh", "--monoid", Z2, "--coeff", "jstar:Z:sign", "--max-degree", "1"]);
    assert!(o.status.success());
    let o = monhom(&["compute", "hh", "--monoid", "builtin:cyclic_group(3)", "--coeff", "jstar:Z:sign"]);
    assert_eq!(error_kind(&o), "ValidationError");
}

#[test]
fn budget_precedence() {
    let run = |env: Option<&str>, flag: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_monhom"));
        cmd.args(["compute", "hh", "--monoid", Z2, "--max-degree", "3"]);
        cmd.env_remove("MONHOM_BUDGET");
        if let Some(e) = env {
            cmd.env("MONHOM_BUDGET", e);
        }
        if let Some(f) = flag {
            cmd.args(["--budget", f]);
        }
        cmd.output().unwrap()
    };
    assert!(run(None, None).status.success());
    let o = run(Some("5"), None);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_kind(&o), "ComplexityBudget");
    assert!(run(Some("5"), Some("1000")).status.success());
    assert_eq!(run(None, Some("5")).status.code(), Some(2));
}
