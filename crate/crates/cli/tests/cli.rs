use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcurrent"))
        .args(args)
        .output()
        .expect("binary runs")
}

const X00: &str = r#"{"terms":[{"coeff":"1","gammaexp":0,"word":[[1,0],[1,0]]}]}"#;

#[test]
fn unknown_flag_is_usage_error() {
    let out = run(&["omega", "--bogus"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn bad_input_is_usage_error() {
    let out = run(&[
        "omega",
        "--kind",
        "psi",
        "--color",
        "1",
        "--component",
        "0",
        "--element",
        "{",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["verma", "--cartan", "A2", "--lambda", "1", "--witness"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn omega_wrapper() {
    let out = run(&[
        "omega",
        "--kind",
        "psi",
        "--color",
        "1",
        "--component",
        "0",
        "--element",
        X00,
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        text.trim(),
        r#"{"terms":[{"coeff":"s^4 + 1","gammaexp":0,"word":[[1,0]]}]}"#
    );
}

#[test]
fn output_is_deterministic() {
    let args = [
        "gram",
        "--cartan",
        "A2",
        "--words",
        "[[[1,-1],[2,1]],[[2,1],[1,-1]],[[1,0],[2,0]]]",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let s = [
        "suite",
        "--cartan",
        "A1",
        "--window=-1:1",
        "--maxlen",
        "2",
        "--samples",
        "20",
    ];
    assert_eq!(run(&s).stdout, run(&s).stdout);
}

#[test]
fn suite_passes_on_a1() {
    let out = run(&[
        "suite", "--cartan", "A1", "--window", "-2:2", "--maxlen", "3",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["failure_count"] == 0));
}

#[test]
fn verify_reports_no_failures() {
    let out = run(&[
        "verify",
        "--identity",
        "mixed-phi",
        "--window",
        "-2:2",
        "--maxlen",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["identity"], "mixed-phi");
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);
    assert!(v["instances"].as_u64().unwrap() > 0);
}

#[test]
fn gram_then_rank_round_trip() {
    let dir = std::env::temp_dir().join(format!("qcurrent-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let words = "[[[1,-1],[1,1]],[[1,0],[1,0]]]";
    for (fmt, name) in [("json", "m.json"), ("csv", "m.csv")] {
        let out = run(&["gram", "--words", words, "--format", fmt]);
        let path = dir.join(name);
        std::fs::write(&path, &out.stdout).unwrap();
        let r = run(&["rank", "--matrix", path.to_str().unwrap(), "--gamma", "1"]);
        let v: serde_json::Value = serde_json::from_slice(&r.stdout).unwrap();
        assert_eq!(v["rank"], 2);
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn config_supplies_defaults() {
    let dir = std::env::temp_dir().join(format!("qcurrent-cfg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.toml");
    std::fs::write(&path, "[cartan]\ntype = \"A2\"\n").unwrap();
    let out = run(&[
        "--config",
        path.to_str().unwrap(),
        "verma",
        "--lambda",
        "0,3",
        "--witness",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["witness"]["color"], 1);
    // an explicit flag overrides the file
    let out = run(&[
        "--config",
        path.to_str().unwrap(),
        "verma",
        "--cartan",
        "A1",
        "--lambda",
        "0,3",
        "--witness",
    ]);
    assert_eq!(out.status.code(), Some(1));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn schur_text() {
    let out = run(&["schur", "--k", "2"]);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap().trim(),
        "[(1)/(2)]*x1^2 + [1]*x2"
    );
}
