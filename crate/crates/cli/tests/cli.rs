use std::process::{Command, Output};

fn wreath(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wreath"))
        .args(args)
        .env_remove("WREATH_THREADS")
        .env_remove("WREATH_ELEMENT_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn dim_examples() {
    let o = wreath(&["dim", "--group", "c2", "--n", "2", "--m", "0", "--kind", "semigroup"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "semigroup m=0 n=2: 8/8 agree (expected 8)");

    let o = wreath(&["dim", "--group", "trivial", "--n", "3", "--m", "0", "--kind", "group"]);
    assert!(stdout(&o).contains(": 3/3 agree"));

    let o = wreath(&["dim", "--group", "c2", "--n", "2", "--m", "2", "--kind", "semigroup", "--field", "101"]);
    assert!(stdout(&o).contains("17/17"));

    let o = wreath(&["dim", "--n", "2", "--m", "1", "--format", "tsv"]);
    assert_eq!(stdout(&o).lines().count(), 4);
}

#[test]
fn elem_examples() {
    assert_eq!(stdout(&wreath(&["elem", "xi[3]", "--n", "3"])).trim(), "0");
    assert_eq!(stdout(&wreath(&["elem", "e1*e1 - e1"])).trim(), "0");
    let c = stdout(&wreath(&["elem", "C[(1);(2)]", "--group", "c2", "--n", "3", "--group-algebra"]));
    assert_eq!(c.matches("2*{").count(), 6, "{c}");
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&wreath(&["elem", "1/2 s1", "--format", "json"]))).unwrap();
    assert_eq!(json[0][1], "1");
    assert_eq!(json[0][2], "2");
    let h = stdout(&wreath(&["elem", "--hecke", "group", "--m", "2", "x1 s1 - s1 x2"]));
    assert!(!h.contains('x'), "{h}");
}

#[test]
fn parse_errors_exit_2() {
    let o = wreath(&["elem", "s1 + q2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("at byte 5"));
    assert_eq!(wreath(&["verify", "--check", "nope"]).status.code(), Some(2));
    assert_eq!(wreath(&["verify", "--max-n", "9"]).status.code(), Some(2));
    assert_eq!(wreath(&["dim", "--n", "1", "--m", "2"]).status.code(), Some(2));
    assert_eq!(wreath(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn verify_runs_and_is_deterministic() {
    let args = ["verify", "--all", "--group", "c2", "--max-n", "2"];
    let a = wreath(&args);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    let b = wreath(&["--threads", "1", "verify", "--all", "--group", "c2", "--max-n", "2"]);
    assert_eq!(a.stdout, b.stdout);
    let reports: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(reports.as_array().unwrap().iter().any(|r| r["claim"] == "golden-class-sum"));

    let h = wreath(&["verify", "--check", "hecke", "--group", "s3", "--m", "2", "--n", "3"]);
    assert_eq!(h.status.code(), Some(0));
}

#[test]
fn failures_exit_1() {
    // An element cap below |G-bar_3| turns each computation into a failed report.
    let o = wreath(&["verify", "--check", "bases", "--n", "3", "--element-cap", "10"]);
    assert_eq!(o.status.code(), Some(1));
    let reports: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(reports.as_array().unwrap().iter().all(|r| r["status"] == "fail"));
}

#[test]
fn config_file_and_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let cfg = dir.path().join("run.json");
    let body = serde_json::json!({
        "group": "c3",
        "n_min": 1,
        "n_max": 2,
        "checks": ["bases", "gz"],
        "output": out,
    });
    std::fs::write(&cfg, body.to_string()).unwrap();
    let o = wreath(&["verify", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let reports: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let claims: Vec<&str> = reports.as_array().unwrap().iter().map(|r| r["claim"].as_str().unwrap()).collect();
    assert!(claims.contains(&"basis-agreement") && claims.contains(&"gz-dimension"));
    assert!(claims.iter().all(|c| *c == "basis-agreement" || c.starts_with("gz-")));

    std::fs::write(&cfg, r#"{"group": "c2", "bogus": 1}"#).unwrap();
    assert_eq!(wreath(&["verify", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn gz_and_enumerate() {
    let o = wreath(&["gz", "--group", "trivial", "--max-n", "4"]);
    assert!(o.status.success());
    let dims: Vec<u64> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap()["dim"].as_u64().unwrap())
        .collect();
    assert_eq!(dims, [1, 2, 4, 10]);
    assert_eq!(stdout(&wreath(&["enumerate", "--n", "2", "--count"])).trim(), "17");
    assert_eq!(stdout(&wreath(&["enumerate", "--n", "2", "--what", "group"])).lines().count(), 8);
    assert_eq!(stdout(&wreath(&["enumerate", "--n", "2", "--what", "types", "--count"])).trim(), "5");
    let o = wreath(&["gz", "--group", "s3", "--n", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn env_overrides() {
    let o = Command::new(env!("CARGO_BIN_EXE_wreath"))
        .args(["verify", "--check", "size", "--n", "3"])
        .env("WREATH_ELEMENT_CAP", "5")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}
