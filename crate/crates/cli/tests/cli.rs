use std::process::{Command, Output};

fn varpw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_varpw")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn verify_smallest_point_passes() {
    let out = varpw(&["verify", "--n", "2", "--g", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert_eq!(text.matches("[PASS]").count(), 14);
    assert!(!text.contains("[FAIL]"));
}

#[test]
fn betti_csv() {
    let out = varpw(&["betti", "--n", "3", "--g", "2", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "13,160\n14,80\n15,160\n");
}

#[test]
fn composite_rank_is_an_input_error() {
    let out = varpw(&["verify", "--n", "4", "--g", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("prime"), "{}", stderr(&out));
    assert!(stdout(&out).is_empty());
}

#[test]
fn input_domain_errors_exit_2() {
    for args in [
        &["betti", "--n", "2", "--g", "2", "--d", "4"][..],
        &["epoly", "--n", "1", "--g", "2"],
        &["epoly", "--n", "3", "--g", "1"],
        &["pw", "--n", "3"],
        &["verify", "--grid", "--n", "3"],
        &["ksearch", "--i-max", "10", "--j-max", "10", "--v-max", "5"],
        &["ksearch", "--budget", "10"],
        &["frobnicate"],
    ] {
        let out = varpw(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", stderr(&out));
        assert!(!stderr(&out).is_empty(), "{args:?}");
    }
}

#[test]
fn help_exits_0() {
    assert_eq!(varpw(&["--help"]).status.code(), Some(0));
}

#[test]
fn ksearch_finds_nothing() {
    let out = varpw(&["ksearch"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("Prop21: 0 counterexamples"));
    assert!(stdout(&out).contains("Prop22: 0 counterexamples"));
    let out = varpw(&["ksearch", "--which", "prop22", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).is_empty());
}

#[test]
fn machine_formats_are_deterministic() {
    for args in [
        &["epoly", "--n", "5", "--g", "3", "--format", "json"][..],
        &["betti", "--n", "7", "--g", "2", "--format", "json"],
        &["pw", "--n", "3", "--g", "3", "--format", "json"],
        &["pw", "--n", "3", "--g", "3", "--format", "csv"],
        &["verify", "--grid", "--format", "json"],
        &["ksearch", "--format", "json"],
    ] {
        let (a, b) = (varpw(args), varpw(args));
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn json_outputs_parse() {
    let out = varpw(&["epoly", "--n", "2", "--g", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["e_polynomial"], serde_json::json!([[14, "-30"]]));
    assert_eq!(v["params"]["dim"], 6);

    let out = varpw(&["pw", "--n", "2", "--g", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["pw_holds"], true);

    let out = varpw(&["verify", "--grid", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let points = v.as_array().unwrap();
    assert_eq!(points.len(), 12);
    assert!(points.iter().all(|p| p["all_passed"] == true));
}

#[test]
fn epoly_csv_and_text() {
    let out = varpw(&["epoly", "--n", "3", "--g", "2", "--format", "csv"]);
    assert_eq!(stdout(&out), "17,-160\n18,80\n19,-160\n");
    let out = varpw(&["epoly", "--n", "3", "--g", "2"]);
    assert!(stdout(&out).contains("E(q) = -160q^17 + 80q^18 - 160q^19"));
}

#[test]
fn negative_degree_is_accepted() {
    let a = varpw(&["betti", "--n", "5", "--g", "2", "--d", "-3", "--format", "csv"]);
    let b = varpw(&["betti", "--n", "5", "--g", "2", "--format", "csv"]);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn writes_to_file() {
    let dir = std::env::temp_dir().join(format!("varpw-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("betti.csv");
    let out = varpw(&["betti", "--n", "3", "--g", "2", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "13,160\n14,80\n15,160\n");
    std::fs::remove_dir_all(&dir).unwrap();
}
