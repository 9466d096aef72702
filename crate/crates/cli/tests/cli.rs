use std::process::{Command, Output};

fn finrep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_finrep")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn g2_table_text() {
    let o = finrep(&["schur", "g2-table"]);
    assert_eq!(o.status.code(), Some(0));
    let want = "k\tPhi_3(q^(k-1))Phi_6(q^k)\tPhi_3(q^k)Phi_6(q^(k-1))\n\
                1\t3Phi_6(q)\tPhi_3(q)\n\
                2\tPhi_3(q)Phi_12(q)\tPhi_3(q)Phi_6(q)^2\n\
                5\tPhi_3(q)Phi_6(q)^2Phi_12(q)Phi_30(q)\tPhi_3(q)Phi_15(q)Phi_24(q)\n";
    assert_eq!(stdout(&o), want);
}

#[test]
fn g2_table_json() {
    let o = finrep(&["--format", "json", "schur", "g2-table"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let idx: Vec<u64> = v.as_array().unwrap().iter().map(|r| r["zsigmondy_index"].as_u64().unwrap()).collect();
    assert_eq!(idx, [6, 12, 30]);
    // 3 Phi_6(2) = 9, Phi_3(2) = 7
    assert_eq!(v[0]["at_q2"], serde_json::json!(["9", "7"]));
}

#[test]
fn missing_input_is_exit_2() {
    let o = finrep(&["table", "--group", "missing.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("missing.json"));
}

#[test]
fn bad_arguments_are_exit_2() {
    assert_eq!(finrep(&["table", "--group", "s3", "--bogus"]).status.code(), Some(2));
    assert_eq!(finrep(&["coxeter-sep", "--type", "E8"]).status.code(), Some(2));
    assert_eq!(finrep(&["schur", "ratio", "--type", "a1", "--k", "0", "--q", "3"]).status.code(), Some(2));
    assert_eq!(
        finrep(&["hc", "induce", "--datum", "gl2_3_bn", "--record", "Q", "--char-index", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        finrep(&["hc", "induce", "--datum", "gl2_3_bn", "--record", "B", "--char-index", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(finrep(&["corner", "--omega", "C3", "--action", "swap"]).status.code(), Some(2));
}

#[test]
fn user_group_file() {
    let dir = std::env::temp_dir().join(format!("finrep-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("c4.json");
    std::fs::write(&path, r#"{"name": "C4", "degree": 4, "generators": ["(1 2 3 4)"]}"#).unwrap();
    let o = finrep(&["table", "--group", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert!(out.starts_with("# order=4 classes=4 conductor=4\n"));
    assert_eq!(out.lines().filter(|l| l.starts_with("X.")).count(), 4);

    std::fs::write(&path, r#"{"name": "bad", "degree": 2, "generators": ["(1 5)"]}"#).unwrap();
    assert_eq!(finrep(&["table", "--group", path.to_str().unwrap()]).status.code(), Some(2));
    std::fs::write(&path, "not json").unwrap();
    assert_eq!(finrep(&["table", "--group", path.to_str().unwrap()]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn capacity_override() {
    let o = finrep(&["--max-order", "100", "table", "--group", "s5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("capacity"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["--format", "json", "hc", "partition", "--datum", "gl3_2_bn"][..],
        &["table", "--group", "gl2_3"],
        &["coxeter-sep", "--type", "D4"],
        &["--format", "json", "corner", "--omega", "C2xC2", "--action", "swap"],
    ] {
        let a = finrep(args);
        let b = finrep(args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn hc_subcommands() {
    let o = finrep(&["hc", "partition", "--datum", "gl3_2_bn"]);
    let out = stdout(&o);
    assert!(out.starts_with("# group=GL3(2) series=4\n"));
    assert!(out.contains("series\tB\tX.1\tX.1,X.4,X.6\t1,6,8\t6\t6\n"));

    let o = finrep(&["hc", "qparam", "--datum", "gl2_5_bn", "--record", "B", "--char-index", "1"]);
    assert_eq!(stdout(&o), "5\n");
    let o = finrep(&["hc", "qparam", "--datum", "gl3_2_bn", "--record", "B", "--char-index", "1"]);
    // three constituents: no single ratio
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "undefined\n");

    let o = finrep(&["--format", "json", "hc", "induce", "--datum", "gl2_3_bn", "--record", "B", "--char-index", "1"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["degree"], "4");
    assert_eq!(v["decomposition"].as_array().unwrap().len(), 2);

    // *R of the trivial character of GL2(3) is the trivial character of T
    let o = finrep(&["hc", "restrict", "--datum", "gl2_3_bn", "--record", "B", "--char-index", "1"]);
    assert!(stdout(&o).contains("degree=1\n"));
}

#[test]
fn schur_ratio() {
    let o = finrep(&["schur", "ratio", "--type", "a1", "--k", "1", "--q", "5"]);
    assert_eq!(stdout(&o), "k\tq\tratio\n1\t5\t5\n");
}

#[test]
fn coxeter_sep_g2_and_f4() {
    let o = finrep(&["coxeter-sep", "--type", "G2"]);
    assert_eq!(stdout(&o), "# type=G2 order=12 pairs=1\n#\tchi\tpsi\tdegree\tb_chi\tb_psi\npair\tX.5\tX.6\t2\t2\t1\n");
    let o = finrep(&["coxeter-sep", "--type", "F4"]);
    assert!(stdout(&o).starts_with("# type=F4 order=1152 pairs=0\n"));
}

#[test]
fn corner_json() {
    let o =
        finrep(&["--format", "json", "corner", "--omega", "C3", "--weyl", "C2", "--action", "invert", "--eta", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["corner_dim"], 2);
    assert_eq!(v["algebra_dim"], 6);
    assert_eq!(v["isomorphism_report"]["isomorphism"], true);
    assert_eq!(v["isomorphism_report"]["stabilizer_order"], 2);
    let o = finrep(&["--format", "json", "corner", "--omega", "C3", "--action", "invert", "--eta", "2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["corner_dim"], 1);
}

#[test]
fn clifford_and_wreath() {
    let o = finrep(&["clifford", "--group", "gl2_3", "--normal", "SL2(3)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("X.")).count(), 7);
    let o = finrep(&["--format", "json", "wreath", "--base", "s3", "--m", "3", "--theta", "3"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["degree"], "8");
    assert_eq!(v[0]["norm"], "1");
    assert_eq!(v[0]["restricts_to_tensor_power"], true);
}

#[test]
fn verify_reports_every_criterion() {
    let o = finrep(&["verify"]);
    let out = stdout(&o);
    for id in 1..=12 {
        assert!(out.contains(&format!("criterion {id}: ")), "criterion {id} missing");
    }
    let failing = out.lines().filter(|l| l.contains(": FAIL ")).count();
    assert_eq!(o.status.code(), Some(if failing == 0 { 0 } else { 1 }));
    let one = finrep(&["verify", "--criterion", "1"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(finrep(&["verify", "--criterion", "13"]).status.code(), Some(2));
}
