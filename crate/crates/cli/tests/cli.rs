use std::process::{Command, Output};

use gammamorphic::identities::IdentityId;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gammamorphic")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn eval_examples() {
    let o = run(&["eval", "barnes-g", "--x", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("route: series+recursion"), "{s}");
    let v: f64 = s.lines().next().unwrap().trim_start_matches("value: ").parse().unwrap();
    assert!((v - 2.0).abs() < 1e-14);

    let o = run(&["eval", "glaisher", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let j: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((j["value_re"].as_f64().unwrap() - 1.2824271291006226).abs() < 1e-15);
    assert!(j["abs_error"].as_f64().unwrap() < 1e-12);

    let o = run(&["eval", "barnes-g", "--x", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("ZeroError"));
}

#[test]
fn eval_flag_errors_exit_2() {
    for args in [
        &["eval", "barnes-g"][..],
        &["eval", "nope", "--x", "1"],
        &["eval", "barnes-g", "--x", "one"],
        &["eval", "barnes-g", "--x", "1", "--route", "lattice"],
        &["eval", "g2", "--x", "1"],
        &["eval", "gamma", "--x", "1", "--alpha", "2"],
        &["eval", "glaisher", "--x", "1"],
        &["eval", "barnes-g", "--x", "1", "--format", "xml"],
        &["frobnicate"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
        assert!(!stderr(&o).is_empty());
    }
}

#[test]
fn eval_domain_errors_exit_1() {
    let cases: [(&[&str], &str); 4] = [
        (&["eval", "gamma", "--x", "-3"], "PoleError"),
        (&["eval", "gamma", "--x", "200"], "OverflowPolicy"),
        (&["eval", "g2", "--x", "1", "--alpha", "-1"], "DomainError"),
        (&["eval", "double-sine", "--x", "2.5", "--omega1", "1", "--omega2", "1", "--route", "integral"], "DomainError"),
    ];
    for (args, name) in cases {
        let o = run(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(stderr(&o).starts_with(name), "{args:?}: {}", stderr(&o));
    }
    // the logarithm never overflows
    assert_eq!(run(&["eval", "gamma", "--x", "200", "--log"]).status.code(), Some(0));
}

#[test]
fn every_function_evaluates() {
    let cases: [&[&str]; 10] = [
        &["eval", "gamma", "--x", "0.5+0.5i"],
        &["eval", "barnes-g", "--x", "2.5", "--route", "weierstrass"],
        &["eval", "phi", "--x", "1.5"],
        &["eval", "kinkelin", "--x", "2.5", "--route", "integral"],
        &["eval", "g2", "--x", "1.5", "--alpha", "2", "--route", "lattice"],
        &["eval", "gn", "--x", "3", "--n", "3"],
        &["eval", "kn", "--x", "3", "--n", "2"],
        &["eval", "double-sine", "--x", "0.7", "--omega1", "1", "--omega2", "1.5"],
        &["eval", "glaisher", "--route", "integral-of-ln-k"],
        &["eval", "omega-tilde", "--route", "prelimit"],
    ];
    for args in cases {
        let o = run(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn table_shapes() {
    let o = run(&["table", "barnes-g", "--start", "1", "--stop", "2", "--count", "11", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(lines[0], "arg_re,arg_im,value_re,value_im,abs_error,route");
    assert_eq!(lines.len(), 12);
    assert!(lines[1].starts_with("1,0,1,0,"));
    assert!(lines[11].starts_with("2,0,1,0,"));

    let o = run(&[
        "table", "g2", "--alpha", "2", "--start", "1", "--stop", "2", "--count", "3", "--im-start", "-0.5",
        "--im-stop", "0.5", "--im-count", "3", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<serde_json::Value> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(rows.len(), 9);
    assert_eq!(rows[1]["arg_re"].as_f64(), Some(1.5));
    assert_eq!(rows[1]["arg_im"].as_f64(), Some(-0.5));
    let keys: Vec<&String> = rows[0].as_object().unwrap().keys().collect();
    assert_eq!(keys.len(), 6);
}

#[test]
fn table_errors() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.csv");
    let o = Command::new(env!("CARGO_BIN_EXE_gammamorphic"))
        .args(["table", "barnes-g", "--start", "0", "--stop", "1", "--count", "3", "--output"])
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("first failing argument x = 0"));
    assert!(!out.exists());
    assert_eq!(run(&["table", "glaisher", "--start", "0", "--stop", "1", "--count", "3"]).status.code(), Some(2));
    assert_eq!(run(&["table", "gamma", "--start", "1", "--stop", "2", "--count", "0"]).status.code(), Some(2));
    assert_eq!(run(&["table", "gamma", "--start", "1", "--stop", "2"]).status.code(), Some(2));
}

#[test]
fn manifest_drives_table() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("m.json");
    let out = dir.path().join("out.csv");
    std::fs::write(
        &m,
        format!(
            r#"{{"function":"double-sine","grid":{{"start":0.5,"stop":1.5,"count":4}},"omega1":1,"omega2":"1.5",
                "route":"integral","format":"csv","output":{}}}"#,
            serde_json::to_string(&out).unwrap()
        ),
    )
    .unwrap();
    let o = run(&["table", "--manifest", m.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 5);
    assert!(text.lines().skip(1).all(|l| l.ends_with(",integral")));
    // flags override the manifest
    let o = run(&["table", "--manifest", m.to_str().unwrap(), "--count", "2", "--route", "g-ratio", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    let rows: Vec<serde_json::Value> = serde_json::from_str(&text).unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["route"], "g-ratio");

    std::fs::write(&m, r#"{"function":"gamma","colour":"blue"}"#).unwrap();
    assert_eq!(run(&["table", "--manifest", m.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn verify_contract() {
    let o = run(&["verify", "--only", "FE_G,KINKELIN_FE", "--density", "dense", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let reports: Vec<serde_json::Value> = serde_json::from_slice(&o.stdout).unwrap();
    assert!(reports.len() > 250);
    assert!(reports.iter().all(|r| r["id"] == "FE_G" || r["id"] == "KINKELIN_FE"));
    assert_eq!(run(&["verify", "--only", "NOPE"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--density", "huge"]).status.code(), Some(2));
    let o = run(&["verify", "--only", "REFLECTION"]);
    // unresolved entries fail without failing the run
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("unresolved"));
}

#[test]
fn full_verify_passes() {
    let o = run(&["verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains(" 0 failures among verified entries"));
}

#[test]
fn help_lists_everything() {
    let o = run(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    for f in ["gamma", "barnes-g", "phi", "kinkelin", "g2", "gn", "kn", "double-sine", "glaisher", "omega-tilde"] {
        assert!(s.contains(&format!("  {f} ")), "{f}");
    }
    for id in IdentityId::ALL {
        assert!(s.split_whitespace().any(|w| w == id.name()), "{id}");
    }
}

#[test]
fn constants_formats() {
    let o = run(&["constants", "--format", "json"]);
    let cs: Vec<serde_json::Value> = serde_json::from_slice(&o.stdout).unwrap();
    let get = |n: &str| cs.iter().find(|c| c["name"] == n).unwrap()["value"].as_f64().unwrap();
    assert!((get("glaisher_a") - 1.2824271291006226).abs() < 1e-15);
    assert!((get("zeta_prime_minus_1") - get("asymptotic_constant")).abs() < 1e-14);
    assert!((get("euler_gamma") - 0.5772156649015329).abs() < 1e-16);
    let csv = stdout(&run(&["constants", "--format", "csv"]));
    assert!(csv.starts_with("name,value,abs_error,route\n"));
}
