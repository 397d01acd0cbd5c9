use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn affvir(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_affvir")).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

#[test]
fn theta_with_half_integer_beta_is_reducible() {
    let out = affvir(&["classify", "--family", "Theta", "--params", "2,3,3/2,0"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["command"], "classify");
    assert_eq!(r["summary"]["irreducible"], false);
}

#[test]
fn theta_with_generic_beta_is_irreducible() {
    let out = affvir(&["classify", "--family", "Theta", "--params", "2,3,1/3,0"]);
    assert_eq!(code(&out), 0);
    assert_eq!(report(&out)["summary"]["irreducible"], true);
}

#[test]
fn det_check_sweep_passes() {
    let out = affvir(&["det-check", "--max-m", "3", "--max-size", "3", "--max-r", "2"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["summary"]["failed"], 0);
    assert!(r["summary"]["total"].as_u64().unwrap() > 0);
}

#[test]
fn rg_of_one_vh() {
    let out = affvir(&["rg", "--m", "2", "--seed-element", "1(x)1(x)vh"]);
    assert_eq!(code(&out), 0);
    assert_eq!(report(&out)["summary"]["R_g"], 3);
}

#[test]
fn rg_of_positive_degree_element() {
    let out = affvir(&["rg", "--params", "1,1,0,0", "--params", "2,1,1,0", "--seed-element", "s1(x)t2(x)vh"]);
    assert_eq!(code(&out), 0);
    assert!(report(&out)["summary"]["R_g"].as_u64().unwrap() >= 4);
}

#[test]
fn iso_witness_is_reported() {
    let out = affvir(&[
        "classify", "--params", "1,2,0,0", "--params", "3,1,1,0", "--against", "3,1,1,0", "--against", "1,2,-1,0",
    ]);
    assert_eq!(code(&out), 0);
    let iso = &report(&out)["summary"]["iso"];
    assert_eq!(iso["isomorphic"], true);
    assert_eq!(iso["witness"]["permutation"], serde_json::json!([1, 0]));
    assert_eq!(iso["witness"]["relations"], serde_json::json!(["beta-twin", "equal"]));
}

#[test]
fn all_subcommands_pass_on_defaults() {
    for cmd in ["verify-axioms", "reduce", "closure", "wl-check", "omega", "locfin", "hw-quotient"] {
        let out = affvir(&[cmd]);
        assert_eq!(code(&out), 0, "{cmd}: {}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(report(&out)["summary"]["failed"], 0, "{cmd}");
    }
}

#[test]
fn failed_check_exits_one() {
    let out = affvir(&["closure", "--max-dim", "3"]);
    assert_eq!(code(&out), 1);
    assert!(report(&out)["summary"]["failed"].as_u64().unwrap() > 0);
}

#[test]
fn configuration_errors_exit_two() {
    let cases: &[&[&str]] = &[
        &["classify", "--params", "x,1,1,1"],
        &["rg", "--m", "3", "--params", "1,1,1,1"],
        &["classify", "--params", "Omega:1,1,0,0", "--params", "Delta:2,1,0,0"],
        &["wl-check", "--params", "1,1,0,0", "--params", "2,1,0,0"],
        &["rg", "--max-p", "0"],
        &["omega", "--hw", "1,3,1/2", "--level", "0", "--f0", "0"],
        &["--family", "Omega"],
        &["no-such-command"],
    ];
    for args in cases {
        let out = affvir(args);
        assert_eq!(code(&out), 2, "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?} prints a diagnostic");
    }
}

#[test]
fn mixed_families_need_the_flag() {
    let mixed = ["--allow-mixed", "--params", "Omega:1,1,0,0", "--params", "Delta:2,1,0,0"];
    let out = affvir(&[&["classify"], &mixed[..]].concat());
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(report(&out)["summary"]["irreducible"].is_boolean());
    // The analyses stay single-family even with the flag.
    assert_eq!(code(&affvir(&[&["rg"], &mixed[..]].concat())), 2);
}

fn run_to(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name);
    let mut full: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap();
    full.extend(["-o", p]);
    let out = affvir(&full);
    assert!(code(&out) <= 1, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    std::fs::read_to_string(&path).unwrap()
}

#[test]
fn report_config_reproduces_report() {
    let dir = tempfile::tempdir().unwrap();
    for (k, args) in [
        vec!["rg", "--m", "2", "--seed", "11", "--seed-element", "s1*t1(x)1(x)vh"],
        vec!["verify-axioms", "--samples", "1", "--seed", "5"],
        vec!["classify", "--family", "Delta", "--m", "2", "--seed", "3"],
        vec!["omega", "--seed", "2"],
    ]
    .into_iter()
    .enumerate()
    {
        let first = run_to(dir.path(), &format!("a{k}.json"), &args);
        let path = dir.path().join(format!("a{k}.json"));
        // The embedded config names the first output path, so redirect it.
        let second = run_to(dir.path(), &format!("b{k}.json"), &["--config", path.to_str().unwrap()]);
        let strip = |s: &str| {
            let mut v: Value = serde_json::from_str(s).unwrap();
            v["config"]["output"] = Value::Null;
            v
        };
        assert_eq!(strip(&first), strip(&second), "{args:?}");
    }
}

#[test]
fn report_without_output_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let out = affvir(&["reduce", "--m", "2", "--seed", "9", "--seed-element", "s1^2*t1(x)t2(x)vh"]);
    assert_eq!(code(&out), 0);
    let path = dir.path().join("r.json");
    std::fs::write(&path, &out.stdout).unwrap();
    let again = affvir(&["--config", path.to_str().unwrap()]);
    assert_eq!(code(&again), 0);
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("job.json");
    std::fs::write(&path, r#"{"command": "classify", "family": "Theta", "params": ["2,3,1/3,0"]}"#).unwrap();
    let out = affvir(&["--config", path.to_str().unwrap()]);
    assert_eq!(report(&out)["summary"]["irreducible"], true);
    let out = affvir(&["--config", path.to_str().unwrap(), "--params", "2,3,1,0"]);
    assert_eq!(report(&out)["summary"]["irreducible"], false);
}
