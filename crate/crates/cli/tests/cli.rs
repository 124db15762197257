use std::fs;
use std::process::Command as Proc;

use clap::Parser;
use kmgrad_cli::{execute, parse_family, render_text, run, Cli, Report};
use kmgrad_core::cadmissible::{build_aj, check_pair, enumerate_pairs};
use kmgrad_core::families::builtin;
use kmgrad_core::gradation::{analyze, paper_s5_composed};
use kmgrad_core::rootsys::enumerate_positive_roots;
use serde_json::{json, Value};

fn kmgrad(args: &[&str]) -> (i32, String) {
    let out = Proc::new(env!("CARGO_BIN_EXE_kmgrad"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
    )
}

fn report(args: &[&str]) -> Report {
    let mut full = vec!["kmgrad"];
    full.extend_from_slice(args);
    execute(&Cli::try_parse_from(full).unwrap()).unwrap_or_else(|e| panic!("{e:?}"))
}

#[test]
fn exit_codes() {
    assert_eq!(kmgrad(&["classify", "E10"]).0, 0);
    assert_eq!(kmgrad(&["pairs", "D4", "--j", "2"]).0, 1);
    assert_eq!(kmgrad(&["build-aj", "paper-s5", "--j", "4"]).0, 1);
    assert_eq!(kmgrad(&["fold", "A2", "--fibers", "1,2"]).0, 1);
    assert_eq!(kmgrad(&["classify", "no-such-matrix"]).0, 2);
    assert_eq!(kmgrad(&["fold", "A3", "--fibers", "1|2"]).0, 2);
    assert_eq!(kmgrad(&["pairs", "A3", "--j", "7"]).0, 2);
    assert_eq!(kmgrad(&["frobnicate", "A3"]).0, 2);
    assert_eq!(kmgrad(&["--help"]).0, 0);
}

#[test]
fn classify_examples() {
    let (code, out) = kmgrad(&["classify", "E10", "--format", "json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], "kmgrad/1");
    assert_eq!(v["result"]["kind"], "Indefinite");
    assert_eq!(v["result"]["hyperbolic"], true);
    let r = report(&["classify", "paper-s5", "--det", "--signature"]);
    assert_eq!(r.result["det"], "275");
    assert_eq!(r.result["signature"], json!([4, 0, 2]));
}

#[test]
fn json_round_trip() {
    for args in [
        vec!["classify", "H3,3"],
        vec!["roots", "B3", "--normalize", "short=1"],
        vec!["build-aj", "E10", "--j", "2,3,4,5"],
        vec![
            "fold",
            "paper-s5",
            "--fibers",
            "1,5|2,6|3|4",
            "--height",
            "6",
        ],
        vec!["analyze", "paper-s5", "--height", "6"],
        vec!["diagram", "E10", "--j", "1,2,3,4,5,6", "--dot"],
    ] {
        let mut full = args.clone();
        full.extend(["--format", "json"]);
        let (code, out) = kmgrad(&full);
        assert_eq!(code, 0, "{args:?}");
        let parsed: Report = serde_json::from_str(&out).unwrap();
        assert_eq!(parsed, report(&args), "{args:?}");
        let again = serde_json::to_string_pretty(&parsed).unwrap() + "\n";
        assert_eq!(again, out);
    }
}

#[test]
fn thin_shell_matches_library() {
    let e10 = builtin("E10").unwrap();
    assert_eq!(
        report(&["classify", "E10"]).result,
        serde_json::to_value(e10.classify()).unwrap()
    );
    let roots = report(&["roots", "G2"]).result;
    let g2 = builtin("G2").unwrap();
    assert_eq!(
        roots["roots"],
        serde_json::to_value(enumerate_positive_roots(&g2, 12)).unwrap()
    );
    assert_eq!(roots["count"], 6);
    let j = e10.indices_of(&["2", "3", "4", "5"]).unwrap();
    assert_eq!(
        report(&["build-aj", "E10", "--j", "2,3,4,5"]).result["algebra"],
        serde_json::to_value(build_aj(&e10, &j).unwrap()).unwrap()
    );
    let a4 = builtin("A4").unwrap();
    let checks: Vec<_> = enumerate_pairs(&a4)
        .unwrap()
        .iter()
        .map(|j| check_pair(&a4, j).unwrap())
        .collect();
    assert_eq!(
        report(&["pairs", "A4"]).result["pairs"],
        serde_json::to_value(checks).unwrap()
    );
    let spec = paper_s5_composed().unwrap().2;
    assert_eq!(
        report(&["analyze", "paper-s5", "--height", "8"]).result["report"],
        serde_json::to_value(analyze(&spec, 8).unwrap()).unwrap()
    );
}

#[test]
fn analyze_reads_spec_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("spec.json");
    let spec = paper_s5_composed().unwrap().2;
    fs::write(&path, serde_json::to_string(&spec).unwrap()).unwrap();
    let r = report(&["analyze", path.to_str().unwrap(), "--height", "8"]);
    assert_eq!(r.result["report"]["J"], json!(["4"]));
    assert_eq!(r.result["report"]["I'_im"], json!(["3"]));
    assert_eq!(
        r.result["report"]["verdicts"]["pair_classification"],
        "GeneralizedCAdmissible"
    );
    assert_eq!(r.result["cartan_constraints"]["solution_dim"], 2);

    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"source\": 1}").unwrap();
    assert_eq!(kmgrad(&["analyze", bad.to_str().unwrap()]).0, 2);
}

#[test]
fn matrices_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let bare = dir.path().join("h.json");
    fs::write(&bare, "[[2,-3],[-3,2]]").unwrap();
    let labeled = dir.path().join("l.json");
    fs::write(&labeled, r#"{"labels":["a","b"],"matrix":[[2,-1],[-1,2]]}"#).unwrap();
    assert_eq!(
        report(&["classify", bare.to_str().unwrap()]).result["hyperbolic"],
        true
    );
    let d = report(&["diagram", labeled.to_str().unwrap(), "--j", "b"]);
    assert_eq!(d.result["rendered"], "vertices: ●a ○b\na -- b\n");
    let broken = dir.path().join("x.json");
    fs::write(&broken, "[[2,1],[-1,2]]").unwrap();
    assert_eq!(kmgrad(&["classify", broken.to_str().unwrap()]).0, 2);
}

#[test]
fn text_output_is_stable() {
    let (_, a) = kmgrad(&["build-aj", "E10", "--j", "1,2,3,4,5,6"]);
    let (_, b) = kmgrad(&["build-aj", "E10", "--j", "1,2,3,4,5,6"]);
    assert_eq!(a, b);
    assert!(a.contains("vertices: ●-1 ●0 ○1 ○2 ○3 ○4 ○5 ○6 ●7 ●8"));
    let text = render_text(&report(&["diagram", "H3,3"]).result);
    assert!(
        text.ends_with("rendered:\n  vertices: 1 2\n  1 -(3,3)- 2\n"),
        "{text}"
    );
}

#[test]
fn catalog_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cat");
    let o = out.to_str().unwrap();
    assert_eq!(kmgrad(&["catalog", "A2..A5", "--out", o]).0, 0);
    let mut names: Vec<_> = fs::read_dir(&out)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(names, ["A2.json", "A3.json", "A4.json", "A5.json"]);
    let first = fs::read(out.join("A3.json")).unwrap();
    assert_eq!(kmgrad(&["catalog", "A2..A5", "--out", o]).0, 0);
    assert_eq!(fs::read(out.join("A3.json")).unwrap(), first);
    let a3: Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(a3["pairs"].as_array().unwrap().len(), 2);
    assert_eq!(a3["quotients"].as_array().unwrap().len(), 2);

    let empty = dir.path().join("empty");
    assert_eq!(
        kmgrad(&["catalog", "", "--out", empty.to_str().unwrap()]).0,
        0
    );
    assert!(!empty.exists());
    assert_eq!(
        parse_family("A2..A4; H3,3").unwrap(),
        ["A2", "A3", "A4", "H3,3"]
    );
    assert!(parse_family("A2..B4").is_err());
}

#[test]
fn catalog_e10_lists_both_pairs() {
    let dir = tempfile::tempdir().unwrap();
    let out = run([
        "kmgrad",
        "catalog",
        "E10",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v: Value = serde_json::from_slice(&fs::read(dir.path().join("E10.json")).unwrap()).unwrap();
    let js: Vec<Value> = v["pairs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["J"].clone())
        .collect();
    assert!(js.contains(&json!(["2", "3", "4", "5"])));
    assert!(js.contains(&json!(["1", "2", "3", "4", "5", "6"])));
}

#[test]
fn orbit_cap_from_environment() {
    let out = Proc::new(env!("CARGO_BIN_EXE_kmgrad"))
        .args(["fiber", "E10", "--j", "1,2,3,4,5,6", "--gamma", "1,1,1,1"])
        .env("KMGRAD_MAX_WEYL", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let (code, text) = kmgrad(&[
        "fiber", "A3", "--j", "1,3", "--gamma", "1", "--format", "json",
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["result"]["count"], 4);
}
