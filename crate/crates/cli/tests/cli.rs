//! End-to-end behaviour of the binary: golden reports, exit codes, exports.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use citor::io::{Body, Report};

fn corpus(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/corpus").join(format!("{name}.cit"));
    p.to_str().unwrap().to_string()
}

fn citor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_citor")).args(args).output().expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("citor-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn corpus_matches_golden_reports() {
    let out = citor(&["corpus"]);
    let report = Report::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap();
    let Body::Corpus(entries) = &report.results[0].body else { panic!("corpus body") };
    for e in entries {
        assert!(e.golden && e.matched, "{}: {:?}", e.name, e.diff);
        assert_eq!((e.failures, e.errors), (0, 0), "{}", e.name);
    }
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn run_output_is_byte_stable() {
    let a = citor(&["run", &corpus("hypersurface")]);
    let b = citor(&["run", &corpus("hypersurface")]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    let bad = scratch("linear.cit");
    fs::write(&bad, "RING x, y\nCI x\nMODULE M = quotient x\n").unwrap();
    assert_eq!(citor(&["verify", bad.to_str().unwrap()]).status.code(), Some(2));
    let missing = scratch("missing.cit");
    assert_eq!(citor(&["verify", missing.to_str().unwrap()]).status.code(), Some(2));
    // chi over R is undefined when the complexity is positive
    let out = citor(&["chi", &corpus("hypersurface"), "H", "--level", "r"]);
    assert_eq!(out.status.code(), Some(1));
    let report = Report::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap();
    let Body::Error(e) = &report.results[0].body else { panic!("error body") };
    assert_eq!(e.code, "CX_POSITIVE");
    // a lifting with the wrong split fails its checks
    let wrong = scratch("wrong.cit");
    fs::write(
        &wrong,
        "RING x1, x2, y1, y2\nCI x1*y1, x2*y2\nMODULE M = quotient x1, x2\nMODULE N = quotient y1, y2\n\
         MODULE M1 = quotient x1, x2\nMODULE N1 over S = quotient y1, y2\nPAIR E = M N\n\
         LIFTING L = E split 2 M1 N1\n",
    )
    .unwrap();
    let out = citor(&["semilift", wrong.to_str().unwrap(), "--nmax", "8"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn unknown_target_is_an_input_error() {
    let out = citor(&["tor", &corpus("hypersurface"), "NOPE"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn flags_reach_the_report() {
    let out = citor(&["tor", &corpus("hypersurface"), "--nmax", "6", "--seed", "5", "--route", "exact", "--p", "101"]);
    let report = Report::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap();
    let p = &report.parameters;
    assert_eq!((p.nmax, p.seed, p.p), (6, 5, 101));
    let Body::Tor(t) = &report.results[0].body else { panic!("tor body") };
    assert_eq!(t.over_r.lengths, vec![1, 0, 1, 0, 1, 0, 1]);
    assert!(report.timings.is_none());
    let timed = citor(&["tor", &corpus("hypersurface"), "--nmax", "4", "--timings"]);
    let report = Report::from_json(&String::from_utf8(timed.stdout).unwrap()).unwrap();
    assert_eq!(report.timings.unwrap().len(), 1);
}

#[test]
fn out_and_csv_files() {
    let (json, csv) = (scratch("e2.json"), scratch("e2.csv"));
    let out = citor(&[
        "theta",
        &corpus("codim2"),
        "--s",
        "2",
        "--out",
        json.to_str().unwrap(),
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let report = Report::from_json(&fs::read_to_string(&json).unwrap()).unwrap();
    let Body::Theta(t) = &report.results[0].body else { panic!("theta body") };
    assert_eq!(t.value, 1);
    let out = citor(&["tor", &corpus("codim2"), "--csv", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let mut rows = csv::Reader::from_path(&csv).unwrap();
    let lengths: Vec<String> = rows.records().map(|r| r.unwrap()[3].to_string()).take(5).collect();
    assert_eq!(lengths, ["1", "0", "2", "0", "3"]);
}
