//! End-to-end runs of the binary: file formats, subcommand wiring, and
//! exit codes.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use ac0form::f2::Subspace;
use ac0form::synthesis::even_weight_subspace;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ac0form"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write(path: &Path, content: &str) {
    fs::write(path, content).unwrap();
}

#[test]
fn synth_eval_invariant_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let formula = dir.path().join("f.json");
    let report = dir.path().join("report.json");
    let out = run(&[
        "synth",
        "--depth",
        "3",
        "--n",
        "4",
        "--gate",
        "or",
        "--out",
        formula.to_str().unwrap(),
        "--report",
        report.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{out:?}");
    assert!(stdout(&out).contains("leafsize=16"));
    let report_text = fs::read_to_string(&report).unwrap();
    assert!(report_text.contains("\"leafsize\": 16"));
    assert!(report_text.contains("\"invariance_checked\": true"));

    // Parity of 1111 is 0; of 1000 is 1.
    let out = run(&["eval", "--formula", formula.to_str().unwrap(), "--input", "1111"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "value: 0");
    let out = run(&["eval", "--formula", formula.to_str().unwrap(), "--input", "1000"]);
    assert_eq!(stdout(&out).trim(), "value: 1");

    let p4 = dir.path().join("p4.txt");
    write(&p4, &even_weight_subspace(4).unwrap().to_text());
    let out = run(&[
        "invariant",
        "--formula",
        formula.to_str().unwrap(),
        "--subspace",
        p4.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("syntactic: true"));
    assert!(text.contains("semantic: true"));

    // Classification over the even-weight subspace: parity is 0 there.
    let out = run(&[
        "eval",
        "--formula",
        formula.to_str().unwrap(),
        "--subspace",
        p4.to_str().unwrap(),
    ]);
    assert_eq!(stdout(&out).trim(), "classification: all-0");
}

#[test]
fn minweight_matches_the_parity_witness() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    write(&a, &even_weight_subspace(4).unwrap().dual().to_text());
    write(&b, &Subspace::zero(4).to_text());
    let out = run(&["minweight", "--a", a.to_str().unwrap(), "--b", b.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "m=4 witness=1111");
}

#[test]
fn bound_report_fields() {
    let dir = tempfile::tempdir().unwrap();
    let u = dir.path().join("u.txt");
    let v = dir.path().join("v.txt");
    write(&u, &even_weight_subspace(4).unwrap().to_text());
    write(&v, &Subspace::full(4).to_text());
    let out = run(&[
        "bound",
        "--u",
        u.to_str().unwrap(),
        "--v",
        v.to_str().unwrap(),
        "--depth",
        "2",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("\"m\": 4"));
    assert!(text.contains("\"theorem_bound\": 4.0"));
    assert!(text.contains("\"witness\": \"1111\""));
    assert!(text.contains("\"base_case_size\": \"8\""));
}

#[test]
fn trace_and_verify_trace_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let formula = dir.path().join("f.json");
    let u = dir.path().join("u.txt");
    let v = dir.path().join("v.txt");
    let trace = dir.path().join("trace.json");
    write(&u, &even_weight_subspace(4).unwrap().to_text());
    write(&v, &Subspace::full(4).to_text());
    let out = run(&[
        "synth", "--depth", "3", "--n", "4", "--gate", "and", "--out",
        formula.to_str().unwrap(),
    ]);
    assert!(out.status.success());

    let out = run(&[
        "trace",
        "--formula",
        formula.to_str().unwrap(),
        "--u",
        u.to_str().unwrap(),
        "--v",
        v.to_str().unwrap(),
        "--out",
        trace.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{out:?}");
    assert!(stdout(&out).contains("verified=true"));

    let out = run(&[
        "verify-trace",
        "--trace",
        trace.to_str().unwrap(),
        "--formula",
        formula.to_str().unwrap(),
        "--u",
        u.to_str().unwrap(),
        "--v",
        v.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "verify-trace: OK");

    // Corrupt the stored minimum weight: the verifier must reject it.
    let text = fs::read_to_string(&trace).unwrap();
    let tampered = text.replacen("\"m\": 4", "\"m\": 5", 2);
    assert_ne!(tampered, text);
    write(&trace, &tampered);
    let out = run(&[
        "verify-trace",
        "--trace",
        trace.to_str().unwrap(),
        "--formula",
        formula.to_str().unwrap(),
        "--u",
        u.to_str().unwrap(),
        "--v",
        v.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1), "{out:?}");
}

#[test]
fn oracle_subcommand_reports_minima() {
    let dir = tempfile::tempdir().unwrap();
    let u = dir.path().join("u.txt");
    let v = dir.path().join("v.txt");
    write(&u, &even_weight_subspace(3).unwrap().to_text());
    write(&v, &Subspace::full(3).to_text());
    let out = run(&[
        "oracle",
        "--u",
        u.to_str().unwrap(),
        "--v",
        v.to_str().unwrap(),
        "--invariant",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("\"min_size\": 4"));
    assert!(text.contains("\"min_leafsize\": 12"));
    assert!(text.contains("\"witness\""));
}

#[test]
fn graph_subcommands() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("k3.txt");
    write(&graph, "v=3\n0 1\n0 2\n1 2\n");
    let z = dir.path().join("z.txt");
    let z0 = dir.path().join("z0.txt");
    let out = run(&[
        "cycle-space",
        "--graph",
        graph.to_str().unwrap(),
        "--out",
        z.to_str().unwrap(),
        "--z0",
        z0.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("dim=1 codim=1"));
    let z_space = Subspace::parse_text(&fs::read_to_string(&z).unwrap()).unwrap();
    assert_eq!(z_space.dim(), 1);
    let z0_space = Subspace::parse_text(&fs::read_to_string(&z0).unwrap()).unwrap();
    assert!(z0_space.is_zero());

    let out = run(&["maxcut", "--graph", graph.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("\"cut\": 2"));
    assert!(text.contains("\"m\": 1"));
}

#[test]
fn random_regular_is_reproducible() {
    let first = run(&["random-regular", "--v", "10", "--seed", "7"]);
    let second = run(&["random-regular", "--v", "10", "--seed", "7"]);
    assert!(first.status.success());
    assert_eq!(stdout(&first), stdout(&second));
    assert!(stdout(&first).contains("# rng: chacha8 seed=7"));

    // The only cubic graph on 4 vertices.
    let out = run(&["random-regular", "--v", "4", "--seed", "3"]);
    let text = stdout(&out);
    for edge in ["0 1", "0 2", "0 3", "1 2", "1 3", "2 3"] {
        assert!(text.contains(edge));
    }

    let out = run(&["random-regular", "--v", "5", "--seed", "0"]);
    assert_eq!(out.status.code(), Some(2), "odd degree sum must be a usage error");
}

#[test]
fn usage_errors_exit_with_code_two() {
    let out = run(&["minweight", "--a", "/nonexistent", "--b", "/nonexistent"]);
    assert_eq!(out.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    write(&bad, "n=3\n11\n");
    let out = run(&["minweight", "--a", bad.to_str().unwrap(), "--b", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let out = bin().arg("no-such-command").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn version_lists_format_tags() {
    let out = run(&["--version"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("formats:"));
    for tag in [
        "subspace/1",
        "formula/1",
        "graph/1",
        "trace/1",
        "bound-report/1",
        "oracle/1",
        "synth-report/1",
        "selftest-report/1",
    ] {
        assert!(text.contains(tag), "missing {tag} in {text}");
    }
    // The advertised tags match the ones the library actually writes.
    assert_eq!(ac0form::f2::SUBSPACE_FORMAT, "subspace/1");
    assert_eq!(ac0form::formula::FORMULA_FORMAT, "formula/1");
    assert_eq!(ac0form::graph::GRAPH_FORMAT, "graph/1");
    assert_eq!(ac0form::bounds::TRACE_FORMAT, "trace/1");
    assert_eq!(ac0form::bounds::BOUND_REPORT_FORMAT, "bound-report/1");
    assert_eq!(ac0form::oracle::ORACLE_FORMAT, "oracle/1");
    assert_eq!(ac0form::synthesis::SYNTH_REPORT_FORMAT, "synth-report/1");
    assert_eq!(ac0form::acceptance::SELFTEST_REPORT_FORMAT, "selftest-report/1");
}
