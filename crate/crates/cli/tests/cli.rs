use std::io::Write;
use std::process::{Command, Output, Stdio};

fn plbraid(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_plbraid"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn last_diagnostic(o: &Output) -> serde_json::Value {
    let err = String::from_utf8(o.stderr.clone()).unwrap();
    serde_json::from_str(err.lines().last().expect("a diagnostic line")).unwrap()
}

#[test]
fn roundtrip_passes() {
    let o = plbraid(&["roundtrip"], "n=3\n1 -2\n");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "PASS\n");
}

#[test]
fn identity_closure_has_three_components() {
    let d = stdout(&plbraid(&["closure"], "n=3\n\n"));
    let o = plbraid(&["cert", "--kind", "components"], &d);
    assert_eq!(stdout(&o), "3\n");
}

#[test]
fn trefoil_certificate_survives_braiding() {
    let d = stdout(&plbraid(&["closure"], "n=2\n1 1 1\n"));
    let braided = stdout(&plbraid(&["braid"], &d));
    let a = stdout(&plbraid(&["cert", "--kind", "normalized"], &d));
    let b = stdout(&plbraid(&["cert", "--kind", "normalized"], &braided));
    let c = stdout(&plbraid(&["cert", "--kind", "normalized", "--oracle", "tl"], &braided));
    assert_eq!(a, "A^-4 + A^-12 - A^-16\n");
    assert_eq!((&a, &a), (&b, &c));
}

#[test]
fn moves_keep_the_bracket() {
    let w = "n=3\n1 -2 1 1\n";
    let want = stdout(&plbraid(&["cert", "--kind", "normalized", "--oracle", "tl"], w));
    for args in [
        vec!["lmove", "--split", "2", "--pos", "2", "--kind", "u", "--sign", "-"],
        vec!["stabilize", "--sign", "+"],
        vec!["conjugate", "--by", "2 -1"],
    ] {
        let out = plbraid(&args, w);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        let got = stdout(&plbraid(&["cert", "--kind", "normalized", "--oracle", "tl"], &stdout(&out)));
        assert_eq!(got, want, "{args:?}");
    }
}

#[test]
fn band_move_reports_its_parameters() {
    let mixed = "n=2\n1 1\nfixed=1\ncomponents=1\nframings=2\n";
    let o = plbraid(&["bandmove", "--component", "0", "--sign", "+"], mixed);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(last_diagnostic(&o)["predicted_lk_delta"], 2);
    assert!(stdout(&o).starts_with("n=3\n"));
}

#[test]
fn input_errors_exit_2_with_json() {
    let o = plbraid(&["cert", "--kind", "writhe"], "n=2\n5\n");
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(last_diagnostic(&o)["kind"], "IndexOutOfRange");
    let o = plbraid(&["bandmove", "--component", "0", "--sign", "+"], "n=2\n1\n");
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(plbraid(&["lmove", "--split", "0"], "").status.code(), Some(2));
}

#[test]
fn validate_fails_on_a_horizontal_edge() {
    let d = r#"{"components": [[{"x": "0", "y": "0"}, {"x": "1", "y": "0"}, {"x": "1/2", "y": "1"}]], "crossings": []}"#;
    let o = plbraid(&["validate"], d);
    assert_eq!(o.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["is_generic"], false);
    let p = plbraid(&["perturb"], d);
    assert_eq!(plbraid(&["validate"], &stdout(&p)).status.code(), Some(0));
}

#[test]
fn corpus_is_reproducible_and_reparses() {
    let a = plbraid(&["corpus", "--seed", "4", "--count", "5", "--kind", "diagrams", "--max-length", "6"], "");
    let b = plbraid(&["corpus", "--seed", "4", "--count", "5", "--kind", "diagrams", "--max-length", "6"], "");
    assert_eq!(a.stdout, b.stdout);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().to_str().unwrap();
    for kind in ["braids", "diagrams", "mixed"] {
        let o = plbraid(&["corpus", "--seed", "4", "--count", "3", "--kind", kind, "--out-dir", path], "");
        assert_eq!(o.status.code(), Some(0));
    }
    let mut names: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    names.sort();
    assert_eq!(names.len(), 9);
    for p in names {
        let o = plbraid(&["cert", "--kind", "components", p.to_str().unwrap()], "");
        assert_eq!(o.status.code(), Some(0), "{p:?}");
    }
}
