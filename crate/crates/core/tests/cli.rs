use std::path::Path;
use std::process::Command;

use schwarzkit::cli::{main_with_args, EXIT_ERROR, EXIT_OK};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("schwarzkit").chain(args.iter().copied());
    let code = main_with_args(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const VECTORS: &str = r#"{"dim":3,"vectors":[
  [[1,0],[2,1],[-1,0]],
  [[0.5,-1],[1,0],[3,2]],
  [[0.6,0],[0,0],[0.8,0]],
  [[1,0],[0,0],[0,0]],
  [[0,0],[1,0],[0,0]],
  [[2,0],[4,2],[-2,0]]
]}"#;

fn fixture(dir: &Path) -> std::path::PathBuf {
    let p = dir.join("v.json");
    std::fs::write(&p, VECTORS).unwrap();
    p
}

#[test]
fn bound_methods_exit_ok() {
    let dir = tempfile::tempdir().unwrap();
    let input = fixture(dir.path());
    let i = s(&input);
    let cases: &[&[&str]] = &[
        &["--method", "schwarz"],
        &["--method", "projection", "--basis", "3,4"],
        &["--method", "quad", "--z", "4"],
        &["--method", "rs", "--e", "2"],
        &["--method", "detp", "--e", "2", "--p", "3"],
        &["--method", "det2", "--e", "2", "--mode", "real"],
        &[
            "--method",
            "ntuple-general",
            "--e",
            "2",
            "--order",
            "quadratic",
        ],
        &["--method", "ntuple-basis-max", "--p", "3"],
        &["--method", "ntuple-mean", "--order", "quadratic"],
    ];
    for extra in cases {
        let mut args = vec!["bound", "--input", i, "--x", "0", "--y", "1"];
        args.extend_from_slice(extra);
        let (code, out, err) = run(&args);
        assert_eq!(code, EXIT_OK, "{extra:?}: {err}");
        assert!(
            out.lines()
                .all(|l| l.contains(" ok") || l.starts_with("argmax")),
            "{extra:?}: {out}"
        );
    }
}

#[test]
fn bound_json_report_and_equality() {
    let dir = tempfile::tempdir().unwrap();
    let input = fixture(dir.path());
    let json = dir.path().join("r.json");
    let (code, _, err) = run(&[
        "bound",
        "--input",
        s(&input),
        "--x",
        "0",
        "--y",
        "5",
        "--method",
        "schwarz",
        "--json",
        s(&json),
    ]);
    assert_eq!(code, EXIT_OK, "{err}");
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["method"], "schwarz");
    assert_eq!(v["reports"][0]["equality"], true);
}

#[test]
fn usage_and_input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let input = fixture(dir.path());
    let i = s(&input);
    assert_eq!(run(&[]).0, EXIT_ERROR);
    assert_eq!(run(&["bound", "--input", i]).0, EXIT_ERROR);
    let (code, _, err) = run(&[
        "bound", "--input", i, "--x", "0", "--y", "9", "--method", "schwarz",
    ]);
    assert_eq!(code, EXIT_ERROR);
    assert!(!err.is_empty());
    let (code, _, err) = run(&[
        "bound", "--input", i, "--x", "0", "--y", "1", "--method", "rs",
    ]);
    assert_eq!(code, EXIT_ERROR);
    assert!(err.contains("--e"), "{err}");
    // not a unit vector
    let (code, _, _) = run(&[
        "bound", "--input", i, "--x", "0", "--y", "1", "--method", "det2", "--e", "0",
    ]);
    assert_eq!(code, EXIT_ERROR);

    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "re0,im0\n1,0\nx,0\n").unwrap();
    let (code, _, err) = run(&["metrics", "--input", s(&bad), "--pairs"]);
    assert_eq!(code, EXIT_ERROR);
    assert!(err.contains("line 3"), "{err}");

    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("check"));
}

#[test]
fn metrics_pairs_and_triples() {
    let dir = tempfile::tempdir().unwrap();
    let input = fixture(dir.path());
    let json = dir.path().join("m.json");
    let (code, out, err) = run(&[
        "metrics",
        "--input",
        s(&input),
        "--pairs",
        "--kind",
        "dp",
        "--p",
        "3",
        "--json",
        s(&json),
    ]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert_eq!(out.lines().count(), 3);
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 3);
    assert_eq!(v[2]["first"], 4);

    for kind in [
        "lin_psi",
        "krein",
        "wz_sin_psi",
        "sin_phi",
        "dp",
        "deltap",
        "cos_lower",
    ] {
        let (code, out, err) = run(&["metrics", "--input", s(&input), "--triples", "--kind", kind]);
        assert_eq!(code, EXIT_OK, "{kind}: {err}");
        assert_eq!(out.lines().count(), 2, "{kind}");
    }
}

#[test]
fn csv_input_matches_json() {
    let dir = tempfile::tempdir().unwrap();
    let json_in = fixture(dir.path());
    let csv_in = dir.path().join("v.csv");
    let file = schwarzkit::parse_vectors(&json_in, None).unwrap();
    std::fs::write(&csv_in, file.to_csv_string()).unwrap();
    let a = run(&[
        "metrics",
        "--input",
        s(&json_in),
        "--pairs",
        "--kind",
        "psi",
    ]);
    let b = run(&["metrics", "--input", s(&csv_in), "--pairs", "--kind", "psi"]);
    assert_eq!(a, b);
}

#[test]
fn index_build_and_queries() {
    let dir = tempfile::tempdir().unwrap();
    let input = fixture(dir.path());
    let idx = dir.path().join("idx.json");
    let (code, out, err) = run(&[
        "index",
        "build",
        "--input",
        s(&input),
        "--p",
        "2",
        "--out",
        s(&idx),
    ]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert!(out.contains("indexed 6 points"));

    let q = dir.path().join("q.csv");
    std::fs::write(&q, "re0,im0,re1,im1,re2,im2\n1,0,2,1,-1,0\n").unwrap();
    let json = dir.path().join("nn.json");
    let (code, _, err) = run(&[
        "index",
        "nn",
        "--index",
        s(&idx),
        "--query",
        s(&q),
        "--k",
        "2",
        "--json",
        s(&json),
    ]);
    assert_eq!(code, EXIT_OK, "{err}");
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    let ids: Vec<u64> = v[0]["neighbors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|n| n["id"].as_u64().unwrap())
        .collect();
    // x and 2x are the same projective point
    assert_eq!(ids, [0, 5]);

    let (code, out, _) = run(&[
        "index",
        "range",
        "--index",
        s(&idx),
        "--query",
        s(&q),
        "--r",
        "0",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 2);
    let (code, _, _) = run(&[
        "index",
        "range",
        "--index",
        s(&idx),
        "--query",
        s(&q),
        "--r",
        "1.5",
    ]);
    assert_eq!(code, EXIT_ERROR);
}

#[test]
fn check_small_run() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("suite.json");
    let (code, out, err) = run(&[
        "check",
        "--dims",
        "2,3",
        "--trials",
        "200",
        "--seed",
        "3",
        "--p",
        "2,3",
        "--field",
        "real",
        "--json",
        s(&json),
        "--serial",
    ]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert!(out.contains("confirmed_violations=0"), "{out}");
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["total_trials"], 400);
    assert_eq!(v["families"].as_array().unwrap().len(), 25);
}

#[test]
fn binary_reports_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_schwarzkit");
    let ok = Command::new(bin).arg("--version").output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    let bad = Command::new(bin)
        .args(["bound", "--input", "/nonexistent.json"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_ERROR));
    assert!(!bad.stderr.is_empty());
}
