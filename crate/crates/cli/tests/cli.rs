use std::path::PathBuf;
use std::process::{Command, Output};

fn gws(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gws"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn gen_hermitian_matches_shipped_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h3.json");
    let out = gws(&[
        "gen",
        "hermitian",
        "--q",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(
        written,
        std::fs::read_to_string(fixture("hermitian_q3.json")).unwrap()
    );
}

#[test]
fn gen_genus0_and_bad_parameters() {
    let out = gws(&["gen", "genus0", "--m", "3"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains(r#""gamma_fundamental":[[0,0,0]]"#));
    assert_eq!(
        gws(&["gen", "hermitian", "--q", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        gws(&["gen", "hermitian", "--q", "6"]).status.code(),
        Some(2)
    );
}

#[test]
fn gen_to_unwritable_path_fails() {
    let out = gws(&[
        "gen",
        "genus0",
        "--m",
        "2",
        "--out",
        "/nonexistent-dir/x.json",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn queries_on_hermitian_q3() {
    let desc = fixture("hermitian_q3.json");
    let q = |op: &str, alpha: &str| stdout(&gws(&["query", op, "--desc", &desc, "--alpha", alpha]));
    assert_eq!(q("member", "3,-1"), "true\n");
    assert_eq!(q("member", "0,5"), "false\n");
    assert_eq!(q("dim", "2,2"), "2\n");
    assert_eq!(q("basis", "2,2"), "[(0,0),(2,2)]\n");
    assert_eq!(q("maximal", "-3,9"), "true\n");
    assert_eq!(q("absmaximal", "1,6"), "false\n");
    let json = stdout(&gws(&[
        "query", "dim", "--desc", &desc, "--alpha", "2,2", "--format", "json",
    ]));
    assert_eq!(json, "{\"alpha\":[2,2],\"op\":\"dim\",\"value\":2}\n");
}

#[test]
fn query_dimension_mismatch_is_usage_error() {
    let out = gws(&[
        "query",
        "dim",
        "--desc",
        &fixture("hermitian_q3.json"),
        "--alpha",
        "1,2,3",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("dimension mismatch"));
}

#[test]
fn series_polynomial_and_box() {
    let desc = fixture("hermitian_q3.json");
    let out = gws(&["series", "--desc", &desc, "--kind", "polynomial"]);
    assert_eq!(
        stdout(&out),
        "{\"terms\":[[[0,0],1],[[1,5],1],[[2,2],1],[[3,-1],1]]}\n"
    );

    let out = gws(&[
        "series",
        "--desc",
        &desc,
        "--kind",
        "L",
        "--box",
        "-5..-3,-4..2",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("\"coeffs\":[]"), "{}", stdout(&out));

    let g0 = fixture("genus0_m3.json");
    let text = stdout(&gws(&[
        "series",
        "--desc",
        &g0,
        "--kind",
        "P",
        "--box",
        "-2..2,-2..2,-2..2",
        "--format",
        "text",
    ]));
    for line in text.lines() {
        let (alpha, _) = line.split_once(' ').unwrap();
        let s: i64 = alpha
            .trim_matches(|c| c == '(' || c == ')')
            .split(',')
            .map(|c| c.parse::<i64>().unwrap())
            .sum();
        assert!((0..=1).contains(&s), "{line}");
    }
}

#[test]
fn series_cap_and_determinism() {
    let desc = fixture("genus0_m3.json");
    let capped = gws(&[
        "series",
        "--desc",
        &desc,
        "--kind",
        "Q",
        "--box",
        "-2..2,-2..2,-2..2",
        "--cap",
        "100",
    ]);
    assert_eq!(capped.status.code(), Some(3));
    let a = gws(&[
        "series",
        "--desc",
        &desc,
        "--kind",
        "Q",
        "--box",
        "-2..2,-2..2,-2..2",
    ]);
    let b = gws(&[
        "series",
        "--desc",
        &desc,
        "--kind",
        "Q",
        "--box",
        "-2..2,-2..2,-2..2",
    ]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_fixtures_pass() {
    let out = gws(&[
        "verify",
        "--desc",
        &fixture("hermitian_q3.json"),
        "--box",
        "-8..9,-8..10",
    ]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(!stdout(&out).contains("FAIL"));
    let out = gws(&[
        "verify",
        "--desc",
        &fixture("genus0_m4.json"),
        "--box",
        "-3..3,-3..3,-3..3,-3..3",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["status"] != "fail"));
}

#[test]
fn verify_mutilated_description_fails() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cut.json");
    std::fs::write(
        &path,
        r#"{"m":2,"genus":3,"lattice_generators":[[4,-4]],"gamma_fundamental":[[0,0],[1,5],[3,-1]],"label":"cut"}"#,
    )
    .unwrap();
    let out = gws(&[
        "verify",
        "--desc",
        path.to_str().unwrap(),
        "--box",
        "-6..6,-6..6",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL description-consistency"));
}

#[test]
fn malformed_description_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"m":2,"genus":3}"#).unwrap();
    let out = gws(&[
        "query",
        "dim",
        "--desc",
        path.to_str().unwrap(),
        "--alpha",
        "0,0",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn plot_reproduces_figure_one_markers() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.svg");
    let out = gws(&[
        "plot",
        "--desc",
        &fixture("hermitian_q3.json"),
        "--box",
        "-8..9,-8..10",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("class=\"maximal\"").count(), 17);
    assert_eq!(svg.matches("class=\"member\"").count(), 120);
    assert!(svg.contains("data-alpha=\"-3,9\""));
}

#[test]
fn plot_genus0_circles_on_degree_zero() {
    let out = gws(&[
        "plot",
        "--desc",
        &fixture("genus0_m2.json"),
        "--box",
        "-3..3,-3..3",
    ]);
    let svg = stdout(&out);
    for chunk in svg.split("<circle").skip(1) {
        let alpha = chunk
            .split("data-alpha=\"")
            .nth(1)
            .unwrap()
            .split('"')
            .next()
            .unwrap();
        let s: i64 = alpha.split(',').map(|c| c.parse::<i64>().unwrap()).sum();
        assert_eq!(chunk.contains("class=\"maximal\""), s == 0, "{alpha}");
        assert!(s >= 0);
    }
}

#[test]
fn plot_rejects_three_points() {
    let out = gws(&[
        "plot",
        "--desc",
        &fixture("genus0_m3.json"),
        "--box",
        "-1..1,-1..1,-1..1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}
