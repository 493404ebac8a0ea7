// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::TAU;
use std::path::Path;
use std::process::{Command, Output};

use quadpeg::geom::shoelace_area;
use quadpeg::io::{parse_trace_csv, ResultFile};
use quadpeg::solver::Status;
use quadpeg::Point;

fn quadpeg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quadpeg")).args(args).output().expect("binary runs")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn inscribe_writes_result_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("result.json");
    let svg = dir.path().join("overlay.svg");
    let run = quadpeg(&[
        "inscribe", "--curve", "ellipse:2,1", "--quad", "square", "--out", path(&out), "--svg", path(&svg),
    ]);
    assert_eq!(run.status.code(), Some(0), "{}", String::from_utf8_lossy(&run.stderr));
    let result = ResultFile::from_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(result.status, Status::Found);
    let s = 2.0 / 5f64.sqrt();
    for v in result.vertices.unwrap() {
        assert!((v.x.abs() - s).abs() < 1e-9 && (v.y.abs() - s).abs() < 1e-9);
    }
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));
}

#[test]
fn inscribe_reads_spec_files() {
    let dir = tempfile::tempdir().unwrap();
    let curve = dir.path().join("curve.json");
    let quad = dir.path().join("quad.json");
    std::fs::write(&curve, r#"{"kind": "circle", "radius": 2.0}"#).unwrap();
    std::fs::write(&quad, r#"{"phis": [0.0, 1.0, 3.0, 4.5]}"#).unwrap();
    let run = quadpeg(&["inscribe", "--curve", path(&curve), "--quad", path(&quad)]);
    assert_eq!(run.status.code(), Some(0), "{}", String::from_utf8_lossy(&run.stderr));
    let result = ResultFile::from_json(&String::from_utf8(run.stdout).unwrap()).unwrap();
    assert!((result.drawing.unwrap().scale - 2.0).abs() < 1e-9);
}

#[test]
fn thin_triangle_reports_not_found() {
    let run = quadpeg(&["inscribe", "--curve", "figure1-triangle", "--quad", "kite-figure1"]);
    assert_eq!(run.status.code(), Some(2));
    let result = ResultFile::from_json(&String::from_utf8(run.stdout).unwrap()).unwrap();
    assert_ne!(result.status, Status::Found);
}

#[test]
fn bad_inputs_exit_with_one() {
    let missing = quadpeg(&["inscribe", "--curve", "/nonexistent/curve.json", "--quad", "square"]);
    assert_eq!(missing.status.code(), Some(1));
    let dir = tempfile::tempdir().unwrap();
    let curve = dir.path().join("curve.json");
    std::fs::write(&curve, r#"{"kind": "ellipse", "a": 2.0}"#).unwrap();
    let malformed = quadpeg(&["inscribe", "--curve", path(&curve), "--quad", "square"]);
    assert_eq!(malformed.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&malformed.stderr).contains("curve"));
    let suite = quadpeg(&["verify", "no-such-suite"]);
    assert_eq!(suite.status.code(), Some(1));
    let few = quadpeg(&["trace", "--curve", "circle:1", "--quad", "square", "--samples", "8"]);
    assert_eq!(few.status.code(), Some(1));
    let polygon = quadpeg(&["trace", "--curve", "unit-square", "--quad", "square"]);
    assert_eq!(polygon.status.code(), Some(1));
}

#[test]
fn circle_trace_rows_lie_on_the_circle() {
    let run = quadpeg(&["trace", "--curve", "circle:1", "--quad", "kite-figure1", "--samples", "360", "--free", "b"]);
    assert_eq!(run.status.code(), Some(0));
    let text = String::from_utf8(run.stdout).unwrap();
    assert!(text.starts_with("alpha,x,y,scale\n"));
    let rows = parse_trace_csv(&text).unwrap();
    assert_eq!(rows.len(), 360);
    for (_, p, scale) in rows {
        assert!((p.norm() - 1.0).abs() < 1e-8);
        assert!((scale - 1.0).abs() < 1e-10);
    }
}

#[test]
fn ellipse_trace_encloses_the_ellipse_area() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("trace.csv");
    let run = quadpeg(&["trace", "--curve", "ellipse:2,1", "--quad", "square", "--samples", "4096", "--out", path(&out)]);
    assert_eq!(run.status.code(), Some(0));
    let rows = parse_trace_csv(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let points: Vec<Point> = rows.iter().map(|r| r.1).collect();
    assert!((shoelace_area(&points) - TAU).abs() < 1e-4);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = ["inscribe", "--curve", "ellipse:1.5,1", "--quad", "rectangle:1.7"];
    let a = quadpeg(&args);
    let b = quadpeg(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let trace = ["trace", "--curve", "ellipse:1.5,1", "--quad", "square"];
    assert_eq!(quadpeg(&trace).stdout, quadpeg(&trace).stdout);
}

#[test]
fn verify_lemma4_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let run = quadpeg(&["verify", "lemma4", "--seed", "7", "--out", path(&out)]);
    assert_eq!(run.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["pass"], serde_json::Value::Bool(true));
}
