use std::process::Command;

use ruled_cli::output::{BgOutput, EulerOutput, IndexOutput, PolygonOutput, PsiOutput, RelationOutput};
use ruled_cli::run;
use ruled_core::catalog::CatalogRecord;
use ruled_core::verify::{Report, Status};
use serde::de::DeserializeOwned;
use serde::Serialize;

fn ruled(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_ruled"))
        .args(args)
        .env_remove("RULED_MAX_DEGREE")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = ruled(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

/// Parses JSON output into `T` and checks that rendering it again gives
/// the same JSON value.
fn round_trip<T: Serialize + DeserializeOwned + PartialEq + std::fmt::Debug>(args: &[&str]) -> T {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let text = stdout(&full);
    let value: T = serde_json::from_str(&text).unwrap();
    let again = serde_json::to_string_pretty(&value).unwrap();
    assert_eq!(serde_json::from_str::<T>(&again).unwrap(), value);
    assert_eq!(
        serde_json::from_str::<serde_json::Value>(&again).unwrap(),
        serde_json::from_str::<serde_json::Value>(&text).unwrap()
    );
    value
}

#[test]
fn index_zero() {
    assert!(stdout(&["index", "0"]).starts_with("I(0) = 2 + y + 1/y + x + 1/x\n"));
}

#[test]
fn euler_four() {
    assert!(stdout(&["euler", "4"]).starts_with("e_4 = A^3 - A*X\n"));
}

#[test]
fn text_outputs() {
    let psi = stdout(&["psi", "3"]);
    assert!(psi.contains("T -> 3*A\nX -> 2*A^2\nY -> X\n"), "{psi}");
    assert!(psi.contains("kernel: (-2*T^2 + 9*X)"));
    let bg = stdout(&["bg", "--lambda", "5/2", "--max-degree", "8"]);
    assert!(bg.contains("(l = 2, m = 6)"));
    assert!(bg.contains("Hilbert series: (1 - t^10)/((1 - t^2)(1 - t^4)^2)"), "{bg}");
    assert!(bg.contains("[1, 0, 1, 0, 3, 0, 3, 0, 6]"));
    let poly = stdout(&["polygon", "1", "--lambda", "1"]);
    assert!(poly.contains("vertices: (0, 0) (1, 0) (1, 2) (0, 1)"), "{poly}");
}

#[test]
fn exit_codes() {
    assert_eq!(ruled(&[]).status.code(), Some(2));
    assert_eq!(ruled(&["euler"]).status.code(), Some(2));
    assert_eq!(ruled(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(ruled(&["bg", "--lambda", "0"]).status.code(), Some(2));
    assert_eq!(ruled(&["bg", "--lambda", "2", "--coeff", "Z"]).status.code(), Some(2));
    assert_eq!(ruled(&["polygon", "2", "--lambda", "1/2"]).status.code(), Some(2));
    assert_eq!(ruled(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(ruled(&["--help"]).status.code(), Some(0));
}

#[test]
fn max_degree_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_ruled"))
        .args(["--json", "bg", "--lambda", "1"])
        .env("RULED_MAX_DEGREE", "6")
        .output()
        .unwrap();
    let bg: BgOutput = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(bg.max_degree, 6);
    assert_eq!(bg.dims, vec![1, 0, 0, 0, 2, 0, 0]);
    let flag = run(["ruled", "--json", "bg", "--lambda", "1", "--max-degree", "4"]);
    let bg: BgOutput = serde_json::from_str(&flag.stdout).unwrap();
    assert_eq!(bg.dims.len(), 5);
}

#[test]
fn json_round_trips() {
    let i: IndexOutput = round_trip(&["index", "5"]);
    assert_eq!((i.positive_dimension.as_str(), i.negative_dimension.as_str()), ("10", "4"));
    let e: EulerOutput = round_trip(&["euler", "4"]);
    assert_eq!(e.euler_class, "A^3 - A*X");
    let p: PolygonOutput = round_trip(&["polygon", "2", "--lambda", "3/2"]);
    assert_eq!(p.record.lambda, "3/2");
    let s: PsiOutput = round_trip(&["psi", "0"]);
    assert_eq!(s.images.len(), 3);
    let r: RelationOutput = round_trip(&["relation", "--l", "3", "--family", "twisted"]);
    assert_eq!(r.scalars, vec!["1"; 4]);
    let b: BgOutput = round_trip(&["bg", "--lambda", "7/3", "--family", "twisted", "--coeff", "F2"]);
    assert_eq!(b.presentation, None);
    let b: BgOutput = round_trip(&["bg", "--lambda", "7/3", "--coeff", "Z1/2"]);
    assert_eq!(b.dims.len(), 31);
    let dump: Vec<CatalogRecord> = serde_json::from_str(&stdout(&["catalog-dump"])).unwrap();
    assert!(dump.iter().any(|r| r.object == "relation"));
    let back: Vec<CatalogRecord> = serde_json::from_str(&serde_json::to_string(&dump).unwrap()).unwrap();
    assert_eq!(back, dump);
}

#[test]
fn polygon_record_input() {
    let p: PolygonOutput = round_trip(&["polygon", "3", "--lambda", "2"]);
    let dir = std::env::temp_dir().join(format!("ruled-polygon-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("f3.json");
    std::fs::write(&file, serde_json::to_string(&p.record).unwrap()).unwrap();
    let q: PolygonOutput = round_trip(&["polygon", "--from", file.to_str().unwrap()]);
    assert_eq!(q, p);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_is_deterministic() {
    let args = ["--json", "verify", "--suite", "index,euler,circles,connectivity", "--max-degree", "16", "--seed", "5"];
    let a: Report = serde_json::from_str(&stdout(&args)).unwrap();
    let b: Report = serde_json::from_str(&stdout(&args)).unwrap();
    assert_eq!(a.status, Status::Ok);
    assert_eq!(a.without_timing(), b.without_timing());
    let text = stdout(&["verify", "--suite", "index"]);
    assert!(text.lines().next().unwrap().starts_with("ok   index"));
    assert!(text.contains("ok: 13/13 checks passed"));
}

#[test]
fn verify_all() {
    let out = ruled(&["verify", "--suite", "all"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(!text.contains("FAIL"));
}
