use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

use infharm_core::mapspec::{MapKind, MapSpec};
use infharm_core::Cleared;

fn infharm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_infharm")).args(args).env_remove("IH_SEED").output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn write_map(dir: &TempDir, name: &str, doc: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, doc).unwrap();
    p
}

fn map_args<'a>(cmd: &'a str, d: &'a str, c: &'a str, map: &'a Path) -> Vec<&'a str> {
    vec![cmd, "--domain", d, "--codomain", c, "--map", map.to_str().unwrap()]
}

fn json_run(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.extend(["--json", "-"]);
    let o = infharm(&a);
    (code(&o), serde_json::from_str(&stdout(&o)).expect("json report"))
}

const PROJ_YZ: &str = r#"{"kind": "custom", "dim": 3, "components": ["y", "z"]}"#;
const XSQUARED: &str = r#"{"kind": "custom", "dim": 1, "components": ["x^2"]}"#;
const TRIG: &str = r#"{"kind": "custom", "dim": 3, "components": ["cos(x) + cos(y) + cos(z)", "sin(x) + sin(y) + sin(z)"]}"#;
const NIL_MAP: &str = r#"{"kind": "custom", "dim": 3, "components": ["z - x*y/2", "2*z - x*y"]}"#;
const SEMI: &str = r#"{"kind": "custom", "dim": 2, "components": ["12*x^2 + 12*y^2", "13*x^2 + 10*x*y + 13*y^2"]}"#;
const IDENTITY4: &str = r#"{"kind": "affine", "A": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]}"#;

#[test]
fn check_projection_from_nil() {
    let dir = TempDir::new().unwrap();
    let map = write_map(&dir, "projyz.json", PROJ_YZ);
    let (c, r) = json_run(&map_args("check", "nil", "euclid:2", &map));
    assert_eq!(c, 0);
    assert_eq!(r["energy_density"]["text"], "2 + x^2");
    assert_eq!(r["harmonic"], true);
    assert!(r["witness"].is_null());
}

#[test]
fn check_square_reports_witness() {
    let dir = TempDir::new().unwrap();
    let map = write_map(&dir, "xsquared.json", XSQUARED);
    let (c, r) = json_run(&map_args("check", "euclid:1", "euclid:1", &map));
    assert_eq!(c, 1);
    assert_eq!(r["witness"]["point"], serde_json::json!(["1"]));
    assert_eq!(r["witness"]["value"], 16.0);
    assert_eq!(r["tension"][0]["text"], "16*x^2");
    let o = infharm(&map_args("check", "euclid:1", "euclid:1", &map));
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("not infinity-harmonic"));
}

#[test]
fn check_trig_map() {
    let dir = TempDir::new().unwrap();
    let map = write_map(&dir, "trig.json", TRIG);
    let (c, r) = json_run(&map_args("check", "euclid:3", "euclid:2", &map));
    assert_eq!(c, 0);
    assert_eq!(r["energy_density"]["text"], "3");
}

#[test]
fn numeric_mode_agrees() {
    let dir = TempDir::new().unwrap();
    let map = write_map(&dir, "nil.json", NIL_MAP);
    let mut a = map_args("check", "nil", "euclid:2", &map);
    a.extend(["--mode", "numeric"]);
    let (c, r) = json_run(&a);
    assert_eq!(c, 0);
    assert_eq!(r["mode"], "numeric");
}

#[test]
fn energy_examples() {
    let dir = TempDir::new().unwrap();
    let cases = [
        ("nil.json", NIL_MAP, "nil", "euclid:2", "5 + (5/4)*x^2 + (5/4)*y^2"),
        ("semi.json", SEMI, "semi-euclid:2:-+", "semi-euclid:2:-+", "0"),
        ("id.json", IDENTITY4, "euclid:4", "euclid:4", "4"),
    ];
    for (file, doc, d, c, expected) in cases {
        let map = write_map(&dir, file, doc);
        let o = infharm(&map_args("energy", d, c, &map));
        assert_eq!(code(&o), 0, "{file}");
        assert_eq!(stdout(&o).trim(), expected, "{file}");
    }
}

#[test]
fn rendered_expressions_reparse() {
    let dir = TempDir::new().unwrap();
    let map = write_map(&dir, "xsquared.json", XSQUARED);
    let (_, r) = json_run(&map_args("tension", "euclid:1", "sphere:1", &map));
    let exprs: Vec<&Value> = std::iter::once(&r["energy_density"]).chain(r["tension"].as_array().unwrap()).collect();
    assert!(exprs.iter().any(|e| !e["divisor"].as_array().unwrap().is_empty()));
    for e in exprs {
        let factors: Vec<(String, u32)> = serde_json::from_value(e["divisor"].clone()).unwrap();
        let parsed = Cleared::parse_parts(e["numerator"].as_str().unwrap(), &factors, 1).unwrap();
        let (num, den) = parsed.render_parts(&["x".to_string()]);
        assert_eq!(num, e["numerator"].as_str().unwrap());
        assert_eq!(den, factors);
    }
}

#[test]
fn reports_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let map = write_map(&dir, "nil.json", NIL_MAP);
    let a = map_args("check", "nil", "euclid:2", &map);
    let (_, mut first) = json_run(&a);
    let (_, mut second) = json_run(&a);
    first["timing_ms"] = Value::Null;
    second["timing_ms"] = Value::Null;
    assert_eq!(first, second);
    // the report re-serializes to the same document
    let text = serde_json::to_string(&first).unwrap();
    assert_eq!(serde_json::from_str::<Value>(&text).unwrap(), first);
}

#[test]
fn json_report_written_to_file() {
    let dir = TempDir::new().unwrap();
    let map = write_map(&dir, "projyz.json", PROJ_YZ);
    let out = dir.path().join("report.json");
    let mut a = map_args("check", "nil", "euclid:2", &map);
    a.extend(["--json", out.to_str().unwrap()]);
    assert_eq!(code(&infharm(&a)), 0);
    let r: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(r["domain"], "nil");
    assert_eq!(r["map_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn input_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let bad = write_map(&dir, "bad.json", r#"{"kind": "affine", "A": [[1, "q"], [0, 1]]}"#);
    let o = infharm(&map_args("check", "euclid:2", "euclid:2", &bad));
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("A[0][1]"));

    let map = write_map(&dir, "projyz.json", PROJ_YZ);
    assert_eq!(code(&infharm(&map_args("check", "heisenberg", "euclid:2", &map))), 2);
    assert_eq!(code(&infharm(&map_args("check", "nil", "euclid:3", &map))), 2);
    assert_eq!(code(&infharm(&["suite", "--theorem", "T9.9", "--seed", "1"])), 2);
    assert_eq!(code(&infharm(&["suite", "--theorem", "T6.1"])), 2);
    assert_eq!(code(&infharm(&["search", "--family", "quadratic", "--domain", "nil", "--codomain", "sol", "--seed", "1"])), 2);
    assert_eq!(code(&infharm(&["frobnicate"])), 2);
}

#[test]
fn suite_single_theorem() {
    let (c, r) = json_run(&["suite", "--theorem", "T6.1", "--trials", "200", "--seed", "42"]);
    assert_eq!(c, 0);
    assert_eq!(r["total_disagreements"], 0);
    assert_eq!(r["theorems"][0]["agreements"], 200);
}

#[test]
fn suite_reads_seed_from_env() {
    let o = Command::new(env!("CARGO_BIN_EXE_infharm"))
        .args(["suite", "--theorem", "L2.1", "--trials", "50"])
        .env("IH_SEED", "3")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
}

/// A disagreement of the literal holomorphic criterion: an affine map the
/// criterion rejects while the direct tension vanishes.
fn affine_rejected(c: &Value) -> bool {
    let spec = MapSpec::from_json(&c["map"]).unwrap();
    let affine = match spec.kind() {
        MapKind::HolomorphicRealified { source, .. } => source.components().iter().all(|p| p.degree() <= 1),
        _ => false,
    };
    affine && c["predicted_harmonic"] == false && c["witness"].is_null()
}

#[test]
fn full_suite_fails_only_on_affine_holomorphic_maps() {
    let (c, r) = json_run(&["suite", "--theorem", "all", "--trials", "50", "--seed", "1"]);
    for t in r["theorems"].as_array().unwrap() {
        if t["id"] != "T8.3" {
            assert_eq!(t["disagreements"], serde_json::json!([]), "{}", t["id"]);
        }
    }
    let total = r["total_disagreements"].as_u64().unwrap();
    assert_eq!(c, if total == 0 { 0 } else { 1 });
}

#[test]
fn search_campaigns() {
    let (c, r) = json_run(&["search", "--family", "linear", "--domain", "sol", "--codomain", "euclid:3", "--trials", "10000", "--seed", "7"]);
    assert_eq!(c, 0);
    assert_eq!(r["counterexamples"], serde_json::json!([]));
    let (c, _) = json_run(&["search", "--family", "quadratic", "--domain", "euclid:3", "--codomain", "sphere:2", "--trials", "1000", "--seed", "9"]);
    assert_eq!(c, 0);
}

#[test]
fn holomorphic_search_finds_only_affine_misses() {
    let (c, r) = json_run(&["search", "--family", "holomorphic", "--domain", "complex:1", "--codomain", "complex:1", "--trials", "500", "--seed", "5"]);
    let misses = r["counterexamples"].as_array().unwrap();
    assert_eq!(c, if misses.is_empty() { 0 } else { 1 });
    assert!(misses.iter().all(affine_rejected));
}

#[test]
fn spaces_lists_catalog() {
    let o = infharm(&["spaces"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    for name in ["euclid", "nil", "sol", "sphere"] {
        assert!(s.contains(name), "{name}");
    }
}
