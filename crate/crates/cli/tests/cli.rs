use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

/// Runs the binary and returns its exit code and parsed report.
fn truss(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_truss")).args(args).output().unwrap();
    let report = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), report)
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn count(report: &Value, name: &str) -> u64 {
    report["counts"][name].as_u64().unwrap_or_else(|| panic!("no count {name} in {report}"))
}

fn location(report: &Value) -> &str {
    report["diagnostics"][0]["location"].as_str().unwrap()
}

fn message(report: &Value) -> &str {
    report["diagnostics"][0]["message"].as_str().unwrap()
}

/// The canonical form of a fixture, written into `dir`.
fn canonical(dir: &TempDir, name: &str) -> PathBuf {
    let out = dir.path().join(format!("canonical-{name}"));
    let (code, report) = truss(&["validate", path(&fixture(name)), "--out", path(&out)]);
    assert_eq!(code, 0, "{report}");
    out
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

const FIXTURES: [&str; 6] = [
    "point2.json",
    "degeneracy.json",
    "face.json",
    "node.json",
    "constant2.json",
    "identity.json",
];

#[test]
fn validate_point_diagram() {
    let (code, r) = truss(&["validate", path(&fixture("point2.json"))]);
    assert_eq!(code, 0);
    assert_eq!(r["status"], "ok");
    assert_eq!(count(&r, "elements"), 5);
    assert_eq!(count(&r, "relations"), 4);
}

#[test]
fn validate_cites_the_bad_map() {
    let (code, r) = truss(&["validate", path(&fixture("nonmonotone.json"))]);
    assert_eq!(code, 1);
    assert_eq!(r["status"], "error");
    assert_eq!(location(&r), "arrow[0]");
    assert!(message(&r).contains("[1, 0]"));
}

#[test]
fn validate_cites_the_mismatched_stage() {
    let (code, r) = truss(&["validate", path(&fixture("mismatched.json"))]);
    assert_eq!(code, 1);
    assert_eq!(location(&r), "source.stages[0]");
}

#[test]
fn validate_bordism_counts() {
    let (code, r) = truss(&["validate", path(&fixture("degeneracy.json"))]);
    assert_eq!(code, 0);
    assert_eq!((count(&r, "source_elements"), count(&r, "target_elements")), (5, 3));
    assert_eq!(count(&r, "labels"), 2);
}

#[test]
fn parse_errors_carry_line_and_column() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", "{\"schema\": \"truss/diagram/v1\",\n  \"ord\": {\"pt\": 2,}\n}\n");
    let (code, r) = truss(&["validate", path(&bad)]);
    assert_eq!(code, 2);
    assert_eq!(location(&r), "line 2, column 19");

    let unknown = write(&dir, "unknown.json", "{\"schema\": \"truss/v0\"}");
    let (code, r) = truss(&["validate", path(&unknown)]);
    assert_eq!(code, 2);
    assert!(message(&r).contains("truss/tower/v1"));

    let (code, _) = truss(&["validate", path(&dir.path().join("missing.json"))]);
    assert_eq!(code, 2);
}

#[test]
fn unknown_fields_are_rejected() {
    let dir = TempDir::new().unwrap();
    let text = std::fs::read_to_string(fixture("point2.json")).unwrap().replace("\"ord\"", "\"ords\"");
    let (code, _) = truss(&["validate", path(&write(&dir, "typo.json", &text))]);
    assert_eq!(code, 2);
}

#[test]
fn printing_is_canonical() {
    let dir = TempDir::new().unwrap();
    for name in FIXTURES {
        let once = canonical(&dir, name);
        let twice = dir.path().join("twice.json");
        let (code, _) = truss(&["validate", path(&once), "--out", path(&twice)]);
        assert_eq!(code, 0);
        assert_eq!(std::fs::read(&once).unwrap(), std::fs::read(&twice).unwrap(), "{name}");
    }
}

#[test]
fn category_files_round_trip() {
    let dir = TempDir::new().unwrap();
    let text = r#"{
  "schema": "truss/category/v1",
  "objects": ["a", "b"],
  "morphisms": [
    { "name": "1a", "src": "a", "dst": "a" },
    { "name": "1b", "src": "b", "dst": "b" },
    { "name": "f", "src": "a", "dst": "b" },
    { "name": "g", "src": "a", "dst": "b" },
    { "name": "e", "src": "b", "dst": "b" }
  ],
  "identities": { "a": "1a", "b": "1b" },
  "composition": [
    { "first": "f", "then": "e", "result": "g" },
    { "first": "g", "then": "e", "result": "g" },
    { "first": "e", "then": "e", "result": "e" }
  ]
}
"#;
    let p = write(&dir, "cat.json", text);
    let out = dir.path().join("out.json");
    let (code, r) = truss(&["validate", path(&p), "--out", path(&out)]);
    assert_eq!(code, 0, "{r}");
    assert_eq!((count(&r, "objects"), count(&r, "morphisms")), (2, 5));
    let printed = std::fs::read_to_string(&out).unwrap();
    assert_eq!(serde_json::from_str::<Value>(&printed).unwrap(), serde_json::from_str::<Value>(text).unwrap());

    let broken = write(&dir, "broken.json", &text.replace("\"then\": \"e\", \"result\": \"e\"", "\"then\": \"e\", \"result\": \"1b\""));
    let (code, r) = truss(&["validate", path(&broken)]);
    assert_eq!(code, 1);
    assert!(message(&r).contains("associativity"), "{r}");
}

#[test]
fn relation_labels_needed_outside_thin_categories() {
    let dir = TempDir::new().unwrap();
    let text = r#"{
  "schema": "truss/tower/v1",
  "depth": 1,
  "base": { "elements": ["pt"] },
  "stages": [{ "ord": { "pt": 1 } }],
  "category": {
    "objects": ["a"],
    "morphisms": [{ "name": "1", "src": "a", "dst": "a" }, { "name": "z", "src": "a", "dst": "a" }],
    "identities": { "a": "1" },
    "composition": [{ "first": "z", "then": "z", "result": "z" }]
  },
  "labels": { "objects": { "pt/r0@1": "a", "pt/s0@1": "a", "pt/r1@1": "a" } }
}"#;
    let (code, r) = truss(&["validate", path(&write(&dir, "t.json", text))]);
    assert_eq!(code, 1);
    assert!(message(&r).contains("2 candidate labels"), "{r}");

    let labelled = text.replace(
        "\"a\" } }",
        "\"a\" }, \"relations\": [\
         { \"from\": \"pt/s0@1\", \"to\": \"pt/r0@1\", \"morphism\": \"z\" },\
         { \"from\": \"pt/s0@1\", \"to\": \"pt/r1@1\", \"morphism\": \"1\" }] }",
    );
    let (code, r) = truss(&["validate", path(&write(&dir, "l.json", &labelled))]);
    assert_eq!(code, 0, "{r}");
}

#[test]
fn hom_examples() {
    let maps = |x: &str, y: &str| {
        let (code, r) = truss(&["hom", x, y]);
        assert_eq!(code, 0);
        assert_eq!(r["data"]["maps"].as_array().unwrap().len() as u64, count(&r, "maps"));
        count(&r, "maps")
    };
    assert_eq!(maps("s0@1", "r1@2"), 4);
    assert_eq!(maps("r0@2", "s0@2"), 0);
    assert_eq!(maps("r0@0", "r0@0"), 1);
    let (code, r) = truss(&["hom", "q0@1", "r0@0"]);
    assert_eq!((code, location(&r)), (2, "x"));
    let (code, _) = truss(&["hom", "s1@1", "r0@0"]);
    assert_eq!(code, 2);
}

#[test]
fn fiber_and_total() {
    let (code, r) = truss(&["fiber", "2"]);
    assert_eq!(code, 0);
    assert_eq!((count(&r, "elements"), count(&r, "relations")), (5, 4));
    let (_, r) = truss(&["fiber", "0,2", "--into", "2"]);
    assert_eq!(count(&r, "elements"), 8);
    let (code, _) = truss(&["fiber", "2,0", "--into", "2"]);
    assert_eq!(code, 2);

    let (code, r) = truss(&["total", path(&fixture("node.json"))]);
    assert_eq!(code, 0);
    assert_eq!(count(&r, "elements"), 9);
    assert_eq!(r["data"]["elements"][0], "pt/r0@1/r0@1");
}

#[test]
fn compose_degeneracy_then_face() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("composite.json");
    let (code, r) = truss(&[
        "compose",
        path(&fixture("degeneracy.json")),
        path(&fixture("face.json")),
        "--out",
        path(&out),
    ]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(r["data"]["audit"], "all choices agree");
    assert!(count(&r, "crossing_relations") > 0);
    let composite: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(composite["schema"], "truss/bordism/v1");
    assert_eq!(composite["stages"][0]["arrow"][0]["map"]["values"], serde_json::json!([0, 0, 2]));
    let (code, r) = truss(&["validate", path(&out)]);
    assert_eq!(code, 0);
    assert_eq!((count(&r, "source_elements"), count(&r, "target_elements")), (5, 5));
}

#[test]
fn compose_identities() {
    let dir = TempDir::new().unwrap();
    let id = canonical(&dir, "identity.json");
    let out = dir.path().join("composite.json");
    let (code, r) = truss(&["compose", path(&id), path(&id), "--out", path(&out)]);
    assert_eq!(code, 0);
    assert_eq!(r["data"]["audit"], "all choices agree");
    assert_eq!(std::fs::read(&id).unwrap(), std::fs::read(&out).unwrap());
}

#[test]
fn compose_rejects_mismatch() {
    let (code, r) = truss(&["compose", path(&fixture("face.json")), path(&fixture("face.json"))]);
    assert_eq!(code, 1);
    assert!(message(&r).contains("differs"));
    let (code, _) = truss(&["compose", path(&fixture("node.json")), path(&fixture("face.json"))]);
    assert_eq!(code, 1);
}

/// `degeneracy.json` relabelled as a plain tower over the arrow.
fn arrow_tower(dir: &TempDir) -> PathBuf {
    let text = std::fs::read_to_string(fixture("degeneracy.json")).unwrap();
    write(dir, "arrow.json", &text.replace("truss/bordism/v1", "truss/tower/v1"))
}

#[test]
fn pack_then_unpack_is_byte_identical() {
    let dir = TempDir::new().unwrap();
    let arrow = arrow_tower(&dir);
    let mut inputs = vec![canonical(&dir, "node.json"), canonical(&dir, "constant2.json")];
    let out = dir.path().join("arrow-canonical.json");
    assert_eq!(truss(&["validate", path(&arrow), "--out", path(&out)]).0, 0);
    inputs.push(out);
    for input in inputs {
        let packed = dir.path().join("packed.json");
        let back = dir.path().join("back.json");
        let (code, r) = truss(&["pack", path(&input), "--out", path(&packed)]);
        assert_eq!(code, 0, "{r}");
        let (code, _) = truss(&["validate", path(&packed)]);
        assert_eq!(code, 0);
        let (code, _) = truss(&["unpack", path(&packed), "--out", path(&back)]);
        assert_eq!(code, 0);
        assert_eq!(std::fs::read(&input).unwrap(), std::fs::read(&back).unwrap());
    }
}

#[test]
fn pack_counts() {
    let (code, r) = truss(&["pack", path(&fixture("node.json"))]);
    assert_eq!(code, 0);
    assert_eq!((count(&r, "depth"), count(&r, "elements")), (1, 3));
    assert!(r["data"]["file"].as_str().unwrap().contains("truss/packed/v1"));
}

#[test]
fn pack_and_unpack_errors() {
    let dir = TempDir::new().unwrap();
    let flat = write(
        &dir,
        "flat.json",
        r#"{"schema": "truss/tower/v1", "depth": 0, "base": {"elements": ["pt"]}, "stages": [],
            "category": {"poset": {"elements": ["*"]}}, "labels": {"objects": {"pt": "*"}}}"#,
    );
    let (code, r) = truss(&["pack", path(&flat)]);
    assert_eq!(code, 1);
    assert_eq!(message(&r), "depth ≥ 1 required");
    let (code, r) = truss(&["unpack", path(&flat)]);
    assert_eq!(code, 1);
    assert!(message(&r).contains("truss/packed/v1"));

    let (_, r) = truss(&["pack", path(&fixture("node.json"))]);
    let packed = r["data"]["file"].as_str().unwrap();
    let tampered = write(&dir, "tampered.json", &packed.replacen("\"t0\"", "\"t9\"", 1));
    let (code, r) = truss(&["validate", path(&tampered)]);
    assert_eq!(code, 1);
    assert!(location(&r).starts_with("tower"), "{r}");
}

#[test]
fn render_examples() {
    let dir = TempDir::new().unwrap();
    let (code, r) = truss(&["render", path(&fixture("constant2.json"))]);
    assert_eq!(code, 0);
    assert_eq!((count(&r, "regions"), count(&r, "wires"), count(&r, "nodes")), (1, 0, 0));

    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    let (code, r) = truss(&["render", path(&fixture("node.json")), "--out", path(&a)]);
    assert_eq!(code, 0);
    assert_eq!((count(&r, "regions"), count(&r, "wires"), count(&r, "nodes")), (4, 2, 1));
    truss(&["render", path(&fixture("node.json")), "--out", path(&b)]);
    let svg = std::fs::read_to_string(&a).unwrap();
    assert_eq!(svg, std::fs::read_to_string(&b).unwrap());
    assert_eq!(svg.matches("<circle").count(), 1);
    assert_eq!(svg.matches("<polyline").count(), 2);

    let (code, _) = truss(&["render", path(&arrow_tower(&dir))]);
    assert_eq!(code, 1);
}

#[test]
fn realize_face() {
    let (code, r) = truss(&["realize", path(&fixture("face.json"))]);
    assert_eq!(code, 0, "{r}");
    let stage = &r["data"]["stages"][0];
    assert_eq!(stage["heights"]["0"], serde_json::json!(["-1", "0", "1"]));
    assert_eq!(stage["heights"]["1"], serde_json::json!(["-1", "-1/3", "1/3", "1"]));
    assert_eq!(stage["sing"][0]["values"], serde_json::json!([0, 1, 1, 2]));
    let (_, r) = truss(&["realize", path(&fixture("node.json"))]);
    assert_eq!((count(&r, "stages"), count(&r, "vertices")), (2, 4));
}

#[test]
fn oracle_suites() {
    let (code, r) = truss(&["oracle", "homsets"]);
    assert_eq!(code, 0);
    assert_eq!(r["data"]["passed"], true);
    assert_eq!(r["data"]["max_ordinal"], 3);

    let (code, r) = truss(&["oracle", "factorization"]);
    assert_eq!(code, 0);
    assert_eq!(count(&r, "checked"), 36156);
    assert_eq!(count(&r, "without_cone_point"), 1570);

    let (code, r) = truss(&["oracle", "roundtrip-bundle", "--max-ordinal", "1", "--seed", "7"]);
    assert_eq!(code, 0, "{r}");

    let (code, r) = truss(&["oracle", "nope"]);
    assert_eq!(code, 2);
    assert!(message(&r).contains("bordism-assoc"));
}

#[test]
fn usage_errors_exit_two() {
    let out = Command::new(env!("CARGO_BIN_EXE_truss")).arg("bogus").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
