//! End-to-end tests driving the compiled `ample` binary.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn ample() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ample"))
}

fn run(args: &[&str]) -> Output {
    ample().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

// --- minimal JSON-Schema checker (the subset our schema file uses) ---

fn deref<'a>(root: &'a Value, schema: &'a Value) -> &'a Value {
    if let Some(r) = schema.get("$ref").and_then(Value::as_str) {
        let name = r.strip_prefix("#/definitions/").expect("local ref");
        return &root["definitions"][name];
    }
    schema
}

fn type_matches(ty: &str, value: &Value) -> bool {
    match ty {
        "object" => value.is_object(),
        "array" => value.is_array(),
        "string" => value.is_string(),
        "integer" => value.is_i64() || value.is_u64(),
        "number" => value.is_number(),
        "boolean" => value.is_boolean(),
        "null" => value.is_null(),
        other => panic!("unknown type keyword {other}"),
    }
}

fn validate(root: &Value, schema: &Value, value: &Value) -> Result<(), String> {
    let schema = deref(root, schema);
    if let Some(one_of) = schema.get("oneOf").and_then(Value::as_array) {
        let hits = one_of
            .iter()
            .filter(|s| validate(root, s, value).is_ok())
            .count();
        if hits != 1 {
            return Err(format!("oneOf matched {hits} branches for {value}"));
        }
        return Ok(());
    }
    if let Some(ty) = schema.get("type") {
        let ok = match ty {
            Value::String(s) => type_matches(s, value),
            Value::Array(alts) => alts
                .iter()
                .any(|s| type_matches(s.as_str().unwrap(), value)),
            _ => panic!("bad type clause"),
        };
        if !ok {
            return Err(format!("type mismatch: want {ty}, got {value}"));
        }
    }
    if let Some(allowed) = schema.get("enum").and_then(Value::as_array) {
        if !allowed.contains(value) {
            return Err(format!("{value} not in enum {allowed:?}"));
        }
    }
    if let Some(min) = schema.get("minimum").and_then(Value::as_i64) {
        if let Some(n) = value.as_i64() {
            if n < min {
                return Err(format!("{n} below minimum {min}"));
            }
        }
    }
    if let Some(arr) = value.as_array() {
        if let Some(min) = schema.get("minItems").and_then(Value::as_u64) {
            if (arr.len() as u64) < min {
                return Err(format!("array shorter than minItems {min}"));
            }
        }
        if let Some(max) = schema.get("maxItems").and_then(Value::as_u64) {
            if (arr.len() as u64) > max {
                return Err(format!("array longer than maxItems {max}"));
            }
        }
        if let Some(items) = schema.get("items") {
            for item in arr {
                validate(root, items, item)?;
            }
        }
    }
    if let Some(obj) = value.as_object() {
        if let Some(req) = schema.get("required").and_then(Value::as_array) {
            for key in req {
                let key = key.as_str().unwrap();
                if !obj.contains_key(key) {
                    return Err(format!("missing required key {key}"));
                }
            }
        }
        if let Some(props) = schema.get("properties").and_then(Value::as_object) {
            for (key, sub) in props {
                if let Some(v) = obj.get(key) {
                    validate(root, sub, v).map_err(|e| format!("{key}: {e}"))?;
                }
            }
        }
    }
    Ok(())
}

fn schema_root() -> Value {
    let text = std::fs::read_to_string(
        Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/ample.schema.json"),
    )
    .expect("schema file ships with the crate");
    serde_json::from_str(&text).expect("schema is valid JSON")
}

fn assert_valid(definition: &str, value: &Value) {
    let root = schema_root();
    let schema = root["definitions"][definition].clone();
    assert!(
        !schema.is_null(),
        "definition {definition} present in schema"
    );
    validate(&root, &schema, value).unwrap_or_else(|e| panic!("{definition}: {e}"));
}

// --- plethysm ---

#[test]
fn plethysm_text_small() {
    let out = run(&["plethysm", "[2]", "[2]"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "[2,2]\t1\n[4]\t1\n");
}

#[test]
fn plethysm_stats_golden_line() {
    let out = run(&["plethysm", "[4,2]", "[3,1]", "--stats"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "partitions=1238 max_mult=8408 total=958705\n");
}

#[test]
fn plethysm_json_matches_schema_and_text() {
    let json_out = run(&["plethysm", "[3,1]", "[2,1]", "--format", "json"]);
    assert!(json_out.status.success());
    let doc: Value = serde_json::from_str(&stdout(&json_out)).unwrap();
    assert_valid("plethysm", &doc);

    // same numeric content as the text rendering
    let text_out = run(&["plethysm", "[3,1]", "[2,1]"]);
    let text_rows: Vec<(String, u64)> = stdout(&text_out)
        .lines()
        .map(|l| {
            let (eta, m) = l.split_once('\t').unwrap();
            (eta.to_string(), m.parse().unwrap())
        })
        .collect();
    let json_rows: Vec<(String, u64)> = doc["constituents"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| {
            (
                c["partition"].as_str().unwrap().to_string(),
                c["multiplicity"].as_u64().unwrap(),
            )
        })
        .collect();
    assert_eq!(text_rows, json_rows);
}

#[test]
fn plethysm_max_height_filters() {
    let all = stdout(&run(&["plethysm", "[2]", "[2]"]));
    let low = stdout(&run(&["plethysm", "[2]", "[2]", "--max-height", "1"]));
    assert_eq!(all.lines().count(), 2);
    assert_eq!(low, "[4]\t1\n");
}

#[test]
fn plethysm_degree_guard() {
    let out = run(&["plethysm", "[3,2,1]", "[4,3]"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn plethysm_cache_dir_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["plethysm", "[3,1]", "[2,1]"];
    let plain = stdout(&run(&args));
    let first = ample()
        .args(args)
        .arg("--cache-dir")
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(first.status.success());
    assert_eq!(stdout(&first), plain);
    assert!(
        std::fs::read_dir(dir.path()).unwrap().next().is_some(),
        "cache populated"
    );
    // second run answers from the cache, byte-identical
    let second = ample()
        .env("AMPLE_CACHE_DIR", dir.path())
        .args(args)
        .output()
        .unwrap();
    assert!(second.status.success());
    assert_eq!(stdout(&second), plain);
}

// --- lambda-sym2 ---

#[test]
fn lambda_sym2_text_and_json() {
    let out = run(&["lambda-sym2", "--k", "3", "--g", "2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "[3,3]\t(-3,-3)\n");

    let json_out = run(&["lambda-sym2", "--k", "3", "--g", "3", "--format", "json"]);
    let doc: Value = serde_json::from_str(&stdout(&json_out)).unwrap();
    assert_valid("lambda_sym2", &doc);
    assert_eq!(doc["pieces"].as_array().unwrap().len(), 2);
}

// --- certify / min-prime ---

#[test]
fn certify_direct_route() {
    let out = run(&["certify", "--g", "2", "--weight", "(-1,-3)", "--p", "11"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("route=direct"));
}

#[test]
fn certify_json_matches_schema() {
    let out = run(&[
        "certify", "--g", "2", "--weight", "(-1,-3)", "--p", "11", "--format", "json",
    ]);
    assert!(out.status.success());
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_valid("certificate", &doc);
    assert_eq!(doc["route"], "direct");
    assert_eq!(doc["min_prime"], 11);
    assert_eq!(doc["weight"], serde_json::json!([-1, -3]));
}

#[test]
fn certify_negative_verdict_exits_2() {
    let out = run(&["certify", "--g", "2", "--weight", "(0,-2)", "--p", "11"]);
    assert_eq!(out.status.code(), Some(2));
    // the certificate is still printed before the verdict
    assert!(stdout(&out).contains("route=none"));
}

#[test]
fn certify_precondition_failures_exit_3() {
    for args in [
        vec!["certify", "--g", "2", "--weight", "(-1,-3)", "--p", "9"],
        vec!["certify", "--g", "2", "--weight", "(-1,-3,-4)", "--p", "11"],
        vec!["certify", "--g", "2", "--weight", "oops", "--p", "11"],
        vec!["certify", "--g", "9", "--weight", "(-1,-3)", "--p", "11"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(3), "args {args:?}");
    }
}

#[test]
fn min_prime_values() {
    let out = run(&["min-prime", "--g", "2", "--weight", "(-1,-3)"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "11\n");

    let out = run(&["min-prime", "--g", "2", "--weight", "(-5,-5)"]);
    assert_eq!(stdout(&out), "2\n");

    let out = run(&["min-prime", "--g", "2", "--weight", "(0,-2)"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout(&out), "none\n");
}

// --- figure1 ---

#[test]
fn figure1_files_nest_and_repeat_identically() {
    let dir = tempfile::tempdir().unwrap();
    let dir_s = dir.path().to_str().unwrap();
    let args = [
        "figure1", "--g", "2", "--p", "5,11", "--box=-10:2", "--out-dir", dir_s,
    ];
    let out = run(&args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let f5 = std::fs::read_to_string(dir.path().join("g=2p=5.txt")).unwrap();
    let f11 = std::fs::read_to_string(dir.path().join("g=2p=11.txt")).unwrap();
    let rows5: Vec<&str> = f5.lines().collect();
    let rows11: Vec<&str> = f11.lines().collect();
    assert!(!rows5.is_empty());
    assert!(rows5.iter().all(|r| rows11.contains(r)), "p=5 region nests in p=11");
    assert!(rows11.len() > rows5.len());

    let out2 = run(&args);
    assert!(out2.status.success());
    let again = std::fs::read_to_string(dir.path().join("g=2p=11.txt")).unwrap();
    assert_eq!(f11, again, "byte-identical on repeat");
}

#[test]
fn figure1_json_matches_text() {
    let dir = tempfile::tempdir().unwrap();
    let dir_s = dir.path().to_str().unwrap();
    for fmt in ["text", "json"] {
        let out = run(&[
            "figure1", "--g", "2", "--p", "7", "--box=-6:1", "--out-dir", dir_s, "--format", fmt,
        ]);
        assert!(out.status.success());
    }
    let txt = std::fs::read_to_string(dir.path().join("g=2p=7.txt")).unwrap();
    let doc: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("g=2p=7.json")).unwrap())
            .unwrap();
    assert_valid("region", &doc);
    let from_json: Vec<String> = doc
        .as_array()
        .unwrap()
        .iter()
        .map(|pair| format!("{} {}", pair[0], pair[1]))
        .collect();
    let from_txt: Vec<String> = txt.lines().map(str::to_string).collect();
    assert_eq!(from_json, from_txt);
}

#[test]
fn figure1_rejects_bad_inputs() {
    let out = run(&["figure1", "--g", "3", "--p", "5", "--box=-4:0"]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["figure1", "--g", "2", "--p", "6", "--box=-4:0"]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["figure1", "--g", "2", "--p", "5", "--box=3:-3"]);
    assert_eq!(out.status.code(), Some(3));
}

// --- hyperbolicity ---

#[test]
fn hyperbolicity_exit_codes() {
    let out = run(&["hyperbolicity", "--g", "2", "--p", "11", "--partition", "[1,1]"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("verdict=certified"));

    let out = run(&["hyperbolicity", "--g", "2", "--p", "5", "--partition", "[1,1]"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("verdict=not_certified"));

    // a column of size 3 needs p > 3 for the filtration to split
    let out = run(&["hyperbolicity", "--g", "2", "--p", "3", "--partition", "[1,1,1]"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("verdict=filtration_fails"));
}

#[test]
fn hyperbolicity_json_matches_schema() {
    let out = run(&[
        "hyperbolicity", "--g", "2", "--p", "11", "--partition", "[2,2]", "--format", "json",
    ]);
    assert!(out.status.success());
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_valid("hyperbolicity", &doc);
    assert_eq!(doc["verdict"], "certified");
    let weights: Vec<&str> = doc["constituents"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["weight"].as_array().map(|_| "array").unwrap())
        .collect();
    assert!(!weights.is_empty(), "weights serialize as JSON arrays");
}

// --- chow-verify / thresholds ---

#[test]
fn chow_verify_both_fixtures() {
    for g in ["2", "3"] {
        let out = run(&["chow-verify", "--g", g]);
        assert!(out.status.success(), "g = {g}");
        assert!(stdout(&out).contains("verified"));
    }
    let out = run(&["chow-verify", "--g", "4"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn thresholds_line() {
    let out = run(&["thresholds", "--g", "3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "g=3 k_threshold=4 p_threshold=19\n");
}

// --- global CLI behavior ---

#[test]
fn usage_errors_exit_1_and_help_exits_0() {
    let out = run(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["certify", "--g", "2"]);
    assert_eq!(out.status.code(), Some(1), "missing required args");
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("plethysm"));
}
