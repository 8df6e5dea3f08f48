use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_selberg");

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn golden(name: &str) -> PathBuf {
    root().join("tests/golden").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).env_remove("SELBERG_CONFIG").output().unwrap()
}

fn run_env(args: &[&str], config: &Path) -> Output {
    Command::new(BIN).args(args).env("SELBERG_CONFIG", config).output().unwrap()
}

fn tmp(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("selberg-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn without_generated_by(s: &str) -> String {
    s.lines().filter(|l| !l.trim_start().starts_with("\"generated_by\"")).collect::<Vec<_>>().join("\n")
}

fn validate(schema: &str, doc: &Value) {
    let path = root().join("schemas").join(schema);
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let v = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = v.iter_errors(doc).map(|e| format!("{e} at {}", e.instance_path)).collect();
    assert!(errors.is_empty(), "{}: {errors:?}", path.display());
}

fn json_ok(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn golden_outputs() {
    let q = golden("q.poly");
    let cases: [(&[&str], &str); 3] = [
        (&["level", "find", q.to_str().unwrap(), "--dimg", "3"], "level_find_q.json"),
        (&["bound", "unconditional", "--d", "1", "--dimh", "3"], "bound_unconditional_1_3.json"),
        (&["torsion", "table", "--nmax", "6", "--d", "1"], "torsion_table_6_1.csv"),
    ];
    for (args, file) in cases {
        let out = run(args);
        assert!(out.status.success());
        let got = String::from_utf8(out.stdout).unwrap();
        let want = std::fs::read_to_string(golden(file)).unwrap();
        assert_eq!(without_generated_by(&got), without_generated_by(&want), "{file}");
    }
}

#[test]
fn golden_values() {
    let v: Value = serde_json::from_str(&std::fs::read_to_string(golden("level_find_q.json")).unwrap()).unwrap();
    assert_eq!((v["q"].as_u64(), v["index_bound"].as_str()), (Some(3), Some("27")));
    let csv = std::fs::read_to_string(golden("torsion_table_6_1.csv")).unwrap();
    let last = csv.lines().last().unwrap();
    assert_eq!(last, format!("6,1,30,\"{{5,6}}\",{},{},true", 2 * 6u64.pow(12), 4 * 6u64.pow(12)));
    assert_eq!(csv.lines().next().unwrap(), "n,d,exact,witness,stated_bound,proof_bound,stated_holds");
}

#[test]
fn reports_match_schemas() {
    let q = golden("q.poly");
    let k = tmp("k.poly", "-1, -2, 1, 1\n");
    let (q, k) = (q.to_str().unwrap(), k.to_str().unwrap());
    let cases: Vec<(Vec<&str>, &str)> = vec![
        (vec!["field", "analyze", k], "field_analyze.schema.json"),
        (vec!["level", "find", k, "--dimg", "3"], "level_find.schema.json"),
        (vec!["level", "find", q, "--dimg", "8"], "level_find.schema.json"),
        (vec!["grh", "threshold", "--d", "1", "--logd", "0"], "grh_threshold.schema.json"),
        (vec!["bound", "grh", "--v", "100", "--dimh", "3"], "bound_grh.schema.json"),
        (vec!["bound", "unconditional", "--d", "3", "--dimh", "8"], "bound_unconditional.schema.json"),
        (vec!["torsion", "table", "--nmax", "5", "--d", "2", "--format", "json"], "torsion_table.schema.json"),
        (vec!["construct", "--p", "7"], "construct.schema.json"),
        (vec!["construct", "--p", "5", "--probe-k", "3"], "construct.schema.json"),
        (vec!["construct", "sweep", "--pmax", "31", "--format", "json"], "construct_sweep.schema.json"),
        (vec!["apply", "generators", "--v", "1000", "--alpha", "0.5", "--c", "1"], "apply_generators.schema.json"),
        (vec!["apply", "generators", "--v", "1000", "--kappa", "2", "--c", "1"], "apply_generators.schema.json"),
    ];
    for (args, schema) in cases {
        validate(schema, &json_ok(&args));
    }
}

#[test]
fn sweep_csv_header() {
    let out = run(&["construct", "sweep", "--pmax", "13"]);
    let s = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(lines[0], "p,disc,log_v_hat,ratio");
    assert!(lines[1].starts_with("5,5,"));
    assert!(lines[4].starts_with("13,371293,"));
    assert_eq!(lines.len(), 5);
}

fn error_report(out: &Output) -> Value {
    let line = String::from_utf8_lossy(&out.stderr).lines().last().unwrap().to_string();
    let v: Value = serde_json::from_str(&line).unwrap();
    validate("error.schema.json", &v);
    v
}

#[test]
fn exit_codes() {
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(64));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
    assert_eq!(run(&["level", "find"]).status.code(), Some(64));

    let bad = tmp("bad.poly", "1, x, 3\n");
    let out = run(&["field", "analyze", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_report(&out)["error"], "precondition");

    let reducible = tmp("red.poly", "-1, 0, 1\n");
    assert_eq!(run(&["field", "analyze", reducible.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["field", "analyze", "/nonexistent/x.poly"]).status.code(), Some(2));
    assert_eq!(run(&["construct", "--p", "9"]).status.code(), Some(2));
    assert_eq!(run(&["bound", "grh", "--v", "2", "--dimh", "3"]).status.code(), Some(2));
    assert_eq!(run(&["apply", "generators", "--v", "1000", "--c", "1"]).status.code(), Some(2));

    let out = run(&["bound", "unconditional", "--d", "1", "--dimh", "3", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_report(&out)["error"], "input");

    let out = run(&["construct", "--p", "5", "--probe-k", "21"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(error_report(&out)["error"], "resource_cap");
    assert_eq!(run(&["construct", "--p", "7", "--probe-k", "6"]).status.code(), Some(3));
    assert_eq!(run(&["grh", "threshold", "--d", "1", "--logd", "1e30"]).status.code(), Some(3));

    let tiny = tmp("tiny.toml", "prime_scan_cap = 2\n");
    let q = golden("q.poly");
    let out = run(&["level", "find", q.to_str().unwrap(), "--dimg", "3", "--config", tiny.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn config_handling() {
    let args = ["bound", "grh", "--v", "100", "--dimh", "3"];
    let out = run(&args);
    let err = String::from_utf8_lossy(&out.stderr).to_string();
    assert_eq!(err.lines().filter(|l| l.contains("illustrative default")).count(), 9);
    let base: Value = serde_json::from_slice(&out.stdout).unwrap();

    let cfg = tmp("c.toml", "lemma_C = 2.0\nepsilon = 0.1\n");
    let out = run_env(&args, &cfg);
    assert!(out.status.success());
    let err = String::from_utf8_lossy(&out.stderr).to_string();
    assert!(!err.contains("lemma_C = "));
    assert_eq!(err.lines().filter(|l| l.contains("illustrative default")).count(), 7);
    let doubled: Value = serde_json::from_slice(&out.stdout).unwrap();
    let (a, b) = (base["bound"].as_f64().unwrap(), doubled["bound"].as_f64().unwrap());
    assert!((b - 2.0 * a).abs() <= 1e-12 * b);

    // --config wins over the environment
    let other = tmp("d.toml", "lemma_C = 3.0\n");
    let out = Command::new(BIN)
        .args(args)
        .args(["--config", other.to_str().unwrap()])
        .env("SELBERG_CONFIG", &cfg)
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["lemma_C"], 3.0);

    let out = run_env(&args, Path::new("/nonexistent/selberg.toml"));
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("not found"));

    let bad = tmp("bad.toml", "epsilon = -1.0\n");
    assert_eq!(run_env(&args, &bad).status.code(), Some(2));
    let unknown = tmp("unknown.toml", "frobnication = 1.0\n");
    assert_eq!(run_env(&args, &unknown).status.code(), Some(2));
}

#[test]
fn construct_report_reverifies() {
    let v = json_ok(&["construct", "--p", "11"]);
    let mut lc = v.clone();
    lc.as_object_mut().unwrap().remove("generated_by");
    let lc: selberg_core::construct::LatticeConstruction = serde_json::from_value(lc).unwrap();
    assert!(lc.reverify().unwrap().all());
    assert_eq!(v["disc_used"], "14641");
}
