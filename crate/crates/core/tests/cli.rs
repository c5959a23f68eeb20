use std::process::{Command, Output};

use serde_json::Value;

fn opgs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_opgs")).args(args).output().expect("run opgs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

fn schema(name: &str) -> jsonschema::Validator {
    let path = format!("{}/schema/{name}", env!("CARGO_MANIFEST_DIR"));
    let s: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&s).unwrap()
}

fn assert_valid(v: &jsonschema::Validator, doc: &Value) {
    let errors: Vec<String> = v.iter_errors(doc).map(|e| format!("{} at {}", e, e.instance_path())).collect();
    assert!(errors.is_empty(), "{errors:#?}");
}

#[test]
fn parse_normalizes() {
    let o = opgs(&["parse", "P(x)*P(y) - 0*x + 2*P(x)*P(y)"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "3*P(x)*P(y)");
    let o = opgs(&["parse", "--json", "D(P(x)) - x"]);
    let v = json(&o);
    assert_eq!(v["terms"].as_array().unwrap().len(), 2);
    assert_eq!(v["terms"][0]["word"], "D(P(x))");
    assert_eq!(v["terms"][1]["coeff"], "-1");
}

#[test]
fn parse_rejects_unit_without_flag() {
    assert_eq!(opgs(&["parse", "D(1)"]).status.code(), Some(1));
    assert!(opgs(&["parse", "--unital", "D(1)"]).status.success());
    assert_eq!(opgs(&["parse", "P(x"]).status.code(), Some(1));
}

#[test]
fn order_compare() {
    let cmp = |args: &[&str]| stdout(&opgs(args)).trim().to_string();
    assert_eq!(cmp(&["order", "compare", "D(x)", "P(x)"]), "GT");
    assert_eq!(cmp(&["order", "compare", "x*y", "y*x", "--order", "dlex"]), "LT");
    assert_eq!(cmp(&["order", "compare", "P(x)", "P(x)"]), "EQ");
    assert_eq!(cmp(&["order", "compare", "D(1)", "x", "--order", "upd"]), "LT");
    assert_eq!(opgs(&["order", "compare", "D(x)", "x", "--order", "dlex"]).status.code(), Some(1));
}

#[test]
fn normal_form_and_trace() {
    let o = opgs(&["nf", "D(P(x))", "--system", "DRB"]);
    assert_eq!(stdout(&o).trim(), "x");
    let o = opgs(&["nf", "P(x)*P(y)", "--system", "DRB0", "--lambda", "0", "--trace", "--json"]);
    let v = json(&o);
    assert_eq!(v["normal_form"], "P(P(x)*y) + P(x*P(y))");
    assert_eq!(v["steps"].as_array().unwrap().len(), 1);
}

#[test]
fn system_from_file() {
    let dir = std::env::temp_dir().join(format!("opgs-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("rb.opi");
    std::fs::write(&f, "name: rb\nunital: false\nP($1)*P($2) - P($1*P($2)) - P(P($1)*$2) - L*P($1*$2) | P($1)*P($2)\n").unwrap();
    let o = opgs(&["nf", "P(x)*P(x)", "--system", f.to_str().unwrap(), "--lambda", "2"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).trim(), "P(P(x)*x) + P(x*P(x)) + 2*P(x*x)");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn gs_check_exit_codes_and_schema() {
    let v = schema("gs-report.schema.json");
    let o = opgs(&["gs-check", "--system", "DRB", "--bound", "1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc = json(&o);
    assert_valid(&v, &doc);
    assert_eq!(doc["passed"], true);

    let o = opgs(&["gs-check", "--system", "DRB'", "--bound", "2", "--json", "--max-failures", "3"]);
    assert_eq!(o.status.code(), Some(2));
    let doc = json(&o);
    assert_valid(&v, &doc);
    assert!(doc["failures_total"].as_u64().unwrap() > 0);
    assert_eq!(doc["failures"].as_array().unwrap().len(), 3);
}

#[test]
fn zero_weight_is_rejected_where_inverse_needed() {
    let o = opgs(&["gs-check", "--system", "DRB", "--lambda", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("nonzero"));
}

#[test]
fn budget_exhaustion_exit_code() {
    let o = opgs(&["nf", "P(x)*P(x)*P(x)*P(x)", "--system", "DRB", "--bound-steps", "2"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn usage_errors() {
    assert_eq!(opgs(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(opgs(&["--help"]).status.code(), Some(0));
    assert_eq!(opgs(&["nf", "x", "--system", "NOPE"]).status.code(), Some(1));
    assert_eq!(opgs(&["verify-paper", "--only", "11"]).status.code(), Some(1));
}

#[test]
fn completion_rediscovers_missing_rules() {
    let o = opgs(&["complete", "--system", "DRB'", "--rounds", "2"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("| D($1)*P($2)"), "{s}");
    assert!(s.contains("| P($1)*D($2)"), "{s}");
    assert!(s.contains("# converged: true"), "{s}");
}

#[test]
fn basis_counts() {
    let o = opgs(&["basis", "--system", "DRB0", "--lambda", "0", "--alphabet", "x", "--bound", "3", "--counts-only", "--json"]);
    let v = json(&o);
    let counts: Vec<u64> = v["counts"].as_array().unwrap().iter().map(|c| c.as_u64().unwrap()).collect();
    // Weight 2: x*x, P(x), D(x).
    assert_eq!(counts[..3], [0, 1, 3]);
    assert!(v["words"].as_array().unwrap().is_empty());
    let o = opgs(&["basis", "--system", "ID0", "--lambda", "0", "--alphabet", "x,y", "--bound", "3", "--span"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("span: ok"));
}

#[test]
fn algebra_check() {
    let dir = std::env::temp_dir().join(format!("opgs-alg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("plane.txt");
    std::fs::write(&f, "generators: x < y; unital: false;\ny*x - x*y\n").unwrap();
    let path = f.to_str().unwrap();
    assert_eq!(opgs(&["algebra", "check", path]).status.code(), Some(0));
    let o = opgs(&["algebra", "check", path, "--system", "DRB0", "--lambda", "0", "--bound", "1", "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v = json(&o);
    assert_eq!(v["combined"]["system"], "DRB0/A");
    let g = dir.join("bad.txt");
    std::fs::write(&g, "generators: x < y\nx*x - y\n").unwrap();
    assert_eq!(opgs(&["algebra", "check", g.to_str().unwrap()]).status.code(), Some(2));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn verify_report_validates() {
    let o = opgs(&["verify-paper", "--only", "9", "--json", "--bound-irr", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let doc = json(&o);
    assert_valid(&schema("verify-report.schema.json"), &doc);
    assert_eq!(doc["checks"][0]["id"], 9);
    let text = stdout(&opgs(&["verify-paper", "--only", "9", "--bound-irr", "3"]));
    assert!(text.starts_with("[PASS]  9 irr_inclusion"), "{text}");
}
