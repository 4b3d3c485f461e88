use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_circuitkit"));
    cmd.env_remove("CIRCUITKIT_MAX_COLS");
    cmd
}

struct Scratch(PathBuf);

impl Scratch {
    fn new(tag: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("circuitkit-cli-{tag}-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        Scratch(dir)
    }

    fn write(&self, name: &str, v: &Value) -> PathBuf {
        let p = self.0.join(name);
        std::fs::write(&p, serde_json::to_string(v).unwrap()).unwrap();
        p
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.join(name)
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn run_path(verb: &[&str], path: &Path) -> Output {
    let mut all: Vec<&str> = verb.to_vec();
    all.push(path.to_str().unwrap());
    run(&all)
}

/// Parses stdout and checks that printing and re-parsing is lossless.
fn report(out: &Output) -> Value {
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}"));
    let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(v, again);
    assert_eq!(v["schema_version"], json!(1));
    v
}

fn matrix(rows: &[&[i64]]) -> Value {
    json!({
        "rows": rows.len(),
        "cols": rows[0].len(),
        "entries": rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

#[test]
fn analyze_appendix_matrix() {
    let s = Scratch::new("analyze");
    let p = s.write("a_app.json", &matrix(&[&[1, 3, 4, 3], &[0, 13, 9, 10]]));
    let out = run(&["analyze", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = report(&out);
    assert_eq!(v["kappa_dot"], json!("5850"));
    assert_eq!(v["verb"], json!("analyze"));
    assert!(v["kappa_star"]["product"].is_string());
}

#[test]
fn appendix_passes() {
    let out = run(&["appendix"]);
    assert_eq!(out.status.code(), Some(0));
    let v = report(&out);
    assert_eq!(v["passes"], json!(true));
    assert_eq!(v["rows"].as_array().unwrap().len(), 8);
    assert_eq!(v["representations"].as_array().unwrap().len(), 6);
}

#[test]
fn generated_dumbbell_analyzes_to_two() {
    let s = Scratch::new("dumbbell");
    let p = s.path("db.json");
    let out = run(&["generate", "--family", "dumbbell", "--output", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = report(&run(&["analyze", "--input", p.to_str().unwrap()]));
    assert_eq!(v["kappa_dot"], json!("2"));
}

#[test]
fn generation_is_reproducible_and_csv_reads_back() {
    let s = Scratch::new("generate");
    let args = ["generate", "--family", "random-rational", "--rows", "2", "--cols", "4", "--seed", "9"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.stdout, second.stdout);
    let csv = bin().args(args).args(["--format", "csv"]).output().unwrap();
    let p = s.path("m.csv");
    std::fs::write(&p, &csv.stdout).unwrap();
    let from_csv = report(&run_path(&["analyze"], &p));
    let from_json = report(&run_path(&["analyze"], &s.write("m.json", &report(&first))));
    assert_eq!(from_csv["kappa"], from_json["kappa"]);
}

#[test]
fn input_errors_exit_two() {
    let s = Scratch::new("errors");
    let float = s.write("f.json", &json!({"rows": 1, "cols": 2, "entries": [[1.5, 2]]}));
    assert_eq!(run_path(&["analyze"], &float).status.code(), Some(2));
    assert_eq!(run(&["analyze", "--bogus", "x"]).status.code(), Some(2));
    assert_eq!(run(&["analyze"]).status.code(), Some(2));
    assert_eq!(run(&["generate", "--family", "flow", "--nodes", "5", "--arcs", "2"]).status.code(), Some(2));
    let wide = s.write("w.json", &matrix(&[&[1, 1, 1, 1]]));
    let capped = bin().env("CIRCUITKIT_MAX_COLS", "3").args(["analyze", wide.to_str().unwrap()]).output().unwrap();
    assert_eq!(capped.status.code(), Some(2));
    assert_eq!(run_path(&["analyze"], &wide).status.code(), Some(0));
    let z = s.write("z.json", &json!(["1", "0", "0", "0"]));
    let out = run(&["conjecture", wide.to_str().unwrap(), "--target", z.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn conjecture_sweep_and_target() {
    let s = Scratch::new("conjecture");
    let a = s.write("db.json", &report(&run(&["generate", "--family", "dumbbell"])));
    let sweep = run_path(&["conjecture"], &a);
    assert_eq!(sweep.status.code(), Some(0));
    let v = report(&sweep);
    assert_eq!(v["violated"], json!(0));
    assert!(v["targets"].as_u64().unwrap() > 0);
    let z = s.write("z.json", &json!({"z": ["2", "-2", "-2", "4", "-2", "2", "-2"]}));
    let v = report(&run(&["conjecture", a.to_str().unwrap(), "--target", z.to_str().unwrap()]));
    assert_eq!(v["results"][0]["status"], json!("holds"));
    assert_eq!(v["results"][0]["verified"], json!(true));
}

#[test]
fn solve_flow_reaches_lp_optimum() {
    let s = Scratch::new("solve");
    let lp = s.write("flow.json", &report(&run(&["generate", "--family", "flow", "--nodes", "4", "--arcs", "6", "--seed", "3"])));
    for rule in ["steepest", "dantzig", "deepest", "ratio", "guided"] {
        let out = run(&["solve", lp.to_str().unwrap(), "--rule", rule]);
        assert_eq!(out.status.code(), Some(0), "{rule}: {}", String::from_utf8_lossy(&out.stderr));
        let v = report(&out);
        assert_eq!(v["status"], json!("optimal"), "{rule}");
        assert_eq!(v["objective"], v["lp_objective"], "{rule}");
    }
    let trace = s.path("trace.json");
    let out = run(&["solve", lp.to_str().unwrap(), "--trace", trace.to_str().unwrap()]);
    assert_eq!(report(&out)["audit"]["ok"], json!(true));
    let t: Value = serde_json::from_str(&std::fs::read_to_string(&trace).unwrap()).unwrap();
    assert_eq!(t["verb"], json!("trace"));
    let csv = run(&["solve", lp.to_str().unwrap(), "--format", "csv"]);
    assert!(String::from_utf8(csv.stdout).unwrap().starts_with("step,objective,epsilon,alpha"));
}

#[test]
fn audit_breach_exits_one() {
    // One equality row: the literal window factor is 0, yet ε stays positive.
    let s = Scratch::new("breach");
    let lp = s.write(
        "lp.json",
        &json!({
            "A": matrix(&[&[5, 1, 6, 3]]),
            "b": ["79"],
            "c": ["-6", "-2", "3", "-4"],
            "u": ["4", null, "15", "11"],
            "start": ["1", "8", "9", "4"],
        }),
    );
    let out = run_path(&["solve"], &lp);
    assert_eq!(out.status.code(), Some(1));
    let v = report(&out);
    assert_eq!(v["audit"]["ok"], json!(false));
}

#[test]
fn proximity_checks() {
    let s = Scratch::new("prox");
    let a = matrix(&[&[1, 1, 0], &[0, 1, 1]]);
    let feas = s.write("f.json", &json!({"A": a, "d": ["-1", "1", "1"]}));
    let v = report(&run(&["prox", "--check", "feasibility", feas.to_str().unwrap()]));
    assert_eq!(v["holds"], json!(true));
    assert_eq!(v["distance"], json!("1"));
    let opt = s.write("o.json", &json!({"A": a, "d": ["1", "3", "0"], "c": ["0", "1", "0"]}));
    assert_eq!(report(&run(&["prox", "--check", "optimal", opt.to_str().unwrap()]))["holds"], json!(true));
    let tr = s.write(
        "t.json",
        &json!({"subspace": {"kernel_of": a}, "d": ["1", "3", "0"], "c": ["0", "1", "0"], "d_new": ["2", "3", "1"]}),
    );
    assert_eq!(report(&run(&["prox", "--check", "transfer", tr.to_str().unwrap()]))["holds"], json!(true));
    let fx = s.write(
        "x.json",
        &json!({
            "A": matrix(&[&[1, 1, 0, 0], &[0, 0, 1, 1], &[1, 0, 1, 0]]),
            "b": ["3", "2", "4"],
            "c": ["1", "3", "2", "5"],
            "u": ["3", "3", "3", "3"],
            "c2": ["1", "3", "2", "4"],
        }),
    );
    assert_eq!(report(&run(&["prox", "--check", "fixing", fx.to_str().unwrap()]))["holds"], json!(true));
    let bad = s.write("b.json", &json!({"A": a, "d": ["-1", "0", "0"]}));
    let v = report(&run(&["prox", "--check", "feasibility", bad.to_str().unwrap()]));
    assert_eq!(v["status"], json!("infeasible"));
}

#[test]
fn blackbox_feasible() {
    let s = Scratch::new("blackbox");
    let p = s.write("b.json", &json!({"A": matrix(&[&[1, 2, 0, -1], &[0, 1, 1, 1]]), "d": ["1", "2", "3", "-1"]}));
    let v = report(&run(&["blackbox", p.to_str().unwrap(), "--seed", "4"]));
    assert_eq!(v["status"], json!("feasible"));
    let v = report(&run(&["blackbox", p.to_str().unwrap(), "--epsilon", "0"]));
    assert_eq!(v["depth"], json!(1));
    assert_eq!(run(&["blackbox", p.to_str().unwrap(), "--epsilon", "0.5"]).status.code(), Some(2));
}

#[test]
fn graver_and_ip_proximity() {
    let s = Scratch::new("graver");
    let a = s.write("a.json", &matrix(&[&[1, 1, 0], &[0, 1, 1]]));
    let v = report(&run_path(&["graver"], &a));
    assert_eq!(v["graver"]["elements"], json!([["-1", "1", "-1"], ["1", "-1", "1"]]));
    assert_eq!(v["graver"]["sandwich"]["holds"], json!(true));
    let mut lp = report(&run(&["generate", "--family", "dumbbell"]));
    let eye: Vec<Vec<String>> = (0..6).map(|i| (0..6).map(|j| if i == j { "1".into() } else { "0".into() }).collect()).collect();
    for (row, extra) in lp["entries"].as_array_mut().unwrap().iter_mut().zip(eye) {
        row.as_array_mut().unwrap().extend(extra.into_iter().map(Value::from));
    }
    lp["cols"] = json!(13);
    let mut c = vec!["-1"; 7];
    c[3] = "0";
    c.extend(["0"; 6]);
    let p = s.write("ip.json", &json!({"A": lp, "b": vec!["1"; 6], "c": c}));
    let out = bin().env("CIRCUITKIT_MAX_COLS", "13").arg("graver").arg(&p).output().unwrap();
    let stderr = String::from_utf8_lossy(&out.stderr).to_string();
    assert_eq!(out.status.code(), Some(0), "{stderr}");
    let v = report(&out);
    assert_eq!(v["ip_proximity"]["holds"], json!(true));
    assert_eq!(v["ip_proximity"]["lp_objective"], json!("-3"));
    assert_eq!(v["ip_proximity"]["ip_objective"], json!("-2"));
}

#[test]
fn diameter_of_a_box() {
    let s = Scratch::new("diameter");
    let p = s.write(
        "d.json",
        &json!({"A": matrix(&[&[1, 0, 1, 0], &[0, 1, 0, 1]]), "b": ["1", "1"], "c": ["0", "0", "0", "0"]}),
    );
    let v = report(&run(&["diameter", p.to_str().unwrap()]));
    assert_eq!(v["vertices"], json!(4));
    assert_eq!(v["diameter"], json!(2));
}
