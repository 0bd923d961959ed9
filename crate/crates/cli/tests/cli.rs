use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const LINEAR: &str = r#"{"lambda":1,"refresh_cost":2,"age_cost":{"kind":"linear","slope":1}}"#;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_freshopt"));
    cmd.env_remove("FRESHOPT_THREADS");
    cmd
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn run(args: &[&str], file: &Path) -> Output {
    bin().args(args).arg(file).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn linear_file(dir: &TempDir) -> PathBuf {
    write(dir, "linear.json", &format!(r#"{{"scenario":{LINEAR}}}"#))
}

#[test]
fn optimize_linear() {
    let dir = TempDir::new().unwrap();
    let o = run(&["optimize"], &linear_file(&dir));
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "{\"t_star\":2.0,\"cost\":2.0,\"method\":\"closed_form_linear\"}\n"
    );
}

#[test]
fn optimize_power_uses_numeric_root() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "p.json",
        r#"{"scenario":{"lambda":1,"refresh_cost":0.6666666666666666,"age_cost":{"kind":"power","coeff":1,"exp":2}}}"#,
    );
    let v = json(&run(&["optimize"], &f));
    assert!((v["t_star"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert_eq!(v["method"], "numeric_root");
}

#[test]
fn optimize_zero_rate_is_precondition_error() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "z.json",
        r#"{"scenario":{"lambda":0,"refresh_cost":2,"age_cost":{"kind":"linear","slope":1}}}"#,
    );
    let o = run(&["optimize"], &f);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no finite optimum"));
    assert!(o.stdout.is_empty());
}

#[test]
fn schema_errors_exit_2_with_position() {
    let dir = TempDir::new().unwrap();
    let cases = [
        ("neg.json", "{\"scenario\":{\"lambda\":1,\"refresh_cost\":2,\n\"age_cost\":{\"kind\":\"linear\",\"slope\":-1}}}"),
        ("unknown.json", "{\"scenario\":{\"lambda\":1,\"refresh_cost\":2,\"age_cost\":{\"kind\":\"cubic\"}}}"),
        ("extra.json", "{\"scenario\":{\"lambda\":1,\"refresh_cost\":2,\"age_cost\":{\"kind\":\"linear\",\"slope\":1}},\"bogus\":1}"),
        ("syntax.json", "{\"scenario\":"),
        ("table.json", "{\"scenario\":{\"lambda\":1,\"refresh_cost\":2,\"age_cost\":{\"kind\":\"table\",\"points\":[[0,0],[1,2],[0.5,3]]}}}"),
    ];
    for (name, body) in cases {
        let o = run(&["optimize"], &write(&dir, name, body));
        assert_eq!(o.status.code(), Some(2), "{name}");
        let err = String::from_utf8_lossy(&o.stderr);
        assert!(err.contains("line "), "{name}: {err}");
    }
    let neg = String::from_utf8_lossy(&run(&["optimize"], &dir.path().join("neg.json")).stderr)
        .into_owned();
    assert!(neg.contains("line 2"), "{neg}");
}

#[test]
fn missing_file_and_section_exit_2() {
    let dir = TempDir::new().unwrap();
    assert_eq!(
        run(&["optimize"], &dir.path().join("nope.json"))
            .status
            .code(),
        Some(2)
    );
    let empty = write(&dir, "empty.json", "{}");
    for cmd in ["optimize", "fleet", "simulate", "compare"] {
        assert_eq!(run(&[cmd], &empty).status.code(), Some(2), "{cmd}");
    }
}

#[test]
fn numeric_failure_exits_4() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "n.json",
        r#"{"scenario":{"lambda":1e-300,"refresh_cost":1e300,"age_cost":{"kind":"power","coeff":1e-300,"exp":0.5}}}"#,
    );
    assert_eq!(run(&["optimize"], &f).status.code(), Some(4));
}

#[test]
fn curve_rows() {
    let dir = TempDir::new().unwrap();
    let f = linear_file(&dir);
    let o = run(
        &[
            "--output", "csv", "curve", "--t-min", "1", "--t-max", "4", "--points", "3",
        ],
        &f,
    );
    assert_eq!(
        stdout(&o),
        "t,total,refresh_component,age_component\n1,2.5,2,0.5\n2,2,1,1\n4,2.5,0.5,2\n"
    );
    let o = run(
        &[
            "--output", "csv", "curve", "--t-min", "0.5", "--t-max", "8", "--points", "2",
        ],
        &f,
    );
    assert_eq!(stdout(&o).lines().count(), 3);

    let v = json(&run(
        &[
            "curve", "--t-min", "0.1", "--t-max", "40", "--points", "101",
        ],
        &f,
    ));
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 101);
    let best = rows
        .iter()
        .enumerate()
        .min_by(|a, b| {
            a.1["total"]
                .as_f64()
                .unwrap()
                .total_cmp(&b.1["total"].as_f64().unwrap())
        })
        .unwrap()
        .0;
    assert!(
        rows[best - 1]["t"].as_f64().unwrap() < 2.0 && rows[best + 1]["t"].as_f64().unwrap() > 2.0
    );
}

#[test]
fn curve_bad_range_exit_2() {
    let dir = TempDir::new().unwrap();
    let f = linear_file(&dir);
    for args in [
        ["curve", "--t-min", "1", "--t-max", "1", "--points", "5"],
        ["curve", "--t-min", "0", "--t-max", "1", "--points", "5"],
        ["curve", "--t-min", "1", "--t-max", "2", "--points", "1"],
    ] {
        assert_eq!(run(&args, &f).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn simulate_outputs() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "s.json",
        &format!(
            r#"{{"scenario":{LINEAR},"schedule":{{"kind":"fixed","interval":2}},"sim":{{"seed":3,"n_cycles":200000}}}}"#
        ),
    );
    let v = json(&run(&["simulate"], &f));
    let mean = v["mean_cost_per_time"].as_f64().unwrap();
    let se = v["std_error"].as_f64().unwrap();
    assert!(se > 0.0 && (mean - 2.0).abs() < 4.0 * se, "{mean} ± {se}");
    assert_eq!(v["n_cycles"], 200000);

    let zero = write(
        &dir,
        "z.json",
        r#"{"scenario":{"lambda":0,"refresh_cost":2,"age_cost":{"kind":"linear","slope":1}}}"#,
    );
    let v = json(&run(
        &[
            "simulate",
            "--interval",
            "4",
            "--seed",
            "1",
            "--cycles",
            "100",
        ],
        &zero,
    ));
    assert_eq!(v["mean_cost_per_time"], 0.5);
    assert_eq!(v["std_error"], 0.0);

    let csv = stdout(&run(&["--output", "csv", "simulate", "--cycles", "10"], &f));
    assert!(csv.starts_with("mean_cost_per_time,std_error,"));
    assert_eq!(csv.lines().count(), 2);
}

#[test]
fn simulate_needs_seed_cycles_and_schedule() {
    let dir = TempDir::new().unwrap();
    let f = linear_file(&dir);
    for args in [
        vec!["simulate", "--interval", "2", "--cycles", "10"],
        vec!["simulate", "--interval", "2", "--seed", "1"],
        vec!["simulate", "--seed", "1", "--cycles", "10"],
        vec![
            "simulate",
            "--interval",
            "-2",
            "--seed",
            "1",
            "--cycles",
            "10",
        ],
        vec![
            "simulate",
            "--interval",
            "2",
            "--seed",
            "1",
            "--cycles",
            "0",
        ],
    ] {
        assert_eq!(run(&args, &f).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn simulate_trace_csv() {
    let dir = TempDir::new().unwrap();
    let f = linear_file(&dir);
    let trace = dir.path().join("trace.csv");
    let o = bin()
        .args([
            "simulate",
            "--interval",
            "2",
            "--seed",
            "5",
            "--cycles",
            "50",
            "--trace",
        ])
        .arg(&trace)
        .arg(&f)
        .output()
        .unwrap();
    assert!(o.status.success());
    let text = std::fs::read_to_string(&trace).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("cycle_index,cycle_len,n_updates,cycle_cost")
    );
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 50);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let updates: f64 = rows.iter().map(|r| r[2]).sum();
    let cost: f64 = rows.iter().map(|r| r[3]).sum();
    assert_eq!(updates, v["n_updates_total"].as_f64().unwrap());
    assert!((cost / 100.0 - v["mean_cost_per_time"].as_f64().unwrap()).abs() < 1e-12);
    for (i, r) in rows.iter().enumerate() {
        assert_eq!(r[0], i as f64);
        assert_eq!(r[1], 2.0);
    }
}

#[test]
fn compare_distributions() {
    let dir = TempDir::new().unwrap();
    let f = linear_file(&dir);
    let v = json(&run(
        &["compare", "--dist", r#"{"kind":"exponential","mean":2}"#],
        &f,
    ));
    assert_eq!(
        v,
        serde_json::json!({"c_h": 3.0, "c_fixed": 2.0, "gap": 1.0})
    );
    let v = json(&run(
        &["compare", "--dist", r#"{"kind":"degenerate","t":3}"#],
        &f,
    ));
    assert_eq!(v["gap"], 0.0);

    let gaps: Vec<f64> = [1.0, 0.1, 0.01, 0.001]
        .iter()
        .map(|d| {
            let dist = format!(r#"{{"kind":"uniform","a":{},"b":{}}}"#, 2.0 - d, 2.0 + d);
            json(&run(&["compare", "--dist", &dist], &f))["gap"]
                .as_f64()
                .unwrap()
        })
        .collect();
    assert!(gaps.windows(2).all(|w| w[1] < w[0]), "{gaps:?}");

    let o = run(
        &["compare", "--dist", r#"{"kind":"uniform","a":3,"b":1}"#],
        &f,
    );
    assert_eq!(o.status.code(), Some(2));

    let heavy = write(
        &dir,
        "h.json",
        r#"{"scenario":{"lambda":1,"refresh_cost":1,"age_cost":{"kind":"exponential","scale":1,"rate":0.5}},
            "schedule":{"kind":"random","distribution":{"kind":"exponential","mean":2}}}"#,
    );
    assert_eq!(run(&["compare"], &heavy).status.code(), Some(3));
}

#[test]
fn fleet_outputs() {
    let dir = TempDir::new().unwrap();
    let el = |l: f64| {
        format!(r#"{{"lambda":{l},"refresh_cost":2,"age_cost":{{"kind":"linear","slope":1}}}}"#)
    };
    let f = write(
        &dir,
        "f.json",
        &format!(
            r#"{{"fleet":{{"conn_cost":10,"elements":[{},{}]}}}}"#,
            el(1.0),
            el(3.0)
        ),
    );
    let v = json(&run(&["fleet"], &f));
    assert!((v["t_star"].as_f64().unwrap() / 2f64.sqrt() - 1.0).abs() < 1e-12);
    assert_eq!(
        v["amortized_conn"],
        serde_json::json!({"uniform": 5.0, "non_uniform": 10.0})
    );
    assert_eq!(v["per_element_t_star"][0], 2.0);

    let five = write(
        &dir,
        "five.json",
        &format!(
            r#"{{"fleet":{{"conn_cost":10,"elements":[{},{},{},{},{}]}}}}"#,
            el(1.0),
            el(2.0),
            el(0.0),
            el(3.0),
            el(4.0)
        ),
    );
    let v = json(&run(&["fleet"], &five));
    assert_eq!(
        v["amortized_conn"],
        serde_json::json!({"uniform": 2.0, "non_uniform": 10.0})
    );
    assert!(v["per_element_t_star"][2].is_null());

    let single = write(
        &dir,
        "one.json",
        &format!(r#"{{"fleet":{{"conn_cost":0,"elements":[{LINEAR}]}}}}"#),
    );
    let fleet = json(&run(&["fleet"], &single));
    let opt = json(&run(&["optimize"], &linear_file(&dir)));
    assert_eq!(fleet["t_star"], opt["t_star"]);
    assert_eq!(fleet["total_cost"], opt["cost"]);

    let csv = stdout(&run(&["--output", "csv", "fleet"], &five));
    assert!(csv.starts_with("t_star,total_cost,amortized_uniform,amortized_non_uniform,t_star_0"));
    assert!(csv.lines().nth(1).unwrap().contains(",2,10,2,"));
}

#[test]
fn sweeps() {
    let dir = TempDir::new().unwrap();
    let f = linear_file(&dir);
    let csv = stdout(&run(
        &["--output", "csv", "sweep-lambda", "--values", "1,4"],
        &f,
    ));
    assert_eq!(
        csv,
        "lambda,t_star,cost,method\n1,2,2,closed_form_linear\n4,1,4,closed_form_linear\n"
    );
    let v = json(&run(
        &["sweep-cost", "--values", "0.5", "--values", "8"],
        &f,
    ));
    assert_eq!(v[0]["refresh_cost"], 0.5);
    assert_eq!(v[1]["t_star"], 4.0);
    assert_eq!(
        run(&["sweep-cost", "--values", "2,1"], &f).status.code(),
        Some(3)
    );
}

#[test]
fn quiet_silences_warnings() {
    let dir = TempDir::new().unwrap();
    let f = linear_file(&dir);
    let args = ["curve", "--t-min", "5", "--t-max", "10", "--points", "2"];
    let loud = run(&args, &f);
    assert!(String::from_utf8_lossy(&loud.stderr).contains("warning"));
    let mut quiet_args = vec!["--quiet"];
    quiet_args.extend(args);
    let quiet = run(&quiet_args, &f);
    assert!(quiet.stderr.is_empty());
    assert_eq!(quiet.stdout, loud.stdout);
}

#[test]
fn stdin_input() {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = bin()
        .args(["optimize", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(format!(r#"{{"scenario":{LINEAR}}}"#).as_bytes())
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(json(&o)["t_star"], 2.0);
}
