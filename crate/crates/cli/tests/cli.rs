use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn qconv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qconv")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("JSON output")
}

fn write(dir: &Path, name: &str, v: &Value) -> String {
    let p = dir.join(name);
    std::fs::write(&p, v.to_string()).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn bound_values() {
    for (args, expected) in [(["15", "13", "1"], "3"), (["10", "8", "0"], "2"), (["63", "57", "3"], "7")] {
        let o = qconv(&["bound", args[0], args[1], args[2]]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o).trim(), expected);
    }
    let o = qconv(&["bound", "10", "7", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("odd"));
    let o = qconv(&["bound", "15", "13", "1", "--format", "json"]);
    assert_eq!(json(&o)["singleton_bound"], 3);
}

#[test]
fn grs_enumerations() {
    let o = qconv(&["grs", "--q-max", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o), serde_json::json!({ "codes": [], "reports": [] }));

    let o = qconv(&["grs", "--q-max", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2, "{text}");
    assert!(lines[0].starts_with("family"));
    let cols: Vec<&str> = lines[1].split("  ").map(str::trim).filter(|s| !s.is_empty()).collect();
    assert_eq!(cols, ["grs", "grs(q=4, n=15, t=1)", "4", "15", "13", "15", "1", "3", "3", "true", "yes", "3", "true", "pass"]);

    let o = qconv(&["grs", "--q-max", "500"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn rm_enumerations() {
    let o = qconv(&["rm", "--m-max", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("(no members)"));

    let o = qconv(&["rm", "--m-max", "5", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "family,member,q,n,k,m,delta,df_lower,df_upper,df_exact,pure,singleton_bound,optimal,status"
    );
    let row = lines.find(|l| l.contains("m=5, l=1, r=1")).expect("(5,1,1) row");
    assert_eq!(row, "rm,\"rm(m=5, l=1, r=1)\",2,16,6,0,0,4,4,true,yes,6,false,pass");

    let o = qconv(&["rm", "--member", "3,1,1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("rm.self-orthogonal: fail (witness (row"));
}

#[test]
fn verify_round_trip_and_mutation() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("grs.json");
    let o = qconv(&["grs", "--q-max", "4", "--format", "json", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let first: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();

    let o = qconv(&["verify", out.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let second = json(&o);
    assert_eq!(first["codes"], second["codes"]);
    let statuses: Vec<&Value> = second["reports"][0]["claims"].as_array().unwrap().iter().map(|c| &c["status"]).collect();
    assert!(statuses.iter().all(|s| *s == "pass"));

    let mut code = first["codes"][0].clone();
    let entry = &mut code["generator"]["entries"][0][1][0];
    *entry = if *entry == serde_json::json!([0, 1, 0, 0]) { serde_json::json!(1) } else { serde_json::json!(2) };
    let path = write(dir.path(), "mutated.json", &code);
    let o = qconv(&["verify", &path]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("code.self-orthogonal: fail (witness (row"), "{text}");

    let mut odd = first["codes"][0].clone();
    odd["k"] = serde_json::json!(12);
    let path = write(dir.path(), "odd.json", &odd);
    let o = qconv(&["verify", &path]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("odd"));
}

#[test]
fn distance_of_a_generator() {
    let dir = tempfile::tempdir().unwrap();
    // (1 + D, 1) over GF(2): free distance 3, dual (1, 1 + D) also 3
    let g = serde_json::json!({
        "field": { "p": 2, "m": 1, "modulus": [0, 1] },
        "k": 1, "n": 2,
        "entries": [[[1, 1], [1]]]
    });
    let path = write(dir.path(), "g.json", &g);
    let o = qconv(&["distance", &path, "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["free"]["df_lower"], 3);
    assert_eq!(v["free"]["exact"], true);
    assert_eq!(v["dual"]["df_upper"], 3);
}

#[test]
fn worker_count_does_not_change_results() {
    let strip = |mut v: Value| {
        for r in v["reports"].as_array_mut().unwrap() {
            r["wall_time_ms"] = Value::Null;
        }
        v
    };
    let a = strip(json(&qconv(&["rm", "--m-max", "5", "--format", "json", "--jobs", "1"])));
    let b = strip(json(&qconv(&["rm", "--m-max", "5", "--format", "json", "--jobs", "3"])));
    assert_eq!(a, b);
    assert_eq!(a["codes"].as_array().unwrap().len(), 7);
}

#[test]
fn field_table_cache() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_qconv"))
        .args(["grs", "--q-max", "4", "--t-max", "1"])
        .env("QCONV_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let names: Vec<String> =
        std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    assert!(names.iter().any(|n| n.starts_with("gf-2-4-")), "{names:?}");
    let again = Command::new(env!("CARGO_BIN_EXE_qconv"))
        .args(["grs", "--q-max", "4", "--t-max", "1"])
        .env("QCONV_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(again.stdout, o.stdout);
}

#[test]
fn invalid_flags_exit_one() {
    assert_eq!(qconv(&["--bogus"]).status.code(), Some(1));
    assert_eq!(qconv(&["grs", "--time-cap-secs", "0"]).status.code(), Some(1));
    assert_eq!(qconv(&["rm", "--format", "xml"]).status.code(), Some(1));
    assert_eq!(qconv(&["verify", "/nonexistent/file.json"]).status.code(), Some(1));
    assert_eq!(qconv(&["--help"]).status.code(), Some(0));
}
