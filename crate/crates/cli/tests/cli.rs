use std::path::PathBuf;
use std::process::{Command, Output};

use knotfert::codes::enumerate_shadows;
use serde_json::Value;

fn knotfert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_knotfert"))
        .args(args)
        .env_remove("KNOTFERT_TABLE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("knotfert-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn table_path() -> String {
    concat!(env!("CARGO_MANIFEST_DIR"), "/../core/data/knots8.tbl").to_string()
}

#[test]
fn enumerate_lists_letter_codes() {
    let o = knotfert(&["enumerate", "--n", "3", "--irreducible"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("a b c a b c"), "{}", stdout(&o));

    for n in 0..=5 {
        for irreducible in [false, true] {
            let n_arg = n.to_string();
            let mut args = vec!["enumerate", "--n", &n_arg, "--format", "json"];
            if irreducible {
                args.push("--irreducible");
            }
            let v = json(&knotfert(&args));
            assert_eq!(v["result"]["count"], enumerate_shadows(n, !irreducible).len(), "n={n}");
            assert_eq!(v["config"]["allow_reducible"], !irreducible);
        }
    }
}

#[test]
fn homfly_of_an_empty_gauss_file_is_one() {
    let path = scratch("unknot.gauss", "");
    let o = knotfert(&["homfly", "--in", path.to_str().unwrap()]);
    assert!(o.status.success());
    let lines: Vec<String> = stdout(&o).lines().filter(|l| !l.starts_with('#')).map(String::from).collect();
    assert_eq!(lines, ["1"]);
}

#[test]
fn five_one_is_not_fertile() {
    let table = table_path();
    let o = knotfert(&["fertile", "--knot", "5_1", "--table", &table, "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let r = &v["result"][0];
    assert_eq!(r["verdict"], false);
    assert_eq!(r["obstruction"], "4_1");
    assert_eq!(v["config"]["table"], table);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["frobnicate"],
        vec!["enumerate"],
        vec!["enumerate", "--n", "3", "--format", "xml"],
        vec!["enumerate", "--n", "3", "--jobs", "0"],
        vec!["homfly"],
        vec!["fertile"],
        vec!["fertile", "--knot", "3_1", "--all"],
    ] {
        let o = knotfert(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn domain_errors_exit_one_with_json() {
    for (args, name) in [
        (vec!["fertile", "--knot", "10_1"], "UnknownKnot"),
        (vec!["homfly", "--code", "a b a"], "MalformedCode"),
        (vec!["census", "--code", "a b c a c b"], "NotRealizable"),
        (vec!["enumerate", "--n", "8"], "ResourceLimit"),
        (vec!["mnfertile", "--knot", "3_1", "--m", "3", "--n", "9"], "ResourceLimit"),
        (vec!["identify", "--in", "/nonexistent/input"], "IoError"),
    ] {
        let o = knotfert(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert_eq!(json(&o)["error"], name, "{args:?}");
    }
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let args = ["census", "--code", "a b c d e a d c b e", "--code", "a b c a d c b d", "--format", "json", "--jobs", "3"];
    let first = knotfert(&args);
    assert!(first.status.success(), "{}", stdout(&first));
    for _ in 0..3 {
        assert_eq!(knotfert(&args).stdout, first.stdout);
    }
    let args = ["fertile", "--all", "--max-c", "6", "--ceiling", "6", "--format", "json", "--jobs", "4"];
    assert_eq!(knotfert(&args).stdout, knotfert(&args).stdout);
}

#[test]
fn verify_exit_status_matches_the_report() {
    let o = knotfert(&["verify", "--knot", "3_1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["result"]["all_hold"], true);

    let o = knotfert(&["verify", "--all", "--max-c", "6", "--format", "json"]);
    let v = json(&o);
    let entries: Vec<&Value> = v["result"]["reports"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|r| r["entries"].as_array().unwrap())
        .collect();
    let all_hold = entries.iter().all(|e| e["holds"] == true);
    assert_eq!(v["result"]["all_hold"], all_hold);
    assert_eq!(o.status.code(), Some(if all_hold { 0 } else { 1 }));
}

#[test]
fn table_from_environment() {
    let tiny = scratch("tiny.tbl", "# knot-table v1\n# complete-through 3\n0_1 0 dt: g=0 gc=0 b=1\n3_1 3 dt:4,6,2 g=1 gc=1 b=2\n");
    let o = Command::new(env!("CARGO_BIN_EXE_knotfert"))
        .args(["identify", "--code", "dt: 4 6 8 2", "--format", "json"])
        .env("KNOTFERT_TABLE", &tiny)
        .output()
        .unwrap();
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["config"]["table"], tiny.to_str().unwrap());
    assert_eq!(v["result"][0]["matches"], serde_json::json!([]));

    let o = Command::new(env!("CARGO_BIN_EXE_knotfert"))
        .args(["table-check"])
        .env("KNOTFERT_TABLE", "/nonexistent/table")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["error"], "IoError");
}

#[test]
fn csv_and_file_output() {
    let out = std::env::temp_dir().join(format!("knotfert-cli-out-{}.csv", std::process::id()));
    let o = knotfert(&["mnfertile", "--knot", "4_1", "--m", "4", "--n", "4", "--format", "csv", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# config: {"));
    let body: String = lines.map(|l| format!("{l}\n")).collect();
    let mut reader = csv::Reader::from_reader(body.as_bytes());
    assert_eq!(&reader.headers().unwrap()[0], "knot");
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 1);
    assert_eq!(&rows[0][4], "true");
}

#[test]
fn raised_ceiling_warns() {
    let o = knotfert(&["homfly", "--code", "dt: 4 6 2", "--ceiling", "14"]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
    let o = knotfert(&["homfly", "--code", "dt: 4 6 2"]);
    assert!(o.stderr.is_empty());
}

#[test]
fn table_check_and_stats() {
    let o = knotfert(&["table-check", "--format", "json"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["result"]["records"], 36);
    assert_eq!(v["result"]["issues"], 0);

    let o = knotfert(&["stats", "--code", "a b c a b c", "--code", "gauss: 1 -2 3 -1 2 -3", "--format", "json"]);
    let v = json(&o);
    assert_eq!(v["result"][0]["kind"], "shadow");
    assert_eq!(v["result"][0]["stats"]["s"], 2);
    assert_eq!(v["result"][1]["kind"], "diagram");
    assert_eq!(v["result"][1]["stats"]["w"], -3);
    assert_eq!(v["schema"], "knotfert-report/1");
}
