use serde_json::Value;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubiczeta")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn lines_and_counts() {
    let f = fixture("fermat_threefold.txt");
    let v = json(&["lines", "--cubic", &f, "--field", "2", "--gs"]);
    assert_eq!(v["lines"], 15);
    assert_eq!(v["gs"], "15");
    let v = json(&["count", "--cubic", &fixture("lineless_f2.txt"), "--rmax", "3"]);
    assert_eq!(v["counts"], serde_json::json!([9, 81, 657]));
}

#[test]
fn bsd_with_an_explicit_line() {
    let v = json(&["bsd", "--cubic", &fixture("klein_threefold.txt"), "--field", "3", "--line", "1,0,0,0,0;0,0,1,0,0"]);
    assert_eq!(v["M"].as_array().unwrap().len(), 5);
    assert_eq!(v["P1"]["display"], "1 + 31T^5 + 243T^10");
}

#[test]
fn zeta_by_counting() {
    let v = json(&["zeta", "--cubic", &fixture("lineless_f2.txt"), "--via", "count"]);
    assert_eq!(v["M"], serde_json::json!([-3, -1, 9, -9, 7]));
    assert_eq!(v["zeta_F"]["picard"]["rho"], 5);
    assert_eq!(v["lines"][0], "0");
}

#[test]
fn small_commands() {
    let v = json(&["bounds", "--q", "11"]);
    assert_eq!(v["min_lines"], "10");
    let v = json(&["bounds", "--q", "23", "--dim", "4"]);
    assert_eq!(v["lower"], "134942");
    let v = json(&["average", "--field", "2"]);
    assert_eq!(v["exact"]["num"], "10737418235");
    let v = json(&["hsearch", "--q", "2"]);
    assert_eq!(v["candidates"].as_array().unwrap().len(), 6);
    let v = json(&["classify", "--poly", "1,0,0,0,0,0,0,0,0,0,32", "--q", "2"]);
    assert_eq!(v["classification"]["supersingular"], true);
    let v = json(&["fermat", "--p", "5"]);
    assert_eq!(v["fano"]["picard_over_p2"], 45);
    let v = json(&["nodal", "--cubic", &fixture("nodal_f2.txt")]);
    assert_eq!(v["lines"], 0);
}

#[test]
fn exit_codes() {
    // not a Weil polynomial
    assert_eq!(run(&["classify", "--poly", "1,5", "--q", "2"]).status.code(), Some(2));
    assert_eq!(run(&["histogram", "--field", "2", "--samples", "0"]).status.code(), Some(0));
    assert_eq!(run(&["bounds", "--q", "7", "--dim", "5"]).status.code(), Some(1));
    let out = run(&["lines", "--cubic", &fixture("fermat_threefold.txt"), "--field", "2", "--text"]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("lines: 15"));
}

#[test]
fn search_appends_ndjson() {
    let dir = std::env::temp_dir().join(format!("cubiczeta-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("hits.ndjson");
    let p = path.to_str().unwrap();
    let args = ["search", "--field", "2", "--budget", "1500", "--seed", "7", "--out", p];
    json(&args);
    json(&args);
    let text = std::fs::read_to_string(&path).unwrap();
    let rows: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows[0]["config"]["seed"], 7);
    let half = rows.len() / 2;
    assert!(half >= 2, "{text}");
    assert_eq!(rows[..half], rows[half..]);
    assert!(rows[1]["cubic"].is_object());
    std::fs::remove_dir_all(dir).unwrap();
}
