use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_critgraph"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_str(stdout(out).trim()).unwrap()
}

const C5: &str = "DLo";
const K4: &str = "C~";
const K5: &str = "D~{";
const P4: &str = "Ch";

#[test]
fn chi_decides_and_computes() {
    assert_eq!(code(&run(&["chi", "--k", "2", C5], None)), 1);
    assert_eq!(code(&run(&["chi", "--k", "3", C5], None)), 0);
    let out = run(&["--json", "chi", C5], None);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_eq!(doc["command"], "chi");
    assert_eq!(doc["input"], C5);
    assert_eq!(doc["result"]["value"]["chi"], 3);
    assert!(doc["elapsed_ms"].is_number());
}

#[test]
fn chi_budget_exhaustion_is_an_error() {
    let petersen = "IheA@GUAo";
    assert_eq!(code(&run(&["chi", "--budget", "1", petersen], None)), 2);
}

#[test]
fn critical_verdicts() {
    assert_eq!(code(&run(&["critical", "--k", "4", K4], None)), 0);
    assert_eq!(code(&run(&["critical", "--k", "3", K4], None)), 1);
    assert_eq!(code(&run(&["critical", "--k", "3", P4], None)), 1);
}

#[test]
fn free_reports_embedding() {
    assert_eq!(code(&run(&["free", "--pattern", "K3", C5], None)), 0);
    let out = run(&["--json", "free", "--pattern", "K3,P4", P4], None);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["result"]["value"]["pattern"], "P4");
    assert_eq!(code(&run(&["free", "--pattern", "Q7", P4], None)), 2);
}

#[test]
fn cotree_and_pair() {
    assert_eq!(code(&run(&["cotree", K4], None)), 0);
    assert_eq!(code(&run(&["cotree", P4], None)), 1);
    // paw: triangle 0 1 2 with pendant 3 on 0
    let paw = "CN";
    let out = run(&["--json", "pair", paw], None);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert_eq!(code(&run(&["pair", K4], None)), 1);
    assert_eq!(code(&run(&["pair", "A?"], None)), 1);
}

#[test]
fn color_and_bound() {
    let out = run(&["--json", "color", "--ell", "1", C5], None);
    assert_eq!(code(&out), 0);
    let v = &json(&out)["result"]["value"];
    assert!(v["colors"].as_u64().unwrap() <= 3);
    assert_eq!(v["bound"], 3);
    assert_eq!(code(&run(&["color", "--ell", "1", K4], None)), 2);
    assert_eq!(stdout(&run(&["bound", "--ell", "1", "--k", "4"], None)).trim(), "6");
    assert_eq!(code(&run(&["bound", "--ell", "1", "--k", "2"], None)), 2);
}

#[test]
fn enumerate_and_certify() {
    let out = run(&["enumerate", "--n", "4"], None);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).lines().count(), 11);
    assert_eq!(stdout(&run(&["enumerate", "--n", "4", "--free", "P4"], None)).lines().count(), 10);
    assert_eq!(stdout(&run(&["enumerate", "--n", "4", "--connected"], None)).lines().count(), 6);

    let dir = std::env::temp_dir().join(format!("critgraph-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let db = dir.join("p4free.critdb");
    let db = db.to_str().unwrap();
    let out = run(&["enumerate", "--n", "6", "--free", "P4", "--critical", "4", "--db", db], None);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), K4);

    let out = run(&["--json", "certify", "--k", "3", "--db", db, K5], None);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["result"]["value"]["witness"], K4);
    assert_eq!(code(&run(&["certify", "--k", "3", "--db", db, "C^"], None)), 0);
    assert_eq!(code(&run(&["certify", "--k", "2", "--db", db, K5], None)), 2);
    assert_eq!(code(&run(&["certify", "--k", "3", "--db", db, C5], None)), 2);
    assert_eq!(code(&run(&["enumerate", "--n", "4", "--db", db], None)), 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn batch_mode_keeps_order() {
    let out = run(&["chi", "-"], Some("Ch\nD~{\n\nBw\n"));
    assert_eq!(code(&out), 0);
    let firsts: Vec<String> = stdout(&out).lines().map(|l| l.split('\t').next().unwrap().to_string()).collect();
    assert_eq!(firsts, ["Ch", "D~{", "Bw"]);

    let out = run(&["--json", "chi", "--k", "2", "-"], Some("Ch\nBw\n"));
    assert_eq!(code(&out), 1);
    let doc = json(&out);
    assert_eq!(doc["result"][0]["exit"], 0);
    assert_eq!(doc["result"][1]["exit"], 1);

    assert_eq!(code(&run(&["chi", "-"], Some("Ch\nD?\n"))), 2);
}

#[test]
fn malformed_input_exits_two_with_offset() {
    let out = run(&["chi", "D?"], None);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("byte 2"));
    assert_eq!(code(&run(&["critical", K4], None)), 2);
    assert_eq!(code(&run(&["nope"], None)), 2);
}
