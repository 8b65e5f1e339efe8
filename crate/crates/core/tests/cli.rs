use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
}

impl Run {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("{e}: {}", self.stdout))
    }
}

fn braidkit(args: &[&str], stdin: Option<&str>) -> Run {
    let mut child = Command::new(env!("CARGO_BIN_EXE_braidkit"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    let out = child.wait_with_output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout)
            .unwrap()
            .trim_end()
            .to_string(),
    }
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn eq_triple_relation() {
    let r = braidkit(&["eq", "--strands", "3", "1 2 1", "2 1 2"], None);
    assert_eq!(r.code, 0);
    assert_eq!(r.json()["equal"], true);
    let r = braidkit(&["eq", "--strands", "3", "1 2", "2 1"], None);
    assert_eq!(r.code, 1);
    assert_eq!(r.json()["equal"], false);
}

#[test]
fn band_expand_and_nf() {
    let r = braidkit(&["band-expand", "--strands", "3", "3:1"], None);
    assert_eq!(r.code, 0);
    assert_eq!(r.json()["word"], "2 1 -2");
    let r = braidkit(&["nf", "--strands", "3", "1 2 1 1 2 1"], None);
    assert_eq!(r.json()["delta_power"], 2);
    assert_eq!(r.json()["key"], "3:+2");
    let r = braidkit(&["conj", "--strands", "3", "1", "2"], None);
    assert_eq!(r.json()["word"], "-2 1 2");
}

#[test]
fn verify_relations() {
    let r = braidkit(&["verify", "relations", "--strands", "4"], None);
    assert_eq!(r.code, 0);
    assert_eq!(r.json()["passed"], true);
    assert_eq!(r.json()["failures"], Value::Array(vec![]));
}

#[test]
fn delta2_pipes_into_hurwitz_path() {
    let standard = braidkit(&["delta2", "--strands", "3"], None);
    assert_eq!(standard.json()["factors"].as_array().unwrap().len(), 6);
    let conj = braidkit(&["delta2", "--strands", "3", "--conjugate", "-1"], None);
    let target = temp_file("conj_target.json", &conj.stdout);
    let r = braidkit(
        &["hurwitz-path", "-", target.to_str().unwrap()],
        Some(&standard.stdout),
    );
    assert_eq!(r.code, 0, "{}", r.stdout);
    let report = r.json();
    assert_eq!(report["result"], "found");
    let moves = report["moves"].to_string();
    let source = temp_file("standard.json", &standard.stdout);
    let applied = braidkit(
        &["hurwitz-apply", source.to_str().unwrap(), "--moves", &moves],
        None,
    );
    assert_eq!(applied.code, 0);
    let same = braidkit(
        &[
            "hurwitz-path",
            "-",
            target.to_str().unwrap(),
            "--depth-cap",
            "0",
        ],
        Some(&applied.stdout),
    );
    assert_eq!(same.json()["result"], "found");
    assert_eq!(same.json()["length"], 0);
}

#[test]
fn hurwitz_path_exit_codes() {
    let a = temp_file("b2_a.json", r#"{"strands":2,"factors":["1 1",""]}"#);
    let b = temp_file("b2_b.json", r#"{"strands":2,"factors":["1","1"]}"#);
    let c = temp_file("b2_c.json", r#"{"strands":2,"factors":["1",""]}"#);
    // the orbit of (σ1², e) is finite and misses (σ1, σ1)
    let r = braidkit(
        &["hurwitz-path", a.to_str().unwrap(), b.to_str().unwrap()],
        None,
    );
    assert_eq!(r.code, 1);
    assert_eq!(r.json()["orbit_closed"], true);
    let r = braidkit(
        &["hurwitz-path", a.to_str().unwrap(), c.to_str().unwrap()],
        None,
    );
    assert_eq!(r.code, 1);
    assert_eq!(r.json()["result"], "different_products");

    let s = temp_file(
        "s3.json",
        &braidkit(&["delta2", "--strands", "3"], None).stdout,
    );
    let t = temp_file(
        "t3.json",
        &braidkit(&["delta2", "--strands", "3", "--conjugate", "1 2"], None).stdout,
    );
    let r = braidkit(
        &[
            "hurwitz-path",
            s.to_str().unwrap(),
            t.to_str().unwrap(),
            "--depth-cap",
            "1",
        ],
        None,
    );
    assert_eq!(r.code, 2);
    assert_eq!(r.json()["orbit_closed"], false);
}

#[test]
fn orbit_and_caps() {
    let f = r#"{"strands":3,"factors":["1","2"]}"#;
    let r = braidkit(&["orbit", "-", "--keys"], Some(f));
    assert_eq!(r.code, 0);
    assert_eq!(r.json()["truncated"], false);
    assert_eq!(
        r.json()["visited"].as_u64().unwrap() as usize,
        r.json()["keys"].as_array().unwrap().len()
    );
    let full = braidkit(
        &["orbit", "-", "--size-cap", "5"],
        Some(r#"{"strands":3,"factors":["1","2","1","2","1","2"]}"#),
    );
    assert_eq!(full.code, 2);
    assert_eq!(full.json()["visited"], 5);
}

#[test]
fn rewriting_commands() {
    let r = braidkit(&["rewrite-class", "--strands", "3", "3:2 2:1"], None);
    assert_eq!(r.code, 0);
    assert_eq!(r.json()["size"], 3);
    let r = braidkit(
        &["positive-path", "--strands", "3", "3:2 2:1", "2:1 3:1"],
        None,
    );
    assert_eq!(r.code, 0);
    assert_eq!(r.json()["result"], "found");
    let r = braidkit(&["positive-path", "--strands", "3", "2:1", "3:2"], None);
    assert_eq!(r.code, 1);
    assert_eq!(r.json()["result"], "not_equal");
    let r = braidkit(
        &[
            "positive-path",
            "--strands",
            "4",
            "2:1 3:2 4:3 2:1",
            "4:3 3:2 2:1 2:1",
            "--size-cap",
            "2",
        ],
        None,
    );
    assert_eq!(r.code, 2);
    assert_eq!(r.json()["result"], "truncated");
}

#[test]
fn semiframe_commands() {
    let r = braidkit(&["semiframe", "--strands", "4", "--band", "3:1 4:2"], None);
    assert_eq!(r.code, 0);
    assert_eq!(r.json()["verdict"], "accept");
    let r = braidkit(
        &[
            "semiframe",
            "--strands",
            "4",
            "--band",
            "3:1 4:2",
            "--emit-map",
        ],
        None,
    );
    let map = r.json()["map"].to_string();
    let again = braidkit(&["semiframe", "-"], Some(&map));
    assert_eq!(again.code, 0);

    let path = r#"{"vertices":[{"id":1,"kind":"puncture"},{"id":2,"kind":"puncture"}],
        "edges":[{"id":0,"ends":[1,2]}],"rotations":{"1":[0],"2":[1]}}"#;
    assert_eq!(braidkit(&["semiframe", "-"], Some(path)).code, 0);
    // fixed mode without a designated face is malformed
    assert_eq!(
        braidkit(&["semiframe", "-", "--mode", "fixed"], Some(path)).code,
        3
    );
    let looped = r#"{"vertices":[{"id":1,"kind":"puncture"}],"edges":[{"id":0,"ends":[1,1]}],
        "rotations":{"1":[0,1]},"mode":"free"}"#;
    let r = braidkit(&["semiframe", "-"], Some(looped));
    assert_eq!(r.code, 3);
    assert!(r.json()["error"].as_str().unwrap().contains("loop"));
}

#[test]
fn enclosed_hub_is_rejected() {
    // p4 sits inside the triangle p1 p2 p3 and is joined to all three
    let map = r#"{
      "vertices": [{"id":1,"kind":"puncture"},{"id":2,"kind":"puncture"},
                   {"id":3,"kind":"puncture"},{"id":4,"kind":"puncture"}],
      "edges": [{"id":0,"ends":[1,2]},{"id":1,"ends":[2,3]},{"id":2,"ends":[3,1]},
                {"id":3,"ends":[1,4]},{"id":4,"ends":[2,4]},{"id":5,"ends":[3,4]}],
      "rotations": {"1":[0,6,5],"2":[2,8,1],"3":[4,10,3],"4":[7,9,11]},
      "mode": "free"
    }"#;
    let r = braidkit(&["semiframe", "-"], Some(map));
    assert_eq!(r.code, 1, "{}", r.stdout);
    assert_eq!(r.json()["verdict"], "reject");
}

#[test]
fn malformed_input_exits_3() {
    assert_eq!(braidkit(&["nf", "--strands", "3", "1 9"], None).code, 3);
    assert_eq!(braidkit(&["nf", "1"], None).code, 3);
    assert_eq!(
        braidkit(
            &["hurwitz-apply", "-", "--moves", "[5]"],
            Some(r#"{"strands":3,"factors":["1","2"]}"#)
        )
        .code,
        3
    );
    assert_eq!(braidkit(&["orbit", "-"], Some("not json")).code, 3);
    assert_eq!(braidkit(&["orbit", "/nonexistent/file.json"], None).code, 3);
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "lemma32", "--strands", "4", "--samples", "10"];
    let a = braidkit(&args, None);
    let b = braidkit(&args, None);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    let c = braidkit(
        &[
            "verify",
            "lemma32",
            "--strands",
            "4",
            "--samples",
            "10",
            "--threads",
            "1",
        ],
        None,
    );
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn text_format() {
    let r = braidkit(
        &["eq", "--strands", "3", "1 2 1", "2 1 2", "--format", "text"],
        None,
    );
    assert!(r.stdout.lines().any(|l| l == "equal: true"), "{}", r.stdout);
}
