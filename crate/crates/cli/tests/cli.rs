use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_groupcode")).current_dir(dir).args(args).output().expect("binary runs")
}

fn status(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn replays(dir: &Path, witness: &str) {
    let out = run(dir, &["replay", witness]);
    assert_eq!(status(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["all_hold"], true);
}

#[test]
fn build_code_writes_a_generator_matrix() {
    let dir = TempDir::new().unwrap();
    let out = run(dir.path(), &["build-code", "rep-sum:2,3", "--field", "2"]);
    assert_eq!(status(&out), 0);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "field=2 n=6\n1,1,1,0,0,0\n0,0,0,1,1,1\n");
}

#[test]
fn repsum_witness_replays() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    let out =
        run(d, &["prop1", "dihedral:3", "--field", "2", "-o", "w.json", "--code-out", "c.txt", "--phi-out", "phi.txt"]);
    assert_eq!(status(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    replays(d, "w.json");

    let followups: [&[&str]; 5] = [
        &["check-divisibility", "c.txt", "dihedral:3", "--phi", "phi.txt", "--side", "left", "-o", "div.json"],
        &["embed-repsum", "c.txt", "dihedral:3", "--phi", "phi.txt", "-o", "emb.json"],
        &["certify-cyclic", "c.txt", "dihedral:3", "--via-hall", "--phi", "phi.txt", "-o", "hall.json"],
        &["certify-abelian", "c.txt", "dihedral:3", "--via-trivial-action", "--phi", "phi.txt", "-o", "triv.json"],
        &["certify-cyclic", "c.txt", "dihedral:3", "-o", "cyc.json"],
    ];
    for args in followups {
        let out = run(d, args);
        assert_eq!(status(&out), 0, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        replays(d, args.last().unwrap());
    }
}

#[test]
fn explicit_subgroups_and_group_files() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    assert_eq!(status(&run(d, &["build-group", "dihedral:3", "-o", "g.txt"])), 0);
    assert_eq!(status(&run(d, &["build-code", "full:6", "-o", "f.txt"])), 0);
    let out = run(
        d,
        &["certify-abelian", "f.txt", "g.txt", "--A", "(1 2 3)(4 5 6)", "--B", "(1 4)(2 6)(3 5)", "-o", "a.json"],
    );
    assert_eq!(status(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    replays(d, "a.json");

    let out = run(d, &["certify-abelian", "f.txt", "g.txt", "--A", "(1 2 3)(4 5 6)", "--B", "(1 2 3)(4 5 6)"]);
    assert_eq!(status(&out), 2);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report["claims"].as_array().unwrap().iter().any(|c| c["holds"] == false));
}

#[test]
fn non_regular_group_is_a_verification_failure() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    assert_eq!(status(&run(d, &["build-code", "full:4", "-o", "f4.txt"])), 0);
    fs::write(d.join("d8.txt"), "degree 4\n(1 2)\n(3 4)\n(1 3)(2 4)\n").unwrap();
    let out = run(d, &["certify-group", "f4.txt", "d8.txt"]);
    assert_eq!(status(&out), 2);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let regular = report["claims"].as_array().unwrap().iter().find(|c| c["name"] == "regular(G)").unwrap();
    assert_eq!(regular["holds"], false);
    assert_eq!(report["inputs"]["group"], "d8.txt");
}

#[test]
fn usage_and_parse_errors_exit_one() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    assert_eq!(status(&run(d, &["no-such-command"])), 1);
    assert_eq!(status(&run(d, &["certify-group", "missing.txt", "cyclic:4"])), 1);
    fs::write(d.join("bad.txt"), "field=2 n=3\n1,1\n").unwrap();
    assert_eq!(status(&run(d, &["paut", "bad.txt"])), 1);
    fs::write(d.join("c.txt"), "field=2 n=4\n1,1,1,1\n").unwrap();
    assert_eq!(status(&run(d, &["certify-group", "c.txt", "cyclic:3"])), 1);
    assert_eq!(status(&run(d, &["build-group", "prescribed:6,2"])), 1);
    assert_eq!(status(&run(d, &["--help"])), 0);
}

#[test]
fn identical_inputs_give_identical_bytes() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    let first = run(d, &["repsum-from-derived", "gpqm:3,7,2", "--field", "2"]);
    let second = run(d, &["repsum-from-derived", "gpqm:3,7,2", "--field", "2"]);
    assert_eq!(status(&first), 0);
    assert_eq!(first.stdout, second.stdout);

    fs::write(d.join("c.txt"), "field=3 n=4\n1,2,0,1\n0,1,1,1\n").unwrap();
    let a = run(d, &["paut", "c.txt", "-o", "p1.json"]);
    let b = run(d, &["paut", "c.txt", "-o", "p2.json", "--log", "timing.log"]);
    assert_eq!((status(&a), status(&b)), (0, 0));
    assert_eq!(fs::read(d.join("p1.json")).unwrap(), fs::read(d.join("p2.json")).unwrap());
    assert!(fs::read_to_string(d.join("timing.log")).unwrap().starts_with("paut status=ok"));
    replays(d, "p1.json");
}

#[test]
fn tampered_witness_fails_replay() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    assert_eq!(status(&run(d, &["prop1", "dihedral:3", "-o", "w.json"])), 0);
    let text = fs::read_to_string(d.join("w.json")).unwrap();
    let mut w: serde_json::Value = serde_json::from_str(&text).unwrap();
    w["artifacts"]["codes"]["C"]["rows"][0] = serde_json::json!([1, 1, 0, 0, 0, 0]);
    fs::write(d.join("bad.json"), serde_json::to_string(&w).unwrap()).unwrap();
    let out = run(d, &["replay", "bad.json"]);
    assert_eq!(status(&out), 2);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["agrees"], false);
}
