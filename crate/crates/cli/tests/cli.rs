use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn rgcc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rgcc")).args(args).output().expect("running rgcc")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "rgcc failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn field<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix('\t')))
        .unwrap_or_else(|| panic!("no `{key}` in {text}"))
}

fn gen(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name);
    let p = path.to_str().unwrap();
    let mut full = vec!["gen", "--out", p];
    full.extend_from_slice(args);
    stdout(&rgcc(&full));
    p.to_string()
}

#[test]
fn generated_reductions_solve_as_expected() {
    let dir = tempfile::tempdir().unwrap();
    let sat = gen(dir.path(), "sat.rgcc", &["3sat", "--vars", "2", "--clauses", "1 2,-1,-1 -2"]);
    let unsat = gen(dir.path(), "unsat.rgcc", &["3sat", "--vars", "1", "--clauses", "1,-1"]);
    let hit = gen(dir.path(), "hit.rgcc", &["hitting", "--vertices", "3", "--edges", "0 1;1 2;0 2", "--k", "1"]);
    for mode in ["decomp", "wa", "cwa"] {
        assert_eq!(field(&stdout(&rgcc(&["solve", &sat, "--mode", mode])), "status"), "sat");
        assert_eq!(field(&stdout(&rgcc(&["solve", &unsat, "--mode", mode])), "status"), "unsat");
        assert_eq!(field(&stdout(&rgcc(&["solve", &hit, "--mode", mode, "--no-lex"])), "status"), "unsat");
    }
}

#[test]
fn gen_writes_to_stdout_and_is_deterministic() {
    let a = stdout(&rgcc(&["gen", "random", "--seed", "3", "--weighted"]));
    let b = stdout(&rgcc(&["gen", "random", "--seed", "3", "--weighted"]));
    assert_eq!(a, b);
    assert!(a.starts_with("MATRIX"), "{a}");
    assert!(stdout(&rgcc(&["gen", "roster", "--seed", "1"])).starts_with("ROSTER"));
}

#[test]
fn oracle_lists_supported_values() {
    let dir = tempfile::tempdir().unwrap();
    let f = gen(dir.path(), "ec.rgcc", &["exactcover", "--universe", "2", "--sets", "1;2;1 2"]);
    let text = stdout(&rgcc(&["oracle", &f]));
    let count: usize = field(&text, "solutions").parse().unwrap();
    assert!(count >= 2, "{text}");
    let cap = rgcc(&["oracle", &f, "--cap", "1"]);
    assert!(!cap.status.success());
}

#[test]
fn bench_reports_every_run() {
    let dir = tempfile::tempdir().unwrap();
    for seed in 0..2 {
        gen(dir.path(), &format!("r{seed}.rgcc"), &["roster", "--seed", &seed.to_string()]);
    }
    fs::write(dir.path().join("ignored.txt"), "x").unwrap();
    let report = dir.path().join("report.tsv");
    let out = rgcc(&[
        "bench",
        dir.path().to_str().unwrap(),
        "--modes",
        "decomp,cwa",
        "--sequential",
        "--time-limit",
        "5",
        "--report",
        report.to_str().unwrap(),
    ]);
    stdout(&out);
    let tsv = fs::read_to_string(report).unwrap();
    let lines: Vec<&str> = tsv.lines().collect();
    assert_eq!(lines.len(), 5, "{tsv}");
    assert!(lines[1].starts_with("r0\t"));
    assert!(lines[4].starts_with("r1\t"));
}

#[test]
fn bad_input_fails_with_a_message() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.rgcc");
    fs::write(&f, "MATRIX 1 1 2\n").unwrap();
    let out = rgcc(&["solve", f.to_str().unwrap()]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad.rgcc"));
    assert!(!rgcc(&["gen", "3dm-dc", "--q", "2", "--triples", "0 1"]).status.success());
}
