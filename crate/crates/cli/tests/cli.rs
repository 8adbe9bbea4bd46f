use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const Z3: &str = "# cyclic group of order 3\n3\n0 1 2\n1 2 0\n2 0 1\n";
const TS3: &str = "3\n0 2 1\n2 1 0\n1 0 2\n";
const Z4: &str = "4\n0 1 2 3\n1 2 3 0\n2 3 0 1\n3 0 1 2\n";
const KLEIN: &str = "4\n0 1 2 3\n1 0 3 2\n2 3 0 1\n3 2 1 0\n";

fn file(name: &str, contents: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("qpl-cli");
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path
}

fn qpl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qpl")).args(args).output().unwrap()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = qpl(args);
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn validate_and_parastrophe() {
    let z3 = file("z3.tbl", Z3);
    assert_eq!(
        run(&["table", "validate", p(&z3)]),
        (0, "ok, order 3, loop, group\n".into(), String::new())
    );
    let ts3 = file("ts3.tbl", TS3);
    assert_eq!(run(&["table", "validate", p(&ts3)]).1, "ok, order 3\n");
    let (code, out, _) = run(&["table", "parastrophe", "--kind", "pi3", p(&z3)]);
    assert_eq!((code, out.as_str()), (0, "3\n0 1 2\n2 0 1\n1 2 0\n"));
    // aliases name the same parastrophe
    assert_eq!(run(&["table", "parastrophe", "--kind", "rinv", p(&z3)]).1, out);
    assert_eq!(run(&["table", "parastrophe", "--kind", "pi9", p(&z3)]).0, 2);
}

#[test]
fn canonical_round_trip() {
    let messy = file("messy.tbl", "# header\n\n  3   \n0 1   2\n# mid\n1 2 0  \n2 0 1\n");
    let (_, canon, _) = run(&["table", "parastrophe", "--kind", "pi1", p(&messy)]);
    assert_eq!(canon, "3\n0 1 2\n1 2 0\n2 0 1\n");
    let again = file("canon.tbl", &canon);
    assert_eq!(run(&["table", "parastrophe", "--kind", "pi1", p(&again)]).1, canon);
}

#[test]
fn automorphisms_nuclei_profile_holomorph() {
    let z3 = file("z3b.tbl", Z3);
    assert_eq!(run(&["table", "automorphisms", p(&z3)]).1, "0 1 2\n0 2 1\n");
    assert_eq!(
        run(&["table", "nuclei", p(&z3)]).1,
        "left: 0 1 2\nmiddle: 0 1 2\nright: 0 1 2\n"
    );
    let profile = run(&["table", "profile", p(&file("ts3b.tbl", TS3))]).1;
    assert!(profile.contains("totally symmetric: true\n"), "{profile}");
    assert!(profile.contains("identity: none\n"), "{profile}");
    let (code, hol, _) = run(&["table", "holomorph", p(&z3)]);
    assert_eq!(code, 0);
    assert!(hol.starts_with("6\n"));
    assert_eq!(run(&["table", "holomorph", "--bound", "5", p(&z3)]).0, 3);
}

#[test]
fn identity_checks() {
    let z3 = file("z3c.tbl", Z3);
    let ts3 = file("ts3c.tbl", TS3);
    assert_eq!(run(&["check", "identity", "--name", "assoc", p(&z3)]).0, 0);
    assert_eq!(
        run(&["check", "identity", "--name", "assoc", p(&ts3)]),
        (1, "fails at x=0 y=0 z=1\n".into(), String::new())
    );
    assert_eq!(run(&["check", "identity", "--expr", "x*y = y*x", p(&ts3)]).0, 0);
    assert_eq!(run(&["check", "identity", "--name", "nope", p(&z3)]).0, 2);
    let (code, _, err) = run(&["check", "identity", "--expr", "x*(y = y", p(&z3)]);
    assert_eq!(code, 2);
    assert!(err.contains("position 5"), "{err}");
}

#[test]
fn khalil_and_evans() {
    let ts3 = file("ts3d.tbl", TS3);
    let (code, out, _) = run(&["check", "khalil", p(&ts3)]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 6);
    assert!(out.lines().all(|l| l.ends_with("holds")));
    let (code, out, _) = run(&["check", "evans", p(&ts3)]);
    assert_eq!((code, out.lines().next()), (0, Some("found")));
    let identity_witness = format!("3\n{}", "0 1 2\n".repeat(10));
    let w = file("w.txt", &identity_witness);
    assert_eq!(
        run(&["check", "evans", "--witness", p(&w), p(&file("z3d.tbl", Z3))]).0,
        0
    );
    assert_eq!(run(&["check", "evans", "--witness", p(&w), p(&ts3)]).0, 1);
    let short = file("short.txt", "3\n0 1 2\n");
    assert_eq!(run(&["check", "evans", "--witness", p(&short), p(&ts3)]).0, 2);
    assert_eq!(run(&["check", "evans", p(&file("z4e.tbl", Z4))]).0, 3);
}

#[test]
fn isotopy_and_isomorphism() {
    let z4 = file("z4.tbl", Z4);
    let klein = file("klein.tbl", KLEIN);
    assert_eq!(
        run(&["check", "isotopic", p(&z4), p(&klein)]),
        (1, "not isotopic\n".into(), String::new())
    );
    let (code, out, _) = run(&["check", "isotopic", p(&z4), p(&z4)]);
    assert_eq!(code, 0);
    assert!(out.starts_with("isotopic\nA: "));
    assert_eq!(
        run(&["check", "isomorphic", p(&z4), p(&z4)]).1,
        "isomorphic\nphi: 0 1 2 3\n"
    );
    assert_eq!(
        run(&[
            "check",
            "isomorphic",
            p(&file("z3e.tbl", Z3)),
            p(&file("ts3e.tbl", TS3))
        ])
        .0,
        1
    );
}

#[test]
fn malformed_input_reports_position() {
    let bad = file("bad.tbl", "3\n0 1 2\n1 1 0\n2 0 1\n");
    let (code, out, err) = run(&["table", "validate", p(&bad)]);
    assert_eq!((code, out.as_str()), (2, ""));
    assert!(err.contains("line 3, column 3"), "{err}");
    let range = file("range.tbl", "2\n0 1\n1 7\n");
    assert!(run(&["table", "validate", p(&range)]).2.contains("line 3, column 3"));
    assert_eq!(run(&["table", "validate", "/nonexistent/q.tbl"]).0, 2);
}

#[test]
fn verify_suites() {
    let (code, out, _) = run(&["verify", "thm1.1", "--max-order", "3"]);
    assert_eq!(code, 0);
    let last = out.lines().last().unwrap();
    assert!(last.starts_with("{\"summary\":"), "{last}");
    assert!(last.contains("\"instances\":14"), "{last}");
    // every record line parses and agrees with itself
    for line in out.lines().filter(|l| l.starts_with("{\"suite\"")) {
        assert!(line.contains("\"ok\":true"), "{line}");
    }
    let report = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("qpl-cli/lemma.jsonl");
    let (code, out, _) = run(&[
        "verify",
        "lemma0.1",
        "--max-order",
        "3",
        "--sample",
        "5",
        "--report",
        p(&report),
    ]);
    assert_eq!(code, 0);
    assert_eq!(out, "lemma0.1: 19 instances, 190 records, 0 failed, 0 skipped\n");
    assert_eq!(fs::read_to_string(&report).unwrap().lines().count(), 191);
    assert_eq!(run(&["verify", "thm2.5", "--max-order", "5"]).0, 3);
    assert_eq!(run(&["verify", "no-such-suite"]).0, 2);
}

#[test]
fn verify_is_deterministic_across_workers() {
    let a = run(&[
        "verify",
        "thm0.12",
        "--max-order",
        "4",
        "--sample",
        "10",
        "--seed",
        "7",
        "--workers",
        "1",
    ]);
    let b = run(&[
        "verify",
        "thm0.12",
        "--max-order",
        "4",
        "--sample",
        "10",
        "--seed",
        "7",
        "--workers",
        "3",
    ]);
    let c = Command::new(env!("CARGO_BIN_EXE_qpl"))
        .args(["verify", "thm0.12", "--max-order", "4", "--sample", "10", "--seed", "7"])
        .env("QPL_WORKERS", "2")
        .output()
        .unwrap();
    assert_eq!(a, b);
    assert_eq!(a.1, String::from_utf8(c.stdout).unwrap());
}

#[test]
fn probe_exits_zero_with_findings() {
    let (code, out, _) = run(&["verify", "probe-1.1-converse", "--max-order", "3"]);
    assert_eq!(code, 0);
    assert!(
        out.lines().last().unwrap().contains("\"failed\":36"),
        "{}",
        out.lines().last().unwrap()
    );
}

#[test]
fn enumeration() {
    let (code, out, _) = run(&["enum", "--kind", "all-latin", "--order", "3"]);
    assert_eq!(code, 0);
    assert_eq!(out.split("\n\n").count(), 12);
    assert_eq!(
        run(&["enum", "--kind", "loops", "--order", "5"])
            .1
            .split("\n\n")
            .count(),
        56
    );
    let (_, groups, _) = run(&["enum", "--kind", "groups", "--order", "4"]);
    assert_eq!(groups.split("\n\n").count(), 4);
    let sampled = run(&[
        "enum",
        "--kind",
        "all-latin",
        "--order",
        "7",
        "--seed",
        "3",
        "--limit",
        "2",
    ]);
    assert_eq!(
        sampled,
        run(&[
            "enum",
            "--kind",
            "all-latin",
            "--order",
            "7",
            "--seed",
            "3",
            "--limit",
            "2"
        ])
    );
    assert_eq!(run(&["enum", "--kind", "all-latin", "--order", "6"]).0, 3);
    assert_eq!(run(&["enum", "--kind", "loops", "--order", "4", "--seed", "1"]).0, 2);
}
