use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const C6: &str = "p edge 6 6\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 6\ne 6 1\n";
const K2: &str = "p edge 2 1\ne 1 2\n";
const K3: &str = "p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n";
const P4: &str = "p edge 4 3\ne 1 2\ne 2 3\ne 3 4\n";
const THREE_K2: &str = "p edge 6 3\ne 1 2\ne 3 4\ne 5 6\n";
const THREE_CLAUSE: &str = "p cnf 4 3\n1 2 3 0\n-1 4 -2 0\n1 3 4 0\n";

struct Fixture {
    dir: TempDir,
}

impl Fixture {
    fn new() -> Self {
        Fixture {
            dir: TempDir::new().unwrap(),
        }
    }

    fn file(&self, name: &str, text: &str) -> PathBuf {
        let p = self.dir.path().join(name);
        fs::write(&p, text).unwrap();
        p
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }
}

fn dissolab(args: &[&str]) -> Output {
    dissolab_env(args, None)
}

fn dissolab_env(args: &[&str], cutoff: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_dissolab"));
    cmd.args(args).env_remove("DISSOLAB_CUTOFF");
    if let Some(c) = cutoff {
        cmd.env("DISSOLAB_CUTOFF", c);
    }
    cmd.output().unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn value<'a>(out: &'a str, key: &str) -> &'a str {
    out.lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
        .unwrap_or_else(|| panic!("no {key} in\n{out}"))
}

fn path_graph(n: usize) -> String {
    let mut t = format!("p edge {n} {}\n", n - 1);
    for i in 1..n {
        t.push_str(&format!("e {i} {}\n", i + 1));
    }
    t
}

#[test]
fn solve_c6() {
    let f = Fixture::new();
    let o = dissolab(&["solve", s(&f.file("c6.txt", C6))]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "n=6\nm=6\ndiss=4\nalpha=3\nnu_s=2\ndiss_set=1,3,4,6\nalpha_set=1,3,5\n\
         nu_s_matching=1-2,4-5\nequalities=diss=2nu_s\n"
    );
}

#[test]
fn solve_k2_flags() {
    let f = Fixture::new();
    let out = stdout(&dissolab(&["solve", s(&f.file("k2.txt", K2))]));
    assert_eq!(
        value(&out, "equalities"),
        "diss=2alpha,diss=2nu_s,diss=alpha+nu_s,alpha+nu_s=2alpha"
    );
}

#[test]
fn solve_json_and_timings() {
    let f = Fixture::new();
    let c6 = f.file("c6.txt", C6);
    let o = dissolab(&["--json", "solve", s(&c6)]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["diss"], 4);
    assert_eq!(v["diss_set"], serde_json::json!([1, 3, 4, 6]));
    let timed = stdout(&dissolab(&["solve", "--timings", s(&c6)]));
    assert!(timed.contains("time_ms.diss="));
    assert!(!stdout(&o).contains("time_ms"));
}

#[test]
fn cutoff_rules() {
    let f = Fixture::new();
    let big = f.file("p40.txt", &path_graph(40));
    let o = dissolab(&["solve", s(&big)]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("instance too large"));

    let o = dissolab(&["solve", "--cutoff", "64", s(&big)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(value(&stdout(&o), "diss"), "27");

    assert_eq!(dissolab_env(&["solve", s(&big)], Some("64")).status.code(), Some(0));
    assert_eq!(dissolab_env(&["solve", s(&big)], Some("many")).status.code(), Some(2));
    // The flag wins over the environment.
    let o = dissolab_env(&["solve", "--cutoff", "10", s(&big)], Some("64"));
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn malformed_input_is_exit_2() {
    let f = Fixture::new();
    let o = dissolab(&["solve", s(&f.file("bad.txt", "e 1 2\n"))]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 1"));
    let o = dissolab(&["solve", s(&f.path("missing.txt"))]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn approx_examples() {
    let f = Fixture::new();
    let out = stdout(&dissolab(&["approx", s(&f.file("c6.txt", C6))]));
    assert_eq!(value(&out, "size"), "3");
    assert_eq!(value(&out, "matching"), "1-2,3-4,5-6");

    let out = stdout(&dissolab(&["approx", s(&f.file("3k2.txt", THREE_K2))]));
    assert_eq!(value(&out, "set"), "1,2,3,4,5,6");

    let o = dissolab(&["approx", s(&f.file("k3.txt", K3))]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("NotBipartite"));
}

#[test]
fn recognize_examples() {
    let f = Fixture::new();
    let c6 = f.file("c6.txt", C6);
    let dot = f.path("c6.dot");
    let o = dissolab(&["recognize", s(&c6), "--matching", "auto", "--dot", s(&dot)]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(value(&out, "outcome"), "Extremal");
    assert_eq!(value(&out, "size"), "4");
    let dot = fs::read_to_string(dot).unwrap();
    assert!(dot.starts_with("graph G {"));
    assert_eq!(dot.matches("[label=").count(), 6);
    assert!(dot.contains("label=\"M'\""));

    let out = stdout(&dissolab(&["recognize", s(&f.file("p4.txt", P4))]));
    assert_eq!(value(&out, "outcome"), "NotExtremal");

    let m = f.file("m.txt", "m 1 2\n");
    let out = stdout(&dissolab(&["recognize", s(&c6), "--matching", s(&m)]));
    assert_eq!(value(&out, "reason"), "NotMaximumMatching");
    assert_eq!(value(&out, "augmenting_path"), "3,4");

    let out = stdout(&dissolab(&["recognize", s(&f.file("k3.txt", K3))]));
    assert_eq!(value(&out, "reason"), "NotBipartite");
}

#[test]
fn recognize_rejects_bad_matching_files() {
    let f = Fixture::new();
    let c6 = f.file("c6.txt", C6);
    let not_matching = f.file("m.txt", "m 1 2\nm 2 3\n");
    let o = dissolab(&["recognize", s(&c6), "--matching", s(&not_matching)]);
    assert_eq!(o.status.code(), Some(2));
    let non_edge = f.file("n.txt", "m 1 3\n");
    let o = dissolab(&["recognize", s(&c6), "--matching", s(&non_edge)]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn gadget_instances() {
    let f = Fixture::new();
    let cnf = f.file("f.cnf", THREE_CLAUSE);
    let text = stdout(&dissolab(&["gadget", "clique", s(&cnf)]));
    assert!(text.starts_with("c kind clause-clique\n"));
    assert!(text.contains("p edge 12 21\n"));

    let out = f.path("f4.txt");
    let o = dissolab(&["gadget", "cocktail", s(&cnf), "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(value(&stdout(&o), "n"), "18");
    assert!(fs::read_to_string(&out).unwrap().contains("p edge 18 39\n"));

    let k2 = f.file("k2.txt", K2);
    let o = dissolab(&["gadget", "is", s(&k2), "-k", "2", "-o", s(&f.path("is.txt"))]);
    assert_eq!(value(&stdout(&o), "n"), "10");
    assert_eq!(value(&stdout(&o), "source.alpha>=k"), "false");

    assert_eq!(dissolab(&["gadget", "is", s(&k2)]).status.code(), Some(2));
    let o = dissolab(&["gadget", "join", s(&f.file("k3.txt", K3))]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("precondition"));
    let bad = f.file("bad.cnf", "p cnf 3 1\n1 1 2 0\n");
    assert_eq!(dissolab(&["gadget", "clique", s(&bad)]).status.code(), Some(2));
}

#[test]
fn check_generators() {
    for target in ["catalog:6", "random:60:10", "bipartite:60:12", "bipartite-catalog:8"] {
        let o = dissolab(&["check", target, "--seed", "4"]);
        assert_eq!(o.status.code(), Some(0), "{target}: {}", stdout(&o));
        assert_eq!(value(&stdout(&o), "violations"), "0");
    }
    let o = dissolab(&["check", "catalog:6"]);
    assert_eq!(value(&stdout(&o), "instances"), "143");
    assert_eq!(dissolab(&["check", "nonsense"]).status.code(), Some(2));
    assert_eq!(dissolab(&["check", "catalog:12"]).status.code(), Some(2));
}

#[test]
fn check_is_deterministic() {
    let a = dissolab(&["--json", "check", "bipartite:40:12", "--seed", "9"]);
    let b = dissolab(&["--json", "check", "bipartite:40:12", "--seed", "9"]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["instances"], 40);
}

#[test]
fn check_directory_with_planted_false_prediction() {
    let f = Fixture::new();
    let cnf = f.file("f.cnf", THREE_CLAUSE);
    let corpus = f.path("corpus");
    fs::create_dir(&corpus).unwrap();
    for (kind, name) in [("clique", "a.txt"), ("cocktail", "b.txt")] {
        let o = dissolab(&["gadget", kind, s(&cnf), "-o", s(&corpus.join(name))]);
        assert_eq!(o.status.code(), Some(0));
    }
    fs::write(corpus.join("c6.txt"), C6).unwrap();
    let o = dissolab(&["check", s(&corpus)]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(value(&stdout(&o), "instances"), "3");

    let good = fs::read_to_string(corpus.join("a.txt")).unwrap();
    let planted = good.replace("c predict alpha 3\n", "c predict alpha 4\n");
    assert_ne!(planted, good);
    fs::write(corpus.join("planted.txt"), planted).unwrap();
    let o = dissolab(&["check", s(&corpus)]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert_eq!(value(&out, "violations"), "1");
    assert!(value(&out, "violation").starts_with("planted.txt: predicted alpha 4"));
}

#[test]
fn check_directory_over_cutoff() {
    let f = Fixture::new();
    let corpus = f.path("corpus");
    fs::create_dir(&corpus).unwrap();
    fs::write(corpus.join("p40.txt"), path_graph(40)).unwrap();
    let o = dissolab(&["check", s(&corpus)]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(value(&stdout(&o), "skipped"), "1");
    fs::write(corpus.join("junk.txt"), "hello\n").unwrap();
    assert_eq!(dissolab(&["check", s(&corpus)]).status.code(), Some(2));
}
