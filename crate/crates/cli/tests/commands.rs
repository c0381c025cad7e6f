use std::io::Write;
use std::process::{Command, Stdio};

use proptest::prelude::*;

use bucolic::corpus;
use bucolic_cli::{Format, GraphDocument};

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn bucolic(args: &[&str], stdin: &str) -> Run {
    let mut child = Command::new(env!("CARGO_BIN_EXE_bucolic"))
        .args(args)
        .env_remove("BUCOLIC_BUDGET")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn gen(family: &str, params: &str) -> String {
    let r = bucolic(&["gen", family, params], "");
    assert_eq!(r.code, 0, "{}", r.stderr);
    r.stdout
}

const DOMINO: &str = "vertices: 6\n0 1\n1 2\n3 4\n4 5\n0 3\n1 4\n2 5\n";

#[test]
fn check_exit_codes() {
    assert_eq!(
        bucolic(&["check", "-", "--class", "bucolic"], &gen("hypercube", "3")).code,
        0
    );
    let k23 = bucolic(&["check", "-"], &gen("complete-bipartite", "2,3"));
    assert_eq!(k23.code, 1);
    let line = k23.stdout.lines().find(|l| l.contains("certificate")).unwrap();
    assert_eq!(line.matches(',').count(), 4, "five vertices in {line}");
    let bad = bucolic(&["check", "-"], "0 1\n1 2 3\n");
    assert_eq!(bad.code, 2);
    assert!(bad.stderr.contains("line 2, column 5"));
    assert_eq!(bucolic(&["check", "/nonexistent/graph.txt"], "").code, 2);
}

#[test]
fn check_all_classes_and_exhaustive() {
    let r = bucolic(&["check", "-", "--class", "all", "--exhaustive"], &gen("wheel", "4"));
    assert_eq!(r.code, 0);
    for class in ["bridged", "weakly-bridged", "bucolic", "strongly-bucolic"] {
        assert!(r.stdout.contains(&format!("\n{class}: no")), "{class} in {}", r.stdout);
    }
    assert!(r.stdout.contains("pre-median: yes"));
    assert_eq!(
        bucolic(&["check", "-", "--class", "bridged"], &gen("cycle", "5")).code,
        1
    );
    assert_eq!(
        bucolic(&["check", "-", "--class", "weakly-bridged"], &gen("wheel", "5")).code,
        0
    );
}

#[test]
fn hulls() {
    let diamond = "a b\nb c\na c\nb d\nc d\n";
    let r = bucolic(&["hull", "-", "--set", "a,b,c", "--kind", "triangle-gated"], diamond);
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("hull: {a,b,c,d}\n"));
    assert!(bucolic(&["hull", "-", "--set", "0,2"], &gen("cycle", "4"))
        .stdout
        .starts_with("hull: {0,1,2,3}"));
    assert!(bucolic(&["hull", "-", "--set", "0,3"], &gen("path", "4"))
        .stdout
        .starts_with("hull: {0,1,2,3}"));
    let r = bucolic(
        &["hull", "-", "--set", "0,1,2", "--kind", "triangle-gated"],
        &gen("cycle", "5"),
    );
    assert_eq!(r.code, 2);
    let r = bucolic(
        &["hull", "-", "--set", "0,1,2", "--kind", "triangle-gated"],
        &format!("{}0 2\n", gen("cycle", "6")),
    );
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("weakly modular"), "{}", r.stderr);
}

#[test]
fn covers() {
    let torus = bucolic(&["cover", "-", "--radius", "3"], &gen("torus", "5,5"));
    assert!(torus.stdout.contains("r=3: 25\n"));
    let c6 = bucolic(&["cover", "-", "--radius", "4"], &gen("cycle", "6"));
    assert!(c6.stdout.contains("r=4: 9\n"));
    assert!(c6.stdout.contains("verdict: not-simply-connected"));
    assert_eq!(c6.code, 1);
    let q3 = bucolic(&["cover", "-", "--budget", "100"], &gen("hypercube", "3"));
    assert_eq!(q3.code, 0);
    assert!(q3.stdout.contains("verdict: simply-connected\ncover vertices: 8\n"));
    let w4 = bucolic(&["cover", "-"], &gen("wheel", "4"));
    assert_eq!(w4.code, 2);
    assert!(w4.stderr.contains("W4"));
    let dot = bucolic(&["cover", "-", "--radius", "1", "--emit", "dot"], &gen("cycle", "4"));
    assert!(dot.stdout.starts_with("graph cover {"));
    assert!(dot.stdout.contains("[label=\"1.0("));
}

#[test]
fn budget_env_var() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_bucolic"))
        .args(["cover", "-"])
        .env("BUCOLIC_BUDGET", "5")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(gen("hypercube", "3").as_bytes())
        .unwrap();
    let out = String::from_utf8(child.wait_with_output().unwrap().stdout).unwrap();
    assert!(out.contains("verdict: budget-exceeded"), "{out}");
}

#[test]
fn decompositions() {
    let domino = bucolic(&["decompose", "-"], DOMINO);
    assert_eq!(domino.code, 0);
    assert!(domino.stdout.starts_with("amalgam along {1,4}"));
    assert!(domino.stdout.contains("verification: ok"));
    let prism = bucolic(&["decompose", "-"], &gen("hamming", "3,2"));
    assert!(prism.stdout.starts_with("product of 2"));
    assert!(prism.stdout.contains("bridged (3 vertices") && prism.stdout.contains("edge (2 vertices"));
    let w5 = bucolic(&["decompose", "-"], &gen("wheel", "5"));
    assert!(w5.stdout.starts_with("prime 2-connected weakly bridged"));
    let k23 = bucolic(&["decompose", "-"], &gen("complete-bipartite", "2,3"));
    assert_eq!(k23.code, 1);
    assert!(k23.stdout.contains("K23"));
}

#[test]
fn moorings() {
    let w5 = bucolic(&["moor", "-", "--base", "0"], &gen("wheel", "5"));
    assert_eq!(w5.code, 0);
    assert_eq!(w5.stdout.lines().filter(|l| l.ends_with("-> 0")).count(), 5);
    assert!(w5.stdout.contains("combing: holds"));
    let c4 = bucolic(&["moor", "-", "--method", "bfs"], &gen("cycle", "4"));
    assert!(c4.stdout.contains("combing:"));
    let p4 = bucolic(&["moor", "-", "--base", "3"], &gen("path", "4"));
    assert_eq!(p4.stdout, "base: 3\n0 -> 1\n1 -> 2\n2 -> 3\ncombing: holds\n");
}

#[test]
fn fixed_prisms() {
    let p3 = bucolic(&["fixprism", "-"], "a b\nb c\nperm: c b a\n");
    assert_eq!(p3.code, 0);
    assert!(p3.stdout.contains("prism: {b}\n"));
    assert!(p3.stdout.contains("brute-force cross-check: confirmed"));
    let domino = bucolic(&["fixprism", "-"], &format!("{DOMINO}perm: 3 4 5 0 1 2\n"));
    assert!(domino.stdout.contains("prism: {1,4}\n"));
    let q3 = bucolic(
        &["fixprism", "-"],
        &format!("{}perm: 7 6 5 4 3 2 1 0\n", gen("hypercube", "3")),
    );
    assert!(q3.stdout.contains("prism: {0,1,2,3,4,5,6,7}\n"));
    let bad = bucolic(&["fixprism", "-"], "a b\nb c\nperm: b a c\n");
    assert_eq!(bad.code, 2);
    assert!(bad.stderr.contains("permutation #0"));
    assert_eq!(bucolic(&["fixprism", "-"], &gen("path", "3")).code, 2);
    assert!(bucolic(&["fixprism", "-", "--full-group"], &gen("path", "3"))
        .stdout
        .contains("prism: {1}"));
}

#[test]
fn generators() {
    let wheel = GraphDocument::parse(&gen("wheel", "5")).unwrap();
    assert_eq!(wheel.graph.vertex_count(), 6);
    let prism = GraphDocument::parse(&gen("hamming", "3,2")).unwrap();
    assert_eq!((prism.graph.vertex_count(), prism.graph.edge_count()), (6, 9));
    let q4 = GraphDocument::parse(&gen("hypercube", "4")).unwrap();
    assert_eq!((q4.graph.vertex_count(), q4.graph.edge_count()), (16, 32));
    assert_eq!(bucolic(&["gen", "dodecahedron", "1"], "").code, 2);
    assert_eq!(bucolic(&["gen", "wheel", "x"], "").code, 2);
    let a = bucolic(&["gen", "random-bucolic", "10", "--seed", "4"], "").stdout;
    assert_eq!(a, bucolic(&["gen", "random-bucolic", "10", "--seed", "4"], "").stdout);
}

#[test]
fn structured_output_describes_itself() {
    let input = gen("hypercube", "3");
    let r = bucolic(&["--format", "json", "check", "-"], &input);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["tool"], "bucolic");
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["input_sha256"], bucolic_cli::sha256_hex(input.as_bytes()));
    assert_eq!(v["command_line"][1], "--format");
    assert_eq!(v["result"]["classes"]["bucolic"]["member"], true);
    let json_doc = bucolic(&["--format", "json", "gen", "hamming", "3,2"], "").stdout;
    assert_eq!(bucolic(&["check", "-"], &json_doc).code, 0);
    let tree = bucolic(&["--format", "json", "decompose", "-"], DOMINO);
    let v: serde_json::Value = serde_json::from_str(&tree.stdout).unwrap();
    assert_eq!(v["result"]["tree"]["node"]["kind"], "amalgam");
    assert_eq!(v["result"]["verification"]["ok"], true);
}

proptest! {
    #[test]
    fn documents_round_trip(seed in any::<u64>(), n in 1usize..12, labelled in any::<bool>(), with_perm in any::<bool>()) {
        let mut g = corpus::random_connected(&mut corpus::rng(seed), n, 0.3);
        if labelled {
            g = g.with_labels((0..n).map(|i| format!("v{i}")).collect()).unwrap();
        }
        let mut doc = GraphDocument::new(g);
        if with_perm {
            doc.group.push((0..n).rev().collect());
        }
        for format in [Format::EdgeList, Format::Record] {
            let text = doc.serialize(format);
            let back = GraphDocument::parse(&text).unwrap();
            prop_assert_eq!(&back, &doc);
            prop_assert_eq!(back.serialize(format), text);
        }
    }
}
