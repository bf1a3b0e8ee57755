//! The `recolor` binary: exit codes, outputs and determinism.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use recolor_cli::{EXIT_CAP, EXIT_CLASS, EXIT_IO, EXIT_OK, EXIT_PARSE, EXIT_VERIFY};
use tempfile::TempDir;

fn recolor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_recolor"))
        .args(args)
        .output()
        .unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn gen(dir: &Path, family: &str, n: usize, seed: u64, list_size: Option<usize>) -> PathBuf {
    let out = dir.join(format!("{family}-{n}-{seed}"));
    let (n, seed) = (n.to_string(), seed.to_string());
    let mut args = vec![
        "gen",
        "--family",
        family,
        "--n",
        &n,
        "--seed",
        &seed,
        "--out",
        p(&out),
    ];
    let size;
    if let Some(s) = list_size {
        size = s.to_string();
        args.extend(["--list-size", &size]);
    }
    let o = recolor(&args);
    assert_eq!(
        o.status.code(),
        Some(EXIT_OK),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    out
}

fn reconfigure(theorem: &str, inst: &Path, out: &Path) -> Output {
    recolor(&[
        "reconfigure",
        "--theorem",
        theorem,
        "--graph",
        p(&inst.join("graph.txt")),
        "--lists",
        p(&inst.join("lists.txt")),
        "--alpha",
        p(&inst.join("alpha.txt")),
        "--beta",
        p(&inst.join("beta.txt")),
        "--out",
        p(out),
    ])
}

fn verify(inst: &Path, seq: &Path, k: &str) -> Output {
    recolor(&[
        "verify",
        "--graph",
        p(&inst.join("graph.txt")),
        "--lists",
        p(&inst.join("lists.txt")),
        "--alpha",
        p(&inst.join("alpha.txt")),
        "--beta",
        p(&inst.join("beta.txt")),
        "--seq",
        p(seq),
        "--k",
        k,
    ])
}

#[test]
fn sparse_reconfigure_then_verify() {
    let dir = TempDir::new().unwrap();
    let inst = gen(dir.path(), "girth10subdiv", 40, 3, None);
    let seq = dir.path().join("seq.txt");
    let o = reconfigure("mad4", &inst, &seq);
    assert_eq!(
        o.status.code(),
        Some(EXIT_OK),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let counts = fs::read_to_string(dir.path().join("seq.txt.counts.csv")).unwrap();
    let mut lines = counts.lines();
    assert_eq!(lines.next(), Some("vertex,count,configuration"));
    for l in lines {
        let c: u32 = l.split(',').nth(1).unwrap().parse().unwrap();
        assert!(c <= 18);
    }
    assert_eq!(verify(&inst, &seq, "18").status.code(), Some(EXIT_OK));
}

#[test]
fn truncated_sequence_fails_verification_with_step() {
    let dir = TempDir::new().unwrap();
    let inst = gen(dir.path(), "grid5", 25, 1, None);
    let seq = dir.path().join("seq.txt");
    assert_eq!(
        reconfigure("planar6", &inst, &seq).status.code(),
        Some(EXIT_OK)
    );
    let text = fs::read_to_string(&seq).unwrap();
    let steps = text.lines().filter(|l| l.starts_with("s ")).count();
    assert!(steps > 0);
    let cut: Vec<&str> = {
        let mut seen = 0;
        text.lines()
            .filter(|l| {
                if l.starts_with("s ") {
                    seen += 1;
                    seen < steps
                } else {
                    true
                }
            })
            .collect()
    };
    let short = dir.path().join("short.txt");
    fs::write(&short, cut.join("\n")).unwrap();
    let o = verify(&inst, &short, "48");
    assert_eq!(o.status.code(), Some(EXIT_VERIFY));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains(&format!("step {steps}:")), "{err}");
}

#[test]
fn planar_audit_reports_minus_twelve() {
    let dir = TempDir::new().unwrap();
    let inst = gen(dir.path(), "grid5", 30, 0, None);
    let o = recolor(&[
        "audit",
        "--rules",
        "planar",
        "--graph",
        p(&inst.join("graph.txt")),
    ]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&o.stdout).contains("sum of initial charges: -12"));
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    for (fam, theorem) in [
        ("sparsetree2threads", "mad4"),
        ("vertexdisjoint4cycles", "planar6"),
        ("cycle", "mad4"),
    ] {
        let a = gen(dir.path(), fam, 30, 11, None);
        let b = dir.path().join(format!("{fam}-again"));
        fs::create_dir_all(&b).unwrap();
        let o = recolor(&[
            "gen",
            "--family",
            fam,
            "--n",
            "30",
            "--seed",
            "11",
            "--out",
            p(&b),
        ]);
        assert_eq!(o.status.code(), Some(EXIT_OK));
        for f in ["graph.txt", "lists.txt", "alpha.txt", "beta.txt"] {
            assert_eq!(
                fs::read(a.join(f)).unwrap(),
                fs::read(b.join(f)).unwrap(),
                "{fam} {f}"
            );
        }
        let s1 = dir.path().join(format!("{fam}-1.txt"));
        let s2 = dir.path().join(format!("{fam}-2.txt"));
        assert_eq!(reconfigure(theorem, &a, &s1).status.code(), Some(EXIT_OK));
        assert_eq!(reconfigure(theorem, &a, &s2).status.code(), Some(EXIT_OK));
        assert_eq!(fs::read(&s1).unwrap(), fs::read(&s2).unwrap(), "{fam}");
    }
}

#[test]
fn malformed_graph_is_a_parse_error_with_line() {
    let dir = TempDir::new().unwrap();
    let g = dir.path().join("g.txt");
    fs::write(&g, "graph 3 1\n# fine\ne 0 7\n").unwrap();
    let o = recolor(&["check-class", "--graph", p(&g)]);
    assert_eq!(o.status.code(), Some(EXIT_PARSE));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn missing_file_is_an_io_error() {
    let o = recolor(&["check-class", "--graph", "/nonexistent/graph.txt"]);
    assert_eq!(o.status.code(), Some(EXIT_IO));
}

#[test]
fn unknown_flag_is_a_usage_error() {
    assert_eq!(
        recolor(&["reconfigure", "--bogus"]).status.code(),
        Some(EXIT_PARSE)
    );
}

#[test]
fn out_of_class_is_rejected() {
    let dir = TempDir::new().unwrap();
    // A 5x5 grid has average degree 16/5, past the sparse threshold.
    let inst = gen(dir.path(), "grid5", 25, 0, Some(4));
    let o = reconfigure("mad4", &inst, &dir.path().join("seq.txt"));
    assert_eq!(
        o.status.code(),
        Some(EXIT_CLASS),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );

    let tri = dir.path().join("tri");
    fs::create_dir_all(&tri).unwrap();
    fs::write(tri.join("graph.txt"), "graph 3 3\ne 0 1\ne 1 2\ne 0 2\n").unwrap();
    let o = recolor(&[
        "check-class",
        "--graph",
        p(&tri.join("graph.txt")),
        "--theorem",
        "planar6",
    ]);
    assert_eq!(o.status.code(), Some(EXIT_CLASS));
}

#[test]
fn oracle_state_cap_is_reported() {
    let dir = TempDir::new().unwrap();
    let inst = gen(dir.path(), "cycle", 20, 2, None);
    let o = recolor(&[
        "oracle",
        "--mode",
        "dist",
        "--graph",
        p(&inst.join("graph.txt")),
        "--lists",
        p(&inst.join("lists.txt")),
        "--alpha",
        p(&inst.join("alpha.txt")),
        "--beta",
        p(&inst.join("beta.txt")),
        "--max-states",
        "1000",
    ]);
    assert_eq!(o.status.code(), Some(EXIT_CAP));
}

#[test]
fn oracle_answers_small_instances() {
    let dir = TempDir::new().unwrap();
    let inst = gen(dir.path(), "cycle", 5, 4, None);
    let files: Vec<String> = ["graph", "lists", "alpha", "beta"]
        .iter()
        .map(|f| inst.join(format!("{f}.txt")).display().to_string())
        .collect();
    let base = |mode: &'static str| {
        vec![
            "oracle", "--mode", mode, "--graph", &files[0], "--lists", &files[1], "--alpha",
            &files[2], "--beta", &files[3],
        ]
    };
    let d = recolor(&base("dist"));
    assert_eq!(d.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&d.stdout).starts_with("distance "));
    let mut k = base("kgood");
    k.extend(["--k", "18"]);
    let o = recolor(&k);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&o.stdout).starts_with("yes"));
}
