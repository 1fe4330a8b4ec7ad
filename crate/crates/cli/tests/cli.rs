use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const FIG1: &str = "p unssp 5 6\ns 1\nt 5\n\
    a 1 2 1\na 2 3 6\na 2 4 4\na 4 3 3\na 3 5 2\na 4 5 5\n";

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_unssp"))
}

fn write_fig1(dir: &Path) -> PathBuf {
    let path = dir.join("fig1.gr");
    std::fs::write(&path, FIG1).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout_lines(out: &Output) -> Vec<serde_json::Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn enumerate_streams_paths_and_stats() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_fig1(dir.path());
    let out = run(&[
        "enumerate",
        "--graph",
        graph.to_str().unwrap(),
        "--lambda",
        "kmax:2",
        "--epsilon",
        "1/2",
        "--algorithm",
        "alg2",
    ]);
    assert!(out.status.success());
    let lines = stdout_lines(&out);
    assert_eq!(lines.len(), 3, "two paths plus the stats record");
    assert_eq!(lines[0]["vertices"], serde_json::json!([1, 2, 3, 5]));
    assert_eq!(lines[0]["value"], 2);
    assert_eq!(lines[1]["vertices"], serde_json::json!([1, 2, 4, 3, 5]));
    assert_eq!(lines[1]["value"], 3);
    let stats = &lines[2];
    assert_eq!(stats["paths"], 2, "stats path count equals emitted lines");
    assert_eq!(stats["truncated"], false);
    assert!(stats["wall_ms"].is_number());
}

#[test]
fn solve_reports_the_optimum() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_fig1(dir.path());
    let out = run(&["solve", "--graph", graph.to_str().unwrap(), "--lambda", "sum"]);
    assert!(out.status.success());
    let doc = &stdout_lines(&out)[0];
    assert_eq!(doc["value"], 9);
    assert_eq!(doc["path"]["arc_ids"], serde_json::json!([1, 2, 5]));
}

#[test]
fn gen_then_mincomplete_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("d6.gr");
    let out = run(&["gen", "doubling", "--n", "6", "--output", file.to_str().unwrap()]);
    assert!(out.status.success());
    let out = run(&[
        "mincomplete",
        "--graph",
        file.to_str().unwrap(),
        "--lambda",
        "sum",
        "--epsilon",
        "15/1",
    ]);
    assert!(out.status.success());
    let arr = stdout_lines(&out)[0].as_array().unwrap().clone();
    assert_eq!(arr.len(), 16);
    let values: Vec<i64> = arr.iter().map(|e| e["value"].as_i64().unwrap()).collect();
    assert_eq!(values, (1..=16).collect::<Vec<_>>());
}

#[test]
fn representatives_and_next_usp() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_fig1(dir.path());
    let out = run(&[
        "representatives",
        "--graph",
        graph.to_str().unwrap(),
        "--lambda",
        "sum",
        "--epsilon",
        "1/2",
        "--delta",
        "1/20",
    ]);
    assert!(out.status.success());
    let arr = stdout_lines(&out)[0].as_array().unwrap().clone();
    assert_eq!(arr.len(), 9);
    assert_eq!(arr[0]["value"], 9);
    assert_eq!(arr[2]["value"], 10);
    assert!(arr[1].is_null());

    let out = run(&[
        "next-usp",
        "--graph",
        graph.to_str().unwrap(),
        "--lambda",
        "sum",
        "--xi",
        "10",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout_lines(&out)[0]["value"], 10);

    let out = run(&[
        "next-usp",
        "--graph",
        graph.to_str().unwrap(),
        "--lambda",
        "sum",
        "--xi",
        "11",
    ]);
    assert!(out.status.success());
    assert!(stdout_lines(&out)[0].is_null());
}

#[test]
fn exit_codes_and_json_errors() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_fig1(dir.path());

    // usage error: unknown flag
    let out = run(&["solve", "--graph", graph.to_str().unwrap(), "--wat"]);
    assert_eq!(out.status.code(), Some(1));
    let err: serde_json::Value =
        serde_json::from_str(String::from_utf8_lossy(&out.stderr).lines().next().unwrap())
            .expect("stderr is single-line JSON");
    assert_eq!(err["error"], "usage");

    // usage error: lambda on the wrong model
    let out = run(&[
        "emit-lp",
        "nspip",
        "--graph",
        graph.to_str().unwrap(),
        "--xi",
        "0",
        "--lambda",
        "sum",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["emit-lp", "unspip", "--graph", graph.to_str().unwrap(), "--xi", "0"]);
    assert_eq!(out.status.code(), Some(1));

    // input error: malformed graph
    let bad = dir.path().join("bad.gr");
    std::fs::write(&bad, "p unssp 2 1\ns 1\nt 2\na 1 2 -3\n").unwrap();
    let out = run(&["solve", "--graph", bad.to_str().unwrap(), "--lambda", "sum"]);
    assert_eq!(out.status.code(), Some(2));
    let err: serde_json::Value =
        serde_json::from_str(String::from_utf8_lossy(&out.stderr).lines().next().unwrap())
            .unwrap();
    assert_eq!(err["error"], "input");
    assert!(err["message"].as_str().unwrap().contains("line 4"));

    // missing file is an input-class error
    let out = run(&["solve", "--graph", "/nonexistent.gr", "--lambda", "sum"]);
    assert_eq!(out.status.code(), Some(2));

    // size gate: subset-enumerating export refuses large instances
    let big = dir.path().join("big.gr");
    let gen = run(&["gen", "random", "--n", "13", "--m", "20", "--output", big.to_str().unwrap()]);
    assert!(gen.status.success());
    let out = run(&[
        "emit-lp",
        "unspip",
        "--graph",
        big.to_str().unwrap(),
        "--xi",
        "0",
        "--lambda",
        "sum",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let err: serde_json::Value =
        serde_json::from_str(String::from_utf8_lossy(&out.stderr).lines().next().unwrap())
            .unwrap();
    assert_eq!(err["error"], "size_gate");
}

fn complete_digraph(n: usize) -> String {
    let mut text = format!("p unssp {n} {}\ns 1\nt {n}\n", n * (n - 1));
    for u in 1..=n {
        for v in 1..=n {
            if u != v {
                text.push_str(&format!("a {u} {v} 1\n"));
            }
        }
    }
    text
}

#[test]
fn brute_size_gate_and_env_override() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("k15.gr");
    std::fs::write(&file, complete_digraph(15)).unwrap();

    let out = run(&[
        "enumerate",
        "--graph",
        file.to_str().unwrap(),
        "--lambda",
        "sum",
        "--epsilon",
        "0",
        "--algorithm",
        "brute",
    ]);
    assert_eq!(out.status.code(), Some(3), "default gate refuses n=15 with over 10^6 paths");

    // the documented test-only override lifts the vertex gate; the cutoff
    // keeps the run small
    let out = bin()
        .args([
            "enumerate",
            "--graph",
            file.to_str().unwrap(),
            "--lambda",
            "sum",
            "--epsilon",
            "0",
            "--algorithm",
            "brute",
            "--max-paths",
            "5",
        ])
        .env("UNSSP_SIZE_GATE", "16")
        .output()
        .unwrap();
    assert!(out.status.success());
    let lines = stdout_lines(&out);
    assert_eq!(lines.len(), 6, "five paths plus stats");
    assert_eq!(lines[5]["truncated"], true);
}

#[test]
fn identical_invocations_differ_only_in_wall_time() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_fig1(dir.path());
    let args = [
        "enumerate",
        "--graph",
        graph.to_str().unwrap(),
        "--lambda",
        "ksum:2",
        "--epsilon",
        "1",
        "--algorithm",
        "alg1",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success() && b.status.success());
    let strip = |out: &Output| {
        let mut docs = stdout_lines(out);
        let last = docs.last_mut().unwrap();
        last.as_object_mut().unwrap().remove("wall_ms");
        docs
    };
    assert_eq!(strip(&a), strip(&b));
}

#[test]
fn emit_lp_writes_parseable_text() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_fig1(dir.path());
    let out = run(&["emit-lp", "nspip", "--graph", graph.to_str().unwrap(), "--xi", "10"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.starts_with("\\ nspip model"));
    assert!(text.contains("Minimize"));
    assert!(text.ends_with("End\n"));

    let out = run(&[
        "emit-lp",
        "unspip",
        "--graph",
        graph.to_str().unwrap(),
        "--xi",
        "1",
        "--lambda",
        "kmax:2",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("Maximize"));
    assert!(text.contains("subtour_26"));
    assert!(!text.contains("subtour_27"));
}
