use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use qsinkhorn::cli::RunRecord;

fn qsinkhorn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsinkhorn"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn records(dir: &Path) -> Vec<RunRecord> {
    fs::read_to_string(dir.join("runs.jsonl"))
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn without_wall_time(mut rs: Vec<RunRecord>) -> Vec<RunRecord> {
    for r in &mut rs {
        r.wall_time_s = 0.0;
    }
    rs
}

fn histogram_total(dir: &Path) -> usize {
    let text = fs::read_to_string(dir.join("histogram.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("bucket_start,count"));
    lines
        .map(|l| l.split(',').nth(1).unwrap().parse::<usize>().unwrap())
        .sum()
}

#[test]
fn single_vertex_needs_one_iteration() {
    let dir = tempfile::tempdir().unwrap();
    let out = qsinkhorn(&[
        "magic",
        "--n",
        "1",
        "--runs",
        "1",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let rs = records(dir.path());
    assert_eq!(rs.len(), 1);
    assert_eq!(rs[0].iterations, 1);
    assert_eq!(rs[0].graph, "none");
}

#[test]
fn magic_outputs_are_reproducible_and_consistent() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        let out = qsinkhorn(&[
            "magic",
            "--n",
            "4",
            "--epsilon",
            "1e-6",
            "--nmax",
            "300",
            "--runs",
            "25",
            "--seed",
            "9",
            "--out",
            dir.path().to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    let ra = records(a.path());
    assert_eq!(ra.len(), 25);
    assert_eq!(ra[3].seed, 12);
    assert_eq!(without_wall_time(ra), without_wall_time(records(b.path())));
    assert_eq!(histogram_total(a.path()), 25);

    let summary: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(a.path().join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["runs"], 25);
    assert_eq!(
        summary["successes"].as_u64().unwrap() + summary["failures"].as_u64().unwrap(),
        25
    );
}

#[test]
fn records_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    qsinkhorn(&[
        "qsym",
        "--graph",
        "k4",
        "--runs",
        "3",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    let text = fs::read_to_string(dir.path().join("runs.jsonl")).unwrap();
    for line in text.lines() {
        let r: RunRecord = serde_json::from_str(line).unwrap();
        assert_eq!(serde_json::to_string(&r).unwrap(), line);
        assert_eq!(r.graph, "k4");
        assert_eq!(r.tau, Some(0.5));
    }
    let keys: Vec<String> = serde_json::from_str::<serde_json::Map<String, serde_json::Value>>(
        text.lines().next().unwrap(),
    )
    .unwrap()
    .keys()
    .cloned()
    .collect();
    let mut expected = vec![
        "graph",
        "n",
        "tau",
        "epsilon",
        "n_max",
        "delta",
        "seed",
        "iterations",
        "final_error",
        "error_magic",
        "error_comm",
        "max_commutator",
        "witness",
        "classification",
        "status",
        "wall_time_s",
    ];
    expected.sort_unstable();
    let mut keys = keys;
    keys.sort();
    assert_eq!(keys, expected);
}

#[test]
fn two_vertex_file_graph_is_predicted_classical() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("edge.adj");
    fs::write(&file, "# a single edge\n2\n0 1\n1 0\n").unwrap();
    let spec = format!("@{}", file.display());
    let out_dir = dir.path().join("out");
    let out = qsinkhorn(&[
        "qsym",
        "--graph",
        &spec,
        "--runs",
        "12",
        "--epsilon",
        "1e-6",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let summary: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out_dir.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["graph"], "edge");
    assert_eq!(summary["prediction"], "N");
}

#[test]
fn non_uniform_graph_warns_but_runs() {
    let out = qsinkhorn(&[
        "qsym",
        "--graph",
        "l_petersen",
        "--runs",
        "1",
        "--nmax",
        "5",
    ]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("Schur"));
}

#[test]
fn tau_sweep_writes_one_row_per_grid_point() {
    let dir = tempfile::tempdir().unwrap();
    let out = qsinkhorn(&[
        "qsym",
        "--graph",
        "k4",
        "--tau-sweep",
        "0:1:0.25",
        "--runs",
        "2",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = fs::read_to_string(dir.path().join("tau_sweep.csv")).unwrap();
    let taus: Vec<&str> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap())
        .collect();
    assert_eq!(taus, ["0.0", "0.25", "0.5", "0.75", "1.0"]);
    assert_eq!(records(dir.path()).len(), 10);
}

#[test]
fn graph_info_reports_the_transitivity_hierarchy() {
    let out = qsinkhorn(&["graph-info", "--graph", "petersen"]);
    assert!(out.status.success());
    let info: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(info["automorphism_group_order"], 120);
    assert_eq!(info["vertex_transitive"], true);
    assert_eq!(info["uniformly_vertex_transitive"], true);

    let info: serde_json::Value =
        serde_json::from_slice(&qsinkhorn(&["graph-info", "--graph", "l_petersen"]).stdout)
            .unwrap();
    assert_eq!(info["vertex_transitive"], true);
    assert_eq!(info["uniformly_vertex_transitive"], false);

    let info: serde_json::Value =
        serde_json::from_slice(&qsinkhorn(&["graph-info", "--graph", "k4"]).stdout).unwrap();
    assert_eq!(info["automorphism_group_order"], 24);

    let info: serde_json::Value = serde_json::from_slice(
        &qsinkhorn(&["graph-info", "--graph", "clebsch", "--budget", "10"]).stdout,
    )
    .unwrap();
    assert_eq!(info["automorphism_group_order"], "budget_exceeded");
    assert_eq!(info["uniformly_vertex_transitive"], "unknown");
}

#[test]
fn exit_codes() {
    assert_eq!(qsinkhorn(&["magic"]).status.code(), Some(2));
    assert_eq!(
        qsinkhorn(&["magic", "--n", "3", "--frobnicate"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        qsinkhorn(&["qsym", "--graph", "k4", "--epsilon", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        qsinkhorn(&["qsym", "--graph", "k4", "--tau-sweep", "1:0:0.1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        qsinkhorn(&["qsym", "--graph", "dodecahedron"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        qsinkhorn(&["graph-info", "--graph", "@/no/such/file"])
            .status
            .code(),
        Some(3)
    );

    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "").unwrap();
    let target = blocker.join("sub");
    let out = qsinkhorn(&["magic", "--n", "2", "--out", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));

    let bad = dir.path().join("bad.adj");
    fs::write(&bad, "2\n0 1\n1\n").unwrap();
    let spec = format!("@{}", bad.display());
    assert_eq!(
        qsinkhorn(&["qsym", "--graph", &spec]).status.code(),
        Some(3)
    );
}

#[test]
fn single_run_failure_table_is_still_valid() {
    let dir = tempfile::tempdir().unwrap();
    let out = qsinkhorn(&[
        "reproduce",
        "table2",
        "--runs",
        "1",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = fs::read_to_string(dir.path().join("table2.csv")).unwrap();
    let rows: Vec<Vec<String>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(String::from).collect())
        .collect();
    assert_eq!(rows.len(), 3);
    for row in rows {
        let rate: f64 = row[5].parse().unwrap();
        assert!(rate == 0.0 || rate == 1.0);
    }
    assert!(dir.path().join("table2.txt").exists());
}

#[test]
fn graph_table_subset() {
    let out = qsinkhorn(&["reproduce", "table1", "--runs", "12", "--graphs", "k4"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(
        text.lines()
            .any(|l| l.starts_with("k4") && l.trim_end().ends_with("Y    Y")),
        "{text}"
    );
    assert_eq!(
        qsinkhorn(&["reproduce", "table1", "--graphs", "nonesuch"])
            .status
            .code(),
        Some(3)
    );
}
