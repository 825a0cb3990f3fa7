//! End-to-end checks of the `e3d` binary and its file outputs.

use std::fs;
use std::path::Path;
use std::process::Command;

fn e3d_bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_e3d"))
}

fn read(path: &Path) -> String {
    fs::read_to_string(path).unwrap_or_else(|e| panic!("read {}: {e}", path.display()))
}

#[test]
fn run_writes_the_documented_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("explore");
    let status = e3d_bin()
        .args([
            "run", "--task", "explore", "--algo", "e3d", "--trials", "200", "--seed", "3",
        ])
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());

    let trials = read(&out.join("trials.csv"));
    let mut lines = trials.lines();
    assert_eq!(
        lines.next(),
        Some("session,trial,final_state,reward,intrinsic_drive,sequence")
    );
    assert_eq!(lines.clone().count(), 200);
    for line in lines {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 6);
        assert_eq!(fields[6 - 1].len(), 7, "sequence field: {line}");
        assert!(fields[5].chars().all(|c| "ESWN".contains(c)));
        assert_eq!(fields[3], "0", "explore task pays no reward");
    }

    let dist = read(&out.join("dist.csv"));
    let mut lines = dist.lines();
    assert_eq!(lines.next(), Some("state,row,col,count,frequency"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 18);
    let mut total = 0u64;
    for (i, row) in rows.iter().enumerate() {
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields[0].parse::<usize>().unwrap(), i);
        assert_eq!(fields[1].parse::<usize>().unwrap(), i / 6);
        assert_eq!(fields[2].parse::<usize>().unwrap(), i % 6);
        total += fields[3].parse::<u64>().unwrap();
    }
    assert_eq!(total, 200, "counts conserve trials");

    let heatmap = read(&out.join("heatmap.txt"));
    let rows: Vec<&str> = heatmap.lines().collect();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r.split(' ').count() == 6));

    assert!(out.join("summary.json").exists());
    assert!(out.join("heatmap.svg").exists());
}

#[test]
fn summary_metrics_recompute_from_the_distribution_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let status = e3d_bin()
        .args([
            "run", "--task", "reward", "--algo", "uniform", "--trials", "500",
        ])
        .args(["--sessions", "2", "--seed", "9"])
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());

    let summary: serde_json::Value =
        serde_json::from_str(&read(&out.join("summary.json"))).unwrap();
    let counts: Vec<u64> = read(&out.join("dist.csv"))
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(3).unwrap().parse().unwrap())
        .collect();
    let total: u64 = counts.iter().sum();
    assert_eq!(total, 1000);
    let freq: Vec<f64> = counts.iter().map(|c| *c as f64 / total as f64).collect();
    let uniform = vec![1.0 / 18.0; 18];

    assert_eq!(
        summary["pooled"]["entropy"].as_f64().unwrap(),
        e3d::metrics::entropy(&freq)
    );
    assert_eq!(
        summary["pooled"]["kl_to_uniform"].as_f64().unwrap(),
        e3d::metrics::kl_divergence(&freq, &uniform)
    );
    assert!(summary["pooled"]["tv_to_oracle"].is_number());
    assert_eq!(summary["config"]["algo"], "uniform");
    assert_eq!(summary["config"]["task"], "reward");
    assert_eq!(summary["sessions"].as_array().unwrap().len(), 2);
}

#[test]
fn oracle_emits_the_exact_distribution() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("oracle.csv");
    let status = e3d_bin()
        .arg("oracle")
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());

    let text = read(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("state,row,col,probability"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 18);
    assert_eq!(rows[17], "17,2,5,0.00054931640625"); // exactly 9/16384
    let sum: f64 = rows
        .iter()
        .map(|r| r.split(',').nth(3).unwrap().parse::<f64>().unwrap())
        .sum();
    assert!((sum - 1.0).abs() < 1e-12);
}

#[test]
fn invalid_configs_exit_nonzero_with_a_diagnostic() {
    let dir = tempfile::tempdir().unwrap();
    let output = e3d_bin()
        .args(["run", "--task", "explore", "--algo", "e3d", "--alpha", "0"])
        .arg("--out")
        .arg(dir.path().join("x"))
        .output()
        .unwrap();
    assert!(!output.status.success());
    assert!(String::from_utf8_lossy(&output.stderr).contains("alpha"));

    let output = e3d_bin()
        .args(["run", "--task", "explore", "--algo", "nonsense"])
        .arg("--out")
        .arg(dir.path().join("x"))
        .output()
        .unwrap();
    assert!(!output.status.success());
}

#[test]
fn reruns_are_byte_identical_and_sessions_extend_as_a_prefix() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("det");
    let run = |sessions: &str| {
        let status = e3d_bin()
            .args([
                "run", "--task", "reward", "--algo", "egreedy", "--trials", "250",
            ])
            .args(["--sessions", sessions, "--seed", "21"])
            .arg("--out")
            .arg(&out)
            .status()
            .unwrap();
        assert!(status.success());
    };

    run("2");
    let first_trials = read(&out.join("trials.csv"));
    let first_summary = read(&out.join("summary.json"));
    run("2");
    assert_eq!(first_trials, read(&out.join("trials.csv")));
    assert_eq!(first_summary, read(&out.join("summary.json")));

    // Earlier sessions are untouched by adding more: the two-session log
    // is a byte prefix of the three-session log.
    run("3");
    let extended = read(&out.join("trials.csv"));
    assert!(extended.starts_with(&first_trials));
}
