use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn schedseq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_schedseq")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

fn generate(dir: &TempDir, name: &str, extra: &[&str]) -> (String, Value) {
    let file = path(dir, name);
    let mut args = vec!["generate", "--out", &file];
    args.extend_from_slice(extra);
    let out = schedseq(&args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    (file, json(&out))
}

#[test]
fn generate_reports_chosen_parameters() {
    let dir = TempDir::new().unwrap();
    let (_, r) = generate(&dir, "a.json", &["--K", "18", "--M", "3"]);
    assert_eq!((r["W"].as_u64(), r["L"].as_u64()), (Some(3), Some(546)));
    assert!(r["Mprime"].as_u64().is_some() && r["lower_bound"].as_u64().is_some());

    let (_, r) = generate(&dir, "b.json", &["--K", "24", "--M", "3"]);
    assert_eq!(r["L"].as_u64(), Some(1122));
}

#[test]
fn single_channel_file_holds_the_three_sequences() {
    let dir = TempDir::new().unwrap();
    let (file, r) = generate(&dir, "k3.json", &["--K", "3", "--M", "1"]);
    assert_eq!(r["L"].as_u64(), Some(15));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    let transmit_slots: Vec<Vec<usize>> = doc["sequences"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| {
            s.as_array().unwrap().iter().enumerate().filter(|(_, x)| x.as_str() == Some("T1")).map(|(t, _)| t).collect()
        })
        .collect();
    assert_eq!(transmit_slots, vec![vec![0, 1, 2], vec![0, 7, 11], vec![0, 6, 12]]);
    assert_eq!(doc["schema_version"].as_str(), Some("schedseq.sequence-set/1"));
}

#[test]
fn bad_generate_parameters_exit_one() {
    let dir = TempDir::new().unwrap();
    let out = schedseq(&["generate", "--K", "2", "--M", "3", "--out", &path(&dir, "x.json")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
    assert_eq!(schedseq(&["generate", "--K", "3"]).status.code(), Some(1));
}

const WORKED: &str = r#"{
  "schema_version": "schedseq.sequence-set/1",
  "K": 3, "M": 2, "W": 2, "L": 12,
  "division": [1, 1, 2],
  "sequences": [
    ["T1","T1","T1","T1","T1","T1","R1","R1","R1","R2","R2","R2"],
    ["T1","R1","T1","R2","T1","R1","T1","R2","T1","R1","T1","R2"],
    ["T2","R1","R1","T2","R1","R1","T2","R1","R1","T2","R1","R1"]
  ]
}"#;

#[test]
fn verify_exit_codes() {
    let dir = TempDir::new().unwrap();
    let worked = path(&dir, "worked.json");
    std::fs::write(&worked, WORKED).unwrap();
    let out = schedseq(&["verify", "--in", &worked, "--mode", "exhaustive"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verdict"].as_str(), Some("Proven"));

    let corrupted = path(&dir, "corrupted.json");
    std::fs::write(&corrupted, WORKED.replacen("\"T2\"", "\"T9\"", 1)).unwrap();
    assert_eq!(schedseq(&["verify", "--in", &corrupted]).status.code(), Some(1));

    let garbage = path(&dir, "garbage.json");
    std::fs::write(&garbage, "{ not json").unwrap();
    assert_eq!(schedseq(&["verify", "--in", &garbage]).status.code(), Some(1));
    assert_eq!(schedseq(&["verify", "--in", &path(&dir, "missing.json")]).status.code(), Some(1));

    let deaf = path(&dir, "deaf.json");
    let third = r#"["T2","R1","R1","T2","R1","R1","T2","R1","R1","T2","R1","R1"]"#;
    std::fs::write(&deaf, WORKED.replace(third, &format!("[{}]", ["\"T2\""; 12].join(",")))).unwrap();
    let out = schedseq(&["verify", "--in", &deaf]);
    assert_eq!(out.status.code(), Some(2));
    let w = &json(&out)["witness"];
    assert_eq!(w["receiver"].as_u64(), Some(3));
    assert!(w["offsets"].as_array().unwrap().len() >= 2);

    let (four, _) = generate(&dir, "four.json", &["--K", "4", "--M", "2", "--W", "2"]);
    assert_eq!(schedseq(&["verify", "--in", &four]).status.code(), Some(0));
    assert_eq!(schedseq(&["verify", "--in", &four, "--mode", "conservative"]).status.code(), Some(0));
    let sampled = schedseq(&["verify", "--in", &four, "--mode", "randomized", "--samples", "500"]);
    assert_eq!(sampled.status.code(), Some(3));
    let starved = schedseq(&["verify", "--in", &four, "--budget", "1"]);
    assert_eq!(starved.status.code(), Some(3));
}

#[test]
fn bound_command() {
    let r = json(&schedseq(&["bound", "--K", "70", "--M", "4", "--ratio"]));
    assert_eq!(r["combined"].as_u64(), Some(857));
    assert_eq!(r["ratio"].as_f64(), Some(6.56));
    let r = json(&schedseq(&["bound", "--K", "5", "--M", "5"]));
    assert_eq!(r["combined"].as_u64(), Some(16));
    let r = json(&schedseq(&["bound", "--K", "60", "--M", "3", "--ratio"]));
    assert_eq!(r["ratio"].as_f64(), Some(6.18));
    assert_eq!(schedseq(&["bound", "--K", "5", "--M", "2", "--W", "3"]).status.code(), Some(1));
}

#[test]
fn framelen_command() {
    let r = json(&schedseq(&["framelen", "--K", "15"]));
    assert_eq!(r["L_rand"].as_u64(), Some(656));
    let r = json(&schedseq(&["framelen", "--K", "10", "--cdf-at", "209"]));
    assert!((r["cdf_at"]["group_cdf"].as_f64().unwrap() - 0.9769).abs() < 1e-4);
    let r = json(&schedseq(&["framelen", "--K", "2", "--target", "0.5"]));
    assert_eq!(r["L_rand"].as_u64(), Some(5));
    assert_eq!(schedseq(&["framelen", "--K", "50"]).status.code(), Some(1));
}

fn csv_rows(file: &Path) -> Vec<(u64, u64, u8)> {
    let text = std::fs::read_to_string(file).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("run_index,completion_time,censored"));
    lines
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0].parse().unwrap(), f[1].parse().unwrap(), f[2].parse().unwrap())
        })
        .collect()
}

#[test]
fn simulate_sequence_set_respects_the_period() {
    let dir = TempDir::new().unwrap();
    let (set, _) = generate(&dir, "s.json", &["--K", "18", "--M", "3", "--W", "3"]);
    let csv = path(&dir, "runs.csv");
    let out = schedseq(&["simulate", "--in", &set, "--runs", "10000", "--seed", "4", "--out", &csv]);
    assert!(out.status.success());
    let rows = csv_rows(Path::new(&csv));
    assert_eq!(rows.len(), 10_000);
    assert!(rows.iter().enumerate().all(|(i, &(r, t, c))| r == i as u64 && t <= 546 && c == 0));
    let summary = json(&out);
    assert_eq!(summary["censored"].as_u64(), Some(0));
    assert!(summary["max_completed"].as_u64().unwrap() <= 546);
}

#[test]
fn simulate_random_scheme_meets_the_frame_length() {
    let out = schedseq(&["simulate", "--random", "--K", "18", "--W", "1", "--runs", "10000", "--cdf-at", "812"]);
    assert!(out.status.success());
    let p = json(&out)["cdf_at"][0]["empirical_cdf"].as_f64().unwrap();
    let sigma = (0.99999f64 * 1e-5 / 10_000.0).sqrt();
    assert!((p - 0.99999).abs() <= 3.0 * sigma, "P(X <= 812) = {p}");
}

#[test]
fn simulation_output_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let (set, _) = generate(&dir, "s.json", &["--K", "10", "--M", "2"]);
    let run = |name: &str, seed: &str| {
        let csv = path(&dir, name);
        let out = schedseq(&["--threads", "3", "simulate", "--in", &set, "--runs", "500", "--seed", seed, "--out", &csv]);
        assert!(out.status.success());
        (std::fs::read(&csv).unwrap(), out.stdout)
    };
    let a = run("a.csv", "9");
    let b = run("b.csv", "9");
    assert_eq!(a, b);
    assert_ne!(a.0, run("c.csv", "10").0);
}
