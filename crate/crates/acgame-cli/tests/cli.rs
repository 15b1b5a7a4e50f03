//! End-to-end tests driving the compiled binary.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn acgame(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_acgame"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn solo_config(horizon: u32, strategy: &str) -> String {
    format!(
        r#"{{
  "players": [{{ "id": 0, "initial_profile": [] }}],
  "strategies": {{ "0": {strategy} }},
  "horizon": {horizon}
}}"#
    )
}

fn pair_config(horizon: u32) -> String {
    format!(
        r#"{{
  "players": [
    {{ "id": 0, "initial_profile": [] }},
    {{ "id": 1, "initial_profile": [] }}
  ],
  "strategies": {{
    "0": {{ "name": "pair_single_joint", "params": {{ "partner": 1 }} }},
    "1": {{ "name": "pair_single_joint", "params": {{ "partner": 0 }} }}
  }},
  "horizon": {horizon}
}}"#
    )
}

/// Parses the trajectory CSV into per-player h series ordered by year.
fn h_series(csv_path: &Path) -> BTreeMap<usize, Vec<u64>> {
    let text = std::fs::read_to_string(csv_path).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "year,player,h,papers_published,new_citations"
    );
    let mut rows: Vec<(u32, usize, u64)> = lines
        .map(|line| {
            let fields: Vec<&str> = line.split(',').collect();
            (
                fields[0].parse().unwrap(),
                fields[1].parse().unwrap(),
                fields[2].parse().unwrap(),
            )
        })
        .collect();
    rows.sort_unstable();
    let mut series: BTreeMap<usize, Vec<u64>> = BTreeMap::new();
    for (_, player, h) in rows {
        series.entry(player).or_default().push(h);
    }
    series
}

#[test]
fn simulate_solo_matches_closed_form_and_round_trips() {
    let dir = TempDir::new().unwrap();
    let config = write(
        dir.path(),
        "solo.json",
        &solo_config(10, r#"{ "name": "solo_single_paper" }"#),
    );

    let out = acgame(
        &["simulate", "--config", config.to_str().unwrap(), "--out", "traj.csv"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let series = h_series(&dir.path().join("traj.csv"));
    assert_eq!(series[&0], vec![1, 1, 2, 2, 2, 3, 3, 3, 3, 4]);

    // The sidecar reproduces the same utility series.
    let sidecar: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("traj.json")).unwrap())
            .unwrap();
    let utilities: Vec<u64> = sidecar["utilities"][0]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap())
        .collect();
    assert_eq!(utilities, series[&0]);
    assert_eq!(sidecar["final_profiles"][0].as_array().unwrap().len(), 10);
}

#[test]
fn simulate_is_byte_deterministic() {
    let dir = TempDir::new().unwrap();
    let config = write(dir.path(), "pair.json", &pair_config(4));
    for name in ["a.csv", "b.csv"] {
        let out = acgame(
            &["simulate", "--config", config.to_str().unwrap(), "--out", name],
            dir.path(),
        );
        assert!(out.status.success());
    }
    let read = |n: &str| std::fs::read(dir.path().join(n)).unwrap();
    assert_eq!(read("a.csv"), read("b.csv"));
    assert_eq!(read("a.json"), read("b.json"));

    let series = h_series(&dir.path().join("a.csv"));
    assert_eq!(series[&0], vec![1, 2, 2, 3]);
    assert_eq!(series[&1], vec![1, 2, 2, 3]);
}

#[test]
fn simulate_refuses_to_overwrite_its_config() {
    let dir = TempDir::new().unwrap();
    // The default sidecar path for game.csv is game.json, the config itself.
    let config = write(dir.path(), "game.json", &pair_config(4));
    let out = acgame(
        &["simulate", "--config", config.to_str().unwrap(), "--out", "game.csv"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("overwrite"));
    // And the config is intact.
    assert_eq!(std::fs::read_to_string(&config).unwrap(), pair_config(4));
}

#[test]
fn simulate_rejects_missing_strategy() {
    let dir = TempDir::new().unwrap();
    let config = write(
        dir.path(),
        "bad.json",
        r#"{
  "players": [
    { "id": 0, "initial_profile": [] },
    { "id": 1, "initial_profile": [] }
  ],
  "strategies": { "0": { "name": "solo_single_paper" } },
  "horizon": 5
}"#,
    );
    let out = acgame(&["simulate", "--config", config.to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("strategies.1"), "stderr: {stderr}");
}

#[test]
fn compare_reports_overtaking_and_self_comparison() {
    let dir = TempDir::new().unwrap();
    let base = write(
        dir.path(),
        "single.json",
        &solo_config(1000, r#"{ "name": "solo_single_paper" }"#),
    );
    let split = write(
        dir.path(),
        "split.json",
        &solo_config(1000, r#"{ "name": "solo_split", "params": { "k": 2 } }"#),
    );

    let out = acgame(
        &[
            "compare",
            "--config",
            base.to_str().unwrap(),
            "--against",
            split.to_str().unwrap(),
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["players"][0]["verdict"], "FirstOvertakesSecond");

    let out = acgame(
        &[
            "compare",
            "--config",
            base.to_str().unwrap(),
            "--against",
            base.to_str().unwrap(),
        ],
        dir.path(),
    );
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["players"][0]["verdict"], "Inconclusive");
}

#[test]
fn compare_pair_profiles_both_players_overtake() {
    let dir = TempDir::new().unwrap();
    let single_joint = write(dir.path(), "single_joint.json", &pair_config(1000));
    let two_joint = write(
        dir.path(),
        "two_joint.json",
        &pair_config(1000).replace("pair_single_joint", "pair_two_joint_even_split"),
    );
    let out = acgame(
        &[
            "compare",
            "--config",
            single_joint.to_str().unwrap(),
            "--against",
            two_joint.to_str().unwrap(),
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    for player in report["players"].as_array().unwrap() {
        assert_eq!(player["verdict"], "FirstOvertakesSecond");
    }
}

#[test]
fn compare_uses_embedded_alternative() {
    let dir = TempDir::new().unwrap();
    let config = write(
        dir.path(),
        "embedded.json",
        r#"{
  "players": [{ "id": 0, "initial_profile": [] }],
  "strategies": { "0": { "name": "solo_single_paper" } },
  "alternative_strategies": { "0": { "name": "solo_split", "params": { "k": 3 } } },
  "horizon": 400
}"#,
    );
    let out = acgame(&["compare", "--config", config.to_str().unwrap()], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["players"][0]["verdict"], "FirstOvertakesSecond");
}

#[test]
fn compare_rejects_roster_mismatch() {
    let dir = TempDir::new().unwrap();
    let solo = write(
        dir.path(),
        "one.json",
        &solo_config(100, r#"{ "name": "solo_single_paper" }"#),
    );
    let pair = write(dir.path(), "two.json", &pair_config(100));
    let out = acgame(
        &[
            "compare",
            "--config",
            solo.to_str().unwrap(),
            "--against",
            pair.to_str().unwrap(),
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn stability_finds_the_coordinated_switch() {
    let dir = TempDir::new().unwrap();
    let config = write(
        dir.path(),
        "two_joint.json",
        r#"{
  "players": [
    { "id": 0, "initial_profile": [] },
    { "id": 1, "initial_profile": [] }
  ],
  "strategies": {
    "0": { "name": "pair_two_joint_even_split", "params": { "partner": 1 } },
    "1": { "name": "pair_two_joint_even_split", "params": { "partner": 0 } }
  },
  "horizon": 300
}"#,
    );
    let out = acgame(
        &["stability", "--config", config.to_str().unwrap(), "--k", "2"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["stable"], false);
    let witnesses = report["witnesses"].as_array().unwrap();
    let coordinated = witnesses.iter().any(|w| {
        w["players"] == serde_json::json!([0, 1])
            && w["strategies"][0]["name"] == "pair_single_joint"
            && w["strategies"][1]["name"] == "pair_single_joint"
    });
    assert!(coordinated, "witnesses: {witnesses:?}");
}

#[test]
fn stability_respects_catalog_selection() {
    let dir = TempDir::new().unwrap();
    let config = write(dir.path(), "matched.json", &pair_config(200));
    // Restricted to solo deviations, the paired profile stays stable.
    let out = acgame(
        &[
            "stability",
            "--config",
            config.to_str().unwrap(),
            "--catalog",
            "solo_single_paper,solo_split{k=2}",
            "--k",
            "1",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["stable"], true);
    assert_eq!(report["catalog"].as_array().unwrap().len(), 2);

    let out = acgame(
        &["stability", "--config", config.to_str().unwrap(), "--k", "3"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_prints_one_row_per_check_with_consistent_exit_code() {
    let dir = TempDir::new().unwrap();
    let out = acgame(&["verify", "--horizon", "120"], dir.path());
    let stdout = String::from_utf8_lossy(&out.stdout);
    let rows: Vec<&str> = stdout
        .lines()
        .filter(|l| l.contains("PASS") || l.contains("FAIL"))
        .collect();
    assert_eq!(rows.len(), 10, "table:\n{stdout}");
    let any_failed = rows.iter().any(|r| r.contains("FAIL"));
    let expected = if any_failed { 3 } else { 0 };
    assert_eq!(out.status.code(), Some(expected), "table:\n{stdout}");
}

const TINY_CORPUS: &str = "paper_id,year,citations,authors\n\
p1,2000,2,alice\n\
p2,2001,2,alice\n\
p3,2002,7,alice\n\
p4,2002,4,bob;carol\n\
p5,2003,5,bob\n";

#[test]
fn calibrate_computes_hand_checked_medians() {
    let dir = TempDir::new().unwrap();
    let corpus = write(dir.path(), "tiny.csv", TINY_CORPUS);
    let out = acgame(
        &[
            "calibrate",
            corpus.to_str().unwrap(),
            "--format",
            "csv",
            "--out",
            "cal",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let single = std::fs::read_to_string(dir.path().join("cal.single_author.csv")).unwrap();
    // alice contributes bins 0, 1, 2; bob's 2003 paper joins bin 1
    // (prior profile {4} has h = 1), giving median (2 + 5) / 2 = 3.5.
    assert_eq!(single, "group_key,median,count\n0,2,1\n1,3.5,2\n2,7,1\n");

    let two = std::fs::read_to_string(dir.path().join("cal.two_author.csv")).unwrap();
    assert_eq!(two, "group_key,median,count\n0,4,1\n");

    let reinvest = std::fs::read_to_string(dir.path().join("cal.reinvestment.csv")).unwrap();
    assert_eq!(reinvest, "group_key,median,count\n0,4,3\n1,3.5,2\n2,7,1\n");

    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("cal.summary.json")).unwrap())
            .unwrap();
    assert_eq!(summary["records"], 5);
    assert!(summary["spearman"]["samples"].as_u64().unwrap() >= 4);
}

#[test]
fn calibrate_empty_corpus_warns_and_succeeds() {
    let dir = TempDir::new().unwrap();
    let corpus = write(dir.path(), "empty.csv", "");
    let out = acgame(
        &["calibrate", corpus.to_str().unwrap(), "--out", "empty"],
        dir.path(),
    );
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("empty"));
    let single = std::fs::read_to_string(dir.path().join("empty.single_author.csv")).unwrap();
    assert_eq!(single, "group_key,median,count\n");
}

#[test]
fn calibrate_aborts_on_mostly_malformed_corpus() {
    let dir = TempDir::new().unwrap();
    let corpus = write(
        dir.path(),
        "broken.csv",
        "paper_id,year,citations,authors\np1,2000,-2,alice\np2,2001,3,bob\n",
    );
    let out = acgame(
        &["calibrate", corpus.to_str().unwrap(), "--out", "broken"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("malformed"), "stderr: {stderr}");
}

#[test]
fn calibrate_reports_reject_lines_in_summary() {
    let dir = TempDir::new().unwrap();
    let mut corpus_text = String::from("paper_id,year,citations,authors\n");
    for i in 0..12 {
        corpus_text.push_str(&format!("p{i},2000,{},author{i}\n", i + 1));
    }
    corpus_text.push_str("bad,2000,-1,oops\n");
    let corpus = write(dir.path(), "mostly_good.csv", &corpus_text);
    let out = acgame(
        &["calibrate", corpus.to_str().unwrap(), "--out", "mg"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("mg.summary.json")).unwrap())
            .unwrap();
    assert_eq!(summary["records"], 12);
    assert_eq!(summary["rejected_rows"][0]["line"], 14);
}
