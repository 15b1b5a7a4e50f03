//! Implementations of the CLI subcommands.

use std::path::{Path, PathBuf};

use serde::Serialize;

use acgame::analysis::{
    default_catalog, find_unstable_set, overtakes, DeviationTemplate, OvertakeReport,
    UtilitySeries,
};
use acgame::calibration::{
    filter_curve, load_corpus, reinvestment_curve, single_author_curve,
    spearman_attribute_comparison, two_author_curve, AttributeCorrelations, CorpusFormat, Curve,
    RejectedRow,
};
use acgame::game::{run_game, PlayerId};
use acgame::verify::{render_table, run_all, VerifyOptions, BURN_IN};

use crate::config::{load_config, require_same_roster, resolve, GameConfig, ResolvedGame};
use crate::trajectory_io::{write_sidecar_json, write_trajectory_csv};
use crate::CliError;

fn apply_horizon(config: &mut GameConfig, horizon: Option<u32>) {
    if let Some(h) = horizon {
        config.horizon = h;
    }
}

/// Whether two paths point at the same file (after normalization).
fn same_file(a: &Path, b: &Path) -> bool {
    match (a.canonicalize(), b.canonicalize()) {
        (Ok(a), Ok(b)) => a == b,
        // An output that does not exist yet cannot clash with an input.
        _ => false,
    }
}

pub fn cmd_simulate(
    config_path: &Path,
    out: Option<PathBuf>,
    horizon: Option<u32>,
) -> Result<(), CliError> {
    let mut config = load_config(config_path)?;
    apply_horizon(&mut config, horizon);
    let ResolvedGame {
        config,
        initial,
        strategies,
        horizon,
    } = resolve(config)?;

    let trajectory = run_game(&initial, &strategies, horizon)
        .map_err(|e| CliError::runtime(format!("simulation failed: {e}")))?;

    let outputs = config.outputs.clone().unwrap_or_default();
    let csv_path = out
        .or_else(|| outputs.trajectory.clone().map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("trajectory.csv"));
    let sidecar_path = outputs
        .sidecar
        .clone()
        .map(PathBuf::from)
        .unwrap_or_else(|| csv_path.with_extension("json"));

    for output in [&csv_path, &sidecar_path] {
        if same_file(output, config_path) {
            return Err(CliError::validation(format!(
                "out: {} would overwrite the configuration file",
                output.display()
            )));
        }
    }

    write_trajectory_csv(&csv_path, &trajectory)?;
    write_sidecar_json(&sidecar_path, &config, &trajectory)?;
    println!(
        "simulated {} players for {} years -> {} (+ {})",
        trajectory.player_count(),
        trajectory.horizon(),
        csv_path.display(),
        sidecar_path.display()
    );
    Ok(())
}

#[derive(Debug, Serialize)]
struct CompareReport {
    horizon: u32,
    burn_in: f64,
    players: Vec<PlayerComparison>,
}

#[derive(Debug, Serialize)]
struct PlayerComparison {
    player: usize,
    #[serde(flatten)]
    report: OvertakeReport,
}

pub fn cmd_compare(
    config_path: &Path,
    against: Option<PathBuf>,
    horizon: Option<u32>,
    burn_in: f64,
    out: Option<PathBuf>,
) -> Result<(), CliError> {
    let mut base_config = load_config(config_path)?;
    apply_horizon(&mut base_config, horizon);

    let alt_config = match against {
        Some(path) => {
            let mut alt = load_config(&path)?;
            apply_horizon(&mut alt, horizon);
            require_same_roster(&base_config, &alt)?;
            alt
        }
        None => {
            let alternative = base_config.alternative_strategies.clone().ok_or_else(|| {
                CliError::validation(
                    "alternative_strategies: missing (supply --against or embed an alternative)"
                        .into(),
                )
            })?;
            let mut alt = base_config.clone();
            alt.strategies = alternative;
            alt.alternative_strategies = None;
            alt
        }
    };

    let base = resolve(base_config)?;
    let alt = resolve(alt_config)?;
    let horizon = base.horizon.max(alt.horizon);

    let base_traj = run_game(&base.initial, &base.strategies, horizon)
        .map_err(|e| CliError::runtime(format!("baseline simulation failed: {e}")))?;
    let alt_traj = run_game(&alt.initial, &alt.strategies, horizon)
        .map_err(|e| CliError::runtime(format!("alternative simulation failed: {e}")))?;

    let mut players = Vec::new();
    for p in 0..base_traj.player_count() {
        let f = UtilitySeries::from_trajectory(&base_traj, PlayerId(p))
            .map_err(|e| CliError::runtime(e.to_string()))?;
        let g = UtilitySeries::from_trajectory(&alt_traj, PlayerId(p))
            .map_err(|e| CliError::runtime(e.to_string()))?;
        let report =
            overtakes(&f, &g, burn_in).map_err(|e| CliError::validation(e.to_string()))?;
        players.push(PlayerComparison { player: p, report });
    }
    let report = CompareReport {
        horizon,
        burn_in,
        players,
    };
    emit_json(&report, out)
}

pub fn cmd_stability(
    config_path: &Path,
    catalog: Option<String>,
    k: usize,
    horizon: Option<u32>,
    burn_in: f64,
    out: Option<PathBuf>,
) -> Result<(), CliError> {
    let mut config = load_config(config_path)?;
    apply_horizon(&mut config, horizon);
    let resolved = resolve(config)?;

    let catalog: Vec<DeviationTemplate> = match catalog {
        Some(selection) => DeviationTemplate::parse_catalog(&selection)
            .map_err(|e| CliError::validation(format!("catalog: {e}")))?,
        None => default_catalog(),
    };

    let report = find_unstable_set(
        &resolved.initial,
        &resolved.strategies,
        &catalog,
        k,
        resolved.horizon,
        burn_in,
    )
    .map_err(|e| CliError::validation(e.to_string()))?;
    emit_json(&report, out)
}

pub fn cmd_verify(horizon: Option<u32>) -> Result<(), CliError> {
    let outcomes = run_all(&VerifyOptions { horizon });
    print!("{}", render_table(&outcomes));
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    if failed > 0 {
        return Err(CliError::verification(format!(
            "{failed} of {} checks failed",
            outcomes.len()
        )));
    }
    println!("all {} checks passed", outcomes.len());
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Analysis {
    SingleAuthor,
    TwoAuthor,
    Reinvestment,
    Spearman,
}

impl Analysis {
    fn parse_selection(selection: Option<&str>) -> Result<Vec<Analysis>, CliError> {
        let Some(selection) = selection else {
            return Ok(vec![
                Analysis::SingleAuthor,
                Analysis::TwoAuthor,
                Analysis::Reinvestment,
                Analysis::Spearman,
            ]);
        };
        selection
            .split(',')
            .map(|name| match name.trim() {
                "single_author" => Ok(Analysis::SingleAuthor),
                "two_author" => Ok(Analysis::TwoAuthor),
                "reinvestment" => Ok(Analysis::Reinvestment),
                "spearman" => Ok(Analysis::Spearman),
                other => Err(CliError::validation(format!(
                    "analysis: unknown analysis {other:?} (expected single_author, two_author, reinvestment, spearman)"
                ))),
            })
            .collect()
    }
}

#[derive(Debug, Serialize)]
struct CalibrationSummary {
    records: usize,
    rejected_rows: Vec<RejectedRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    spearman: Option<AttributeCorrelations>,
}

pub fn cmd_calibrate(
    corpus_path: &Path,
    format: CorpusFormat,
    analysis: Option<String>,
    out: &Path,
    min_count: usize,
) -> Result<(), CliError> {
    let analyses = Analysis::parse_selection(analysis.as_deref())?;
    let load = load_corpus(corpus_path, format).map_err(|e| match e {
        acgame::calibration::CalibrationError::Io(_) => CliError::runtime(e.to_string()),
        _ => CliError::validation(e.to_string()),
    })?;
    for reject in &load.rejects {
        eprintln!(
            "warning: {} line {}: {}",
            corpus_path.display(),
            reject.line,
            reject.reason
        );
    }
    if load.corpus.is_empty() {
        eprintln!("warning: corpus {} is empty", corpus_path.display());
    }

    let out_name = |suffix: &str| -> PathBuf {
        let mut name = out.file_name().map_or_else(
            || "calibration".to_string(),
            |n| n.to_string_lossy().to_string(),
        );
        name.push('.');
        name.push_str(suffix);
        out.with_file_name(name)
    };

    let mut spearman = None;
    for analysis in &analyses {
        match analysis {
            Analysis::SingleAuthor => write_curve_csv(
                &out_name("single_author.csv"),
                &single_author_curve(&load.corpus),
                min_count,
            )?,
            Analysis::TwoAuthor => write_curve_csv(
                &out_name("two_author.csv"),
                &two_author_curve(&load.corpus),
                min_count,
            )?,
            Analysis::Reinvestment => write_curve_csv(
                &out_name("reinvestment.csv"),
                &reinvestment_curve(&load.corpus),
                min_count,
            )?,
            Analysis::Spearman => spearman = Some(spearman_attribute_comparison(&load.corpus)),
        }
    }

    let summary = CalibrationSummary {
        records: load.corpus.len(),
        rejected_rows: load.rejects,
        spearman,
    };
    let summary_path = out_name("summary.json");
    let json = serde_json::to_string_pretty(&summary)
        .map_err(|e| CliError::runtime(format!("serializing summary: {e}")))?;
    std::fs::write(&summary_path, json + "\n")
        .map_err(|e| CliError::runtime(format!("cannot write {}: {e}", summary_path.display())))?;
    println!(
        "calibrated {} records -> {}",
        summary.records,
        summary_path.display()
    );
    Ok(())
}

fn write_curve_csv(path: &Path, curve: &Curve, min_count: usize) -> Result<(), CliError> {
    let filtered = filter_curve(curve, min_count);
    let mut writer = csv::Writer::from_path(path)
        .map_err(|e| CliError::runtime(format!("cannot write {}: {e}", path.display())))?;
    let io_err = |e: csv::Error| CliError::runtime(format!("writing {}: {e}", path.display()));
    writer
        .write_record(["group_key", "median", "count"])
        .map_err(io_err)?;
    for (key, bin) in &filtered {
        writer
            .write_record([key.to_string(), format_median(bin.median), bin.count.to_string()])
            .map_err(io_err)?;
    }
    writer
        .flush()
        .map_err(|e| CliError::runtime(format!("flushing {}: {e}", path.display())))
}

/// Medians are halves at worst; render them without float noise.
fn format_median(median: f64) -> String {
    if median.fract() == 0.0 {
        format!("{median:.0}")
    } else {
        format!("{median}")
    }
}

fn emit_json<T: Serialize>(value: &T, out: Option<PathBuf>) -> Result<(), CliError> {
    let json = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::runtime(format!("serializing report: {e}")))?;
    match out {
        Some(path) => std::fs::write(&path, json + "\n")
            .map_err(|e| CliError::runtime(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{json}");
            Ok(())
        }
    }
}

pub fn default_burn_in() -> f64 {
    BURN_IN
}

pub fn parse_format(format: &str) -> Result<CorpusFormat, CliError> {
    match format {
        "csv" => Ok(CorpusFormat::Csv),
        "jsonl" => Ok(CorpusFormat::Jsonl),
        other => Err(CliError::validation(format!(
            "format: expected csv or jsonl, got {other:?}"
        ))),
    }
}
