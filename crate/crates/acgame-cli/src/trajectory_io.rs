//! Trajectory file formats: the per-year CSV and its JSON sidecar.
//!
//! The CSV carries one row per (year, player) with the header
//! `year,player,h,papers_published,new_citations`; the sidecar carries the
//! echoed configuration, per-player utility series, and final citation
//! profiles. Neither file contains timestamps, so identical runs are
//! byte-identical.

use std::path::Path;

use serde::Serialize;

use acgame::game::{PlayerId, Trajectory};

use crate::config::GameConfig;
use crate::CliError;

pub fn write_trajectory_csv(path: &Path, trajectory: &Trajectory) -> Result<(), CliError> {
    let mut writer = csv::Writer::from_path(path)
        .map_err(|e| CliError::runtime(format!("cannot write {}: {e}", path.display())))?;
    let io_err = |e: csv::Error| CliError::runtime(format!("writing {}: {e}", path.display()));
    writer
        .write_record(["year", "player", "h", "papers_published", "new_citations"])
        .map_err(io_err)?;
    for record in trajectory.years() {
        for player in 0..trajectory.player_count() {
            let authored: Vec<_> = record
                .papers
                .iter()
                .filter(|p| p.has_author(PlayerId(player)))
                .collect();
            let new_citations: u64 = authored.iter().map(|p| p.citations).sum();
            writer
                .write_record([
                    record.year.to_string(),
                    player.to_string(),
                    record.utilities[player].to_string(),
                    authored.len().to_string(),
                    new_citations.to_string(),
                ])
                .map_err(io_err)?;
        }
    }
    writer
        .flush()
        .map_err(|e| CliError::runtime(format!("flushing {}: {e}", path.display())))
}

#[derive(Debug, Serialize)]
struct Sidecar<'a> {
    config: &'a GameConfig,
    horizon: u32,
    players: usize,
    /// Per-player utility series, indexed by year starting at 1.
    utilities: Vec<Vec<u64>>,
    /// Final citation profiles, one per player, descending counts.
    final_profiles: Vec<Vec<u64>>,
}

pub fn write_sidecar_json(
    path: &Path,
    config: &GameConfig,
    trajectory: &Trajectory,
) -> Result<(), CliError> {
    let utilities = (0..trajectory.player_count())
        .map(|p| trajectory.utilities(PlayerId(p)).expect("roster player"))
        .collect();
    let final_profiles = trajectory
        .final_profiles()
        .iter()
        .map(|p| p.counts().to_vec())
        .collect();
    let sidecar = Sidecar {
        config,
        horizon: trajectory.horizon(),
        players: trajectory.player_count(),
        utilities,
        final_profiles,
    };
    let json = serde_json::to_string_pretty(&sidecar)
        .map_err(|e| CliError::runtime(format!("serializing sidecar: {e}")))?;
    std::fs::write(path, json + "\n")
        .map_err(|e| CliError::runtime(format!("cannot write {}: {e}", path.display())))
}

