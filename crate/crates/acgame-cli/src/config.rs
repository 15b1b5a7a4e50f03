//! Game configuration documents: JSON schema, validation with field paths,
//! and conversion into engine inputs.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use acgame::bibliometrics::CitationProfile;
use acgame::game::GameState;
use acgame::strategies::{Strategy, StrategyProfile};

use crate::CliError;

/// One game setup: roster, one strategy per player, and the horizon.
///
/// ```json
/// {
///   "players": [
///     { "id": 0, "initial_profile": [] },
///     { "id": 1, "initial_profile": [3, 1] }
///   ],
///   "strategies": {
///     "0": { "name": "pair_single_joint", "params": { "partner": 1 } },
///     "1": { "name": "solo_split", "params": { "k": 2 } }
///   },
///   "horizon": 100
/// }
/// ```
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GameConfig {
    pub players: Vec<PlayerConfig>,
    pub strategies: BTreeMap<String, StrategyConfig>,
    pub horizon: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub citation_cap: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outputs: Option<OutputConfig>,
    /// Optional second strategy assignment for `compare`, sharing the
    /// roster of this config.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alternative_strategies: Option<BTreeMap<String, StrategyConfig>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PlayerConfig {
    pub id: usize,
    #[serde(default)]
    pub initial_profile: Vec<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StrategyConfig {
    pub name: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, u64>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct OutputConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trajectory: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sidecar: Option<String>,
}

/// A validated configuration, ready to run.
pub struct ResolvedGame {
    pub config: GameConfig,
    pub initial: GameState,
    pub strategies: StrategyProfile,
    pub horizon: u32,
}

pub fn load_config(path: &Path) -> Result<GameConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::runtime(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::validation(format!("config {}: {e}", path.display())))
}

pub fn resolve(config: GameConfig) -> Result<ResolvedGame, CliError> {
    let initial = build_initial_state(&config)?;
    let strategies = build_strategy_profile(&config.players, &config.strategies, "strategies")?;
    if config.horizon == 0 {
        return Err(CliError::validation("horizon: must be at least 1".into()));
    }
    Ok(ResolvedGame {
        initial,
        strategies,
        horizon: config.horizon,
        config,
    })
}

pub fn build_initial_state(config: &GameConfig) -> Result<GameState, CliError> {
    if config.players.is_empty() {
        return Err(CliError::validation("players: roster is empty".into()));
    }
    let roster = config.players.len();
    let mut profiles = vec![None; roster];
    for (i, player) in config.players.iter().enumerate() {
        if player.id >= roster {
            return Err(CliError::validation(format!(
                "players[{i}].id: id {} does not fit a contiguous 0..{} roster",
                player.id,
                roster - 1
            )));
        }
        if profiles[player.id].is_some() {
            return Err(CliError::validation(format!(
                "players[{i}].id: duplicate id {}",
                player.id
            )));
        }
        let profile = CitationProfile::from_counts(player.initial_profile.iter().copied())
            .map_err(|e| {
                CliError::validation(format!("players[{i}].initial_profile: {e}"))
            })?;
        profiles[player.id] = Some(profile);
    }
    let profiles: Vec<CitationProfile> = profiles
        .into_iter()
        .map(|p| p.expect("contiguous unique ids fill every slot"))
        .collect();
    let mut state = GameState::with_profiles(profiles);
    if let Some(cap) = config.citation_cap {
        state = state.with_citation_cap(cap);
    }
    Ok(state)
}

/// Builds and validates a full strategy assignment for the roster.
/// `field` names the config section in error messages.
pub fn build_strategy_profile(
    players: &[PlayerConfig],
    strategies: &BTreeMap<String, StrategyConfig>,
    field: &str,
) -> Result<StrategyProfile, CliError> {
    let roster = players.len();
    for key in strategies.keys() {
        match key.parse::<usize>() {
            Ok(id) if id < roster => {}
            _ => {
                return Err(CliError::validation(format!(
                    "{field}.{key}: no player with id {key}"
                )))
            }
        }
    }
    let mut assignment = Vec::with_capacity(roster);
    for id in 0..roster {
        let key = id.to_string();
        let spec = strategies.get(&key).ok_or_else(|| {
            CliError::validation(format!("{field}.{key}: missing strategy for player {id}"))
        })?;
        let strategy = Strategy::from_spec(&spec.name, &spec.params)
            .map_err(|e| CliError::validation(format!("{field}.{key}: {e}")))?;
        assignment.push(strategy);
    }
    StrategyProfile::new(assignment)
        .map_err(|e| CliError::validation(format!("{field}: {e}")))
}

/// Checks that two configs describe the same roster (ids and initial
/// profiles), as required by `compare`.
pub fn require_same_roster(a: &GameConfig, b: &GameConfig) -> Result<(), CliError> {
    let key = |c: &GameConfig| {
        let mut players: Vec<(usize, Vec<u64>)> = c
            .players
            .iter()
            .map(|p| {
                let mut profile = p.initial_profile.clone();
                profile.sort_unstable();
                (p.id, profile)
            })
            .collect();
        players.sort();
        players
    };
    if key(a) != key(b) {
        return Err(CliError::validation(
            "players: the two configurations do not share a roster".into(),
        ));
    }
    Ok(())
}

