//! The repeated collaboration game engine.
//!
//! Each year every player holds `h + 1` units of research potential, where
//! `h` is their current h-index. A player allocates the whole budget across
//! solo paper slots and per-partner joint paper slots. Every slot with a
//! positive total yields one paper whose citation count equals the total
//! invested effort; the citations are credited immediately to every author
//! who invested in the slot, and never change afterwards.
//!
//! Joint slots are aligned positionally: slot `i` of `a`'s vector toward
//! `a'` pairs with slot `i` of `a'`'s vector toward `a`, with missing tail
//! entries treated as zero. A slot funded by only one side still produces a
//! paper, authored by the investing side alone.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bibliometrics::{CitationProfile, ProfileError, DEFAULT_CITATION_CAP};
use crate::strategies::StrategyProfile;

/// Index into the player roster; stable across years.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct PlayerId(pub usize);

impl fmt::Display for PlayerId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("player {player} is not in the roster of {roster} players")]
    UnknownPlayer { player: PlayerId, roster: usize },
    #[error("plan total {actual} does not conserve research potential {expected}")]
    ConservationViolation { expected: u64, actual: u64 },
    #[error("solo slot {index} is zero; a zero solo slot produces nothing and is disallowed")]
    ZeroSoloEntry { index: usize },
    #[error("joint allocation keyed to the acting player itself")]
    SelfPartner,
    #[error("joint allocation targets unknown partner {partner}")]
    UnknownPartner { partner: PlayerId },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("player {player} is not in the roster of {roster} players")]
    UnknownPlayer { player: PlayerId, roster: usize },
    #[error("no action plan supplied for player {player}")]
    MissingPlan { player: PlayerId },
    #[error("invalid action in year {year} for player {player}: {source}")]
    InvalidAction {
        year: u32,
        player: PlayerId,
        source: ActionError,
    },
    #[error("horizon must be at least 1")]
    InvalidHorizon,
    #[error("strategy profile covers {profile} players but the roster has {roster}")]
    RosterMismatch { profile: usize, roster: usize },
    #[error("citation overflow for player {player} in year {year}: {source}")]
    CitationOverflow {
        year: u32,
        player: PlayerId,
        source: ProfileError,
    },
}

/// Full game state: the number of completed years plus one citation profile
/// per player. Profiles only ever gain elements as years advance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GameState {
    year: u32,
    citation_cap: u64,
    profiles: Vec<CitationProfile>,
}

impl GameState {
    /// Fresh state: `players` empty profiles, year 0.
    pub fn new(players: usize) -> Self {
        Self::with_profiles(vec![CitationProfile::new(); players])
    }

    /// State seeded with arbitrary initial profiles, year 0.
    pub fn with_profiles(profiles: Vec<CitationProfile>) -> Self {
        Self {
            year: 0,
            citation_cap: DEFAULT_CITATION_CAP,
            profiles,
        }
    }

    /// Overrides the per-paper citation cap enforced during resolution.
    pub fn with_citation_cap(mut self, cap: u64) -> Self {
        self.citation_cap = cap;
        self
    }

    /// Number of completed years. The year currently being planned is
    /// `year() + 1`, counted from 1.
    pub fn year(&self) -> u32 {
        self.year
    }

    pub fn player_count(&self) -> usize {
        self.profiles.len()
    }

    pub fn players(&self) -> impl Iterator<Item = PlayerId> {
        (0..self.profiles.len()).map(PlayerId)
    }

    pub fn citation_cap(&self) -> u64 {
        self.citation_cap
    }

    pub fn contains(&self, player: PlayerId) -> bool {
        player.0 < self.profiles.len()
    }

    pub fn profile(&self, player: PlayerId) -> Result<&CitationProfile, GameError> {
        self.profiles.get(player.0).ok_or(GameError::UnknownPlayer {
            player,
            roster: self.profiles.len(),
        })
    }

    pub fn profiles(&self) -> &[CitationProfile] {
        &self.profiles
    }

    /// Current h-index of `player`.
    pub fn h(&self, player: PlayerId) -> Result<u64, GameError> {
        Ok(self.profile(player)?.h_index())
    }

    /// Research potential for the coming year: `h + 1`.
    pub fn research_potential(&self, player: PlayerId) -> Result<u64, GameError> {
        Ok(self.profile(player)?.h_index() + 1)
    }
}

/// One player's allocation of research potential for a single year.
///
/// `solo[i]` funds a single-author paper slot; `joint[partner][i]` funds
/// slot `i` of the shared sequence with `partner`. Solo entries must be
/// positive; joint entries may be zero (they pad the alignment with a
/// partner's longer vector).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionPlan {
    solo: Vec<u64>,
    joint: BTreeMap<PlayerId, Vec<u64>>,
}

impl ActionPlan {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_solo(slots: Vec<u64>) -> Self {
        Self {
            solo: slots,
            joint: BTreeMap::new(),
        }
    }

    pub fn add_solo(&mut self, effort: u64) -> &mut Self {
        self.solo.push(effort);
        self
    }

    pub fn set_joint(&mut self, partner: PlayerId, slots: Vec<u64>) -> &mut Self {
        self.joint.insert(partner, slots);
        self
    }

    pub fn solo(&self) -> &[u64] {
        &self.solo
    }

    pub fn joint(&self) -> &BTreeMap<PlayerId, Vec<u64>> {
        &self.joint
    }

    pub fn joint_with(&self, partner: PlayerId) -> &[u64] {
        self.joint.get(&partner).map_or(&[], Vec::as_slice)
    }

    /// Total research potential committed by this plan.
    pub fn total_invested(&self) -> u64 {
        let solo: u64 = self.solo.iter().sum();
        let joint: u64 = self.joint.values().flatten().sum();
        solo + joint
    }
}

/// Checks that a plan is well-formed for `player` in `state`: known player,
/// positive solo slots, no self or out-of-roster partners, and exact
/// conservation of the player's research potential.
pub fn validate_action(
    state: &GameState,
    player: PlayerId,
    plan: &ActionPlan,
) -> Result<(), ActionError> {
    if !state.contains(player) {
        return Err(ActionError::UnknownPlayer {
            player,
            roster: state.player_count(),
        });
    }
    if let Some(index) = plan.solo.iter().position(|&q| q == 0) {
        return Err(ActionError::ZeroSoloEntry { index });
    }
    for &partner in plan.joint.keys() {
        if partner == player {
            return Err(ActionError::SelfPartner);
        }
        if !state.contains(partner) {
            return Err(ActionError::UnknownPartner { partner });
        }
    }
    let expected = state
        .profile(player)
        .expect("player checked above")
        .h_index()
        + 1;
    let actual = plan.total_invested();
    if actual != expected {
        return Err(ActionError::ConservationViolation { expected, actual });
    }
    Ok(())
}

/// Identifier of a paper within one game: publication year plus the
/// deterministic sequence number of the paper inside that year.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PaperId {
    pub year: u32,
    pub seq: u32,
}

impl fmt::Display for PaperId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p{}.{}", self.year, self.seq)
    }
}

/// A published paper. Citation counts are fixed at publication.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Paper {
    pub id: PaperId,
    pub year: u32,
    pub citations: u64,
    /// One or two authors, ascending by id.
    pub authors: Vec<PlayerId>,
}

impl Paper {
    pub fn has_author(&self, player: PlayerId) -> bool {
        self.authors.contains(&player)
    }
}

/// Resolves one year: validates every plan, produces the papers implied by
/// the solo and aligned joint slots, credits citations, and advances the
/// year by 1. Any validation failure aborts with no state change.
pub fn resolve_year(
    state: &GameState,
    plans: &BTreeMap<PlayerId, ActionPlan>,
) -> Result<(GameState, Vec<Paper>), GameError> {
    let year = state.year + 1;
    for player in state.players() {
        let plan = plans
            .get(&player)
            .ok_or(GameError::MissingPlan { player })?;
        validate_action(state, player, plan).map_err(|source| GameError::InvalidAction {
            year,
            player,
            source,
        })?;
    }

    let mut papers = Vec::new();
    let mut seq = 0u32;
    let mut paper = |citations: u64, authors: Vec<PlayerId>| {
        debug_assert!(matches!(authors.len(), 1 | 2));
        let p = Paper {
            id: PaperId { year, seq },
            year,
            citations,
            authors,
        };
        seq += 1;
        p
    };

    for player in state.players() {
        for &effort in plans[&player].solo() {
            papers.push(paper(effort, vec![player]));
        }
    }
    for a in state.players() {
        for b in state.players().filter(|&b| b > a) {
            let from_a = plans[&a].joint_with(b);
            let from_b = plans[&b].joint_with(a);
            for i in 0..from_a.len().max(from_b.len()) {
                let qa = from_a.get(i).copied().unwrap_or(0);
                let qb = from_b.get(i).copied().unwrap_or(0);
                if qa + qb == 0 {
                    continue;
                }
                let mut authors = Vec::with_capacity(2);
                if qa > 0 {
                    authors.push(a);
                }
                if qb > 0 {
                    authors.push(b);
                }
                papers.push(paper(qa + qb, authors));
            }
        }
    }

    let budget: u64 = state
        .players()
        .map(|p| state.profiles[p.0].h_index() + 1)
        .sum();
    let produced: u64 = papers.iter().map(|p| p.citations).sum();
    debug_assert_eq!(produced, budget, "citation conservation");

    let mut next = state.clone();
    next.year = year;
    for p in &papers {
        for &author in &p.authors {
            next.profiles[author.0]
                .push_capped(p.citations, next.citation_cap)
                .map_err(|source| GameError::CitationOverflow {
                    year,
                    player: author,
                    source,
                })?;
        }
    }
    Ok((next, papers))
}

/// Record of one resolved year: the papers published and every player's
/// h-index (their utility) at the end of the year.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct YearRecord {
    pub year: u32,
    pub papers: Vec<Paper>,
    pub utilities: Vec<u64>,
}

/// Deterministic record of a full game run.
///
/// Per-year citation-profile snapshots are not stored (they grow
/// quadratically with the horizon); they can be rebuilt on demand with
/// [`Trajectory::profile_after_year`] since profiles only gain elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Trajectory {
    initial_profiles: Vec<CitationProfile>,
    final_profiles: Vec<CitationProfile>,
    years: Vec<YearRecord>,
}

impl Trajectory {
    pub fn player_count(&self) -> usize {
        self.initial_profiles.len()
    }

    pub fn horizon(&self) -> u32 {
        self.years.len() as u32
    }

    pub fn years(&self) -> &[YearRecord] {
        &self.years
    }

    pub fn initial_profiles(&self) -> &[CitationProfile] {
        &self.initial_profiles
    }

    pub fn final_profiles(&self) -> &[CitationProfile] {
        &self.final_profiles
    }

    /// Utility (h-index) of `player` after each year, indexed from year 1.
    pub fn utilities(&self, player: PlayerId) -> Result<Vec<u64>, GameError> {
        if player.0 >= self.player_count() {
            return Err(GameError::UnknownPlayer {
                player,
                roster: self.player_count(),
            });
        }
        Ok(self.years.iter().map(|y| y.utilities[player.0]).collect())
    }

    /// Rebuilds the citation profile of `player` after `year` resolved years.
    pub fn profile_after_year(&self, player: PlayerId, year: u32) -> Result<CitationProfile, GameError> {
        if player.0 >= self.player_count() {
            return Err(GameError::UnknownPlayer {
                player,
                roster: self.player_count(),
            });
        }
        let mut profile = self.initial_profiles[player.0].clone();
        for record in self.years.iter().take(year as usize) {
            for paper in &record.papers {
                if paper.has_author(player) {
                    profile
                        .push(paper.citations)
                        .expect("replayed citation within cap");
                }
            }
        }
        Ok(profile)
    }
}

/// Plays `horizon` years from `initial`, one plan per player per year drawn
/// from `profile`. Identical inputs yield identical trajectories.
pub fn run_game(
    initial: &GameState,
    profile: &StrategyProfile,
    horizon: u32,
) -> Result<Trajectory, GameError> {
    if horizon == 0 {
        return Err(GameError::InvalidHorizon);
    }
    if profile.player_count() != initial.player_count() {
        return Err(GameError::RosterMismatch {
            profile: profile.player_count(),
            roster: initial.player_count(),
        });
    }
    let mut state = initial.clone();
    let mut years = Vec::with_capacity(horizon as usize);
    for _ in 0..horizon {
        let plans: BTreeMap<PlayerId, ActionPlan> = state
            .players()
            .map(|p| (p, profile.strategy(p).plan(&state, p)))
            .collect();
        let (next, papers) = resolve_year(&state, &plans)?;
        let utilities = next.players().map(|p| next.profiles[p.0].h_index()).collect();
        years.push(YearRecord {
            year: next.year,
            papers,
            utilities,
        });
        state = next;
    }
    Ok(Trajectory {
        initial_profiles: initial.profiles.clone(),
        final_profiles: state.profiles,
        years,
    })
}
