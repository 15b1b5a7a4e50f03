//! Deterministic strategy catalog and strategy profiles.
//!
//! A strategy maps `(game state, player)` to an action plan; the same input
//! always produces the same plan. Every catalog strategy conserves the
//! player's research potential by construction, so its plans always pass
//! `validate_action` on the states that arise in play.
//!
//! Strategies are addressable by name plus an integer parameter map (for
//! configs and reports), e.g. `solo_single_paper`, `solo_split{k=2}`,
//! `pair_single_joint{partner=1}`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::game::{ActionPlan, GameState, PlayerId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error("solo_split requires at least 2 parts, got {parts}")]
    SplitTooFew { parts: u64 },
    #[error("player {player} cannot partner with itself")]
    SelfPartner { player: PlayerId },
    #[error("strategy for player {player} references player {referenced} outside the {roster}-player roster")]
    ReferenceOutOfRoster {
        player: PlayerId,
        referenced: PlayerId,
        roster: usize,
    },
    #[error("players in a theorem-6 deviation must be pairwise distinct")]
    PlayersNotDistinct,
    #[error("not a perfect matching: {reason}")]
    NotPerfectMatching { reason: String },
    #[error("unknown strategy name {name:?}")]
    UnknownName { name: String },
    #[error("strategy {name:?} is missing parameter {param:?}")]
    MissingParam { name: String, param: &'static str },
    #[error("strategy {name:?} does not accept parameter {param:?}")]
    UnexpectedParam { name: String, param: String },
}

/// A deterministic rule for allocating one year of research potential.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// All potential into one single-author paper every year.
    SoloSinglePaper,
    /// Potential split into `parts` near-equal solo papers (floor/ceil);
    /// when the budget is smaller than `parts`, unit papers are produced
    /// until the budget runs out.
    SoloSplit { parts: u64 },
    /// All potential into one joint paper with `partner` every year.
    PairSingleJoint { partner: PlayerId },
    /// Potential split evenly between two joint papers with `partner`.
    /// The pair coordinates so the two papers receive equal totals: the
    /// lower-id player plays `[ceil(Q/2), floor(Q/2)]`, the higher-id player
    /// mirrors the slots. A budget of 1 degenerates to a single joint slot.
    PairTwoJointEvenSplit { partner: PlayerId },
    /// Two-player coordinated defection from a matched pairing. Years 1 and
    /// 2 follow the original pairing; in years 3 and 7 one unit goes to the
    /// original partner's joint slot and the remainder to a single joint
    /// paper with the co-deviator; all other years put everything into the
    /// co-deviator paper.
    Theorem6Deviation {
        co_deviator: PlayerId,
        original_partner: PlayerId,
    },
}

impl Strategy {
    pub fn solo_single_paper() -> Strategy {
        Strategy::SoloSinglePaper
    }

    pub fn solo_split(parts: u64) -> Result<Strategy, StrategyError> {
        if parts < 2 {
            return Err(StrategyError::SplitTooFew { parts });
        }
        Ok(Strategy::SoloSplit { parts })
    }

    pub fn pair_single_joint(partner: PlayerId) -> Strategy {
        Strategy::PairSingleJoint { partner }
    }

    pub fn pair_two_joint_even_split(partner: PlayerId) -> Strategy {
        Strategy::PairTwoJointEvenSplit { partner }
    }

    /// The action prescribed for `player` in `state`.
    ///
    /// Callers are expected to have validated the strategy against the
    /// roster (see [`StrategyProfile::new`]); the plan itself is total.
    pub fn plan(&self, state: &GameState, player: PlayerId) -> ActionPlan {
        let budget = state
            .research_potential(player)
            .expect("strategy evaluated for a roster player");
        match *self {
            Strategy::SoloSinglePaper => ActionPlan::with_solo(vec![budget]),
            Strategy::SoloSplit { parts } => {
                if budget < parts {
                    ActionPlan::with_solo(vec![1; budget as usize])
                } else {
                    let base = budget / parts;
                    let remainder = (budget % parts) as usize;
                    let mut slots = vec![base + 1; remainder];
                    slots.extend(std::iter::repeat(base).take(parts as usize - remainder));
                    ActionPlan::with_solo(slots)
                }
            }
            Strategy::PairSingleJoint { partner } => {
                let mut plan = ActionPlan::new();
                plan.set_joint(partner, vec![budget]);
                plan
            }
            Strategy::PairTwoJointEvenSplit { partner } => {
                let mut plan = ActionPlan::new();
                if budget == 1 {
                    plan.set_joint(partner, vec![1]);
                } else {
                    let high = budget.div_ceil(2);
                    let low = budget / 2;
                    // Mirrored slot order keeps the two paper totals equal.
                    let slots = if player < partner {
                        vec![high, low]
                    } else {
                        vec![low, high]
                    };
                    plan.set_joint(partner, slots);
                }
                plan
            }
            Strategy::Theorem6Deviation {
                co_deviator,
                original_partner,
            } => {
                let current_year = state.year() + 1;
                match current_year {
                    1 | 2 => Strategy::pair_single_joint(original_partner).plan(state, player),
                    3 | 7 => {
                        let mut plan = ActionPlan::new();
                        plan.set_joint(original_partner, vec![1]);
                        plan.set_joint(co_deviator, vec![budget - 1]);
                        plan
                    }
                    _ => {
                        let mut plan = ActionPlan::new();
                        plan.set_joint(co_deviator, vec![budget]);
                        plan
                    }
                }
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Strategy::SoloSinglePaper => "solo_single_paper",
            Strategy::SoloSplit { .. } => "solo_split",
            Strategy::PairSingleJoint { .. } => "pair_single_joint",
            Strategy::PairTwoJointEvenSplit { .. } => "pair_two_joint_even_split",
            Strategy::Theorem6Deviation { .. } => "theorem6_deviation",
        }
    }

    pub fn params(&self) -> BTreeMap<&'static str, u64> {
        let mut params = BTreeMap::new();
        match *self {
            Strategy::SoloSinglePaper => {}
            Strategy::SoloSplit { parts } => {
                params.insert("k", parts);
            }
            Strategy::PairSingleJoint { partner }
            | Strategy::PairTwoJointEvenSplit { partner } => {
                params.insert("partner", partner.0 as u64);
            }
            Strategy::Theorem6Deviation {
                co_deviator,
                original_partner,
            } => {
                params.insert("co_deviator", co_deviator.0 as u64);
                params.insert("original_partner", original_partner.0 as u64);
            }
        }
        params
    }

    /// Builds a strategy from its name and parameter map (the config-facing
    /// addressing scheme).
    pub fn from_spec(name: &str, params: &BTreeMap<String, u64>) -> Result<Strategy, StrategyError> {
        let require = |param: &'static str| {
            params
                .get(param)
                .copied()
                .ok_or_else(|| StrategyError::MissingParam {
                    name: name.to_string(),
                    param,
                })
        };
        let expect_params = |allowed: &[&str]| {
            params
                .keys()
                .find(|k| !allowed.contains(&k.as_str()))
                .map_or(Ok(()), |k| {
                    Err(StrategyError::UnexpectedParam {
                        name: name.to_string(),
                        param: k.clone(),
                    })
                })
        };
        match name {
            "solo_single_paper" => {
                expect_params(&[])?;
                Ok(Strategy::SoloSinglePaper)
            }
            "solo_split" => {
                expect_params(&["k"])?;
                Strategy::solo_split(require("k")?)
            }
            "pair_single_joint" => {
                expect_params(&["partner"])?;
                Ok(Strategy::pair_single_joint(PlayerId(require("partner")? as usize)))
            }
            "pair_two_joint_even_split" => {
                expect_params(&["partner"])?;
                Ok(Strategy::pair_two_joint_even_split(PlayerId(
                    require("partner")? as usize,
                )))
            }
            "theorem6_deviation" => {
                expect_params(&["co_deviator", "original_partner"])?;
                Ok(Strategy::Theorem6Deviation {
                    co_deviator: PlayerId(require("co_deviator")? as usize),
                    original_partner: PlayerId(require("original_partner")? as usize),
                })
            }
            _ => Err(StrategyError::UnknownName {
                name: name.to_string(),
            }),
        }
    }

    /// Players other than the acting player that this strategy refers to.
    fn referenced_players(&self) -> Vec<PlayerId> {
        match *self {
            Strategy::SoloSinglePaper | Strategy::SoloSplit { .. } => vec![],
            Strategy::PairSingleJoint { partner }
            | Strategy::PairTwoJointEvenSplit { partner } => vec![partner],
            Strategy::Theorem6Deviation {
                co_deviator,
                original_partner,
            } => vec![co_deviator, original_partner],
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params = self.params();
        if params.is_empty() {
            return write!(f, "{}", self.name());
        }
        let rendered: Vec<String> = params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "{}{{{}}}", self.name(), rendered.join(","))
    }
}

impl Serialize for Strategy {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let spec = StrategySpec {
            name: self.name().to_string(),
            params: self
                .params()
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
        };
        spec.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Strategy {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let spec = StrategySpec::deserialize(deserializer)?;
        Strategy::from_spec(&spec.name, &spec.params).map_err(serde::de::Error::custom)
    }
}

/// Wire form of a strategy: name plus integer parameters.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct StrategySpec {
    name: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    params: BTreeMap<String, u64>,
}

/// One strategy per player, indexed by player id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrategyProfile {
    assignment: Vec<Strategy>,
}

impl StrategyProfile {
    /// Validates that every referenced player is on the roster and distinct
    /// from the acting player.
    pub fn new(assignment: Vec<Strategy>) -> Result<Self, StrategyError> {
        let roster = assignment.len();
        for (i, strategy) in assignment.iter().enumerate() {
            let player = PlayerId(i);
            for referenced in strategy.referenced_players() {
                if referenced == player {
                    return Err(StrategyError::SelfPartner { player });
                }
                if referenced.0 >= roster {
                    return Err(StrategyError::ReferenceOutOfRoster {
                        player,
                        referenced,
                        roster,
                    });
                }
            }
        }
        Ok(Self { assignment })
    }

    /// Profile for a perfect matching: each matched pair mutually plays
    /// `pair_single_joint`. Errors unless every roster player appears in
    /// exactly one pair (an odd roster therefore has no matching profile).
    pub fn matching(player_count: usize, pairs: &[(PlayerId, PlayerId)]) -> Result<Self, StrategyError> {
        if pairs.len() * 2 != player_count {
            return Err(StrategyError::NotPerfectMatching {
                reason: format!(
                    "{} pairs cannot cover a roster of {player_count} players",
                    pairs.len()
                ),
            });
        }
        let mut assignment: Vec<Option<Strategy>> = vec![None; player_count];
        for &(a, b) in pairs {
            if a == b {
                return Err(StrategyError::NotPerfectMatching {
                    reason: format!("player {a} paired with itself"),
                });
            }
            for (player, partner) in [(a, b), (b, a)] {
                let slot = assignment.get_mut(player.0).ok_or_else(|| {
                    StrategyError::NotPerfectMatching {
                        reason: format!("player {player} is outside the roster"),
                    }
                })?;
                if slot.is_some() {
                    return Err(StrategyError::NotPerfectMatching {
                        reason: format!("player {player} appears in more than one pair"),
                    });
                }
                *slot = Some(Strategy::pair_single_joint(partner));
            }
        }
        let assignment = assignment
            .into_iter()
            .map(|s| s.expect("counted pairs cover the roster"))
            .collect();
        Self::new(assignment)
    }

    pub fn player_count(&self) -> usize {
        self.assignment.len()
    }

    pub fn strategy(&self, player: PlayerId) -> &Strategy {
        &self.assignment[player.0]
    }

    pub fn strategies(&self) -> &[Strategy] {
        &self.assignment
    }

    /// Copy of this profile with some players' strategies replaced.
    pub fn with_deviation(
        &self,
        deviation: &[(PlayerId, Strategy)],
    ) -> Result<Self, StrategyError> {
        let mut assignment = self.assignment.clone();
        for (player, strategy) in deviation {
            assignment[player.0] = strategy.clone();
        }
        Self::new(assignment)
    }
}

/// The coordinated two-player deviation used against a matched pairing:
/// `a1` and `a2` (matched to `a1_partner` and `a2_partner` respectively)
/// redirect their effort toward each other on the fixed year schedule of
/// [`Strategy::Theorem6Deviation`]. All four players must be distinct.
pub fn theorem6_deviation(
    a1: PlayerId,
    a2: PlayerId,
    a1_partner: PlayerId,
    a2_partner: PlayerId,
) -> Result<[(PlayerId, Strategy); 2], StrategyError> {
    let ids = [a1, a2, a1_partner, a2_partner];
    for (i, a) in ids.iter().enumerate() {
        if ids[i + 1..].contains(a) {
            return Err(StrategyError::PlayersNotDistinct);
        }
    }
    Ok([
        (
            a1,
            Strategy::Theorem6Deviation {
                co_deviator: a2,
                original_partner: a1_partner,
            },
        ),
        (
            a2,
            Strategy::Theorem6Deviation {
                co_deviator: a1,
                original_partner: a2_partner,
            },
        ),
    ])
}
