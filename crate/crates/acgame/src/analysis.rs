//! Decision procedures over utility trajectories: finite-horizon overtaking
//! verdicts, growth-law fits, social welfare, and brute-force search for
//! unstable coalitions.
//!
//! Overtaking is an asymptotic criterion (the difference of two utility
//! sequences must have positive limsup and non-negative liminf). At a finite
//! horizon it is decided on the tail window after a burn-in: integer utility
//! differences that stabilize in sign make the windowed min/max a reliable
//! proxy, and every verdict carries its evidence so callers can re-run at a
//! larger horizon when in doubt.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::bibliometrics::CitationProfile;
use crate::game::{run_game, GameError, GameState, PlayerId, Trajectory};
use crate::strategies::{theorem6_deviation, Strategy, StrategyError, StrategyProfile};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("series lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("series of length {len} is shorter than the required {min}")]
    SeriesTooShort { len: usize, min: usize },
    #[error("utility series must be non-decreasing (year {year} drops from {prev} to {value})")]
    NonMonotonic { year: usize, prev: u64, value: u64 },
    #[error("burn-in fraction {value} is outside (0, 1)")]
    InvalidBurnIn { value: f64 },
    #[error("degenerate fit: series contains a zero inside the fitted tail")]
    ZeroInTail,
    #[error("stability search supports k in {{1, 2}}, got {k}")]
    UnsupportedK { k: usize },
    #[error("deviation catalog is empty")]
    EmptyCatalog,
    #[error(transparent)]
    Strategy(#[from] StrategyError),
    #[error(transparent)]
    Game(#[from] GameError),
}

/// Per-year utility values (h-index after years 1..=N). Non-decreasing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UtilitySeries {
    values: Vec<u64>,
}

impl UtilitySeries {
    pub fn new(values: Vec<u64>) -> Result<Self, AnalysisError> {
        for (i, pair) in values.windows(2).enumerate() {
            if pair[1] < pair[0] {
                return Err(AnalysisError::NonMonotonic {
                    year: i + 2,
                    prev: pair[0],
                    value: pair[1],
                });
            }
        }
        Ok(Self { values })
    }

    pub fn from_trajectory(trajectory: &Trajectory, player: PlayerId) -> Result<Self, AnalysisError> {
        Ok(Self {
            values: trajectory.utilities(player)?,
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// Value after `year` (1-based).
    pub fn at_year(&self, year: usize) -> u64 {
        self.values[year - 1]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OvertakeVerdict {
    FirstOvertakesSecond,
    SecondOvertakesFirst,
    /// The tail mixes strictly positive and strictly negative differences,
    /// or the sequences merged after genuinely differing earlier.
    Neither,
    /// The sequences are identical throughout; the profiles behind them are
    /// outcome-equivalent.
    Inconclusive,
}

/// A verdict together with the tail evidence that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OvertakeReport {
    pub verdict: OvertakeVerdict,
    /// First year of the inspected tail window.
    pub tail_start: usize,
    pub tail_min: i64,
    pub tail_max: i64,
    /// First year from which the difference keeps the sign class of the
    /// verdict; absent for `Neither` and `Inconclusive`.
    pub stabilization_year: Option<usize>,
}

/// Decides whether `f` overtakes `g` (or vice versa) on the tail window
/// `n > burn_in * N`.
pub fn overtakes(
    f: &UtilitySeries,
    g: &UtilitySeries,
    burn_in: f64,
) -> Result<OvertakeReport, AnalysisError> {
    if f.len() != g.len() {
        return Err(AnalysisError::LengthMismatch {
            left: f.len(),
            right: g.len(),
        });
    }
    let n = f.len();
    if n < 10 {
        return Err(AnalysisError::SeriesTooShort { len: n, min: 10 });
    }
    if !(burn_in > 0.0 && burn_in < 1.0) {
        return Err(AnalysisError::InvalidBurnIn { value: burn_in });
    }

    let diff = |i: usize| f.values[i] as i64 - g.values[i] as i64;
    let tail_start = (burn_in * n as f64).floor() as usize + 1; // 1-based year
    let (mut tail_min, mut tail_max) = (i64::MAX, i64::MIN);
    for i in tail_start - 1..n {
        let d = diff(i);
        tail_min = tail_min.min(d);
        tail_max = tail_max.max(d);
    }

    let verdict = if tail_min >= 0 && tail_max > 0 {
        OvertakeVerdict::FirstOvertakesSecond
    } else if tail_max <= 0 && tail_min < 0 {
        OvertakeVerdict::SecondOvertakesFirst
    } else if tail_min == 0 && tail_max == 0 {
        if f.values == g.values {
            OvertakeVerdict::Inconclusive
        } else {
            OvertakeVerdict::Neither
        }
    } else {
        OvertakeVerdict::Neither
    };

    let stabilization_year = match verdict {
        OvertakeVerdict::FirstOvertakesSecond => {
            Some((0..n).rev().find(|&i| diff(i) < 0).map_or(1, |i| i + 2))
        }
        OvertakeVerdict::SecondOvertakesFirst => {
            Some((0..n).rev().find(|&i| diff(i) > 0).map_or(1, |i| i + 2))
        }
        _ => None,
    };

    Ok(OvertakeReport {
        verdict,
        tail_start,
        tail_min,
        tail_max,
        stabilization_year,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GrowthModel {
    /// `c * sqrt(n)`
    Sqrt,
    /// `c * n`
    Linear,
    /// `c * n^p` with some other exponent
    Power,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthFit {
    pub model: GrowthModel,
    pub exponent: f64,
    pub coefficient: f64,
    /// Maximum of `|fit - actual| / actual` over the fitted tail.
    pub max_relative_residual: f64,
}

const MODEL_EXPONENT_TOLERANCE: f64 = 0.05;

/// Least-squares fit of `log(s_n)` against `log(n)` over the tail half of
/// the series. Requires at least 100 points and a zero-free tail.
pub fn fit_growth(series: &UtilitySeries) -> Result<GrowthFit, AnalysisError> {
    let n = series.len();
    if n < 100 {
        return Err(AnalysisError::SeriesTooShort { len: n, min: 100 });
    }
    let tail_start = n / 2 + 1; // years n/2+1 ..= n
    let tail: Vec<(f64, f64)> = (tail_start..=n)
        .map(|year| (year as f64, series.at_year(year) as f64))
        .collect();
    if tail.iter().any(|&(_, s)| s == 0.0) {
        return Err(AnalysisError::ZeroInTail);
    }

    let m = tail.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &(year, value) in &tail {
        let x = year.ln();
        let y = value.ln();
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    let exponent = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    let coefficient = ((sy - exponent * sx) / m).exp();

    let max_relative_residual = tail
        .iter()
        .map(|&(year, value)| (coefficient * year.powf(exponent) - value).abs() / value)
        .fold(0.0, f64::max);

    let model = if (exponent - 0.5).abs() <= MODEL_EXPONENT_TOLERANCE {
        GrowthModel::Sqrt
    } else if (exponent - 1.0).abs() <= MODEL_EXPONENT_TOLERANCE {
        GrowthModel::Linear
    } else {
        GrowthModel::Power
    };

    Ok(GrowthFit {
        model,
        exponent,
        coefficient,
        max_relative_residual,
    })
}

/// Slope of the through-origin least-squares line `s = c * n` over the tail
/// half; the linear-model counterpart of [`fit_growth`].
pub fn fit_linear_slope(series: &UtilitySeries) -> Result<f64, AnalysisError> {
    let n = series.len();
    if n < 100 {
        return Err(AnalysisError::SeriesTooShort { len: n, min: 100 });
    }
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for year in n / 2 + 1..=n {
        let x = year as f64;
        sxy += x * series.at_year(year) as f64;
        sxx += x * x;
    }
    Ok(sxy / sxx)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WelfareVariant {
    /// Sum of the players' h-indices.
    SumH,
    /// h-index of the multiset of the players' h-indices.
    HOfH,
}

/// Aggregate success of the roster under the chosen variant.
pub fn social_welfare(state: &GameState, variant: WelfareVariant) -> u64 {
    let hs = state.profiles().iter().map(CitationProfile::h_index);
    match variant {
        WelfareVariant::SumH => hs.sum(),
        WelfareVariant::HOfH => CitationProfile::from_counts(hs)
            .expect("h-indices are within the citation cap")
            .h_index(),
    }
}

/// A named deviation constructor; instantiated per player (or per pair, for
/// the coordinated theorem-6 deviation) during the stability search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DeviationTemplate {
    SoloSinglePaper,
    SoloSplit { parts: u64 },
    PairSingleJoint,
    PairTwoJointEvenSplit,
    Theorem6Deviation,
}

impl DeviationTemplate {
    pub fn name(&self) -> String {
        match self {
            DeviationTemplate::SoloSinglePaper => "solo_single_paper".into(),
            DeviationTemplate::SoloSplit { parts } => format!("solo_split{{k={parts}}}"),
            DeviationTemplate::PairSingleJoint => "pair_single_joint".into(),
            DeviationTemplate::PairTwoJointEvenSplit => "pair_two_joint_even_split".into(),
            DeviationTemplate::Theorem6Deviation => "theorem6_deviation".into(),
        }
    }

    /// Parses a comma-separated catalog selection such as
    /// `solo_single_paper,solo_split{k=2},pair_single_joint`.
    pub fn parse_catalog(selection: &str) -> Result<Vec<DeviationTemplate>, StrategyError> {
        let mut entries = Vec::new();
        let mut depth = 0usize;
        let mut current = String::new();
        for c in selection.chars() {
            match c {
                '{' => {
                    depth += 1;
                    current.push(c);
                }
                '}' => {
                    depth = depth.saturating_sub(1);
                    current.push(c);
                }
                ',' if depth == 0 => {
                    entries.push(std::mem::take(&mut current));
                }
                _ => current.push(c),
            }
        }
        if !current.is_empty() {
            entries.push(current);
        }
        entries
            .iter()
            .map(|e| Self::parse_entry(e.trim()))
            .collect()
    }

    fn parse_entry(entry: &str) -> Result<DeviationTemplate, StrategyError> {
        match entry {
            "solo_single_paper" => Ok(DeviationTemplate::SoloSinglePaper),
            "pair_single_joint" => Ok(DeviationTemplate::PairSingleJoint),
            "pair_two_joint_even_split" => Ok(DeviationTemplate::PairTwoJointEvenSplit),
            "theorem6_deviation" => Ok(DeviationTemplate::Theorem6Deviation),
            _ => {
                if let Some(args) = entry
                    .strip_prefix("solo_split{k=")
                    .and_then(|s| s.strip_suffix('}'))
                {
                    let parts = args.parse().map_err(|_| StrategyError::UnknownName {
                        name: entry.to_string(),
                    })?;
                    return Strategy::solo_split(parts).map(|_| DeviationTemplate::SoloSplit { parts });
                }
                Err(StrategyError::UnknownName {
                    name: entry.to_string(),
                })
            }
        }
    }

    /// Concrete strategies this template offers to a single deviator.
    fn instantiate_for(&self, player: PlayerId, roster: usize) -> Vec<Strategy> {
        let others = (0..roster).map(PlayerId).filter(|&p| p != player);
        match self {
            DeviationTemplate::SoloSinglePaper => vec![Strategy::SoloSinglePaper],
            DeviationTemplate::SoloSplit { parts } => vec![Strategy::SoloSplit { parts: *parts }],
            DeviationTemplate::PairSingleJoint => {
                others.map(Strategy::pair_single_joint).collect()
            }
            DeviationTemplate::PairTwoJointEvenSplit => {
                others.map(Strategy::pair_two_joint_even_split).collect()
            }
            DeviationTemplate::Theorem6Deviation => vec![], // pair-coordinated only
        }
    }

    /// Coordinated assignments this template offers to a pair of deviators.
    fn instantiate_for_pair(
        &self,
        a: PlayerId,
        b: PlayerId,
        baseline: &StrategyProfile,
    ) -> Vec<Vec<(PlayerId, Strategy)>> {
        match self {
            DeviationTemplate::Theorem6Deviation => {
                let partner_of = |p: PlayerId| match baseline.strategy(p) {
                    Strategy::PairSingleJoint { partner } => Some(*partner),
                    _ => None,
                };
                match (partner_of(a), partner_of(b)) {
                    (Some(pa), Some(pb)) => theorem6_deviation(a, b, pa, pb)
                        .map(|pair| vec![pair.to_vec()])
                        .unwrap_or_default(),
                    _ => vec![],
                }
            }
            _ => vec![],
        }
    }
}

/// The built-in catalog: every named strategy plus the small parametric
/// splits, in a fixed enumeration order.
pub fn default_catalog() -> Vec<DeviationTemplate> {
    vec![
        DeviationTemplate::SoloSinglePaper,
        DeviationTemplate::SoloSplit { parts: 2 },
        DeviationTemplate::SoloSplit { parts: 3 },
        DeviationTemplate::PairSingleJoint,
        DeviationTemplate::PairTwoJointEvenSplit,
        DeviationTemplate::Theorem6Deviation,
    ]
}

/// A coalition that profitably deviates: every member's deviation series
/// overtakes their baseline series.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeviationWitness {
    pub players: Vec<PlayerId>,
    pub strategies: Vec<Strategy>,
    pub reports: Vec<OvertakeReport>,
}

/// Outcome of a stability search. Stability is always relative to the
/// supplied deviation catalog: an empty witness list certifies only that no
/// catalog deviation of size at most `k` overtakes the baseline.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StabilityReport {
    pub stable: bool,
    pub k: usize,
    pub horizon: u32,
    pub burn_in: f64,
    pub catalog: Vec<String>,
    pub candidates_checked: usize,
    /// All witnesses found, in deterministic enumeration order (subsets by
    /// size then lexicographically, assignments in catalog order).
    pub witnesses: Vec<DeviationWitness>,
}

impl StabilityReport {
    /// The first witness in enumeration order, if any.
    pub fn witness(&self) -> Option<&DeviationWitness> {
        self.witnesses.first()
    }
}

/// Enumerates all player subsets of size `<= k` and all catalog deviation
/// assignments to each subset, simulating every candidate to `horizon` and
/// keeping those where every deviator's series overtakes their baseline
/// series. Candidates are independent and evaluated in parallel; the report
/// aggregates them in enumeration order.
pub fn find_unstable_set(
    initial: &GameState,
    baseline: &StrategyProfile,
    catalog: &[DeviationTemplate],
    k: usize,
    horizon: u32,
    burn_in: f64,
) -> Result<StabilityReport, AnalysisError> {
    if !(1..=2).contains(&k) {
        return Err(AnalysisError::UnsupportedK { k });
    }
    if catalog.is_empty() {
        return Err(AnalysisError::EmptyCatalog);
    }
    let roster = initial.player_count();
    if baseline.player_count() != roster {
        return Err(AnalysisError::Game(GameError::RosterMismatch {
            profile: baseline.player_count(),
            roster,
        }));
    }

    let baseline_trajectory = run_game(initial, baseline, horizon)?;
    let baseline_series: Vec<UtilitySeries> = (0..roster)
        .map(|p| UtilitySeries::from_trajectory(&baseline_trajectory, PlayerId(p)))
        .collect::<Result<_, _>>()?;

    // Per-player options: catalog instantiations that actually deviate.
    let options_for = |player: PlayerId| -> Vec<Strategy> {
        catalog
            .iter()
            .flat_map(|t| t.instantiate_for(player, roster))
            .filter(|s| s != baseline.strategy(player))
            .collect()
    };

    let mut candidates: Vec<Vec<(PlayerId, Strategy)>> = Vec::new();
    for p in 0..roster {
        let player = PlayerId(p);
        for strategy in options_for(player) {
            candidates.push(vec![(player, strategy)]);
        }
    }
    if k >= 2 {
        for a in 0..roster {
            for b in a + 1..roster {
                let (a, b) = (PlayerId(a), PlayerId(b));
                for sa in options_for(a) {
                    for sb in options_for(b) {
                        candidates.push(vec![(a, sa.clone()), (b, sb)]);
                    }
                }
                for template in catalog {
                    candidates.extend(template.instantiate_for_pair(a, b, baseline));
                }
            }
        }
    }

    let witnesses: Vec<DeviationWitness> = candidates
        .par_iter()
        .map(|assignment| -> Result<Option<DeviationWitness>, AnalysisError> {
            let deviated = baseline.with_deviation(assignment)?;
            let trajectory = run_game(initial, &deviated, horizon)?;
            let mut reports = Vec::with_capacity(assignment.len());
            for (player, _) in assignment {
                let series = UtilitySeries::from_trajectory(&trajectory, *player)?;
                let report = overtakes(&series, &baseline_series[player.0], burn_in)?;
                if report.verdict != OvertakeVerdict::FirstOvertakesSecond {
                    return Ok(None);
                }
                reports.push(report);
            }
            Ok(Some(DeviationWitness {
                players: assignment.iter().map(|(p, _)| *p).collect(),
                strategies: assignment.iter().map(|(_, s)| s.clone()).collect(),
                reports,
            }))
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .collect();

    Ok(StabilityReport {
        stable: witnesses.is_empty(),
        k,
        horizon,
        burn_in,
        catalog: catalog.iter().map(DeviationTemplate::name).collect(),
        candidates_checked: candidates.len(),
        witnesses,
    })
}
