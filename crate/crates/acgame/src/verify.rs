//! Built-in verification suite: every analytical claim the toolkit is
//! expected to reproduce, run end to end against the real engine.
//!
//! Each check returns a [`CheckOutcome`] with measured values, so the same
//! checks back both the `acceptance` integration-test target and the CLI
//! `verify` command.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::{
    default_catalog, find_unstable_set, fit_growth, fit_linear_slope, overtakes, GrowthModel,
    OvertakeVerdict, UtilitySeries,
};
use crate::bibliometrics::CitationProfile;
use crate::calibration::{
    corpus_from_trajectory, single_author_curve, spearman, two_author_curve, Corpus,
};
use crate::game::{run_game, GameState, PlayerId, Trajectory};
use crate::strategies::{Strategy, StrategyProfile};

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub id: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub details: String,
}

impl CheckOutcome {
    fn pass(id: &'static str, name: &'static str, details: String) -> Self {
        Self {
            id,
            name,
            passed: true,
            details,
        }
    }

    fn fail(id: &'static str, name: &'static str, details: String) -> Self {
        Self {
            id,
            name,
            passed: false,
            details,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct VerifyOptions {
    /// Overrides the horizon of the trajectory and stability checks
    /// (defaults: 10,000 years for exact trajectories, 1,000 for verdicts).
    /// The growth-fit, oracle, conservation, and calibration checks run at
    /// their own fixed scales.
    pub horizon: Option<u32>,
}

impl VerifyOptions {
    fn trajectory_horizon(&self) -> u32 {
        self.horizon.unwrap_or(10_000)
    }

    fn verdict_horizon(&self) -> u32 {
        self.horizon.unwrap_or(1_000)
    }
}

pub const BURN_IN: f64 = 0.5;
const RUNTIME_BUDGET: Duration = Duration::from_secs(5);

/// Runs every check in order.
pub fn run_all(options: &VerifyOptions) -> Vec<CheckOutcome> {
    vec![
        check_prop1_solo_exact_growth(options),
        check_prop3_pair_split_exact_growth(options),
        check_prop2_pair_joint_growth_bound(options),
        check_lemma1_solo_overtakes_splits(options),
        check_thm4_two_player_equilibrium(options),
        check_thm5_thm6_matching_stability(options),
        check_growth_law_fits(),
        check_bibliometrics_oracle_agreement(),
        check_citation_conservation(),
        check_calibration_closure(),
    ]
}

fn solo_trajectory(horizon: u32) -> Trajectory {
    let profile = StrategyProfile::new(vec![Strategy::solo_single_paper()]).unwrap();
    run_game(&GameState::new(1), &profile, horizon).expect("solo game runs")
}

fn pair_profile(strategy: fn(PlayerId) -> Strategy) -> StrategyProfile {
    StrategyProfile::new(vec![strategy(PlayerId(1)), strategy(PlayerId(0))]).unwrap()
}

fn pair_trajectory(strategy: fn(PlayerId) -> Strategy, horizon: u32) -> Trajectory {
    run_game(&GameState::new(2), &pair_profile(strategy), horizon).expect("pair game runs")
}

fn utilities(trajectory: &Trajectory, player: usize) -> Vec<u64> {
    trajectory.utilities(PlayerId(player)).expect("roster player")
}

/// Single-player, all effort in one paper per year: the utility after year
/// `n` must equal `floor((-1 + sqrt(1 + 8n)) / 2)` for every year, within
/// the runtime budget.
pub fn check_prop1_solo_exact_growth(options: &VerifyOptions) -> CheckOutcome {
    const ID: &str = "1";
    const NAME: &str = "prop1_solo_exact_growth";
    let horizon = options.trajectory_horizon();
    let start = Instant::now();
    let series = utilities(&solo_trajectory(horizon), 0);
    let elapsed = start.elapsed();

    for (i, &actual) in series.iter().enumerate() {
        let n = (i + 1) as u64;
        let expected = ((1 + 8 * n).isqrt() - 1) / 2;
        if actual != expected {
            return CheckOutcome::fail(
                ID,
                NAME,
                format!("mismatch at n={n}: simulated {actual}, closed form {expected}"),
            );
        }
    }
    if elapsed > RUNTIME_BUDGET {
        return CheckOutcome::fail(
            ID,
            NAME,
            format!("trajectory matched but took {elapsed:.2?} (budget {RUNTIME_BUDGET:?})"),
        );
    }
    CheckOutcome::pass(
        ID,
        NAME,
        format!(
            "all {horizon} years equal floor((-1+sqrt(1+8n))/2); final h = {}; {elapsed:.2?}",
            series.last().unwrap()
        ),
    )
}

/// Two players splitting evenly between two joint papers: compares the
/// simulated utility against `floor((-1 + sqrt(1 + 16n)) / 2)` for every
/// year, and against the hand-simulated anchor points n=1,2,4.
pub fn check_prop3_pair_split_exact_growth(options: &VerifyOptions) -> CheckOutcome {
    const ID: &str = "2";
    const NAME: &str = "prop3_pair_split_exact_growth";
    let horizon = options.trajectory_horizon();
    let series = utilities(
        &pair_trajectory(Strategy::pair_two_joint_even_split, horizon),
        0,
    );

    let anchors = [(1u64, 1u64), (2, 2), (4, 3)];
    let mut anchor_report = Vec::new();
    let mut anchors_ok = true;
    for (n, expected) in anchors {
        if n <= series.len() as u64 {
            let actual = series[n as usize - 1];
            anchors_ok &= actual == expected;
            anchor_report.push(format!("n={n}: {actual} (want {expected})"));
        }
    }

    let mismatch = series.iter().enumerate().find_map(|(i, &actual)| {
        let n = (i + 1) as u64;
        let expected = ((1 + 16 * n).isqrt() - 1) / 2;
        (actual != expected).then_some((n, actual, expected))
    });

    match (mismatch, anchors_ok) {
        (None, true) => CheckOutcome::pass(
            ID,
            NAME,
            format!(
                "all {horizon} years equal floor((-1+sqrt(1+16n))/2); anchors {}",
                anchor_report.join(", ")
            ),
        ),
        (Some((n, actual, expected)), anchors_ok) => CheckOutcome::fail(
            ID,
            NAME,
            format!(
                "first mismatch at n={n}: simulated {actual}, stated closed form {expected}; \
                 anchors {} ({}); the simulated trajectory is floor(sqrt(4n+3))-1, which agrees \
                 with the stated form asymptotically (~2*sqrt(n)) but not pointwise",
                anchor_report.join(", "),
                if anchors_ok { "all match" } else { "anchor mismatch" },
            ),
        ),
        (None, false) => CheckOutcome::fail(
            ID,
            NAME,
            format!("anchor mismatch: {}", anchor_report.join(", ")),
        ),
    }
}

/// Two players pooling everything into one joint paper: the utility after
/// year `n` must be at least `floor(n / 2)` for every year, with the
/// hand-simulated anchors n=2, 4, 11.
pub fn check_prop2_pair_joint_growth_bound(options: &VerifyOptions) -> CheckOutcome {
    const ID: &str = "3";
    const NAME: &str = "prop2_pair_joint_growth_bound";
    let horizon = options.trajectory_horizon();
    let series = utilities(&pair_trajectory(Strategy::pair_single_joint, horizon), 0);

    for (i, &actual) in series.iter().enumerate() {
        let n = (i + 1) as u64;
        if actual < n / 2 {
            return CheckOutcome::fail(
                ID,
                NAME,
                format!("bound violated at n={n}: simulated {actual} < floor(n/2) = {}", n / 2),
            );
        }
    }
    for (n, expected) in [(2u64, 2u64), (4, 3), (11, 7)] {
        if n <= series.len() as u64 {
            let actual = series[n as usize - 1];
            if actual != expected {
                return CheckOutcome::fail(
                    ID,
                    NAME,
                    format!("anchor mismatch at n={n}: simulated {actual}, hand value {expected}"),
                );
            }
        }
    }
    CheckOutcome::pass(
        ID,
        NAME,
        format!(
            "utility >= floor(n/2) for all {horizon} years; anchors n=2,4,11 match; final h = {}",
            series.last().unwrap()
        ),
    )
}

/// Concentrating solo effort overtakes splitting it across 2 or 3 papers.
pub fn check_lemma1_solo_overtakes_splits(options: &VerifyOptions) -> CheckOutcome {
    const ID: &str = "4";
    const NAME: &str = "lemma1_solo_overtakes_splits";
    let horizon = options.verdict_horizon();
    let single = UtilitySeries::new(utilities(&solo_trajectory(horizon), 0)).unwrap();

    let mut verdicts = Vec::new();
    for parts in [2u64, 3] {
        let profile = StrategyProfile::new(vec![Strategy::solo_split(parts).unwrap()]).unwrap();
        let split_traj = run_game(&GameState::new(1), &profile, horizon).expect("split game runs");
        let split = UtilitySeries::new(utilities(&split_traj, 0)).unwrap();
        let report = overtakes(&single, &split, BURN_IN).expect("well-formed series");
        if report.verdict != OvertakeVerdict::FirstOvertakesSecond {
            return CheckOutcome::fail(
                ID,
                NAME,
                format!(
                    "single paper vs solo_split{{k={parts}}} at horizon {horizon}: verdict {:?} \
                     (tail min {}, max {})",
                    report.verdict, report.tail_min, report.tail_max
                ),
            );
        }
        verdicts.push(format!(
            "vs k={parts}: FirstOvertakesSecond (tail min {}, max {})",
            report.tail_min, report.tail_max
        ));
    }
    CheckOutcome::pass(ID, NAME, verdicts.join("; "))
}

/// Two-player equilibrium structure: the single-joint-paper profile is
/// stable against the whole catalog at k=2, while the two-joint-papers
/// profile is unstable, witnessed by both players switching to the single
/// joint paper.
pub fn check_thm4_two_player_equilibrium(options: &VerifyOptions) -> CheckOutcome {
    const ID: &str = "5";
    const NAME: &str = "thm4_two_player_equilibrium";
    let horizon = options.verdict_horizon();
    let catalog = default_catalog();
    let initial = GameState::new(2);

    let single_joint = pair_profile(Strategy::pair_single_joint);
    let report = find_unstable_set(&initial, &single_joint, &catalog, 2, horizon, BURN_IN)
        .expect("stability search runs");
    if !report.stable {
        let witness = report.witness().expect("unstable reports carry a witness");
        return CheckOutcome::fail(
            ID,
            NAME,
            format!(
                "pair_single_joint profile reported unstable: players {:?} deviate via {:?}",
                witness.players,
                witness.strategies.iter().map(Strategy::to_string).collect::<Vec<_>>()
            ),
        );
    }
    let candidates_stable = report.candidates_checked;

    let two_joint = pair_profile(Strategy::pair_two_joint_even_split);
    let report = find_unstable_set(&initial, &two_joint, &catalog, 2, horizon, BURN_IN)
        .expect("stability search runs");
    if report.stable {
        return CheckOutcome::fail(
            ID,
            NAME,
            "pair_two_joint_even_split profile unexpectedly reported stable".to_string(),
        );
    }
    let both_switch = report.witnesses.iter().find(|w| {
        w.players == [PlayerId(0), PlayerId(1)]
            && w.strategies
                == [
                    Strategy::pair_single_joint(PlayerId(1)),
                    Strategy::pair_single_joint(PlayerId(0)),
                ]
    });
    match both_switch {
        Some(_) => CheckOutcome::pass(
            ID,
            NAME,
            format!(
                "single-joint profile stable over {candidates_stable} candidates; two-joint \
                 profile unstable with the coordinated switch to pair_single_joint among {} \
                 witnesses",
                report.witnesses.len()
            ),
        ),
        None => CheckOutcome::fail(
            ID,
            NAME,
            "two-joint profile unstable, but the coordinated switch to pair_single_joint \
             is not among the witnesses"
                .to_string(),
        ),
    }
}

/// Four players in a perfect matching: no single player can profitably
/// deviate (k=1 stable), but two cross-pair players running the scheduled
/// defection both overtake their matched baselines (k=2 unstable).
pub fn check_thm5_thm6_matching_stability(options: &VerifyOptions) -> CheckOutcome {
    const ID: &str = "6";
    const NAME: &str = "thm5_thm6_matching_stability";
    let horizon = options.verdict_horizon();
    let catalog = default_catalog();
    let initial = GameState::new(4);
    let matched = StrategyProfile::matching(
        4,
        &[(PlayerId(0), PlayerId(1)), (PlayerId(2), PlayerId(3))],
    )
    .unwrap();

    let solo_report = find_unstable_set(&initial, &matched, &catalog, 1, horizon, BURN_IN)
        .expect("stability search runs");
    if !solo_report.stable {
        let witness = solo_report.witness().expect("witness");
        return CheckOutcome::fail(
            ID,
            NAME,
            format!(
                "k=1 search found a unilateral deviation: player {:?} via {:?}",
                witness.players, witness.strategies
            ),
        );
    }

    let pair_report = find_unstable_set(&initial, &matched, &catalog, 2, horizon, BURN_IN)
        .expect("stability search runs");
    if pair_report.stable {
        return CheckOutcome::fail(
            ID,
            NAME,
            format!(
                "k=2 search over {} candidates found no unstable pair",
                pair_report.candidates_checked
            ),
        );
    }
    let scheduled = pair_report.witnesses.iter().find(|w| {
        w.strategies
            .iter()
            .all(|s| matches!(s, Strategy::Theorem6Deviation { .. }))
    });
    match scheduled {
        Some(witness) => {
            let both_overtake = witness
                .reports
                .iter()
                .all(|r| r.verdict == OvertakeVerdict::FirstOvertakesSecond);
            if both_overtake {
                CheckOutcome::pass(
                    ID,
                    NAME,
                    format!(
                        "k=1 stable ({} candidates); k=2 unstable: players {:?} run the \
                         scheduled defection and both overtake (tail mins {:?})",
                        solo_report.candidates_checked,
                        witness.players,
                        witness.reports.iter().map(|r| r.tail_min).collect::<Vec<_>>()
                    ),
                )
            } else {
                CheckOutcome::fail(
                    ID,
                    NAME,
                    "scheduled defection witness found, but not all deviators overtake".into(),
                )
            }
        }
        None => CheckOutcome::fail(
            ID,
            NAME,
            "k=2 unstable, but no witness uses the scheduled cross-pair defection".into(),
        ),
    }
}

/// Log-log growth fits on the three canonical trajectories: sqrt-law with
/// coefficient sqrt(2) for the solo profile, sqrt-law with coefficient 2
/// for the two-joint-papers pair, and a linear slope of at least 1/2 for
/// the single-joint-paper pair.
pub fn check_growth_law_fits() -> CheckOutcome {
    const ID: &str = "7";
    const NAME: &str = "growth_law_fits";
    const HORIZON: u32 = 10_000;

    let solo = UtilitySeries::new(utilities(&solo_trajectory(HORIZON), 0)).unwrap();
    let fit = fit_growth(&solo).expect("fit runs");
    let sqrt2 = std::f64::consts::SQRT_2;
    if !(0.45..=0.55).contains(&fit.exponent) || (fit.coefficient - sqrt2).abs() > 0.1 * sqrt2 {
        return CheckOutcome::fail(
            ID,
            NAME,
            format!(
                "solo fit off: p = {:.4} (want [0.45, 0.55]), c = {:.4} (want sqrt(2) +/- 10%)",
                fit.exponent, fit.coefficient
            ),
        );
    }
    let solo_summary = format!("solo: p={:.3}, c={:.3}", fit.exponent, fit.coefficient);

    let pair_split = UtilitySeries::new(utilities(
        &pair_trajectory(Strategy::pair_two_joint_even_split, HORIZON),
        0,
    ))
    .unwrap();
    let fit = fit_growth(&pair_split).expect("fit runs");
    if !(0.45..=0.55).contains(&fit.exponent) || (fit.coefficient - 2.0).abs() > 0.2 {
        return CheckOutcome::fail(
            ID,
            NAME,
            format!(
                "two-joint fit off: p = {:.4} (want [0.45, 0.55]), c = {:.4} (want 2 +/- 10%)",
                fit.exponent, fit.coefficient
            ),
        );
    }
    let split_summary = format!(
        "two-joint: p={:.3}, c={:.3}, model {:?}",
        fit.exponent, fit.coefficient, fit.model
    );
    if fit.model != GrowthModel::Sqrt {
        return CheckOutcome::fail(ID, NAME, format!("two-joint model is {:?}", fit.model));
    }

    let pair_joint = UtilitySeries::new(utilities(
        &pair_trajectory(Strategy::pair_single_joint, HORIZON),
        0,
    ))
    .unwrap();
    let slope = fit_linear_slope(&pair_joint).expect("fit runs");
    if slope < 0.5 {
        return CheckOutcome::fail(
            ID,
            NAME,
            format!("single-joint linear slope {slope:.4} < 0.5"),
        );
    }
    CheckOutcome::pass(
        ID,
        NAME,
        format!("{solo_summary}; {split_summary}; single-joint slope {slope:.3}"),
    )
}

/// 10,000 random profiles (size <= 30, values <= 50): the fast h-index,
/// profile filters, and both preference predicates must agree with their
/// brute-force definitional oracles, within the runtime budget.
pub fn check_bibliometrics_oracle_agreement() -> CheckOutcome {
    const ID: &str = "8";
    const NAME: &str = "bibliometrics_oracle_agreement";
    const ROUNDS: usize = 10_000;

    fn brute_h(counts: &[u64]) -> u64 {
        (0..=counts.len() as u64)
            .filter(|&h| counts.iter().filter(|&&z| z >= h).count() as u64 >= h)
            .max()
            .unwrap_or(0)
    }
    fn count_ge(counts: &[u64], z: u64) -> usize {
        counts.iter().filter(|&&v| v >= z).count()
    }
    fn brute_weak(a: &[u64], b: &[u64]) -> bool {
        let (ha, hb) = (brute_h(a), brute_h(b));
        let max = a.iter().chain(b).copied().max().unwrap_or(0);
        ha >= hb && (ha + 1..=max + 1).all(|z| count_ge(a, z) >= count_ge(b, z))
    }
    fn brute_strong(a: &[u64], b: &[u64]) -> bool {
        let (ha, hb) = (brute_h(a), brute_h(b));
        let max = a.iter().chain(b).copied().max().unwrap_or(0);
        brute_weak(a, b)
            && (ha > hb || (ha + 1..=max + 1).any(|z| count_ge(a, z) > count_ge(b, z)))
    }

    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xB1B);
    let mut previous: Option<(Vec<u64>, CitationProfile)> = None;
    for round in 0..ROUNDS {
        let size = rng.gen_range(0..=30);
        let counts: Vec<u64> = (0..size).map(|_| rng.gen_range(0..=50)).collect();
        let profile = CitationProfile::from_counts(counts.iter().copied()).unwrap();

        let fail = |what: String| CheckOutcome::fail(ID, NAME, format!("round {round}: {what}"));
        if profile.h_index() != brute_h(&counts) {
            return fail(format!(
                "h_index {} != brute {} on {counts:?}",
                profile.h_index(),
                brute_h(&counts)
            ));
        }
        let h = profile.h_index();
        let mut expected_h_profile: Vec<u64> =
            counts.iter().copied().filter(|&z| z >= h).collect();
        expected_h_profile.sort_unstable_by(|a, b| b.cmp(a));
        if profile.h_profile().counts() != expected_h_profile {
            return fail(format!("h_profile mismatch on {counts:?}"));
        }
        let mut expected_aug: Vec<u64> = counts.iter().copied().filter(|&z| z > h).collect();
        expected_aug.sort_unstable_by(|a, b| b.cmp(a));
        if profile.h_augmenting_profile().counts() != expected_aug {
            return fail(format!("h_augmenting_profile mismatch on {counts:?}"));
        }
        if let Some((prev_counts, prev_profile)) = &previous {
            if profile.is_weakly_h_preferable_to(prev_profile)
                != brute_weak(&counts, prev_counts)
                || prev_profile.is_weakly_h_preferable_to(&profile)
                    != brute_weak(prev_counts, &counts)
                || profile.is_strongly_h_preferable_to(prev_profile)
                    != brute_strong(&counts, prev_counts)
                || prev_profile.is_strongly_h_preferable_to(&profile)
                    != brute_strong(prev_counts, &counts)
            {
                return fail(format!(
                    "preference mismatch between {counts:?} and {prev_counts:?}"
                ));
            }
        }
        previous = Some((counts, profile));
    }
    let elapsed = start.elapsed();
    if elapsed > RUNTIME_BUDGET {
        return CheckOutcome::fail(
            ID,
            NAME,
            format!("all {ROUNDS} profiles agreed but took {elapsed:.2?}"),
        );
    }
    CheckOutcome::pass(
        ID,
        NAME,
        format!("{ROUNDS} random profiles, zero discrepancies; {elapsed:.2?}"),
    )
}

/// 100 random games (2..=6 players, horizon 50, random catalog strategies,
/// random initial profiles): every year's total production must equal the
/// summed research potential of the roster.
pub fn check_citation_conservation() -> CheckOutcome {
    const ID: &str = "9";
    const NAME: &str = "citation_conservation";
    const GAMES: usize = 100;
    const HORIZON: u32 = 50;

    let mut rng = ChaCha8Rng::seed_from_u64(0xC0_7E57);
    let mut years_checked = 0usize;
    for game in 0..GAMES {
        let players = rng.gen_range(2..=6);
        let profiles: Vec<CitationProfile> = (0..players)
            .map(|_| {
                let papers = rng.gen_range(0..=4);
                CitationProfile::from_counts((0..papers).map(|_| rng.gen_range(0..=5u64))).unwrap()
            })
            .collect();
        let strategies: Vec<Strategy> = (0..players)
            .map(|i| {
                let other = |rng: &mut ChaCha8Rng| {
                    let mut p = rng.gen_range(0..players);
                    if p == i {
                        p = (p + 1) % players;
                    }
                    PlayerId(p)
                };
                match rng.gen_range(0..5) {
                    0 => Strategy::solo_single_paper(),
                    1 => Strategy::solo_split(rng.gen_range(2..=4)).unwrap(),
                    2 => Strategy::pair_single_joint(other(&mut rng)),
                    3 => Strategy::pair_two_joint_even_split(other(&mut rng)),
                    _ if players >= 3 => {
                        let co = other(&mut rng);
                        let mut orig = other(&mut rng);
                        if orig == co {
                            orig = PlayerId((co.0 + 1) % players);
                            if orig == PlayerId(i) {
                                orig = PlayerId((orig.0 + 1) % players);
                            }
                        }
                        Strategy::Theorem6Deviation {
                            co_deviator: co,
                            original_partner: orig,
                        }
                    }
                    _ => Strategy::solo_single_paper(),
                }
            })
            .collect();
        let profile = match StrategyProfile::new(strategies) {
            Ok(p) => p,
            Err(e) => return CheckOutcome::fail(ID, NAME, format!("game {game}: {e}")),
        };
        let initial = GameState::with_profiles(profiles.clone());
        let trajectory = match run_game(&initial, &profile, HORIZON) {
            Ok(t) => t,
            Err(e) => return CheckOutcome::fail(ID, NAME, format!("game {game}: {e}")),
        };

        let mut h_before: Vec<u64> = profiles.iter().map(CitationProfile::h_index).collect();
        for record in trajectory.years() {
            let budget: u64 = h_before.iter().map(|h| h + 1).sum();
            let produced: u64 = record.papers.iter().map(|p| p.citations).sum();
            if produced != budget {
                return CheckOutcome::fail(
                    ID,
                    NAME,
                    format!(
                        "game {game}, year {}: produced {produced} citations, potential {budget}",
                        record.year
                    ),
                );
            }
            years_checked += 1;
            h_before = record.utilities.clone();
        }
    }
    CheckOutcome::pass(
        ID,
        NAME,
        format!("{GAMES} games x {HORIZON} years: {years_checked} conserving years, zero violations"),
    )
}

/// A corpus generated by the model must reproduce the model's own curves
/// exactly (single-author medians h+1, two-author medians h-sum+2), and the
/// rank-correlation routine must pass its fixed examples.
pub fn check_calibration_closure() -> CheckOutcome {
    const ID: &str = "10";
    const NAME: &str = "calibration_closure";

    // Solo researcher for 66 years: reaches h = 11, populating bins 0..=10.
    let solo = solo_trajectory(66);
    let mut records = corpus_from_trajectory(&solo, &["solo".to_string()], 1);
    // A collaborating pair for 30 years: one joint paper per year with
    // citations (h_a + 1) + (h_b + 1).
    let pair = pair_trajectory(Strategy::pair_single_joint, 30);
    records.extend(corpus_from_trajectory(
        &pair,
        &["pair_a".to_string(), "pair_b".to_string()],
        1,
    ));
    let corpus = Corpus::from_records(records).expect("generated records are valid");

    let single = single_author_curve(&corpus);
    if single.len() < 5 {
        return CheckOutcome::fail(ID, NAME, format!("only {} single-author bins", single.len()));
    }
    for (&h, bin) in &single {
        let expected = (h + 1) as f64;
        if bin.median != expected {
            return CheckOutcome::fail(
                ID,
                NAME,
                format!(
                    "single-author bin h={h}: median {} (count {}), expected exactly {expected}",
                    bin.median, bin.count
                ),
            );
        }
    }

    let two = two_author_curve(&corpus);
    if two.len() < 5 {
        return CheckOutcome::fail(ID, NAME, format!("only {} two-author bins", two.len()));
    }
    for (&h_sum, bin) in &two {
        let expected = (h_sum + 2) as f64;
        if bin.median != expected {
            return CheckOutcome::fail(
                ID,
                NAME,
                format!(
                    "two-author bin h_sum={h_sum}: median {} (count {}), expected exactly {expected}",
                    bin.median, bin.count
                ),
            );
        }
    }

    let fixed = [
        (vec![1.0, 2.0, 3.0], vec![10.0, 20.0, 30.0], 1.0),
        (vec![1.0, 2.0, 3.0], vec![30.0, 20.0, 10.0], -1.0),
        (vec![1.0, 2.0, 3.0, 4.0], vec![2.0, 1.0, 4.0, 3.0], 0.6),
    ];
    for (x, y, expected) in fixed {
        let rho = spearman(&x, &y).expect("well-formed inputs");
        if (rho - expected).abs() > 1e-9 {
            return CheckOutcome::fail(
                ID,
                NAME,
                format!("spearman({x:?}, {y:?}) = {rho}, expected {expected} within 1e-9"),
            );
        }
    }

    CheckOutcome::pass(
        ID,
        NAME,
        format!(
            "{} single-author bins at h+1 and {} two-author bins at h-sum+2, all exact; \
             rank-correlation fixed examples within 1e-9",
            single.len(),
            two.len()
        ),
    )
}

/// Renders outcomes as the fixed-width table printed by the CLI.
pub fn render_table(outcomes: &[CheckOutcome]) -> String {
    let name_width = outcomes
        .iter()
        .map(|o| o.name.len())
        .max()
        .unwrap_or(0)
        .max("check".len());
    let mut out = String::new();
    out.push_str(&format!("{:>2}  {:<name_width$}  {:<6}  details\n", "#", "check", "status"));
    for outcome in outcomes {
        out.push_str(&format!(
            "{:>2}  {:<name_width$}  {:<6}  {}\n",
            outcome.id,
            outcome.name,
            if outcome.passed { "PASS" } else { "FAIL" },
            outcome.details
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_scale_checks_pass() {
        // The full-scale run is the acceptance suite; this is a smoke test
        // that the harness itself works end to end at a small horizon.
        let options = VerifyOptions { horizon: Some(60) };
        let outcome = check_prop1_solo_exact_growth(&options);
        assert!(outcome.passed, "{}", outcome.details);
        let outcome = check_prop2_pair_joint_growth_bound(&options);
        assert!(outcome.passed, "{}", outcome.details);
        let outcome = check_lemma1_solo_overtakes_splits(&options);
        assert!(outcome.passed, "{}", outcome.details);
    }

    #[test]
    fn render_table_lists_every_check() {
        let outcomes = vec![
            CheckOutcome::pass("1", "alpha", "fine".into()),
            CheckOutcome::fail("2", "beta_gamma", "not fine".into()),
        ];
        let table = render_table(&outcomes);
        assert!(table.contains("alpha"));
        assert!(table.contains("PASS"));
        assert!(table.contains("FAIL"));
        assert_eq!(table.lines().count(), 3);
    }
}
