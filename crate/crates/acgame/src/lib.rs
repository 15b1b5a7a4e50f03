//! Simulation and analysis toolkit for a repeated academic-collaboration
//! game driven by h-index reinvestment.
//!
//! The model: each year a researcher holds `h + 1` units of research
//! potential (`h` being their current h-index), distributes it across solo
//! and two-author paper slots, and every funded slot becomes a paper whose
//! citation count equals the total effort invested in it. Researchers play
//! this game repeatedly, each trying to make their h-index sequence
//! overtake the alternatives.
//!
//! The crate is organized around that pipeline:
//!
//! - [`bibliometrics`]: citation profiles, the h-index, and the
//!   h-preference orders between profiles;
//! - [`game`]: the yearly engine (research potential, action validation,
//!   outcome resolution) and full-game trajectories;
//! - [`strategies`]: the deterministic strategy catalog and strategy
//!   profiles, addressable by name for configs;
//! - [`analysis`]: finite-horizon overtaking verdicts, growth-law fits,
//!   social welfare, and brute-force unstable-coalition search;
//! - [`calibration`]: publication-corpus ingestion, Spearman rank
//!   correlation, and the median-curve analyses behind the model;
//! - [`verify`]: the end-to-end verification suite shared by the
//!   `acceptance` test target and the CLI.

pub mod analysis;
pub mod bibliometrics;
pub mod calibration;
pub mod game;
pub mod strategies;
pub mod verify;

pub use analysis::{
    default_catalog, find_unstable_set, fit_growth, overtakes, OvertakeVerdict, StabilityReport,
    UtilitySeries, WelfareVariant,
};
pub use bibliometrics::CitationProfile;
pub use calibration::{load_corpus, Corpus, CorpusFormat, PublicationRecord};
pub use game::{run_game, ActionPlan, GameState, Paper, PlayerId, Trajectory};
pub use strategies::{Strategy, StrategyProfile};
