//! Winning strategies for the player.
//!
//! [`KonigStrategy`] beats any demon that may only undo the swapped pair on
//! another stack; [`VizingStrategy`] beats the demon that may also repeat it,
//! provided at most one stack holds a single card.

pub mod adversary;
mod konig;
mod vizing;

pub use adversary::{explore, Adversary, TreeReport};
pub use konig::{konig_play, konig_step, KonigStep, KonigStrategy};
pub use vizing::{
    distinct_on_active, increase_step, minimal_deficient_subset, reduce, sdr, tight_subset,
    vizing_budget, vizing_play, DeficientSet, ReductionContext, VizingStrategy,
    EXHAUSTIVE_SUBSET_LIMIT,
};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::game::{Decision, GameState, PlayerMove, PlayerPolicy};

/// Which of the two strategies to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StrategyKind {
    Konig,
    Vizing,
}

impl std::str::FromStr for StrategyKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "konig" => Ok(StrategyKind::Konig),
            "vizing" => Ok(StrategyKind::Vizing),
            _ => Err(format!("unknown strategy `{s}` (expected konig or vizing)")),
        }
    }
}

impl std::fmt::Display for StrategyKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            StrategyKind::Konig => "konig",
            StrategyKind::Vizing => "vizing",
        })
    }
}

/// Either strategy behind one type.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Strategy {
    Konig(KonigStrategy),
    Vizing(VizingStrategy),
}

impl Strategy {
    pub fn new(kind: StrategyKind) -> Self {
        match kind {
            StrategyKind::Konig => Strategy::Konig(KonigStrategy),
            StrategyKind::Vizing => Strategy::Vizing(VizingStrategy::new()),
        }
    }

    pub fn kind(&self) -> StrategyKind {
        match self {
            Strategy::Konig(_) => StrategyKind::Konig,
            Strategy::Vizing(_) => StrategyKind::Vizing,
        }
    }
}

impl PlayerPolicy for Strategy {
    fn decide(&mut self, state: &GameState) -> Result<Decision> {
        match self {
            Strategy::Konig(s) => s.decide(state),
            Strategy::Vizing(s) => s.decide(state),
        }
    }

    fn observe(
        &mut self,
        before: &GameState,
        mv: &PlayerMove,
        after_move: &GameState,
        resp: &crate::game::DemonResponse,
        after: &GameState,
    ) -> Result<()> {
        match self {
            Strategy::Konig(s) => s.observe(before, mv, after_move, resp, after),
            Strategy::Vizing(s) => s.observe(before, mv, after_move, resp, after),
        }
    }
}
