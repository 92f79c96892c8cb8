//! Ready-made demon policies. A policy only chooses among the responses its
//! rule allows; see [`GameState::demon_legal_responses`].

use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{DemonKind, DemonPolicy, DemonResponse, GameState, PlayerMove};
use crate::error::{Error, Result};

/// Always takes the first legal swap, passing only when it must.
#[derive(Debug, Clone)]
pub struct Eager {
    kind: DemonKind,
}

impl Eager {
    pub fn new(kind: DemonKind) -> Self {
        Eager { kind }
    }
}

impl DemonPolicy for Eager {
    fn kind(&self) -> DemonKind {
        self.kind
    }

    fn respond(
        &mut self,
        _: &GameState,
        _: &PlayerMove,
        legal: &[DemonResponse],
    ) -> Result<DemonResponse> {
        legal
            .iter()
            .find(|r| r.as_move().is_some())
            .or_else(|| legal.first())
            .copied()
            .ok_or_else(|| Error::DemonFailure("no legal response".into()))
    }
}

/// Uniformly random legal response from a seeded generator.
#[derive(Debug, Clone)]
pub struct Random {
    kind: DemonKind,
    rng: ChaCha8Rng,
}

impl Random {
    pub fn new(kind: DemonKind, seed: u64) -> Self {
        Random {
            kind,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl DemonPolicy for Random {
    fn kind(&self) -> DemonKind {
        self.kind
    }

    fn respond(
        &mut self,
        _: &GameState,
        _: &PlayerMove,
        legal: &[DemonResponse],
    ) -> Result<DemonResponse> {
        legal
            .choose(&mut self.rng)
            .copied()
            .ok_or_else(|| Error::DemonFailure("no legal response".into()))
    }
}

/// Plays a fixed script of responses, then passes. Useful for replaying a
/// recorded game or for driving a demon that ignores its rule.
#[derive(Debug, Clone)]
pub struct Scripted {
    kind: DemonKind,
    script: std::vec::IntoIter<DemonResponse>,
}

impl Scripted {
    pub fn new(kind: DemonKind, script: Vec<DemonResponse>) -> Self {
        Scripted {
            kind,
            script: script.into_iter(),
        }
    }
}

impl DemonPolicy for Scripted {
    fn kind(&self) -> DemonKind {
        self.kind
    }

    fn respond(
        &mut self,
        _: &GameState,
        _: &PlayerMove,
        _: &[DemonResponse],
    ) -> Result<DemonResponse> {
        Ok(self.script.next().unwrap_or(DemonResponse::Pass))
    }
}
