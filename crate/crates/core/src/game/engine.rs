use serde::{Deserialize, Serialize};

use super::{DemonKind, DemonResponse, GameState, Hand, PlayerMove};
use crate::error::{Error, Result};

/// What a player does at the start of a turn.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    /// Claim the win with this hand.
    Win(Hand),
    Move(PlayerMove),
    /// No move to offer.
    Resign,
}

pub trait PlayerPolicy {
    fn decide(&mut self, state: &GameState) -> Result<Decision>;

    /// Called once a round is complete, so strategies can check their
    /// per-round guarantees.
    fn observe(
        &mut self,
        _before: &GameState,
        _mv: &PlayerMove,
        _after_move: &GameState,
        _resp: &DemonResponse,
        _after: &GameState,
    ) -> Result<()> {
        Ok(())
    }
}

/// Picks one response after each player move. The rule it plays under is
/// [`DemonPolicy::kind`]; the engine rejects anything outside that rule.
pub trait DemonPolicy {
    fn kind(&self) -> DemonKind;

    fn respond(
        &mut self,
        after_move: &GameState,
        mv: &PlayerMove,
        legal: &[DemonResponse],
    ) -> Result<DemonResponse>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    Won,
    #[serde(rename = "Budget_Exhausted")]
    BudgetExhausted,
    Stuck,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Round {
    pub player: PlayerMove,
    pub demon: DemonResponse,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transcript {
    pub initial: GameState,
    pub rounds: Vec<Round>,
    pub outcome: Outcome,
    /// Winning hand on the final position, when won.
    pub hand: Option<Hand>,
    pub final_state: GameState,
}

impl Transcript {
    pub fn player_moves(&self) -> usize {
        self.rounds.len()
    }

    /// Replays the rounds from the initial position under `kind`'s rule.
    pub fn replay(&self, kind: DemonKind) -> Result<GameState> {
        replay(&self.initial, &self.rounds, kind)
    }
}

pub fn replay(initial: &GameState, rounds: &[Round], kind: DemonKind) -> Result<GameState> {
    let mut state = initial.clone();
    for (idx, round) in rounds.iter().enumerate() {
        let step = || -> Result<GameState> {
            let mid = state.apply_player_move(&round.player)?;
            mid.apply_demon_response(&round.player, kind, &round.demon)
        };
        state = step().map_err(|e| e.at_round(idx + 1))?;
    }
    Ok(state)
}

/// Plays rounds until the position is winning at the start of a turn, the
/// player resigns, or `budget` player moves have been made.
pub fn run_game(
    initial: &GameState,
    player: &mut dyn PlayerPolicy,
    demon: &mut dyn DemonPolicy,
    budget: usize,
) -> Result<Transcript> {
    let kind = demon.kind();
    let mut state = initial.clone();
    let mut rounds = Vec::new();
    loop {
        let round_no = rounds.len() + 1;
        let best = state.max_hand();
        let winning = best.len() == state.k();
        if !winning && rounds.len() >= budget {
            return Ok(finish(
                initial,
                rounds,
                Outcome::BudgetExhausted,
                None,
                state,
            ));
        }
        let decision = player.decide(&state).map_err(|e| e.at_round(round_no))?;
        let mv = match decision {
            Decision::Win(hand) if winning => {
                hand.check(&state).map_err(|e| e.at_round(round_no))?;
                let hand = if hand.len() == state.k() { hand } else { best };
                return Ok(finish(initial, rounds, Outcome::Won, Some(hand), state));
            }
            _ if winning => return Ok(finish(initial, rounds, Outcome::Won, Some(best), state)),
            Decision::Win(hand) => {
                return Err(Error::InvariantViolated(format!(
                    "player claimed a win with {hand} on a position without a full hand"
                ))
                .at_round(round_no))
            }
            Decision::Resign => return Ok(finish(initial, rounds, Outcome::Stuck, None, state)),
            Decision::Move(mv) => mv,
        };
        let after_move = state
            .apply_player_move(&mv)
            .map_err(|e| e.at_round(round_no))?;
        let legal = after_move.demon_legal_responses(&mv, kind);
        let resp = demon
            .respond(&after_move, &mv, &legal)
            .map_err(|e| e.at_round(round_no))?;
        if !legal.contains(&resp) {
            return Err(Error::NonconformingDemon(resp).at_round(round_no));
        }
        let after = after_move
            .apply_demon_response(&mv, kind, &resp)
            .map_err(|e| e.at_round(round_no))?;
        player
            .observe(&state, &mv, &after_move, &resp, &after)
            .map_err(|e| e.at_round(round_no))?;
        rounds.push(Round {
            player: mv,
            demon: resp,
        });
        state = after;
    }
}

fn finish(
    initial: &GameState,
    rounds: Vec<Round>,
    outcome: Outcome,
    hand: Option<Hand>,
    final_state: GameState,
) -> Transcript {
    Transcript {
        initial: initial.clone(),
        rounds,
        outcome,
        hand,
        final_state,
    }
}
