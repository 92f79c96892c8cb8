use crate::error::{Error, Result};
use crate::game::{
    Decision, DemonKind, DemonPolicy, DemonResponse, GameState, Hand, PlayerMove, PlayerPolicy,
    Transcript,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KonigStep {
    AlreadyWinning(Hand),
    Move(PlayerMove),
}

/// One move of the hand-growing strategy.
///
/// Picks the lowest stack `i` that some maximum hand leaves out, takes a
/// maximum hand `H` of the other stacks, and swaps the smallest card of stack
/// `i` for the smallest number missing from `H`. That number cannot already
/// be in stack `i`, otherwise `H` plus stack `i` would be a bigger hand.
pub fn konig_step(state: &GameState) -> KonigStep {
    let best = state.max_hand();
    if best.len() == state.k() {
        return KonigStep::AlreadyWinning(best);
    }
    let size = best.len();
    let (i, hand) = (1..=state.k())
        .map(|i| (i, state.max_hand_over(|s| s != i)))
        .find(|(_, h)| h.len() == size)
        .expect("a stack outside a maximum hand exists");
    let used = hand.cards();
    let b = state
        .cards()
        .find(|c| !used.contains(c))
        .expect("a hand of fewer than k <= m cards leaves a number unused");
    let a = *state.stack(i).first().expect("stacks are nonempty");
    debug_assert!(!state.stack(i).contains(&b));
    KonigStep::Move(PlayerMove::new(i, a, b))
}

/// Player policy wrapping [`konig_step`]. Checks each round that the move grew
/// the largest hand by one and, when the response is one the König rule
/// allows, that it did not shrink the hand again.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct KonigStrategy;

impl PlayerPolicy for KonigStrategy {
    fn decide(&mut self, state: &GameState) -> Result<Decision> {
        Ok(match konig_step(state) {
            KonigStep::AlreadyWinning(hand) => Decision::Win(hand),
            KonigStep::Move(mv) => Decision::Move(mv),
        })
    }

    fn observe(
        &mut self,
        before: &GameState,
        mv: &PlayerMove,
        after_move: &GameState,
        resp: &DemonResponse,
        after: &GameState,
    ) -> Result<()> {
        let (b, m, a) = (
            before.max_hand().len(),
            after_move.max_hand().len(),
            after.max_hand().len(),
        );
        if m != b + 1 {
            return Err(Error::InvariantViolated(format!(
                "move took the largest hand from {b} to {m}"
            )));
        }
        let konig_like = after_move
            .demon_legal_responses(mv, DemonKind::Konig)
            .contains(resp);
        if konig_like && a < m {
            return Err(Error::InvariantViolated(format!(
                "response {resp} shrank the largest hand from {m} to {a}"
            )));
        }
        Ok(())
    }
}

/// Plays [`KonigStrategy`] against a demon following the lazy or König rule.
/// Wins within `k - (initial largest hand)` moves.
pub fn konig_play(state: &GameState, demon: &mut dyn DemonPolicy) -> Result<Transcript> {
    if !matches!(demon.kind(), DemonKind::Lazy | DemonKind::Konig) {
        return Err(Error::PreconditionViolated(format!(
            "the König strategy is only guaranteed against the lazy and König demons, not {}",
            demon.kind()
        )));
    }
    let budget = state.k() - state.max_hand().len();
    let t = crate::game::run_game(state, &mut KonigStrategy, demon, budget)?;
    if t.outcome != crate::game::Outcome::Won {
        return Err(Error::InvariantViolated(format!(
            "König strategy did not win within {budget} moves"
        )));
    }
    Ok(t)
}
