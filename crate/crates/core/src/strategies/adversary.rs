//! Exhaustive play against every demon answer.
//!
//! [`explore`] walks the full game tree of a deterministic strategy: at each
//! player move it branches over every response the demon rule allows. A
//! strategy that wins on every branch within the bound wins against any demon
//! of that rule, including the best possible one. [`Adversary`] turns the same
//! search into a demon policy that always picks the response delaying the win
//! the longest.

use std::collections::HashMap;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::game::{
    Decision, DemonKind, DemonPolicy, DemonResponse, GameState, PlayerMove, PlayerPolicy,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeReport {
    /// Most player moves any branch needed.
    pub worst_moves: usize,
    /// Distinct (position, strategy state) pairs visited.
    pub positions: usize,
}

type Memo<S> = HashMap<(GameState, S), usize>;

/// Explores every line of play of `strategy` from `state` against the rule
/// `kind`, failing if any line lasts more than `bound` player moves or trips
/// one of the strategy's own checks.
pub fn explore<S>(
    state: &GameState,
    strategy: S,
    kind: DemonKind,
    bound: usize,
) -> Result<TreeReport>
where
    S: PlayerPolicy + Clone + Eq + Hash,
{
    let mut memo = Memo::new();
    let worst_moves = worst(state, strategy, kind, 0, bound, &mut memo)?;
    Ok(TreeReport {
        worst_moves,
        positions: memo.len(),
    })
}

fn worst<S>(
    state: &GameState,
    strategy: S,
    kind: DemonKind,
    depth: usize,
    bound: usize,
    memo: &mut Memo<S>,
) -> Result<usize>
where
    S: PlayerPolicy + Clone + Eq + Hash,
{
    let key = (state.clone(), strategy);
    if let Some(&w) = memo.get(&key) {
        return within(depth, w, bound);
    }
    let mut strategy = key.1.clone();
    let decision = strategy.decide(state)?;
    let w = match decision {
        Decision::Win(hand) => {
            if !hand.is_winning(state) {
                return Err(Error::InvariantViolated(format!("bogus win claim {hand}")));
            }
            0
        }
        _ if state.is_winning() => {
            return Err(Error::InvariantViolated(
                "strategy missed a winning position".into(),
            ))
        }
        Decision::Resign => return Err(Error::InvariantViolated("strategy resigned".into())),
        Decision::Move(mv) => {
            if depth >= bound {
                return Err(Error::InvariantViolated(format!(
                    "line of play needs more than {bound} moves"
                )));
            }
            let mid = state.apply_player_move(&mv)?;
            let mut deepest = 0;
            for resp in mid.demon_legal_responses(&mv, kind) {
                let after = mid.apply_demon_response(&mv, kind, &resp)?;
                let mut next = strategy.clone();
                next.observe(state, &mv, &mid, &resp, &after)?;
                deepest = deepest.max(worst(&after, next, kind, depth + 1, bound, memo)?);
            }
            deepest + 1
        }
    };
    memo.insert(key, w);
    within(depth, w, bound)
}

fn within(depth: usize, w: usize, bound: usize) -> Result<usize> {
    if depth + w > bound {
        return Err(Error::InvariantViolated(format!(
            "line of play needs more than {bound} moves"
        )));
    }
    Ok(w)
}

/// Demon policy that answers each move with the response maximising the
/// number of moves the modelled strategy still needs.
///
/// The model must be a fresh copy of the strategy the player runs, so its
/// state stays in step with the real player across rounds.
pub struct Adversary<S> {
    kind: DemonKind,
    model: S,
    bound: usize,
    memo: Memo<S>,
}

impl<S> Adversary<S>
where
    S: PlayerPolicy + Clone + Eq + Hash,
{
    pub fn new(kind: DemonKind, model: S, bound: usize) -> Self {
        Adversary {
            kind,
            model,
            bound,
            memo: HashMap::new(),
        }
    }
}

impl<S> DemonPolicy for Adversary<S>
where
    S: PlayerPolicy + Clone + Eq + Hash,
{
    fn kind(&self) -> DemonKind {
        self.kind
    }

    fn respond(
        &mut self,
        after_move: &GameState,
        mv: &PlayerMove,
        legal: &[DemonResponse],
    ) -> Result<DemonResponse> {
        let before = after_move.apply_player_move(&mv.inverse())?;
        match self.model.decide(&before)? {
            Decision::Move(expected) if expected == *mv => {}
            other => {
                return Err(Error::DemonFailure(format!(
                    "model strategy would have played {other:?}, player played {mv}"
                )))
            }
        }
        let mut best: Option<(usize, DemonResponse, S)> = None;
        for &resp in legal {
            let after = after_move.apply_demon_response(mv, self.kind, &resp)?;
            let mut next = self.model.clone();
            next.observe(&before, mv, after_move, &resp, &after)?;
            let w = worst(
                &after,
                next.clone(),
                self.kind,
                0,
                self.bound,
                &mut self.memo,
            )?;
            if best.as_ref().is_none_or(|(bw, _, _)| w > *bw) {
                best = Some((w, resp, next));
            }
        }
        let (_, resp, next) =
            best.ok_or_else(|| Error::DemonFailure("no legal response".into()))?;
        self.model = next;
        Ok(resp)
    }
}
