//! Strategy against the demon that may answer a swap `a -> b` on any other
//! stack in either direction.
//!
//! Each turn the player runs the same loop. If the active stacks already
//! admit a full hand, the game is won. Otherwise, if at least `t` numbers
//! appear on the `t` active stacks, a smallest set `B` of them appearing on at
//! most `|B|` stacks is found; its stacks get distinct cards from `B` by
//! matching and are locked away, and the loop repeats on the remaining
//! stacks. When fewer than `t` numbers appear, some number sits on three or
//! more active stacks and swapping one copy for an unseen number raises the
//! count of numbers on the active stacks whatever the demon answers.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::game::{
    matching, Card, Decision, DemonKind, DemonPolicy, DemonResponse, GameState, Hand, Outcome,
    PlayerMove, PlayerPolicy, Transcript,
};

/// Above this many active stacks the smallest deficient set is no longer
/// searched exhaustively; see [`tight_subset`].
pub const EXHAUSTIVE_SUBSET_LIMIT: usize = 16;

/// Which stacks are still in play and which have been settled.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReductionContext {
    active: BTreeSet<usize>,
    locked: BTreeMap<usize, Card>,
}

impl ReductionContext {
    /// Every stack of a `k`-game active, nothing locked.
    pub fn new(k: usize) -> Self {
        ReductionContext {
            active: (1..=k).collect(),
            locked: BTreeMap::new(),
        }
    }

    pub fn active(&self) -> &BTreeSet<usize> {
        &self.active
    }

    pub fn locked(&self) -> &BTreeMap<usize, Card> {
        &self.locked
    }

    /// Numbers held by locked stacks; none may appear on an active stack.
    pub fn forbidden(&self) -> BTreeSet<Card> {
        self.locked.values().copied().collect()
    }

    pub fn k(&self) -> usize {
        self.active.len() + self.locked.len()
    }

    /// Checks the context against `state`.
    pub fn check(&self, state: &GameState) -> Result<()> {
        let broken = |msg: String| Err(Error::InvariantViolated(msg));
        if self.k() != state.k() || self.active.iter().any(|s| self.locked.contains_key(s)) {
            return broken("active and locked stacks do not partition the game".into());
        }
        let forbidden = self.forbidden();
        if forbidden.len() != self.locked.len() {
            return broken("two locked stacks share a number".into());
        }
        for (&s, &c) in &self.locked {
            if !state.stack(s).contains(&c) {
                return broken(format!("locked stack {s} lost its {c}-card"));
            }
        }
        for &s in &self.active {
            if let Some(c) = state.stack(s).intersection(&forbidden).next() {
                return broken(format!("locked number {c} appears on active stack {s}"));
            }
        }
        Ok(())
    }

    fn hand(&self) -> Hand {
        Hand::from_picks(self.locked.iter().map(|(&s, &c)| (s, c)))
    }
}

/// A set of numbers and the active stacks they appear on.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DeficientSet {
    pub numbers: BTreeSet<Card>,
    pub stacks: BTreeSet<usize>,
}

/// Numbers appearing on at least one active stack.
pub fn distinct_on_active(state: &GameState, ctx: &ReductionContext) -> BTreeSet<Card> {
    ctx.active
        .iter()
        .flat_map(|&s| state.stack(s).iter().copied())
        .collect()
}

fn active_count(state: &GameState, ctx: &ReductionContext, card: Card) -> usize {
    ctx.active
        .iter()
        .filter(|&&s| state.stack(s).contains(&card))
        .count()
}

/// The move that adds a new number to the active stacks.
///
/// Swaps the smallest number on three or more active stacks, taken from the
/// lowest such stack, for the smallest number that is neither locked nor on an
/// active stack.
pub fn increase_step(state: &GameState, ctx: &ReductionContext) -> Result<PlayerMove> {
    let seen = distinct_on_active(state, ctx);
    let t = ctx.active.len();
    if seen.len() >= t {
        return Err(Error::PreconditionViolated(format!(
            "{} numbers already appear on the {t} active stacks",
            seen.len()
        )));
    }
    let a = seen
        .iter()
        .copied()
        .find(|&c| active_count(state, ctx, c) >= 3)
        .ok_or_else(|| {
            Error::PreconditionViolated("no number appears on three active stacks".into())
        })?;
    let forbidden = ctx.forbidden();
    let b = state
        .cards()
        .find(|c| !seen.contains(c) && !forbidden.contains(c))
        .ok_or_else(|| Error::PreconditionViolated("every number is in use".into()))?;
    let i = ctx
        .active
        .iter()
        .copied()
        .find(|&s| state.stack(s).contains(&a))
        .expect("a appears on an active stack");
    Ok(PlayerMove::new(i, a, b))
}

fn covering_stacks<'a>(
    state: &GameState,
    ctx: &ReductionContext,
    numbers: impl IntoIterator<Item = &'a Card> + Clone,
) -> BTreeSet<usize> {
    ctx.active
        .iter()
        .copied()
        .filter(|&s| {
            numbers
                .clone()
                .into_iter()
                .any(|c| state.stack(s).contains(c))
        })
        .collect()
}

fn check_subset_input(
    state: &GameState,
    ctx: &ReductionContext,
    numbers: &BTreeSet<Card>,
) -> Result<()> {
    if numbers.is_empty() {
        return Err(Error::PreconditionViolated("number set is empty".into()));
    }
    if let Some(c) = numbers.iter().find(|&&c| active_count(state, ctx, c) == 0) {
        return Err(Error::PreconditionViolated(format!(
            "number {c} appears on no active stack"
        )));
    }
    Ok(())
}

/// Smallest nonempty `B ⊆ numbers` whose members appear on at most `|B|`
/// active stacks, ties broken by the sorted order of `B`. Searches subsets by
/// size, so the cost grows as `2^|numbers|`.
pub fn minimal_deficient_subset(
    state: &GameState,
    ctx: &ReductionContext,
    numbers: &BTreeSet<Card>,
) -> Result<DeficientSet> {
    check_subset_input(state, ctx, numbers)?;
    for size in 1..=numbers.len() {
        for subset in numbers.iter().combinations(size) {
            let stacks = covering_stacks(state, ctx, subset.iter().copied());
            if stacks.len() <= size {
                return Ok(DeficientSet {
                    numbers: subset.into_iter().copied().collect(),
                    stacks,
                });
            }
        }
    }
    Err(Error::PreconditionViolated(format!(
        "{} numbers appear on more than {} active stacks",
        numbers.len(),
        numbers.len()
    )))
}

/// A set `B ⊆ numbers` appearing on exactly `|B|` active stacks that can be
/// matched perfectly to them, found in polynomial time from a maximum matching.
///
/// Requires that the active stacks have no perfect matching into `numbers`
/// and that `|numbers|` equals the number of active stacks. Numbers left
/// unmatched, plus everything reachable from them along alternating paths,
/// form a set with fewer stacks than numbers; dropping the unmatched ones
/// leaves the matched partners of those stacks.
pub fn tight_subset(
    state: &GameState,
    ctx: &ReductionContext,
    numbers: &BTreeSet<Card>,
) -> Result<DeficientSet> {
    check_subset_input(state, ctx, numbers)?;
    let stacks: Vec<usize> = ctx.active.iter().copied().collect();
    let adj: Vec<Vec<Card>> = stacks
        .iter()
        .map(|&s| state.stack(s).intersection(numbers).copied().collect())
        .collect();
    let pick = matching::max_matching(&adj);
    let partner: BTreeMap<Card, usize> = pick
        .iter()
        .enumerate()
        .filter_map(|(idx, c)| c.map(|c| (c, idx)))
        .collect();

    let mut reached: BTreeSet<Card> = numbers
        .iter()
        .copied()
        .filter(|c| !partner.contains_key(c))
        .collect();
    if reached.is_empty() {
        return Err(Error::PreconditionViolated(
            "the active stacks match perfectly into the numbers".into(),
        ));
    }
    let mut frontier: Vec<Card> = reached.iter().copied().collect();
    let mut hit = BTreeSet::new();
    while let Some(c) = frontier.pop() {
        for (idx, cards) in adj.iter().enumerate() {
            if cards.contains(&c) && hit.insert(idx) {
                let next = pick[idx].expect("an unmatched stack would give an augmenting path");
                if reached.insert(next) {
                    frontier.push(next);
                }
            }
        }
    }
    Ok(DeficientSet {
        numbers: hit.iter().map(|&idx| pick[idx].expect("matched")).collect(),
        stacks: hit.iter().map(|&idx| stacks[idx]).collect(),
    })
}

/// Assigns each stack of `ds` a distinct number of `ds.numbers` it holds.
pub fn sdr(state: &GameState, ds: &DeficientSet) -> Result<BTreeMap<usize, Card>> {
    let stacks: Vec<usize> = ds.stacks.iter().copied().collect();
    let adj: Vec<Vec<Card>> = stacks
        .iter()
        .map(|&s| state.stack(s).intersection(&ds.numbers).copied().collect())
        .collect();
    let pick = matching::max_matching(&adj);
    stacks
        .into_iter()
        .zip(pick)
        .map(|(s, c)| c.map(|c| (s, c)).ok_or(Error::HallViolation))
        .collect()
}

/// Locks the stacks of `ds` with their picked numbers.
pub fn reduce(
    ctx: &ReductionContext,
    ds: &DeficientSet,
    picks: &BTreeMap<usize, Card>,
) -> Result<ReductionContext> {
    if ds.stacks.len() >= ctx.active.len() {
        return Err(Error::NotReducible);
    }
    if picks.keys().copied().collect::<BTreeSet<_>>() != ds.stacks
        || !ds.stacks.is_subset(&ctx.active)
    {
        return Err(Error::PreconditionViolated(
            "picks must cover exactly the set's active stacks".into(),
        ));
    }
    let mut next = ctx.clone();
    for (&s, &c) in picks {
        next.active.remove(&s);
        next.locked.insert(s, c);
    }
    Ok(next)
}

/// Player policy for the Vizing demon. Keeps its reduction context across
/// turns and checks after each round that locked picks survived, that no
/// locked number reached an active stack, and that an increasing move did
/// increase the count of numbers on active stacks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VizingStrategy {
    ctx: Option<ReductionContext>,
    distinct_before: Option<usize>,
    won: Option<Hand>,
}

impl Default for VizingStrategy {
    fn default() -> Self {
        Self::new()
    }
}

impl VizingStrategy {
    pub fn new() -> Self {
        VizingStrategy {
            ctx: None,
            distinct_before: None,
            won: None,
        }
    }

    pub fn context(&self) -> Option<&ReductionContext> {
        self.ctx.as_ref()
    }

    /// The hand claimed by the last winning decision.
    pub fn winning_hand(&self) -> Option<&Hand> {
        self.won.as_ref()
    }
}

impl PlayerPolicy for VizingStrategy {
    fn decide(&mut self, state: &GameState) -> Result<Decision> {
        let singles = state.singleton_stacks();
        if singles > 1 {
            return Err(Error::ProfileUnsupported(singles));
        }
        let mut ctx = match self.ctx.take() {
            Some(ctx) if ctx.k() == state.k() => ctx,
            _ => ReductionContext::new(state.k()),
        };
        ctx.check(state)?;
        self.distinct_before = None;
        let decision = loop {
            let t = ctx.active.len();
            let sub = state.max_hand_over(|s| ctx.active.contains(&s));
            if sub.len() == t {
                let mut hand = ctx.hand();
                for (&s, &c) in sub.picks() {
                    hand.insert(s, c);
                }
                self.won = Some(hand.clone());
                break Decision::Win(hand);
            }
            let seen = distinct_on_active(state, &ctx);
            if seen.len() >= t {
                let numbers: BTreeSet<Card> = seen.into_iter().take(t).collect();
                let ds = if t <= EXHAUSTIVE_SUBSET_LIMIT {
                    minimal_deficient_subset(state, &ctx, &numbers)?
                } else {
                    tight_subset(state, &ctx, &numbers)?
                };
                let picks = sdr(state, &ds)?;
                ctx = reduce(&ctx, &ds, &picks)?;
                continue;
            }
            self.distinct_before = Some(seen.len());
            break Decision::Move(increase_step(state, &ctx)?);
        };
        self.ctx = Some(ctx);
        Ok(decision)
    }

    fn observe(
        &mut self,
        _before: &GameState,
        mv: &PlayerMove,
        after_move: &GameState,
        resp: &DemonResponse,
        after: &GameState,
    ) -> Result<()> {
        let Some(ctx) = &self.ctx else {
            return Ok(());
        };
        ctx.check(after)?;
        let before = self.distinct_before.take();
        // the contrary demon may undo the move; the count only has to grow
        // against responses the Vizing rule allows
        let conforming = after_move
            .demon_legal_responses(mv, DemonKind::Vizing)
            .contains(resp);
        if let Some(before) = before.filter(|_| conforming) {
            let now = distinct_on_active(after, ctx).len();
            if now <= before {
                return Err(Error::InvariantViolated(format!(
                    "after response {resp} the active stacks show {now} numbers, was {before}"
                )));
            }
        }
        Ok(())
    }
}

/// Move budget for [`vizing_play`], `k² + k`.
pub fn vizing_budget(k: usize) -> usize {
    k * k + k
}

/// Plays [`VizingStrategy`] against a demon following the lazy, König or
/// Vizing rule. The deal may have at most one single-card stack.
pub fn vizing_play(state: &GameState, demon: &mut dyn DemonPolicy) -> Result<Transcript> {
    let singles = state.singleton_stacks();
    if singles > 1 {
        return Err(Error::ProfileUnsupported(singles));
    }
    if demon.kind() == DemonKind::Contrary {
        return Err(Error::PreconditionViolated(
            "the Vizing strategy is not guaranteed against the contrary demon".into(),
        ));
    }
    let mut strategy = VizingStrategy::new();
    let budget = vizing_budget(state.k());
    let mut t = crate::game::run_game(state, &mut strategy, demon, budget)?;
    if t.outcome != Outcome::Won {
        return Err(Error::InvariantViolated(format!(
            "Vizing strategy did not win within {budget} moves"
        )));
    }
    let hand = strategy.won.take().ok_or_else(|| {
        Error::InvariantViolated("won position was not recognised by the strategy".into())
    })?;
    hand.check(&t.final_state)?;
    t.hand = Some(hand);
    Ok(t)
}
