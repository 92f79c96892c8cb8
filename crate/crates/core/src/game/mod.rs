//! The solitaire game: stacks, the reserve, swaps, demon rules and hands.
//!
//! Stacks are numbered from 1 and cards carry the numbers `1..=m`, so the
//! values printed in transcripts match the way the game is usually drawn.
//! A [`GameState`] is an immutable value; every operation returns a new state.

mod engine;
pub mod format;
pub(crate) mod matching;
pub mod policy;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use engine::{
    replay, run_game, Decision, DemonPolicy, Outcome, PlayerPolicy, Round, Transcript,
};

/// A card number, `1..=m`.
pub type Card = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GameConfig {
    /// Number of stacks.
    pub k: usize,
    /// Number of card types.
    pub m: usize,
}

impl GameConfig {
    pub fn new(k: usize, m: usize) -> Result<Self> {
        if k < 1 {
            return Err(Error::BadGameNumber(k));
        }
        if m < k {
            return Err(Error::BadCardNumber { k, m });
        }
        Ok(GameConfig { k, m })
    }

    /// Default round budget, `k² + k + 1`.
    pub fn default_budget(&self) -> usize {
        self.k * self.k + self.k + 1
    }
}

/// Swap card `out` of stack `stack` for a card `into` from the reserve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PlayerMove {
    #[serde(rename = "i")]
    pub stack: usize,
    #[serde(rename = "a")]
    pub out: Card,
    #[serde(rename = "b")]
    pub into: Card,
}

impl PlayerMove {
    pub fn new(stack: usize, out: Card, into: Card) -> Self {
        PlayerMove { stack, out, into }
    }

    /// The swap that undoes this one.
    pub fn inverse(&self) -> Self {
        PlayerMove::new(self.stack, self.into, self.out)
    }
}

impl fmt::Display for PlayerMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}->{})", self.stack, self.out, self.into)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DemonKind {
    Lazy,
    Contrary,
    Konig,
    Vizing,
}

impl DemonKind {
    pub const ALL: [DemonKind; 4] = [
        DemonKind::Lazy,
        DemonKind::Contrary,
        DemonKind::Konig,
        DemonKind::Vizing,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            DemonKind::Lazy => "lazy",
            DemonKind::Contrary => "contrary",
            DemonKind::Konig => "konig",
            DemonKind::Vizing => "vizing",
        }
    }
}

impl fmt::Display for DemonKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for DemonKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        DemonKind::ALL
            .into_iter()
            .find(|d| d.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                format!("unknown demon `{s}` (expected lazy, contrary, konig or vizing)")
            })
    }
}

/// What the demon does after a player move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "ResponseRepr", into = "ResponseRepr")]
pub enum DemonResponse {
    Pass,
    Swap { stack: usize, out: Card, into: Card },
}

impl DemonResponse {
    pub fn swap(stack: usize, out: Card, into: Card) -> Self {
        DemonResponse::Swap { stack, out, into }
    }

    /// The response as a swap, if it is one.
    pub fn as_move(&self) -> Option<PlayerMove> {
        match *self {
            DemonResponse::Pass => None,
            DemonResponse::Swap { stack, out, into } => Some(PlayerMove::new(stack, out, into)),
        }
    }
}

impl fmt::Display for DemonResponse {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_move() {
            None => f.write_str("pass"),
            Some(mv) => mv.fmt(f),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ResponseRepr {
    Pass(PassTag),
    Swap {
        j: usize,
        out: Card,
        #[serde(rename = "in")]
        into: Card,
    },
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum PassTag {
    Pass,
}

impl From<ResponseRepr> for DemonResponse {
    fn from(r: ResponseRepr) -> Self {
        match r {
            ResponseRepr::Pass(_) => DemonResponse::Pass,
            ResponseRepr::Swap { j, out, into } => DemonResponse::swap(j, out, into),
        }
    }
}

impl From<DemonResponse> for ResponseRepr {
    fn from(r: DemonResponse) -> Self {
        match r {
            DemonResponse::Pass => ResponseRepr::Pass(PassTag::Pass),
            DemonResponse::Swap { stack, out, into } => ResponseRepr::Swap {
                j: stack,
                out,
                into,
            },
        }
    }
}

/// One card picked from each of some stacks, all numbers distinct.
/// Serializes as a map from stack index to card.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Hand {
    picks: BTreeMap<usize, Card>,
}

impl Hand {
    pub fn new() -> Self {
        Hand::default()
    }

    pub fn from_picks(picks: impl IntoIterator<Item = (usize, Card)>) -> Self {
        Hand {
            picks: picks.into_iter().collect(),
        }
    }

    pub fn insert(&mut self, stack: usize, card: Card) {
        self.picks.insert(stack, card);
    }

    pub fn len(&self) -> usize {
        self.picks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.picks.is_empty()
    }

    pub fn get(&self, stack: usize) -> Option<Card> {
        self.picks.get(&stack).copied()
    }

    pub fn picks(&self) -> &BTreeMap<usize, Card> {
        &self.picks
    }

    pub fn cards(&self) -> BTreeSet<Card> {
        self.picks.values().copied().collect()
    }

    pub fn contains_card(&self, card: Card) -> bool {
        self.picks.values().any(|&c| c == card)
    }

    /// Checks that each pick is in its stack and that picks are distinct.
    pub fn check(&self, state: &GameState) -> Result<()> {
        let mut seen = BTreeSet::new();
        for (&s, &c) in &self.picks {
            if s == 0 || s > state.k() || !state.stack(s).contains(&c) {
                return Err(Error::InvariantViolated(format!(
                    "hand picks card {c} from stack {s}, which does not hold it"
                )));
            }
            if !seen.insert(c) {
                return Err(Error::InvariantViolated(format!(
                    "hand uses card {c} twice"
                )));
            }
        }
        Ok(())
    }

    pub fn is_winning(&self, state: &GameState) -> bool {
        self.len() == state.k() && self.check(state).is_ok()
    }
}

impl fmt::Display for Hand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.picks.iter().map(|(s, c)| format!("{s}:{c}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GameState {
    config: GameConfig,
    stacks: Vec<BTreeSet<Card>>,
}

impl GameState {
    /// Validates a deal: `k` nonempty stacks of distinct cards in `1..=m`.
    pub fn new<S, I>(k: usize, m: usize, stacks: S) -> Result<Self>
    where
        S: IntoIterator<Item = I>,
        I: IntoIterator<Item = Card>,
    {
        let config = GameConfig::new(k, m)?;
        let mut sets = Vec::with_capacity(k);
        for (idx, stack) in stacks.into_iter().enumerate() {
            let mut set = BTreeSet::new();
            for card in stack {
                if card < 1 || card as usize > m {
                    return Err(Error::CardOutOfRange { card, m });
                }
                if !set.insert(card) {
                    return Err(Error::DuplicateCard {
                        stack: idx + 1,
                        card,
                    });
                }
            }
            sets.push(set);
        }
        if sets.len() != k {
            return Err(Error::WrongStackCount {
                expected: k,
                found: sets.len(),
            });
        }
        if let Some(idx) = sets.iter().position(BTreeSet::is_empty) {
            return Err(Error::EmptyStack(idx + 1));
        }
        Ok(GameState {
            config,
            stacks: sets,
        })
    }

    pub fn config(&self) -> GameConfig {
        self.config
    }

    pub fn k(&self) -> usize {
        self.config.k
    }

    pub fn m(&self) -> usize {
        self.config.m
    }

    /// Stack `i`, counted from 1.
    pub fn stack(&self, i: usize) -> &BTreeSet<Card> {
        &self.stacks[i - 1]
    }

    pub fn stacks(&self) -> &[BTreeSet<Card>] {
        &self.stacks
    }

    pub fn profile(&self) -> Vec<usize> {
        self.stacks.iter().map(BTreeSet::len).collect()
    }

    pub fn cards(&self) -> impl Iterator<Item = Card> {
        1..=self.m() as Card
    }

    /// Number of stacks holding `card`.
    pub fn occurrences(&self, card: Card) -> usize {
        self.stacks.iter().filter(|s| s.contains(&card)).count()
    }

    pub fn reserve_count(&self, card: Card) -> Result<usize> {
        if card < 1 || card as usize > self.m() {
            return Err(Error::CardOutOfRange { card, m: self.m() });
        }
        Ok(self.k() - self.occurrences(card))
    }

    /// Reserve counts for every card number.
    pub fn reserve(&self) -> BTreeMap<Card, usize> {
        self.cards()
            .map(|c| (c, self.k() - self.occurrences(c)))
            .collect()
    }

    /// All legal swaps, ordered by stack, then outgoing card, then incoming card.
    pub fn legal_player_moves(&self) -> Vec<PlayerMove> {
        let mut moves = Vec::new();
        for (idx, stack) in self.stacks.iter().enumerate() {
            for &a in stack {
                for b in self.cards().filter(|b| !stack.contains(b)) {
                    moves.push(PlayerMove::new(idx + 1, a, b));
                }
            }
        }
        moves
    }

    pub fn check_player_move(&self, mv: &PlayerMove) -> Result<()> {
        let illegal = |reason: String| Err(Error::IllegalMove { mv: *mv, reason });
        if mv.stack < 1 || mv.stack > self.k() {
            return illegal(format!("there is no stack {}", mv.stack));
        }
        for card in [mv.out, mv.into] {
            if card < 1 || card as usize > self.m() {
                return illegal(format!("card {card} is outside 1..={}", self.m()));
            }
        }
        if mv.out == mv.into {
            return illegal("the two cards must differ".into());
        }
        let stack = self.stack(mv.stack);
        if !stack.contains(&mv.out) {
            return illegal(format!("stack {} holds no {}-card", mv.stack, mv.out));
        }
        if stack.contains(&mv.into) {
            return illegal(format!(
                "stack {} already holds a {}-card",
                mv.stack, mv.into
            ));
        }
        // at most k-1 stacks hold `into`, so the reserve has one
        debug_assert!(self.occurrences(mv.into) < self.k());
        Ok(())
    }

    pub fn apply_player_move(&self, mv: &PlayerMove) -> Result<GameState> {
        self.check_player_move(mv)?;
        let mut next = self.clone();
        let stack = &mut next.stacks[mv.stack - 1];
        stack.remove(&mv.out);
        stack.insert(mv.into);
        Ok(next)
    }

    /// Responses the demon of `kind` may give after `mv`; `self` is the
    /// position right after the move.
    pub fn demon_legal_responses(&self, mv: &PlayerMove, kind: DemonKind) -> Vec<DemonResponse> {
        let (a, b) = (mv.out, mv.into);
        match kind {
            DemonKind::Lazy => vec![DemonResponse::Pass],
            DemonKind::Contrary => vec![DemonResponse::swap(mv.stack, b, a)],
            DemonKind::Konig | DemonKind::Vizing => {
                let others = || {
                    self.stacks
                        .iter()
                        .enumerate()
                        .map(|(idx, s)| (idx + 1, s))
                        .filter(|(j, _)| *j != mv.stack)
                };
                let mut out = vec![DemonResponse::Pass];
                out.extend(
                    others()
                        .filter(|(_, s)| s.contains(&b) && !s.contains(&a))
                        .map(|(j, _)| DemonResponse::swap(j, b, a)),
                );
                if kind == DemonKind::Vizing {
                    out.extend(
                        others()
                            .filter(|(_, s)| s.contains(&a) && !s.contains(&b))
                            .map(|(j, _)| DemonResponse::swap(j, a, b)),
                    );
                }
                out
            }
        }
    }

    pub fn apply_demon_response(
        &self,
        mv: &PlayerMove,
        kind: DemonKind,
        resp: &DemonResponse,
    ) -> Result<GameState> {
        if !self.demon_legal_responses(mv, kind).contains(resp) {
            return Err(Error::IllegalResponse {
                resp: *resp,
                reason: format!("not allowed for the {kind} demon after move {mv}"),
            });
        }
        match resp.as_move() {
            None => Ok(self.clone()),
            Some(swap) => self.apply_player_move(&swap),
        }
    }

    /// A largest hand, found by augmenting paths over stacks in order with
    /// cards tried smallest first.
    pub fn max_hand(&self) -> Hand {
        self.max_hand_over(|_| true)
    }

    /// Largest hand using only the stacks accepted by `keep`.
    pub(crate) fn max_hand_over(&self, keep: impl Fn(usize) -> bool) -> Hand {
        let ids: Vec<usize> = (1..=self.k()).filter(|&i| keep(i)).collect();
        let adj: Vec<Vec<Card>> = ids
            .iter()
            .map(|&i| self.stack(i).iter().copied().collect())
            .collect();
        let picks = matching::max_matching(&adj);
        Hand::from_picks(
            ids.into_iter()
                .zip(picks)
                .filter_map(|(i, c)| c.map(|c| (i, c))),
        )
    }

    pub fn is_winning(&self) -> bool {
        self.max_hand().len() == self.k()
    }

    /// Number of stacks holding exactly one card.
    pub fn singleton_stacks(&self) -> usize {
        self.stacks.iter().filter(|s| s.len() == 1).count()
    }
}

impl fmt::Display for GameState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, stack) in self.stacks.iter().enumerate() {
            let cards: Vec<String> = stack.iter().map(Card::to_string).collect();
            writeln!(f, "stack {}: {}", idx + 1, cards.join(" "))?;
        }
        let reserve: Vec<String> = self
            .reserve()
            .into_iter()
            .filter(|&(_, n)| n > 0)
            .map(|(c, n)| format!("{c}x{n}"))
            .collect();
        write!(f, "reserve: {}", reserve.join(" "))
    }
}
