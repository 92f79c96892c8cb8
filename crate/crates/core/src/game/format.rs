//! Text format for deals and the JSON transcript record.
//!
//! A deal file holds `k m` on its first line, then one line per stack listing
//! its card numbers separated by spaces. `#` starts a comment and blank lines
//! are ignored.

use serde::{Deserialize, Serialize};

use super::{Card, DemonKind, GameConfig, GameState, Outcome, Round, Transcript};
use crate::error::{Error, Result};

pub fn parse_game(text: &str) -> Result<GameState> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(n, l)| (n + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (line_no, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing `k m` header"))?;
    let header = parse_numbers(line_no, header)?;
    let [k, m] = header[..] else {
        return Err(Error::parse(line_no, "header must be exactly `k m`"));
    };
    let (k, m) = (k as usize, m as usize);

    let mut stacks = Vec::new();
    for (line_no, line) in lines {
        if stacks.len() == k {
            return Err(Error::parse(line_no, format!("more than {k} stack lines")));
        }
        stacks.push(parse_numbers(line_no, line)?);
    }
    GameState::new(k, m, stacks)
}

fn parse_numbers(line_no: usize, line: &str) -> Result<Vec<Card>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<Card>()
                .map_err(|_| Error::parse(line_no, format!("`{tok}` is not a card number")))
        })
        .collect()
}

pub fn write_game(state: &GameState) -> String {
    let mut out = format!("{} {}\n", state.k(), state.m());
    for stack in state.stacks() {
        let cards: Vec<String> = stack.iter().map(Card::to_string).collect();
        out.push_str(&cards.join(" "));
        out.push('\n');
    }
    out
}

/// Serialized form of a [`Transcript`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptRecord {
    pub config: GameConfig,
    pub initial_stacks: Vec<Vec<Card>>,
    pub rounds: Vec<Round>,
    pub outcome: Outcome,
}

impl TranscriptRecord {
    pub fn from_transcript(t: &Transcript) -> Self {
        TranscriptRecord {
            config: t.initial.config(),
            initial_stacks: t
                .initial
                .stacks()
                .iter()
                .map(|s| s.iter().copied().collect())
                .collect(),
            rounds: t.rounds.clone(),
            outcome: t.outcome,
        }
    }

    /// Rebuilds the transcript, checking every round against `kind`'s rule.
    pub fn replay(&self, kind: DemonKind) -> Result<Transcript> {
        let initial = GameState::new(self.config.k, self.config.m, self.initial_stacks.clone())?;
        let final_state = super::replay(&initial, &self.rounds, kind)?;
        let hand = Some(final_state.max_hand()).filter(|h| h.len() == final_state.k());
        if self.outcome == Outcome::Won && hand.is_none() {
            return Err(Error::InvariantViolated(
                "transcript claims a win but the final position has no full hand".into(),
            ));
        }
        Ok(Transcript {
            initial,
            rounds: self.rounds.clone(),
            outcome: self.outcome,
            hand: hand.filter(|_| self.outcome == Outcome::Won),
            final_state,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("transcript serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))
    }
}

impl Transcript {
    pub fn to_json(&self) -> String {
        TranscriptRecord::from_transcript(self).to_json()
    }
}
