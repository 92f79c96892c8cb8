//! One game between a human and the machine, advanced one request at a time.

use demon_solitaire::game::policy::{Eager, Random};
use demon_solitaire::game::{
    Card, Decision, DemonKind, DemonPolicy, DemonResponse, GameState, Hand, PlayerMove,
    PlayerPolicy, Round,
};
use demon_solitaire::strategies::{
    konig_step, vizing_budget, KonigStep, Strategy, StrategyKind, VizingStrategy,
};
use demon_solitaire::Error as GameError;
use serde::{Deserialize, Serialize};

use crate::deal::random_deal;
use crate::error::{Result, ServiceError};

/// Which side the human plays. The machine takes the other one; an observer
/// watches the machine play both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    #[serde(alias = "Player")]
    Player,
    #[serde(alias = "Demon")]
    Demon,
    #[serde(alias = "Observer")]
    Observer,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    AwaitingPlayer,
    AwaitingDemon,
    Won,
    Lost,
}

impl Status {
    pub fn is_over(self) -> bool {
        matches!(self, Status::Won | Status::Lost)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameSpec {
    pub k: usize,
    pub m: usize,
    pub stacks: Vec<Vec<Card>>,
}

/// Body of `POST /sessions`. Either `game` is given, or `k`, `m` and `seed`
/// generate a deal. A `seed` also makes the machine demon pick at random
/// (reproducibly); without one it always takes the first swap it may.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CreateSession {
    #[serde(default)]
    pub game: Option<GameSpec>,
    #[serde(default)]
    pub k: Option<usize>,
    #[serde(default)]
    pub m: Option<usize>,
    #[serde(default)]
    pub seed: Option<u64>,
    pub demon: DemonKind,
    pub human_role: Role,
    #[serde(default = "default_strategy")]
    pub strategy: StrategyKind,
    #[serde(default)]
    pub budget: Option<usize>,
}

fn default_strategy() -> StrategyKind {
    StrategyKind::Konig
}

/// What the strategy would play now.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Hint {
    Move(PlayerMove),
    AlreadyWinning(Hand),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptView {
    pub initial_stacks: Vec<Vec<Card>>,
    pub rounds: Vec<Round>,
}

/// Full-information view of a session; everything is face up.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionView {
    pub id: String,
    pub k: usize,
    pub m: usize,
    pub stacks: Vec<Vec<Card>>,
    /// `reserve[c - 1]` copies of number `c` are in the reserve.
    pub reserve: Vec<usize>,
    pub demon: DemonKind,
    pub human_role: Role,
    pub strategy: StrategyKind,
    pub status: Status,
    /// Set while the demon has to answer; the stacks already show it.
    pub pending_move: Option<PlayerMove>,
    pub legal_moves: Vec<PlayerMove>,
    pub legal_responses: Vec<DemonResponse>,
    pub hand: Option<Hand>,
    pub moves_made: usize,
    pub budget: usize,
    pub transcript: TranscriptView,
}

enum MachineDemon {
    Eager(Eager),
    Random(Box<Random>),
}

impl MachineDemon {
    fn policy(&mut self) -> &mut dyn DemonPolicy {
        match self {
            MachineDemon::Eager(d) => d,
            MachineDemon::Random(d) => d.as_mut(),
        }
    }
}

pub struct Session {
    id: String,
    initial: GameState,
    /// Current board; after the pending move when one is set.
    state: GameState,
    demon: DemonKind,
    role: Role,
    strategy_kind: StrategyKind,
    strategy: Strategy,
    machine_demon: MachineDemon,
    rounds: Vec<Round>,
    /// The player's move awaiting a demon answer, with the board before it.
    pending: Option<(PlayerMove, GameState)>,
    status: Status,
    hand: Option<Hand>,
    budget: usize,
}

fn stacks_of(state: &GameState) -> Vec<Vec<Card>> {
    state
        .stacks()
        .iter()
        .map(|s| s.iter().copied().collect())
        .collect()
}

impl Session {
    pub fn create(id: String, req: CreateSession) -> Result<Session> {
        let state = match (&req.game, req.k, req.m) {
            (Some(g), None, None) => GameState::new(g.k, g.m, g.stacks.clone())?,
            (None, Some(k), Some(m)) => {
                let seed = req.seed.ok_or_else(|| {
                    ServiceError::BadRequest("a generated deal needs a seed".into())
                })?;
                random_deal(k, m, seed, req.strategy == StrategyKind::Vizing)?
            }
            _ => {
                return Err(ServiceError::BadRequest(
                    "give either `game` or both `k` and `m`".into(),
                ))
            }
        };
        let singles = state.singleton_stacks();
        if req.strategy == StrategyKind::Vizing && singles > 1 {
            return Err(GameError::ProfileUnsupported(singles).into());
        }
        let k = state.k();
        let budget = match req.human_role {
            Role::Player => req.budget.unwrap_or(state.config().default_budget()),
            _ => {
                let supported = match req.strategy {
                    StrategyKind::Konig => matches!(req.demon, DemonKind::Lazy | DemonKind::Konig),
                    StrategyKind::Vizing => req.demon != DemonKind::Contrary,
                };
                if !supported {
                    return Err(GameError::PreconditionViolated(format!(
                        "the {} strategy is not guaranteed to win against the {} demon",
                        req.strategy, req.demon
                    ))
                    .into());
                }
                req.budget.unwrap_or(match req.strategy {
                    StrategyKind::Konig => k,
                    StrategyKind::Vizing => vizing_budget(k),
                })
            }
        };
        let machine_demon = match req.seed {
            Some(seed) => MachineDemon::Random(Box::new(Random::new(req.demon, seed))),
            None => MachineDemon::Eager(Eager::new(req.demon)),
        };
        let mut session = Session {
            id,
            initial: state.clone(),
            state,
            demon: req.demon,
            role: req.human_role,
            strategy_kind: req.strategy,
            strategy: Strategy::new(req.strategy),
            machine_demon,
            rounds: Vec::new(),
            pending: None,
            status: Status::AwaitingPlayer,
            hand: None,
            budget,
        };
        match session.role {
            Role::Player => session.check_turn_start(),
            Role::Demon => session.machine_turn()?,
            Role::Observer => {
                session.machine_turn()?;
                while session.status == Status::AwaitingDemon {
                    session.machine_answer()?;
                }
            }
        }
        Ok(session)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn state(&self) -> &GameState {
        &self.state
    }

    pub fn initial(&self) -> &GameState {
        &self.initial
    }

    pub fn rounds(&self) -> &[Round] {
        &self.rounds
    }

    pub fn pending_move(&self) -> Option<PlayerMove> {
        self.pending.as_ref().map(|(mv, _)| *mv)
    }

    /// A win is checked at the start of each player turn.
    fn check_turn_start(&mut self) {
        let best = self.state.max_hand();
        if best.len() == self.state.k() {
            self.hand = Some(best);
            self.status = Status::Won;
        } else if self.rounds.len() >= self.budget {
            self.status = Status::Lost;
        } else {
            self.status = Status::AwaitingPlayer;
        }
    }

    /// The machine player claims a win or makes its next move.
    fn machine_turn(&mut self) -> Result<()> {
        match self.strategy.decide(&self.state)? {
            Decision::Win(hand) => {
                hand.check(&self.state)?;
                if !hand.is_winning(&self.state) {
                    return Err(
                        GameError::InvariantViolated(format!("bogus win claim {hand}")).into(),
                    );
                }
                self.hand = Some(hand);
                self.status = Status::Won;
            }
            _ if self.rounds.len() >= self.budget => self.status = Status::Lost,
            Decision::Move(mv) => {
                let after = self.state.apply_player_move(&mv)?;
                self.pending = Some((mv, std::mem::replace(&mut self.state, after)));
                self.status = Status::AwaitingDemon;
            }
            Decision::Resign => self.status = Status::Lost,
        }
        Ok(())
    }

    /// Applies a demon answer to the pending move.
    fn answer(&mut self, resp: DemonResponse) -> Result<()> {
        let (mv, before) = self.pending.take().expect("a move is pending");
        let after = match self.state.apply_demon_response(&mv, self.demon, &resp) {
            Ok(after) => after,
            Err(e) => {
                self.pending = Some((mv, before));
                return Err(e.into());
            }
        };
        if self.role != Role::Player {
            self.strategy
                .observe(&before, &mv, &self.state, &resp, &after)?;
        }
        self.rounds.push(Round {
            player: mv,
            demon: resp,
        });
        self.state = after;
        Ok(())
    }

    fn machine_answer(&mut self) -> Result<()> {
        let (mv, _) = self.pending.as_ref().expect("a move is pending");
        let legal = self.state.demon_legal_responses(mv, self.demon);
        let resp = self
            .machine_demon
            .policy()
            .respond(&self.state, mv, &legal)?;
        if !legal.contains(&resp) {
            return Err(GameError::NonconformingDemon(resp).into());
        }
        self.answer(resp)?;
        match self.role {
            Role::Player => self.check_turn_start(),
            _ => self.machine_turn()?,
        }
        Ok(())
    }

    /// The human, as player, moves; the machine demon answers at once.
    pub fn player_move(&mut self, mv: PlayerMove) -> Result<()> {
        if self.role != Role::Player {
            return Err(ServiceError::WrongTurn(
                "the machine is the player in this session".into(),
            ));
        }
        if self.status != Status::AwaitingPlayer {
            return Err(ServiceError::WrongTurn(format!(
                "session is {:?}",
                self.status
            )));
        }
        let after = self.state.apply_player_move(&mv)?;
        self.pending = Some((mv, std::mem::replace(&mut self.state, after)));
        self.status = Status::AwaitingDemon;
        self.machine_answer()
    }

    /// The human, as demon, answers; the machine player moves again at once.
    pub fn demon_response(&mut self, resp: DemonResponse) -> Result<()> {
        if self.role != Role::Demon {
            return Err(ServiceError::WrongTurn(
                "the machine is the demon in this session".into(),
            ));
        }
        if self.status != Status::AwaitingDemon {
            return Err(ServiceError::WrongTurn(format!(
                "session is {:?}",
                self.status
            )));
        }
        self.answer(resp)?;
        self.machine_turn()
    }

    /// The session strategy's move for the current board. The Vizing
    /// strategy starts a fresh reduction here, since the human's own moves
    /// need not follow one.
    pub fn hint(&self) -> Result<Hint> {
        if self.role != Role::Player {
            return Err(ServiceError::WrongTurn(
                "hints are for a human player".into(),
            ));
        }
        if self.status == Status::Won {
            return Ok(Hint::AlreadyWinning(
                self.hand.clone().unwrap_or_else(|| self.state.max_hand()),
            ));
        }
        Ok(match self.strategy_kind {
            StrategyKind::Konig => match konig_step(&self.state) {
                KonigStep::AlreadyWinning(h) => Hint::AlreadyWinning(h),
                KonigStep::Move(mv) => Hint::Move(mv),
            },
            StrategyKind::Vizing => match VizingStrategy::new().decide(&self.state)? {
                Decision::Win(h) => Hint::AlreadyWinning(h),
                Decision::Move(mv) => Hint::Move(mv),
                Decision::Resign => {
                    return Err(GameError::InvariantViolated("strategy resigned".into()).into())
                }
            },
        })
    }

    pub fn view(&self) -> SessionView {
        let (legal_moves, legal_responses) = match (self.status, &self.pending) {
            (Status::AwaitingPlayer, _) => (self.state.legal_player_moves(), Vec::new()),
            (Status::AwaitingDemon, Some((mv, _))) => {
                (Vec::new(), self.state.demon_legal_responses(mv, self.demon))
            }
            _ => (Vec::new(), Vec::new()),
        };
        SessionView {
            id: self.id.clone(),
            k: self.state.k(),
            m: self.state.m(),
            stacks: stacks_of(&self.state),
            reserve: self.state.reserve().into_values().collect(),
            demon: self.demon,
            human_role: self.role,
            strategy: self.strategy_kind,
            status: self.status,
            pending_move: self.pending_move(),
            legal_moves,
            legal_responses,
            hand: self.hand.clone(),
            moves_made: self.rounds.len(),
            budget: self.budget,
            transcript: TranscriptView {
                initial_stacks: stacks_of(&self.initial),
                rounds: self.rounds.clone(),
            },
        }
    }
}
