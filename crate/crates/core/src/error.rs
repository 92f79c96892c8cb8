use thiserror::Error;

use crate::game::{Card, DemonResponse, PlayerMove};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("game number must be at least 1, got {0}")]
    BadGameNumber(usize),
    #[error("card number {m} is smaller than game number {k}")]
    BadCardNumber { k: usize, m: usize },
    #[error("expected {expected} stacks, found {found}")]
    WrongStackCount { expected: usize, found: usize },
    #[error("stack {0} is empty")]
    EmptyStack(usize),
    #[error("card {card} is outside 1..={m}")]
    CardOutOfRange { card: Card, m: usize },
    #[error("stack {stack} holds card {card} twice")]
    DuplicateCard { stack: usize, card: Card },
    #[error("illegal move {mv}: {reason}")]
    IllegalMove { mv: PlayerMove, reason: String },
    #[error("illegal demon response {resp}: {reason}")]
    IllegalResponse { resp: DemonResponse, reason: String },
    #[error("round {round}: {source}")]
    AtRound {
        round: usize,
        #[source]
        source: Box<Error>,
    },
    #[error("demon policy answered with {0}, which its rule does not allow")]
    NonconformingDemon(DemonResponse),
    #[error("demon policy failed: {0}")]
    DemonFailure(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("stack profile has {0} singleton stacks; at most one is supported")]
    ProfileUnsupported(usize),
    #[error("Hall's condition fails for the chosen number set")]
    HallViolation,
    #[error("reduction would lock every active stack")]
    NotReducible,
    #[error("strategy invariant violated: {0}")]
    InvariantViolated(String),

    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("graph has {edges} edges; brute force is limited to {limit}")]
    TooLarge { edges: usize, limit: usize },
    #[error("induced demon response does not conform: {0}")]
    DemonNonconformance(String),
    #[error("invalid JSON: {0}")]
    Json(String),
}

impl Error {
    pub(crate) fn at_round(self, round: usize) -> Self {
        Error::AtRound {
            round,
            source: Box::new(self),
        }
    }

    /// Strips any `AtRound` wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::AtRound { source, .. } => source.root(),
            e => e,
        }
    }

    /// Stable name of the root variant, for machine-readable error reports.
    pub fn code(&self) -> &'static str {
        match self.root() {
            Error::BadGameNumber(_) => "BadGameNumber",
            Error::BadCardNumber { .. } => "BadCardNumber",
            Error::WrongStackCount { .. } => "WrongStackCount",
            Error::EmptyStack(_) => "EmptyStack",
            Error::CardOutOfRange { .. } => "CardOutOfRange",
            Error::DuplicateCard { .. } => "DuplicateCard",
            Error::IllegalMove { .. } => "IllegalMove",
            Error::IllegalResponse { .. } => "IllegalResponse",
            Error::AtRound { .. } => unreachable!("root strips round wrappers"),
            Error::NonconformingDemon(_) => "NonconformingDemon",
            Error::DemonFailure(_) => "DemonFailure",
            Error::PreconditionViolated(_) => "PreconditionViolated",
            Error::ProfileUnsupported(_) => "ProfileUnsupported",
            Error::HallViolation => "HallViolation",
            Error::NotReducible => "NotReducible",
            Error::InvariantViolated(_) => "InvariantViolated",
            Error::NotBipartite => "NotBipartite",
            Error::Parse { .. } => "ParseError",
            Error::TooLarge { .. } => "TooLarge",
            Error::DemonNonconformance(_) => "DemonNonconformance",
            Error::Json(_) => "ParseError",
        }
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
