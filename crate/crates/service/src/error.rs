use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::Json;
use serde::Serialize;
use thiserror::Error;

pub type Result<T, E = ServiceError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum ServiceError {
    #[error("no session with id {0}")]
    UnknownSession(String),
    #[error("{0}")]
    WrongTurn(String),
    #[error("session is handling another request; retry shortly")]
    Busy,
    #[error("{0}")]
    BadRequest(String),
    #[error(transparent)]
    Game(#[from] demon_solitaire::Error),
}

/// Body of every error reply.
#[derive(Debug, Serialize)]
pub struct ErrorBody {
    pub code: &'static str,
    pub message: String,
}

impl ServiceError {
    pub fn code(&self) -> &'static str {
        match self {
            ServiceError::UnknownSession(_) => "UnknownSession",
            ServiceError::WrongTurn(_) => "WrongTurn",
            ServiceError::Busy => "SessionBusy",
            ServiceError::BadRequest(_) => "BadRequest",
            ServiceError::Game(e) => e.code(),
        }
    }

    pub fn status(&self) -> StatusCode {
        use demon_solitaire::Error as E;
        match self {
            ServiceError::UnknownSession(_) => StatusCode::NOT_FOUND,
            ServiceError::WrongTurn(_) | ServiceError::Busy => StatusCode::CONFLICT,
            ServiceError::BadRequest(_) => StatusCode::BAD_REQUEST,
            ServiceError::Game(e) => match e.root() {
                E::IllegalMove { .. } | E::IllegalResponse { .. } => {
                    StatusCode::UNPROCESSABLE_ENTITY
                }
                E::InvariantViolated(_) | E::NonconformingDemon(_) | E::DemonFailure(_) => {
                    StatusCode::INTERNAL_SERVER_ERROR
                }
                _ => StatusCode::BAD_REQUEST,
            },
        }
    }
}

impl IntoResponse for ServiceError {
    fn into_response(self) -> Response {
        let body = ErrorBody {
            code: self.code(),
            message: self.to_string(),
        };
        let mut resp = (self.status(), Json(body)).into_response();
        if matches!(self, ServiceError::Busy) {
            resp.headers_mut()
                .insert(header::RETRY_AFTER, header::HeaderValue::from_static("1"));
        }
        resp
    }
}
