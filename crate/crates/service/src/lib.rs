//! HTTP/JSON session service for playing demon solitaire live, either as the
//! player against a machine demon or as the demon against a machine strategy.
//!
//! | route | body | reply |
//! |---|---|---|
//! | `POST /sessions` | [`CreateSession`] | [`SessionView`] |
//! | `GET /sessions/{id}` | | [`SessionView`] |
//! | `POST /sessions/{id}/move` | `{"i", "a", "b"}` | [`SessionView`] |
//! | `POST /sessions/{id}/response` | `"pass"` or `{"j", "out", "in"}` | [`SessionView`] |
//! | `GET /sessions/{id}/hint` | | [`Hint`] |
//!
//! Errors come back as `{"code", "message"}`.

pub mod deal;
pub mod error;
pub mod session;
pub mod store;

use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::routing::{get, post};
use axum::{Json, Router};
use demon_solitaire::game::{DemonResponse, PlayerMove};
use serde::de::DeserializeOwned;

pub use error::{ErrorBody, Result, ServiceError};
pub use session::{CreateSession, GameSpec, Hint, Role, Session, SessionView, Status};
pub use store::SessionStore;

type Shared = State<Arc<SessionStore>>;

pub fn router(store: Arc<SessionStore>) -> Router {
    Router::new()
        .route("/sessions", post(create))
        .route("/sessions/{id}", get(state))
        .route("/sessions/{id}/move", post(player_move))
        .route("/sessions/{id}/response", post(demon_response))
        .route("/sessions/{id}/hint", get(hint))
        .with_state(store)
}

/// Serves the API on `addr` until the process stops.
pub async fn serve(addr: &str, store: Arc<SessionStore>) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router(store)).await
}

// bodies are parsed by hand so malformed JSON also gets a {code, message} reply
fn body<T: DeserializeOwned>(bytes: &Bytes) -> Result<T> {
    serde_json::from_slice(bytes)
        .map_err(|e| ServiceError::BadRequest(format!("invalid body: {e}")))
}

/// Also accepts `{"pass": ...}` for a pass.
fn response_body(bytes: &Bytes) -> Result<DemonResponse> {
    let value: serde_json::Value = body(bytes)?;
    if value
        .as_object()
        .is_some_and(|o| o.len() == 1 && o.contains_key("pass"))
    {
        return Ok(DemonResponse::Pass);
    }
    serde_json::from_value(value)
        .map_err(|e| ServiceError::BadRequest(format!("invalid response: {e}")))
}

async fn create(State(store): Shared, bytes: Bytes) -> Result<(StatusCode, Json<SessionView>)> {
    let view = store.create(body(&bytes)?)?;
    Ok((StatusCode::CREATED, Json(view)))
}

async fn state(State(store): Shared, Path(id): Path<String>) -> Result<Json<SessionView>> {
    store.view(&id).map(Json)
}

async fn player_move(
    State(store): Shared,
    Path(id): Path<String>,
    bytes: Bytes,
) -> Result<Json<SessionView>> {
    let mv: PlayerMove = body(&bytes)?;
    store.player_move(&id, mv).map(Json)
}

async fn demon_response(
    State(store): Shared,
    Path(id): Path<String>,
    bytes: Bytes,
) -> Result<Json<SessionView>> {
    let resp = response_body(&bytes)?;
    store.demon_response(&id, resp).map(Json)
}

async fn hint(State(store): Shared, Path(id): Path<String>) -> Result<Json<Hint>> {
    store.hint(&id).map(Json)
}
