//! In-memory session store. Requests on one session are serialized; a
//! request that finds its session busy is told to retry instead of waiting.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{self, Write};
use std::path::Path;
use std::sync::Arc;

use demon_solitaire::game::{DemonResponse, PlayerMove};
use parking_lot::{Mutex, RwLock};
use serde_json::json;

use crate::error::{Result, ServiceError};
use crate::session::{CreateSession, Hint, Session, SessionView};

#[derive(Default)]
pub struct SessionStore {
    sessions: RwLock<HashMap<String, Arc<Mutex<Session>>>>,
    log: Option<Mutex<File>>,
}

impl SessionStore {
    pub fn new() -> Self {
        Self::default()
    }

    /// A store that appends every new session and round, as JSON lines, to
    /// the file at `path`.
    pub fn with_log(path: impl AsRef<Path>) -> io::Result<Self> {
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        Ok(SessionStore {
            sessions: RwLock::default(),
            log: Some(Mutex::new(file)),
        })
    }

    pub fn len(&self) -> usize {
        self.sessions.read().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The shared handle of a session. Holding its lock makes other requests
    /// on the session fail with [`ServiceError::Busy`].
    pub fn session(&self, id: &str) -> Result<Arc<Mutex<Session>>> {
        self.sessions
            .read()
            .get(id)
            .cloned()
            .ok_or_else(|| ServiceError::UnknownSession(id.to_string()))
    }

    pub fn create(&self, req: CreateSession) -> Result<SessionView> {
        let id = uuid::Uuid::new_v4().simple().to_string();
        let session = Session::create(id.clone(), req)?;
        self.append(json!({
            "session": id,
            "initial_stacks": session.view().transcript.initial_stacks,
        }));
        self.log_rounds(&session, 0);
        let view = session.view();
        self.sessions
            .write()
            .insert(id, Arc::new(Mutex::new(session)));
        Ok(view)
    }

    pub fn view(&self, id: &str) -> Result<SessionView> {
        self.with_session(id, |s| Ok(s.view()))
    }

    pub fn player_move(&self, id: &str, mv: PlayerMove) -> Result<SessionView> {
        self.with_session(id, |s| s.player_move(mv).map(|_| s.view()))
    }

    pub fn demon_response(&self, id: &str, resp: DemonResponse) -> Result<SessionView> {
        self.with_session(id, |s| s.demon_response(resp).map(|_| s.view()))
    }

    pub fn hint(&self, id: &str) -> Result<Hint> {
        self.with_session(id, |s| s.hint())
    }

    fn with_session<T>(&self, id: &str, f: impl FnOnce(&mut Session) -> Result<T>) -> Result<T> {
        let handle = self.session(id)?;
        let mut session = handle.try_lock().ok_or(ServiceError::Busy)?;
        let seen = session.rounds().len();
        let out = f(&mut session);
        self.log_rounds(&session, seen);
        out
    }

    fn log_rounds(&self, session: &Session, from: usize) {
        for (n, round) in session.rounds().iter().enumerate().skip(from) {
            self.append(json!({ "session": session.id(), "round": n + 1, "play": round }));
        }
    }

    fn append(&self, line: serde_json::Value) {
        if let Some(log) = &self.log {
            // the log is best effort; play goes on if the disk does not
            let _ = writeln!(log.lock(), "{line}");
        }
    }
}
