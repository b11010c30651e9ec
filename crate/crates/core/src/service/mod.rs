//! Session-oriented HTTP play against the engine.
//!
//! ```text
//! POST   /sessions                 {position, human, engine?}   -> snapshot
//! GET    /sessions/{id}                                         -> snapshot
//! DELETE /sessions/{id}
//! POST   /sessions/{id}/moves      SMove                        -> snapshot
//! POST   /sessions/{id}/choice     {branch: 1 | 2}              -> snapshot
//! POST   /sessions/{id}/validate   SMove                        -> {valid, violation?}
//! GET    /sessions/{id}/hint                                    -> hint
//! ```
//!
//! Errors are `{code, message, violation?}`. With a log file, every session
//! creation, event and deletion is appended as one JSON line, and
//! [`SessionStore::from_log`] rebuilds the sessions from it.

mod http;
mod session;

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::game::{Player, Position, Violation};
use crate::solver::SolverConfig;

pub use http::{router, serve};
pub use session::{Actor, EngineMode, Event, Hint, Pending, Session, Snapshot};

#[derive(Debug, Error)]
pub enum ServiceError {
    #[error("{0}")]
    InvalidRequest(String),
    #[error("no session {0}")]
    NotFound(String),
    #[error("not your turn: {0}")]
    NotYourTurn(String),
    #[error("game over")]
    GameOver,
    #[error("illegal move: {0}")]
    IllegalMove(#[from] Violation),
    #[error("engine limit exceeded: {0}")]
    Limit(String),
    #[error("{0}")]
    Internal(String),
}

impl ServiceError {
    pub fn code(&self) -> &'static str {
        match self {
            ServiceError::InvalidRequest(_) => "invalid_request",
            ServiceError::NotFound(_) => "not_found",
            ServiceError::NotYourTurn(_) => "not_your_turn",
            ServiceError::GameOver => "game_over",
            ServiceError::IllegalMove(_) => "illegal_move",
            ServiceError::Limit(_) => "limit_exceeded",
            ServiceError::Internal(_) => "internal",
        }
    }
}

/// One line of the session log.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "record", rename_all = "snake_case")]
pub enum LogRecord {
    Created { id: String, initial: Position, human: Player, engine: EngineMode },
    Event { id: String, event: Event },
    Deleted { id: String },
}

pub type SharedSession = Arc<tokio::sync::Mutex<Session>>;

/// All live sessions. Each session has its own lock, so requests for
/// different sessions run concurrently and those for one session in order.
pub struct SessionStore {
    sessions: Mutex<BTreeMap<String, SharedSession>>,
    next_id: AtomicU64,
    log: Option<Mutex<File>>,
    solver: SolverConfig,
}

impl SessionStore {
    pub fn new(solver: SolverConfig) -> Self {
        SessionStore { sessions: Mutex::default(), next_id: AtomicU64::new(1), log: None, solver }
    }

    /// Replays the sessions recorded in `path`, if it exists, and appends
    /// to it from then on.
    pub fn from_log(path: &Path, solver: SolverConfig) -> Result<Self, ServiceError> {
        let io = |e: std::io::Error| ServiceError::Internal(format!("{}: {e}", path.display()));
        let mut store = SessionStore::new(solver);
        if path.exists() {
            let mut pending: BTreeMap<String, (Position, Player, EngineMode, Vec<Event>)> = BTreeMap::new();
            for (n, line) in BufReader::new(File::open(path).map_err(io)?).lines().enumerate() {
                let line = line.map_err(io)?;
                if line.trim().is_empty() {
                    continue;
                }
                let record: LogRecord = serde_json::from_str(&line)
                    .map_err(|e| ServiceError::Internal(format!("{}:{}: {e}", path.display(), n + 1)))?;
                match record {
                    LogRecord::Created { id, initial, human, engine } => {
                        pending.insert(id, (initial, human, engine, Vec::new()));
                    }
                    LogRecord::Event { id, event } => {
                        if let Some(s) = pending.get_mut(&id) {
                            s.3.push(event);
                        }
                    }
                    LogRecord::Deleted { id } => {
                        pending.remove(&id);
                    }
                }
            }
            let mut max_id = 0;
            for (id, (initial, human, engine, history)) in pending {
                max_id = max_id.max(id.trim_start_matches('s').parse::<u64>().unwrap_or(0));
                let s = Session::replay(id.clone(), initial, human, engine, history, solver)?;
                store.sessions.get_mut().unwrap().insert(id, Arc::new(tokio::sync::Mutex::new(s)));
            }
            store.next_id = AtomicU64::new(max_id + 1);
        }
        let file = OpenOptions::new().create(true).append(true).open(path).map_err(io)?;
        store.log = Some(Mutex::new(file));
        Ok(store)
    }

    pub fn solver_config(&self) -> SolverConfig {
        self.solver
    }

    pub fn fresh_id(&self) -> String {
        format!("s{}", self.next_id.fetch_add(1, Ordering::Relaxed))
    }

    pub fn insert(&self, s: Session) -> SharedSession {
        self.record(&LogRecord::Created {
            id: s.id().to_string(),
            initial: s.initial().clone(),
            human: s.human(),
            engine: s.engine().clone(),
        });
        self.record_events(s.id(), s.history());
        let id = s.id().to_string();
        let shared = Arc::new(tokio::sync::Mutex::new(s));
        self.sessions.lock().unwrap().insert(id, shared.clone());
        shared
    }

    pub fn get(&self, id: &str) -> Result<SharedSession, ServiceError> {
        self.sessions.lock().unwrap().get(id).cloned().ok_or_else(|| ServiceError::NotFound(id.into()))
    }

    pub fn remove(&self, id: &str) -> Result<(), ServiceError> {
        self.sessions.lock().unwrap().remove(id).ok_or_else(|| ServiceError::NotFound(id.into()))?;
        self.record(&LogRecord::Deleted { id: id.into() });
        Ok(())
    }

    pub fn ids(&self) -> Vec<String> {
        self.sessions.lock().unwrap().keys().cloned().collect()
    }

    pub fn record_events(&self, id: &str, events: &[Event]) {
        for e in events {
            self.record(&LogRecord::Event { id: id.into(), event: e.clone() });
        }
    }

    // Logging is best effort: a failed write must not lose the game itself.
    fn record(&self, r: &LogRecord) {
        if let Some(log) = &self.log {
            let mut f = log.lock().unwrap();
            let _ = writeln!(f, "{}", serde_json::to_string(r).expect("log records serialize"));
        }
    }
}
