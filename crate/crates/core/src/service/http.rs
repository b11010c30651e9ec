use std::net::SocketAddr;
use std::sync::Arc;

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::game::{Branch, Player, Position, SMove};

use super::{EngineMode, Hint, ServiceError, Session, SessionStore, Snapshot};

impl IntoResponse for ServiceError {
    fn into_response(self) -> Response {
        let status = match self {
            ServiceError::InvalidRequest(_) => StatusCode::BAD_REQUEST,
            ServiceError::NotFound(_) => StatusCode::NOT_FOUND,
            ServiceError::NotYourTurn(_) | ServiceError::GameOver => StatusCode::CONFLICT,
            ServiceError::IllegalMove(_) => StatusCode::UNPROCESSABLE_ENTITY,
            ServiceError::Limit(_) => StatusCode::SERVICE_UNAVAILABLE,
            ServiceError::Internal(_) => StatusCode::INTERNAL_SERVER_ERROR,
        };
        let mut body = json!({ "code": self.code(), "message": self.to_string() });
        if let ServiceError::IllegalMove(v) = &self {
            body["violation"] = json!(v.0);
        }
        (status, Json(body)).into_response()
    }
}

fn body<T>(r: Result<Json<T>, JsonRejection>) -> Result<T, ServiceError> {
    r.map(|Json(t)| t).map_err(|e| ServiceError::InvalidRequest(e.body_text()))
}

#[derive(Deserialize)]
struct CreateRequest {
    position: Position,
    human: Player,
    #[serde(default)]
    engine: EngineMode,
}

#[derive(Deserialize)]
struct ChoiceRequest {
    branch: Branch,
}

#[derive(Serialize)]
struct Validation {
    valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    violation: Option<String>,
}

type AppState = Arc<SessionStore>;

pub fn router(store: Arc<SessionStore>) -> Router {
    Router::new()
        .route("/sessions", post(create))
        .route("/sessions/{id}", get(show).delete(remove))
        .route("/sessions/{id}/moves", post(play_move))
        .route("/sessions/{id}/choice", post(choose))
        .route("/sessions/{id}/validate", post(validate))
        .route("/sessions/{id}/hint", get(hint))
        .with_state(store)
}

pub async fn serve(addr: SocketAddr, store: Arc<SessionStore>) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router(store)).await
}

// Engine work is CPU-bound, so it runs off the async workers while the
// session's lock is held.
async fn with_session<T: Send + 'static>(
    store: &AppState,
    id: &str,
    f: impl FnOnce(&mut Session, &SessionStore) -> Result<T, ServiceError> + Send + 'static,
) -> Result<T, ServiceError> {
    let mut guard = store.get(id)?.lock_owned().await;
    let store = store.clone();
    tokio::task::spawn_blocking(move || f(&mut guard, &store))
        .await
        .map_err(|e| ServiceError::Internal(e.to_string()))?
}

async fn create(
    State(store): State<AppState>,
    req: Result<Json<CreateRequest>, JsonRejection>,
) -> Result<(StatusCode, Json<Snapshot>), ServiceError> {
    let req = body(req)?;
    let id = store.fresh_id();
    let cfg = store.solver_config();
    let s = tokio::task::spawn_blocking(move || Session::create(id, req.position, req.human, req.engine, cfg))
        .await
        .map_err(|e| ServiceError::Internal(e.to_string()))??;
    let snap = s.snapshot();
    store.insert(s);
    Ok((StatusCode::CREATED, Json(snap)))
}

async fn show(State(store): State<AppState>, Path(id): Path<String>) -> Result<Json<Snapshot>, ServiceError> {
    let s = store.get(&id)?;
    let snap = s.lock().await.snapshot();
    Ok(Json(snap))
}

async fn remove(State(store): State<AppState>, Path(id): Path<String>) -> Result<StatusCode, ServiceError> {
    store.remove(&id)?;
    Ok(StatusCode::NO_CONTENT)
}

async fn play_move(
    State(store): State<AppState>,
    Path(id): Path<String>,
    req: Result<Json<SMove>, JsonRejection>,
) -> Result<Json<Snapshot>, ServiceError> {
    let mv = body(req)?;
    with_session(&store, &id, move |s, store| {
        let new = s.submit_move(mv)?.to_vec();
        store.record_events(s.id(), &new);
        Ok(Json(s.snapshot()))
    })
    .await
}

async fn choose(
    State(store): State<AppState>,
    Path(id): Path<String>,
    req: Result<Json<ChoiceRequest>, JsonRejection>,
) -> Result<Json<Snapshot>, ServiceError> {
    let branch = body(req)?.branch;
    with_session(&store, &id, move |s, store| {
        let new = s.submit_choice(branch)?.to_vec();
        store.record_events(s.id(), &new);
        Ok(Json(s.snapshot()))
    })
    .await
}

async fn validate(
    State(store): State<AppState>,
    Path(id): Path<String>,
    req: Result<Json<SMove>, JsonRejection>,
) -> Result<Json<Validation>, ServiceError> {
    let mv = body(req)?;
    let s = store.get(&id)?;
    let r = s.lock().await.validate(&mv);
    Ok(Json(Validation { valid: r.is_ok(), violation: r.err().map(|v| v.0) }))
}

async fn hint(State(store): State<AppState>, Path(id): Path<String>) -> Result<Json<Hint>, ServiceError> {
    with_session(&store, &id, |s, _| s.hint().map(Json)).await
}
