use std::sync::Arc;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

use sizegame::service::{router, SessionStore};
use sizegame::solver::SolverConfig;

struct Client(axum::Router);

impl Client {
    fn new() -> Self {
        Client(router(Arc::new(SessionStore::new(SolverConfig::default()))))
    }

    async fn call(&self, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
        let req = Request::builder().method(method).uri(uri).header("content-type", "application/json");
        let req = req.body(body.map_or(Body::empty(), |b| Body::from(b.to_string()))).unwrap();
        let resp = self.0.clone().oneshot(req).await.unwrap();
        let status = resp.status();
        let bytes = resp.into_body().collect().await.unwrap().to_bytes();
        (status, if bytes.is_empty() { Value::Null } else { serde_json::from_slice(&bytes).unwrap() })
    }
}

fn ab_position(k: u32) -> Value {
    json!({"dialect": "re", "k": k, "alphabet": ["a", "b"], "A": ["ab"], "B": ["a", "b", ""]})
}

#[tokio::test]
async fn human_d_against_a_fixed_expression() {
    let c = Client::new();
    for choices in [[1, 1], [1, 2], [2, 1], [2, 2]] {
        let req = json!({"position": ab_position(3), "human": "D", "engine": {"mode": "fixed_expr", "expr": "ab"}});
        let (status, snap) = c.call("POST", "/sessions", Some(req)).await;
        assert_eq!(status, StatusCode::CREATED);
        assert_eq!(snap["status"], "ongoing");
        assert_eq!(snap["awaiting"], "D");
        assert_eq!(snap["pending"]["move"]["type"], "cat");
        let id = snap["id"].as_str().unwrap().to_string();
        let mut snap = snap;
        for b in choices {
            if snap["status"] != "ongoing" {
                break;
            }
            let (status, next) = c.call("POST", &format!("/sessions/{id}/choice"), Some(json!({"branch": b}))).await;
            assert_eq!(status, StatusCode::OK, "{next}");
            snap = next;
        }
        assert_eq!(snap["status"], "won_by_s", "{choices:?}: {snap}");
        let (_, again) = c.call("GET", &format!("/sessions/{id}"), None).await;
        assert_eq!(again, snap);
    }
}

#[tokio::test]
async fn human_s_moves_hints_and_errors() {
    let c = Client::new();
    let (status, snap) = c.call("POST", "/sessions", Some(json!({"position": ab_position(3), "human": "S"}))).await;
    assert_eq!(status, StatusCode::CREATED);
    let id = snap["id"].as_str().unwrap().to_string();

    let (_, hint) = c.call("GET", &format!("/sessions/{id}/hint"), None).await;
    assert_eq!(hint["value"], "S");
    assert_eq!(hint["move"]["type"], "cat");
    assert_eq!(hint["move"]["cuts"], json!([1]));

    let star = json!({"type": "star", "compositions": [[]], "b_prime": ["a"]});
    let (status, v) = c.call("POST", &format!("/sessions/{id}/validate"), Some(star.clone())).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(v["valid"], false);
    assert!(v["violation"].as_str().unwrap().starts_with("D wins on ε"));

    let (status, err) = c.call("POST", &format!("/sessions/{id}/moves"), Some(star)).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(err["code"], "illegal_move");
    assert!(err["violation"].is_string());

    let (status, err) = c.call("POST", &format!("/sessions/{id}/choice"), Some(json!({"branch": 1}))).await;
    assert_eq!(status, StatusCode::CONFLICT);
    assert_eq!(err["code"], "not_your_turn");

    let (status, snap) = c.call("POST", &format!("/sessions/{id}/moves"), Some(hint["move"].clone())).await;
    assert_eq!(status, StatusCode::OK);
    let history = snap["history"].as_array().unwrap();
    assert_eq!(history.len(), 2);
    assert_eq!(history[1]["by"], "engine");

    let (status, _) = c.call("DELETE", &format!("/sessions/{id}"), None).await;
    assert_eq!(status, StatusCode::NO_CONTENT);
    let (status, err) = c.call("GET", &format!("/sessions/{id}"), None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert_eq!(err["code"], "not_found");
}

#[tokio::test]
async fn lost_position_and_bad_requests() {
    let c = Client::new();
    let (_, snap) = c.call("POST", "/sessions", Some(json!({"position": ab_position(2), "human": "S"}))).await;
    let id = snap["id"].as_str().unwrap();
    let (_, hint) = c.call("GET", &format!("/sessions/{id}/hint"), None).await;
    assert_eq!(hint["value"], "D");
    assert_eq!(hint["message"], "no winning move exists");

    let bad = json!({"position": {"dialect": "re", "k": 1, "alphabet": ["a","b"], "A": ["b"], "B": []},
                     "human": "D", "engine": {"mode": "fixed_expr", "expr": "a"}});
    let (status, err) = c.call("POST", "/sessions", Some(bad)).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(err["code"], "invalid_request");

    let (status, err) = c.call("POST", "/sessions", Some(json!({"human": "S"}))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert!(err["message"].is_string());
}
