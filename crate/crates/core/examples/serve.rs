//! Run the session API.
//!
//!     cargo run --example serve -- 127.0.0.1:8080
//!     curl -s localhost:8080/sessions -d '{"position":{"dialect":"re","k":3,"alphabet":["a","b"],"A":["ab"],"B":["a","b",""]},"human":"S"}' -H 'content-type: application/json'

use std::sync::Arc;

use sizegame::service::{serve, SessionStore};
use sizegame::solver::SolverConfig;

#[tokio::main]
async fn main() -> std::io::Result<()> {
    let addr = std::env::args().nth(1).unwrap_or_else(|| "127.0.0.1:8080".into());
    let store = Arc::new(SessionStore::new(SolverConfig::default()));
    println!("listening on {addr}");
    serve(addr.parse().expect("socket address"), store).await
}
