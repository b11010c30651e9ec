//! Formula size games on regular expressions.
//!
//! Two players argue over a position `(k, s, A, B)`: S claims some
//! expression of size at most `k` (and at most `s` stars) contains every word
//! of `A` and none of `B`; D disputes it. S wins exactly when such an
//! expression exists. The crate plays, solves and checks these games for
//! plain regular expressions, star-free-complement expressions and
//! generalized ones.
//!
//! - [`expr`]: syntax, size, dialects, matching
//! - [`game`]: positions, explicit moves, validation
//! - [`solver`]: exact solver, witnesses, engine moves
//! - [`oracle`]: exhaustive enumeration and least separators
//! - [`langs`]: bracket encodings, first-order sentences, chain languages, sampled lower bounds
//! - [`service`]: sessions and the HTTP API
//! - [`verify`]: self-checks against independent ground truth

pub mod expr;
pub mod game;
pub mod langs;
pub mod oracle;
pub mod service;
pub mod solver;
pub mod verify;
