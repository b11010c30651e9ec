//! Positions of the size games and the rules for S's six moves.
//!
//! Moves are explicit values checked by [`validate_move`] and executed by
//! [`apply_move`]; both are pure. The star move takes the rejected-piece set
//! `B'` directly instead of a choice function on all splits of each B-word:
//! a split with ε pieces reduces to its nonempty-piece composition, so `B'` is
//! legal exactly when every composition of every B-word has a piece in `B'`.

mod moves;
mod position;
mod rules;

use thiserror::Error;

pub use moves::{Branch, Budget, SMove};
pub use position::{Player, Position, PositionSpec, Rules, WordSet};
pub(crate) use rules::apply_valid;
pub use rules::{
    apply_move, composition_avoiding, d_winning_by_long_chains, d_winning_by_shared_word, validate_move, GameStatus,
    Outcome, Violation,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GameError {
    #[error("invalid position: {0}")]
    InvalidPosition(String),
    #[error("illegal move: {0}")]
    IllegalMove(#[from] Violation),
}
