//! Exact solver for the size games.
//!
//! A position is decided by depth-first search over the moves of
//! [`enumerate_s_moves`], memoizing every decided position. When S wins, the
//! winning moves stored in the table spell out a separating expression.

mod enumerate;
mod strategy;

use std::collections::HashMap;
use std::ops::ControlFlow;

use serde::Serialize;
use thiserror::Error;

use crate::expr::Expr;
use crate::game::{
    apply_valid, d_winning_by_long_chains, d_winning_by_shared_word, validate_move, Branch, Outcome, Player, Position,
    SMove, Violation,
};

pub use enumerate::{enumerate_s_moves, minimal_hitting_sets};
pub use strategy::{fixed_expr_move, FixedMove};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("resource limit exceeded: {0}")]
    LimitExceeded(String),
    #[error("illegal move: {0}")]
    IllegalMove(#[from] Violation),
    #[error("the move has no D choice")]
    NotBinary,
    #[error("strategy expression rejected: {0}")]
    BadStrategy(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SolverConfig {
    /// Distinct positions the search may expand before giving up.
    pub max_positions: usize,
    /// Candidate rejected pieces per star move.
    pub max_star_pool: usize,
    /// Minimal rejected-piece sets per star move.
    pub max_hitting_sets: usize,
    /// Undetermined prefixes per catenation cut choice.
    pub max_free_prefixes: usize,
    pub shared_word_pruning: bool,
    pub chain_pruning: bool,
    /// Dominance reductions of the move space; off means raw enumeration.
    pub reductions: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            max_positions: 2_000_000,
            max_star_pool: 24,
            max_hitting_sets: 4096,
            max_free_prefixes: 20,
            shared_word_pruning: true,
            chain_pruning: true,
            reductions: true,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SolveStats {
    pub positions: usize,
    pub memo_hits: usize,
    pub max_depth: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub winner: Player,
    pub witness: Option<Expr>,
    pub stats: SolveStats,
}

#[derive(Clone, Debug)]
struct Entry {
    winner: Player,
    best: Option<SMove>,
}

// `after_neg` forbids a second complement right away: ¬¬R costs two more
// than R. In the RESF game without the size charge it also keeps plays finite.
type Key = (Position, bool);

/// Where the engine takes S's moves from.
#[derive(Clone, Debug)]
pub enum StrategySource {
    Solver,
    FixedExpr(Expr),
}

/// A memoizing solver. The table survives across calls, so solving many
/// related positions with one instance shares work.
pub struct Solver {
    cfg: SolverConfig,
    table: HashMap<Key, Entry>,
    stats: SolveStats,
}

impl Default for Solver {
    fn default() -> Self {
        Solver::new(SolverConfig::default())
    }
}

impl Solver {
    pub fn new(cfg: SolverConfig) -> Self {
        Solver { cfg, table: HashMap::new(), stats: SolveStats::default() }
    }

    pub fn config(&self) -> &SolverConfig {
        &self.cfg
    }

    /// Statistics accumulated since construction or the last `clear`.
    pub fn stats(&self) -> SolveStats {
        self.stats
    }

    pub fn clear(&mut self) {
        self.table.clear();
        self.stats = SolveStats::default();
    }

    pub fn solve(&mut self, p: &Position) -> Result<SolveResult, SolveError> {
        let before = self.stats;
        let winner = self.value(p, false, 0)?;
        let witness = match winner {
            Player::S => Some(self.witness(p, false)),
            Player::D => None,
        };
        let stats = SolveStats {
            positions: self.stats.positions - before.positions,
            memo_hits: self.stats.memo_hits - before.memo_hits,
            max_depth: self.stats.max_depth,
        };
        Ok(SolveResult { winner, witness, stats })
    }

    pub fn winner(&mut self, p: &Position) -> Result<Player, SolveError> {
        self.value(p, false, 0)
    }

    /// A winning move for S, or `None` when D wins.
    pub fn best_move(&mut self, p: &Position) -> Result<Option<SMove>, SolveError> {
        if self.value(p, false, 0)? == Player::D {
            return Ok(None);
        }
        Ok(self.winning_move(p, false))
    }

    fn quick_d_win(&self, p: &Position) -> bool {
        p.k() == 0
            || (self.cfg.shared_word_pruning && d_winning_by_shared_word(p))
            || (self.cfg.chain_pruning && d_winning_by_long_chains(p))
    }

    fn value(&mut self, p: &Position, after_neg: bool, depth: usize) -> Result<Player, SolveError> {
        if self.quick_d_win(p) {
            return Ok(Player::D);
        }
        self.stats.max_depth = self.stats.max_depth.max(depth);
        let key = (p.clone(), after_neg);
        if let Some(e) = self.table.get(&key) {
            self.stats.memo_hits += 1;
            return Ok(e.winner);
        }
        self.stats.positions += 1;
        if self.table.len() >= self.cfg.max_positions {
            return Err(SolveError::LimitExceeded(format!("more than {} positions", self.cfg.max_positions)));
        }
        let cfg = self.cfg;
        let mut best = None;
        let _ = enumerate::for_each_move(&cfg, p, !after_neg, &mut |m| {
            let wins = match apply_valid(p, &m) {
                Outcome::Terminal(w) => w == Player::S,
                Outcome::One(c) => self.value(&c, m == SMove::Neg, depth + 1)? == Player::S,
                Outcome::Two(c1, c2) => {
                    self.value(&c1, false, depth + 1)? == Player::S && self.value(&c2, false, depth + 1)? == Player::S
                }
            };
            if wins {
                best = Some(m);
                Ok(ControlFlow::Break(()))
            } else {
                Ok(ControlFlow::Continue(()))
            }
        })?;
        let winner = if best.is_some() { Player::S } else { Player::D };
        self.table.insert(key, Entry { winner, best });
        Ok(winner)
    }

    fn winning_move(&self, p: &Position, after_neg: bool) -> Option<SMove> {
        self.table.get(&(p.clone(), after_neg)).and_then(|e| e.best.clone())
    }

    // Only called on positions already decided as S wins, whose winning
    // children are therefore in the table.
    fn witness(&self, p: &Position, after_neg: bool) -> Expr {
        let m = self.winning_move(p, after_neg).expect("S-won positions have a stored winning move");
        match (&m, apply_valid(p, &m)) {
            (SMove::Atom { symbol }, _) => match symbol.chars() {
                [] => Expr::Epsilon,
                [c] => Expr::Atom(*c),
                _ => unreachable!("atoms are single symbols"),
            },
            (SMove::Empty, _) => Expr::Empty,
            (SMove::Union { .. }, Outcome::Two(c1, c2)) => {
                Expr::union(self.witness(&c1, false), self.witness(&c2, false))
            }
            (SMove::Cat { .. }, Outcome::Two(c1, c2)) => Expr::cat(self.witness(&c1, false), self.witness(&c2, false)),
            (SMove::Star { .. }, Outcome::One(c)) => Expr::star(self.witness(&c, false)),
            (SMove::Neg, Outcome::One(c)) => Expr::not(self.witness(&c, true)),
            _ => unreachable!("move kind and outcome agree"),
        }
    }

    /// D's answer to a binary move: a branch D wins if there is one (the
    /// smaller budget if both are), otherwise branch 1.
    pub fn engine_reply_for_d(&mut self, p: &Position, m: &SMove) -> Result<Branch, SolveError> {
        validate_move(p, m)?;
        let Outcome::Two(c1, c2) = apply_valid(p, m) else {
            return Err(SolveError::NotBinary);
        };
        let d1 = self.winner(&c1)? == Player::D;
        let d2 = self.winner(&c2)? == Player::D;
        Ok(match (d1, d2) {
            (true, true) if c2.k() < c1.k() => Branch::Second,
            (true, _) => Branch::First,
            (false, true) => Branch::Second,
            (false, false) => Branch::First,
        })
    }

    /// S's move from `source`. With the solver a winning move is replayed;
    /// at a position D wins the first generated legal move is played. A fixed
    /// expression that does not separate within the budgets is an error.
    pub fn engine_move_for_s(&mut self, p: &Position, source: &StrategySource) -> Result<SMove, SolveError> {
        match source {
            StrategySource::FixedExpr(e) => Ok(fixed_expr_move(p, e)?.mv),
            StrategySource::Solver => {
                if let Some(m) = self.best_move(p)? {
                    return Ok(m);
                }
                let moves = enumerate_s_moves(&self.cfg, p)?;
                moves
                    .into_iter()
                    .next()
                    .ok_or_else(|| SolveError::IllegalMove(Violation("game over: k = 0 and D wins".into())))
            }
        }
    }
}

/// One-shot solve with the default configuration.
pub fn solve(p: &Position) -> Result<SolveResult, SolveError> {
    Solver::default().solve(p)
}
