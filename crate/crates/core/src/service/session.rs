//! A single game between a human and the engine.
//!
//! The history holds every move and choice, by either side. The play state
//! is a pure function of the initial position and the history; the engine is
//! consulted only to produce new events.

use serde::{Deserialize, Serialize};

use crate::expr::{parse_expr, Expr};
use crate::game::{apply_move, validate_move, Branch, GameStatus, Outcome, Player, Position, SMove, Violation};
use crate::solver::{fixed_expr_move, SolveError, Solver, SolverConfig, StrategySource};

use super::ServiceError;

/// Where the engine's S moves come from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum EngineMode {
    #[default]
    Solver,
    FixedExpr {
        expr: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Actor {
    Human,
    Engine,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Event {
    Move {
        by: Actor,
        #[serde(rename = "move")]
        mv: SMove,
    },
    Choice {
        by: Actor,
        branch: Branch,
    },
}

#[derive(Clone, Debug)]
enum Phase {
    SToMove,
    DToChoose { mv: SMove, children: [Position; 2], exprs: Option<[Expr; 2]> },
    Over(Player),
}

// One step of the line played so far, for rendering.
#[derive(Clone, Debug)]
enum Step {
    Leaf(String),
    Unary(&'static str),
    Branch(&'static str, Branch),
}

#[derive(Clone, Debug)]
struct Play {
    position: Position,
    // the fixed expression's subexpression for this position
    expr: Option<Expr>,
    phase: Phase,
    steps: Vec<Step>,
}

impl Play {
    fn new(p: Position, expr: Option<Expr>) -> Play {
        let phase = match p.terminal_winner() {
            Some(w) => Phase::Over(w),
            None => Phase::SToMove,
        };
        Play { position: p, expr, phase, steps: Vec::new() }
    }

    fn enter(&mut self, p: Position, expr: Option<Expr>) {
        self.phase = match p.terminal_winner() {
            Some(w) => Phase::Over(w),
            None => Phase::SToMove,
        };
        self.position = p;
        self.expr = expr;
    }

    fn apply(&mut self, event: &Event) -> Result<(), ServiceError> {
        match (event, &self.phase) {
            (_, Phase::Over(_)) => Err(ServiceError::GameOver),
            (Event::Move { mv, .. }, Phase::SToMove) => {
                let outcome = apply_move(&self.position, mv)?;
                let child_exprs = self
                    .expr
                    .as_ref()
                    .and_then(|e| fixed_expr_move(&self.position, e).ok())
                    .filter(|fm| fm.mv == *mv)
                    .map(|fm| fm.children);
                match outcome {
                    Outcome::Terminal(w) => {
                        self.steps.push(Step::Leaf(leaf_text(mv)));
                        self.phase = Phase::Over(w);
                    }
                    Outcome::One(c) => {
                        self.steps.push(Step::Unary(if matches!(mv, SMove::Star { .. }) { "star" } else { "neg" }));
                        self.enter(c, child_exprs.and_then(|v| v.into_iter().next()));
                    }
                    Outcome::Two(c1, c2) => {
                        let exprs = child_exprs.and_then(|v| <[Expr; 2]>::try_from(v).ok());
                        self.phase = Phase::DToChoose { mv: mv.clone(), children: [c1, c2], exprs };
                    }
                }
                Ok(())
            }
            (Event::Choice { branch, .. }, Phase::DToChoose { mv, children, exprs }) => {
                let i = branch.index();
                let (child, expr) = (children[i].clone(), exprs.as_ref().map(|e| e[i].clone()));
                self.steps.push(Step::Branch(mv.name(), *branch));
                self.enter(child, expr);
                Ok(())
            }
            (Event::Move { .. }, _) => Err(ServiceError::NotYourTurn("D has to choose a branch".into())),
            (Event::Choice { .. }, _) => Err(ServiceError::NotYourTurn("S has to move".into())),
        }
    }

    fn awaiting(&self) -> Option<Player> {
        match self.phase {
            Phase::SToMove => Some(Player::S),
            Phase::DToChoose { .. } => Some(Player::D),
            Phase::Over(_) => None,
        }
    }

    /// The line so far as an expression; `?` marks branches not played.
    fn line(&self) -> String {
        let mut text = match &self.phase {
            Phase::Over(_) => match self.steps.last() {
                Some(Step::Leaf(t)) => t.clone(),
                _ => "?".into(),
            },
            _ => "…".into(),
        };
        let inner = match (&self.phase, self.steps.last()) {
            (Phase::Over(_), Some(Step::Leaf(_))) => &self.steps[..self.steps.len() - 1],
            _ => &self.steps[..],
        };
        for step in inner.iter().rev() {
            text = match step {
                Step::Leaf(_) => unreachable!("leaves end a line"),
                Step::Unary("star") => format!("({text})*"),
                Step::Unary(_) => format!("!({text})"),
                Step::Branch("union", Branch::First) => format!("({text})|?"),
                Step::Branch("union", Branch::Second) => format!("?|({text})"),
                Step::Branch(_, Branch::First) => format!("({text})?"),
                Step::Branch(_, Branch::Second) => format!("?({text})"),
            };
        }
        text
    }
}

fn leaf_text(mv: &SMove) -> String {
    match mv {
        SMove::Atom { symbol } if symbol.is_empty() => "\\e".into(),
        SMove::Atom { symbol } => symbol.to_string(),
        _ => "\\0".into(),
    }
}

/// The engine's advice for the side the human plays.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hint {
    /// Winner of the current state under perfect play.
    pub value: Player,
    #[serde(rename = "move", skip_serializing_if = "Option::is_none")]
    pub mv: Option<SMove>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branch: Option<Branch>,
    pub message: String,
}

/// What a client sees of a session.
#[derive(Clone, Debug, Serialize)]
pub struct Snapshot {
    pub id: String,
    pub human: Player,
    pub engine: EngineMode,
    pub initial: Position,
    #[serde(flatten)]
    pub status: GameStatus,
    /// The binary move D has to answer, with its two children.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pending: Option<Pending>,
    /// In fixed-expression mode, the subexpression S follows here.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expression: Option<String>,
    pub line: String,
    pub history: Vec<Event>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Pending {
    #[serde(rename = "move")]
    pub mv: SMove,
    pub children: [Position; 2],
}

pub struct Session {
    id: String,
    initial: Position,
    human: Player,
    engine: EngineMode,
    fixed: Option<Expr>,
    history: Vec<Event>,
    play: Play,
    solver: Solver,
}

impl Session {
    /// Validates the request and lets the engine move first if it plays S.
    pub fn create(
        id: String,
        initial: Position,
        human: Player,
        engine: EngineMode,
        cfg: SolverConfig,
    ) -> Result<Session, ServiceError> {
        let mut s = Session::restore(id, initial, human, engine, cfg)?;
        s.run_engine()?;
        Ok(s)
    }

    /// Rebuilds a session from its history without consulting the engine.
    pub fn replay(
        id: String,
        initial: Position,
        human: Player,
        engine: EngineMode,
        history: Vec<Event>,
        cfg: SolverConfig,
    ) -> Result<Session, ServiceError> {
        let mut s = Session::restore(id, initial, human, engine, cfg)?;
        for e in history {
            s.push(e)?;
        }
        Ok(s)
    }

    fn restore(
        id: String,
        initial: Position,
        human: Player,
        engine: EngineMode,
        cfg: SolverConfig,
    ) -> Result<Session, ServiceError> {
        let fixed = match &engine {
            EngineMode::Solver => None,
            EngineMode::FixedExpr { .. } if human == Player::S => {
                return Err(ServiceError::InvalidRequest(
                    "a fixed expression drives S, so the human has to play D".into(),
                ))
            }
            EngineMode::FixedExpr { expr } => {
                let e = parse_expr(expr, initial.alphabet())
                    .map_err(|err| ServiceError::InvalidRequest(format!("fixed expression: {err}")))?;
                fixed_expr_move(&initial, &e).map_err(|err| ServiceError::InvalidRequest(err.to_string()))?;
                Some(e)
            }
        };
        Ok(Session {
            play: Play::new(initial.clone(), fixed.clone()),
            id,
            initial,
            human,
            engine,
            fixed,
            history: Vec::new(),
            solver: Solver::new(cfg),
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn initial(&self) -> &Position {
        &self.initial
    }

    pub fn human(&self) -> Player {
        self.human
    }

    pub fn engine(&self) -> &EngineMode {
        &self.engine
    }

    pub fn history(&self) -> &[Event] {
        &self.history
    }

    pub fn status(&self) -> GameStatus {
        match (&self.play.phase, self.play.awaiting()) {
            (Phase::Over(Player::S), _) => GameStatus::WonByS,
            (Phase::Over(Player::D), _) => GameStatus::WonByD,
            (_, Some(awaiting)) => GameStatus::Ongoing { position: self.play.position.clone(), awaiting },
            _ => unreachable!("ongoing phases await a player"),
        }
    }

    pub fn snapshot(&self) -> Snapshot {
        let pending = match &self.play.phase {
            Phase::DToChoose { mv, children, .. } => Some(Pending { mv: mv.clone(), children: children.clone() }),
            _ => None,
        };
        Snapshot {
            id: self.id.clone(),
            human: self.human,
            engine: self.engine.clone(),
            initial: self.initial.clone(),
            status: self.status(),
            pending,
            expression: self.play.expr.as_ref().map(|e| e.to_string()),
            line: self.play.line(),
            history: self.history.clone(),
        }
    }

    fn push(&mut self, e: Event) -> Result<(), ServiceError> {
        self.play.apply(&e)?;
        self.history.push(e);
        Ok(())
    }

    fn require_turn(&self, side: Player) -> Result<(), ServiceError> {
        match self.play.awaiting() {
            None => Err(ServiceError::GameOver),
            Some(p) if p != self.human => Err(ServiceError::NotYourTurn(format!("the engine plays {p}"))),
            Some(p) if p != side => Err(ServiceError::NotYourTurn(format!("{p} is to play"))),
            Some(_) => Ok(()),
        }
    }

    /// Checks a move against the current position without playing it.
    pub fn validate(&self, mv: &SMove) -> Result<(), Violation> {
        match self.play.phase {
            Phase::SToMove => validate_move(&self.play.position, mv),
            _ => Err(Violation("S is not to move".into())),
        }
    }

    /// Plays the human's S move and the engine's answers. Returns the new events.
    pub fn submit_move(&mut self, mv: SMove) -> Result<&[Event], ServiceError> {
        self.require_turn(Player::S)?;
        let start = self.history.len();
        self.push(Event::Move { by: Actor::Human, mv })?;
        self.run_engine()?;
        Ok(&self.history[start..])
    }

    pub fn submit_choice(&mut self, branch: Branch) -> Result<&[Event], ServiceError> {
        self.require_turn(Player::D)?;
        let start = self.history.len();
        self.push(Event::Choice { by: Actor::Human, branch })?;
        self.run_engine()?;
        Ok(&self.history[start..])
    }

    fn run_engine(&mut self) -> Result<(), ServiceError> {
        loop {
            let event = match (&self.play.phase, self.human) {
                (Phase::SToMove, Player::D) => {
                    let source = match &self.play.expr {
                        Some(e) if self.fixed.is_some() => StrategySource::FixedExpr(e.clone()),
                        _ => StrategySource::Solver,
                    };
                    let mv = self.solver.engine_move_for_s(&self.play.position, &source).map_err(engine_error)?;
                    Event::Move { by: Actor::Engine, mv }
                }
                (Phase::DToChoose { mv, .. }, Player::S) => {
                    let branch = self.solver.engine_reply_for_d(&self.play.position, mv).map_err(engine_error)?;
                    Event::Choice { by: Actor::Engine, branch }
                }
                _ => return Ok(()),
            };
            self.push(event)?;
        }
    }

    pub fn hint(&mut self) -> Result<Hint, ServiceError> {
        let p = self.play.position.clone();
        match &self.play.phase {
            Phase::Over(_) => Err(ServiceError::GameOver),
            Phase::SToMove => match self.solver.best_move(&p).map_err(engine_error)? {
                Some(mv) => {
                    Ok(Hint { value: Player::S, message: format!("{mv} wins for S"), mv: Some(mv), branch: None })
                }
                None => Ok(Hint { value: Player::D, mv: None, branch: None, message: "no winning move exists".into() }),
            },
            Phase::DToChoose { mv, children, .. } => {
                let (mv, children) = (mv.clone(), children.clone());
                let branch = self.solver.engine_reply_for_d(&p, &mv).map_err(engine_error)?;
                let value = self.solver.winner(&children[branch.index()]).map_err(engine_error)?;
                let message = match value {
                    Player::D => format!("branch {} wins for D", branch.number()),
                    Player::S => "S wins both branches".into(),
                };
                Ok(Hint { value, mv: None, branch: Some(branch), message })
            }
        }
    }
}

fn engine_error(e: SolveError) -> ServiceError {
    match e {
        SolveError::LimitExceeded(m) => ServiceError::Limit(m),
        other => ServiceError::Internal(other.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{Dialect, Word};

    fn pos(k: u32, a: &[&str], b: &[&str]) -> Position {
        Position::from_strs(Dialect::Re, k, None, a, b, "ab").unwrap()
    }

    fn fixed(e: &str) -> EngineMode {
        EngineMode::FixedExpr { expr: e.into() }
    }

    #[test]
    fn engine_opens_with_the_fixed_expression() {
        let s = Session::create(
            "s1".into(),
            pos(3, &["ab"], &["a", "b", ""]),
            Player::D,
            fixed("ab"),
            SolverConfig::default(),
        )
        .unwrap();
        assert!(matches!(s.history(), [Event::Move { by: Actor::Engine, mv: SMove::Cat { .. } }]));
        assert!(matches!(s.status(), GameStatus::Ongoing { awaiting: Player::D, .. }));
        assert_eq!(s.snapshot().line, "…");
    }

    #[test]
    fn fixed_expression_must_separate() {
        let err = Session::create(
            "s1".into(),
            Position::from_strs(Dialect::Re, 1, None, &["b"], &[], "ab").unwrap(),
            Player::D,
            fixed("a"),
            SolverConfig::default(),
        )
        .err()
        .unwrap();
        assert!(matches!(err, ServiceError::InvalidRequest(_)));
    }

    #[test]
    fn human_d_loses_every_line_against_the_fixed_expression() {
        for choices in [[1u8, 1], [1, 2], [2, 1], [2, 2]] {
            let mut s = Session::create(
                "s".into(),
                pos(3, &["ab"], &["a", "b", ""]),
                Player::D,
                fixed("ab"),
                SolverConfig::default(),
            )
            .unwrap();
            for c in choices {
                if s.status() == GameStatus::WonByS {
                    break;
                }
                s.submit_choice(Branch::from_number(c).unwrap()).unwrap();
            }
            assert_eq!(s.status(), GameStatus::WonByS, "{choices:?}");
            assert!(s.snapshot().line.contains('?'));
        }
    }

    #[test]
    fn human_s_at_a_lost_position() {
        let mut s = Session::create(
            "s".into(),
            pos(2, &["ab"], &["a", "b", ""]),
            Player::S,
            EngineMode::Solver,
            SolverConfig::default(),
        )
        .unwrap();
        let h = s.hint().unwrap();
        assert_eq!((h.value, h.mv), (Player::D, None));
        let atom = SMove::Atom { symbol: Word::from("a") };
        s.submit_move(atom).unwrap();
        assert_eq!(s.status(), GameStatus::WonByD);
        assert_eq!(s.snapshot().line, "a");
        assert!(matches!(s.hint(), Err(ServiceError::GameOver)));
    }

    #[test]
    fn hint_and_winning_play_for_s() {
        let mut s = Session::create(
            "s".into(),
            pos(3, &["ab"], &["a", "b", ""]),
            Player::S,
            EngineMode::Solver,
            SolverConfig::default(),
        )
        .unwrap();
        let h = s.hint().unwrap();
        assert_eq!(h.value, Player::S);
        let mut mv = h.mv;
        while let Some(m) = mv.take() {
            s.submit_move(m).unwrap();
            if let GameStatus::Ongoing { .. } = s.status() {
                mv = s.hint().unwrap().mv;
            }
        }
        assert_eq!(s.status(), GameStatus::WonByS);
    }

    #[test]
    fn illegal_moves_leave_no_trace() {
        let p = Position::from_strs(Dialect::Gre, 3, Some(1), &["a"], &[""], "ab").unwrap();
        let mut s = Session::create("s".into(), p, Player::S, EngineMode::Solver, SolverConfig::default()).unwrap();
        let star = SMove::Star { compositions: vec![vec![]], b_prime: vec![] };
        let err = s.submit_move(star.clone()).unwrap_err();
        let ServiceError::IllegalMove(v) = err else { panic!("{err:?}") };
        assert!(v.0.starts_with("D wins on ε"));
        assert!(s.history().is_empty());
        assert!(s.validate(&star).is_err());
        assert!(matches!(s.submit_choice(Branch::First), Err(ServiceError::NotYourTurn(_))));
    }

    #[test]
    fn replay_reconstructs_the_state() {
        let mut s = Session::create(
            "s".into(),
            pos(3, &["ab"], &["a", "b", ""]),
            Player::D,
            fixed("ab"),
            SolverConfig::default(),
        )
        .unwrap();
        s.submit_choice(Branch::Second).unwrap();
        let r = Session::replay(
            "s".into(),
            s.initial().clone(),
            Player::D,
            s.engine().clone(),
            s.history().to_vec(),
            SolverConfig::default(),
        )
        .unwrap();
        assert_eq!(r.status(), s.status());
        assert_eq!(r.snapshot().line, s.snapshot().line);
        assert_eq!(r.snapshot().expression, s.snapshot().expression);
    }
}
