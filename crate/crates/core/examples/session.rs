//! A game as the service runs it, without HTTP: the human plays D against
//! the expression `ab`.

use sizegame::expr::Dialect;
use sizegame::game::{Branch, GameStatus, Player, Position};
use sizegame::service::{EngineMode, Session};
use sizegame::solver::SolverConfig;

fn main() {
    let p = Position::from_strs(Dialect::Re, 3, None, &["ab"], &["a", "b", ""], "ab").unwrap();
    let engine = EngineMode::FixedExpr { expr: "ab".into() };
    let mut s = Session::create("demo".into(), p, Player::D, engine, SolverConfig::default()).unwrap();
    while let GameStatus::Ongoing { position, .. } = s.status() {
        let hint = s.hint().unwrap();
        println!("at {position}: {}", hint.message);
        s.submit_choice(hint.branch.unwrap_or(Branch::Second)).unwrap();
    }
    let snap = s.snapshot();
    println!("{:?} along {}", s.status(), snap.line);
    println!("{}", serde_json::to_string_pretty(&snap.history).unwrap());
}
