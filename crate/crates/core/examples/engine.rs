//! The engine's moves: S from a fixed expression or the solver, D's replies.

use sizegame::expr::{parse_expr, Dialect};
use sizegame::game::{apply_move, Outcome, Position, SMove};
use sizegame::solver::{Solver, StrategySource};

fn main() {
    let p = Position::from_strs(Dialect::Re, 3, None, &["ab"], &["a", "b", ""], "ab").unwrap();
    let mut solver = Solver::default();

    let fixed = StrategySource::FixedExpr(parse_expr("ab", p.alphabet()).unwrap());
    let mv = solver.engine_move_for_s(&p, &fixed).unwrap();
    println!("following ab: {mv}");

    let mv = solver.engine_move_for_s(&p, &StrategySource::Solver).unwrap();
    println!("solver: {mv}");
    let branch = solver.engine_reply_for_d(&p, &mv).unwrap();
    if let Outcome::Two(l, r) = apply_move(&p, &mv).unwrap() {
        println!("children {l} and {r}; D answers {}", branch.number());
    }

    // a losing position: S has no winning move; D refutes the union
    let lost = Position::from_strs(Dialect::Re, 5, None, &["ab", "ba"], &["a", "b", ""], "ab").unwrap();
    println!("{lost}: best move {:?}", solver.best_move(&lost).unwrap());
    let union: SMove = serde_json::from_str(r#"{"type":"union","a1":["ab"],"a2":["ba"],"k1":3,"k2":1}"#).unwrap();
    println!("S tries {union}, D answers {}", solver.engine_reply_for_d(&lost, &union).unwrap().number());
}
