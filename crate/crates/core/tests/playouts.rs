//! Against a fixed separating expression, no sequence of D choices wins.

use proptest::prelude::*;

use sizegame::expr::{Alphabet, Dialect};
use sizegame::game::{Branch, GameStatus, Player, Position};
use sizegame::service::{EngineMode, Session};
use sizegame::solver::{Solver, SolverConfig};
use sizegame::verify::grid_pairs;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]
    #[test]
    fn fixed_expression_never_loses(
        pair in 0usize..519,
        k in 1u32..=5,
        variant in 0usize..3,
        choices in proptest::collection::vec(1u8..=2, 8),
    ) {
        let (dialect, s) = [(Dialect::Re, None), (Dialect::Gre, Some(0)), (Dialect::Gre, Some(1))][variant];
        let (a, b) = grid_pairs().swap_remove(pair);
        let p = Position::new(dialect, k, s, a, b, Alphabet::parse("ab").unwrap()).unwrap();
        let r = Solver::default().solve(&p).unwrap();
        prop_assume!(r.winner == Player::S);
        let engine = EngineMode::FixedExpr { expr: r.witness.unwrap().to_string() };
        let mut session = Session::create("t".into(), p, Player::D, engine, SolverConfig::default()).unwrap();
        for c in choices {
            if !matches!(session.status(), GameStatus::Ongoing { .. }) {
                break;
            }
            session.submit_choice(Branch::from_number(c).unwrap()).unwrap();
        }
        prop_assert_eq!(session.status(), GameStatus::WonByS);
    }
}
