//! Decide positions and print the witness S's strategy builds.

use sizegame::expr::Dialect;
use sizegame::game::Position;
use sizegame::solver::Solver;

// dialect, k, s, A, B
type Case<'a> = (Dialect, u32, Option<u32>, &'a [&'a str], &'a [&'a str]);

fn main() {
    let cases: &[Case] = &[
        (Dialect::Re, 3, None, &["ab"], &["a", "b", ""]),
        (Dialect::Re, 2, None, &["ab"], &["a", "b", ""]),
        (Dialect::Re, 4, None, &["", "aa", "aaaa"], &["a", "aaa"]),
        (Dialect::Gre, 2, Some(0), &["b", ""], &["a"]),
        (Dialect::Resf, 5, Some(0), &["ab", "ba"], &["aa", "bb"]),
        (Dialect::Gre, 4, Some(1), &["ab"], &["ab"]),
    ];
    let mut solver = Solver::default();
    for &(d, k, s, a, b) in cases {
        let p = Position::from_strs(d, k, s, a, b, "ab").unwrap();
        let r = solver.solve(&p).unwrap();
        let w = r.witness.map(|w| format!(" with {w}")).unwrap_or_default();
        println!("{p}: {} wins{w}  ({} positions)", r.winner, r.stats.positions);
    }
}
