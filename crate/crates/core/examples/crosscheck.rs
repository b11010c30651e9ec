//! Solver verdicts next to brute-force search for a few positions.

use sizegame::expr::Dialect;
use sizegame::game::Position;
use sizegame::oracle::crosscheck;
use sizegame::solver::Solver;

// dialect, k, s, A, B
type Case<'a> = (Dialect, u32, Option<u32>, &'a [&'a str], &'a [&'a str]);

fn main() {
    let mut solver = Solver::default();
    let cases: &[Case] = &[
        (Dialect::Re, 4, None, &["a", "bb"], &["b", ""]),
        (Dialect::Gre, 3, Some(0), &["ab", "ba"], &["aa"]),
        (Dialect::Gre, 5, Some(1), &["", "ab"], &["a", "b"]),
        (Dialect::Resf, 4, Some(1), &["aa"], &["a", "aaa"]),
    ];
    for &(d, k, s, a, b) in cases {
        let p = Position::from_strs(d, k, s, a, b, "ab").unwrap();
        let c = crosscheck(&p, &mut solver).unwrap();
        println!("{}", serde_json::to_string(&c).unwrap());
    }
}
