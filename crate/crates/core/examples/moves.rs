//! Play S's moves by hand: validate, apply, inspect the children.

use sizegame::expr::{Dialect, Word};
use sizegame::game::{apply_move, validate_move, Budget, Outcome, Position, SMove};

fn main() {
    let p = Position::from_strs(Dialect::Re, 3, None, &["ab"], &["a", "b", ""], "ab").unwrap();
    println!("start: {p}");

    // ab cut after one letter; each B-word's 2-splits sent to a side S can win
    let cat = SMove::Cat {
        cuts: vec![1],
        sides: vec![vec![1], vec![1, 2], vec![1, 1]],
        budget: Budget { k1: 1, k2: 1, s1: None, s2: None },
    };
    println!("{cat}");
    match apply_move(&p, &cat).unwrap() {
        Outcome::Two(l, r) => println!("  D picks from {l} and {r}"),
        other => println!("  {other:?}"),
    }

    let star = SMove::Star { compositions: vec![vec![]], b_prime: vec![Word::from("a")] };
    println!("{star}: {}", validate_move(&p, &star).unwrap_err());

    let neg = SMove::Neg;
    println!("{neg}: {}", validate_move(&p, &neg).unwrap_err());

    let leaf = Position::from_strs(Dialect::Gre, 1, Some(0), &["b"], &["a"], "ab").unwrap();
    let atom = SMove::Atom { symbol: Word::from("b") };
    println!("{leaf}, {atom}: {:?}", apply_move(&leaf, &atom).unwrap());
}
