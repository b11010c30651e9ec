//! Least separating expressions by exhaustive search.

use std::collections::BTreeSet;

use sizegame::expr::{word_set, Alphabet, Dialect, Word};
use sizegame::oracle::{min_separating, EnumSpec};

fn main() {
    let sigma = Alphabet::parse("ab").unwrap();
    let upto4 = sigma.words_up_to(4);
    let cube: BTreeSet<Word> = upto4.iter().filter(|w| w.len() == 3).cloned().collect();
    let rest: BTreeSet<Word> = upto4.iter().filter(|w| w.len() != 3).cloned().collect();

    let tasks = [
        ("words of length 3", cube, rest, Dialect::Re, 11, None),
        ("ab against a, b, ε", word_set(["ab"]), word_set(["a", "b", ""]), Dialect::Re, 5, None),
        ("even a-runs", word_set(["", "aa", "aaaa"]), word_set(["a", "aaa"]), Dialect::Re, 6, Some(1)),
        ("not a", word_set(["", "b", "ab", "bb"]), word_set(["a"]), Dialect::Gre, 4, Some(0)),
    ];
    for (name, a, b, dialect, size, stars) in tasks {
        let spec = EnumSpec::new(sigma.clone(), dialect, size, stars);
        match min_separating(&a, &b, &spec).unwrap() {
            Some(s) => println!("{name}: {} (size {}, {} stars)", s.expr, s.size, s.stars),
            None => println!("{name}: nothing in {dialect} up to size {size}"),
        }
    }
}
