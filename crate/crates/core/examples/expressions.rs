//! Parse, measure and match expressions.
//!
//!     cargo run --example expressions -- '!(\0*a)|b*' ab ba bbb

use sizegame::expr::{matches, parse_expr, Alphabet, Word};

fn main() {
    let mut args = std::env::args().skip(1);
    let text = args.next().unwrap_or_else(|| "(a|bb)*|(aa|b)*".into());
    let sigma = Alphabet::parse("ab").unwrap();
    let e = match parse_expr(&text, &sigma) {
        Ok(e) => e,
        Err(err) => {
            eprintln!("{err}");
            std::process::exit(1);
        }
    };
    println!("{e}: size {}, {} stars, dialect {}", e.size(), e.star_count(), e.dialect());
    let words: Vec<Word> = match args.len() {
        0 => sigma.words_up_to(3),
        _ => args.map(|w| Word::from(w.as_str())).collect(),
    };
    for w in words {
        println!("  {:>4} {}", w.display(), if matches(&e, &w) { "in" } else { "out" });
    }
}
