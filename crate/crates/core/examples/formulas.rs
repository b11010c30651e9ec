//! The first-order sentences for the bracket languages: text, size, and
//! evaluation against the generator.
//!
//!     cargo run --release --example formulas -- 2

use sizegame::langs::{build_phi, enc_language, fo_size, paren_alphabet, CompiledFo};

fn main() {
    let n: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(1);
    let phi = build_phi(n);
    print!("{}", phi.render_with_definitions(&format!("phi_{n}")));
    println!("size {}", fo_size(&phi));

    let compiled = CompiledFo::new(&phi);
    let lang = enc_language(n);
    let max_len = 10;
    let mut wrong = 0;
    for w in paren_alphabet().words_up_to(max_len) {
        if compiled.eval_word(&w, '(') != lang.contains(&w) {
            wrong += 1;
            println!("  disagrees on {w}");
        }
    }
    println!("{wrong} disagreements up to length {max_len}");
}
