//! Sets of bounded rank written as bracket words, and the tower function.

use sizegame::langs::{enc_language, hierarchy, twr};

fn main() {
    for n in 0..=3 {
        let level = hierarchy(n + 1);
        let lang = enc_language(n);
        let longest = lang.iter().map(|w| w.len()).max().unwrap_or(0);
        println!(
            "n={n}: {} sets in V_{}, {} encodings (longest {longest}), twr = {}",
            level.len(),
            n + 1,
            lang.len(),
            twr(n as u32).unwrap()
        );
    }
    for w in enc_language(2) {
        println!("  {w}");
    }
}
