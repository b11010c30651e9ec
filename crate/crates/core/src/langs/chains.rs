//! Even-chain languages over `Σ_n = {a_1, …, a_n}`, written with the
//! letters `a, b, c, …`.

use std::collections::BTreeSet;

use crate::expr::{Alphabet, Word};

use super::LangError;

/// `Σ_n` as the first `n` lowercase letters.
pub fn chain_alphabet(n: usize) -> Result<Alphabet, LangError> {
    if n == 0 || n > 26 {
        return Err(LangError::OutOfRange(format!("n = {n} must be in 1..=26")));
    }
    Alphabet::new((0..n as u8).map(|i| (b'a' + i) as char)).map_err(|e| LangError::OutOfRange(e.to_string()))
}

/// True iff for some symbol of `Σ_n` every chain of it in `w` has even
/// length (vacuously so when the symbol does not occur).
pub fn even_chain_member(w: &Word, n: usize) -> bool {
    let chains = w.chains();
    (0..n as u8).map(|i| (b'a' + i) as char).any(|c| chains.iter().all(|&(d, len)| d != c || len % 2 == 0))
}

/// `{ℓ_1, …, ℓ_n}` where `ℓ_i = a_1^{2k+1} ⋯ a_i^{2k} ⋯ a_n^{2k+1}`.
pub fn make_lnk(n: usize, k: usize) -> Result<BTreeSet<Word>, LangError> {
    let sigma = chain_alphabet(n)?;
    if k == 0 {
        return Err(LangError::OutOfRange("k must be at least 1".into()));
    }
    Ok((0..n)
        .map(|i| {
            let chars = sigma
                .symbols()
                .iter()
                .enumerate()
                .flat_map(|(j, &c)| std::iter::repeat_n(c, if i == j { 2 * k } else { 2 * k + 1 }))
                .collect();
            Word::new(chars)
        })
        .collect())
}

/// Each word with one symbol added to every even chain.
pub fn perturb_even_chains(w: &Word) -> Word {
    let chars = w
        .chains()
        .into_iter()
        .flat_map(|(c, len)| std::iter::repeat_n(c, if len % 2 == 0 { len + 1 } else { len }))
        .collect();
    Word::new(chars)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{matches, parse_expr, word_set};

    #[test]
    fn membership() {
        assert!(even_chain_member(&Word::from("aabbb"), 2));
        assert!(!even_chain_member(&Word::from("ababa"), 2));
        assert!(even_chain_member(&Word::epsilon(), 2));
        assert!(even_chain_member(&Word::from("baab"), 2));
    }

    #[test]
    fn lnk() {
        assert_eq!(make_lnk(2, 2).unwrap(), word_set(["aaaabbbbb", "aaaaabbbb"]));
        for w in make_lnk(3, 1).unwrap() {
            assert!(even_chain_member(&w, 3));
            assert!(!even_chain_member(&perturb_even_chains(&w), 3));
        }
    }

    #[test]
    fn two_star_definition() {
        let sigma = chain_alphabet(2).unwrap();
        let e = parse_expr("(a|bb)*|(aa|b)*", &sigma).unwrap();
        assert_eq!((e.size(), e.star_count()), (13, 2));
        for w in sigma.words_up_to(8) {
            assert_eq!(matches(&e, &w), even_chain_member(&w, 2), "{w}");
        }
    }
}
