//! Concrete languages and formulas: exponential towers, parenthesis
//! encodings of the cumulative hierarchy with their first-order definitions,
//! even-chain languages, and the counterexample-guided lower-bound search.

mod cegis;
mod chains;
mod enc;
mod fo;
mod io;

use thiserror::Error;

pub use cegis::{
    certify_lower_bound, certify_with_seed, default_seed, CegisConfig, CegisError, CegisOutcome, LowerBoundCertificate,
    Round,
};
pub use chains::{chain_alphabet, even_chain_member, make_lnk, perturb_even_chains};
pub use enc::{enc_language, encodings, hierarchy, HSet};
pub use fo::{build_phi, fo_eval, fo_size, CompiledFo, Fo, Var, WordModel};
pub use io::{read_word_list, write_word_list};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LangError {
    #[error("twr({0}) does not fit in 64 bits")]
    Overflow(u32),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("bad word list: {0}")]
    Format(String),
}

/// `twr(0) = 1`, `twr(n+1) = 2^twr(n)`.
pub fn twr(n: u32) -> Result<u64, LangError> {
    let mut t: u64 = 1;
    for _ in 0..n {
        if t >= 64 {
            return Err(LangError::Overflow(n));
        }
        t = 1u64 << t;
    }
    Ok(t)
}

/// The alphabet `{(, )}` of the parenthesis encodings.
pub fn paren_alphabet() -> crate::expr::Alphabet {
    crate::expr::Alphabet::parse("()").expect("two distinct symbols")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tower() {
        let values: Vec<u64> = (0..=4).map(|n| twr(n).unwrap()).collect();
        assert_eq!(values, [1, 2, 4, 16, 65536]);
        assert_eq!(twr(5), Err(LangError::Overflow(5)));
    }
}
