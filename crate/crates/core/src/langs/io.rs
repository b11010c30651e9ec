//! Word-list files: a `# alphabet: <symbols>` header, then one word per
//! line. An empty line is ε. Other lines starting with `# ` are comments.

use std::collections::BTreeSet;

use crate::expr::{Alphabet, Word};

use super::LangError;

const HEADER: &str = "# alphabet: ";

pub fn write_word_list(alphabet: &Alphabet, words: &BTreeSet<Word>) -> String {
    let mut out = format!("{HEADER}{}\n", alphabet.as_string());
    for w in words {
        out.extend(w.chars());
        out.push('\n');
    }
    out
}

pub fn read_word_list(text: &str) -> Result<(Alphabet, BTreeSet<Word>), LangError> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| LangError::Format("empty word list".into()))?;
    let symbols = header
        .strip_prefix(HEADER)
        .ok_or_else(|| LangError::Format(format!("first line must start with {HEADER:?}")))?;
    let alphabet = Alphabet::parse(symbols).map_err(|e| LangError::Format(e.to_string()))?;
    let mut words = BTreeSet::new();
    for (i, line) in lines.enumerate() {
        if line.starts_with("# ") {
            continue;
        }
        let w = Word::from(line);
        alphabet
            .check_word(&w)
            .map_err(|_| LangError::Format(format!("line {}: {line:?} is not over the alphabet", i + 2)))?;
        words.insert(w);
    }
    Ok((alphabet, words))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::word_set;

    #[test]
    fn round_trip_with_epsilon() {
        let sigma = Alphabet::parse("()").unwrap();
        let words = word_set(["", "()", "(())"]);
        let text = write_word_list(&sigma, &words);
        assert_eq!(text, "# alphabet: ()\n\n()\n(())\n");
        assert_eq!(read_word_list(&text).unwrap(), (sigma, words));
    }

    #[test]
    fn rejects_foreign_words() {
        assert!(read_word_list("# alphabet: ab\nabc\n").is_err());
        assert!(read_word_list("ab\n").is_err());
    }
}
