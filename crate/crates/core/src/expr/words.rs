use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ExprError;

/// Characters with a syntactic role in expression text. They may still be
/// alphabet symbols; the parser requires them to be backslash-escaped.
pub const RESERVED: &[char] = &['(', ')', '|', '*', '!', '&', '\\'];

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    pub fn new(symbols: impl IntoIterator<Item = char>) -> Result<Self, ExprError> {
        let symbols: Vec<char> = symbols.into_iter().collect();
        if symbols.is_empty() {
            return Err(ExprError::Alphabet("alphabet is empty".into()));
        }
        let mut seen = BTreeSet::new();
        for &c in &symbols {
            if c.is_whitespace() || c.is_control() {
                return Err(ExprError::Alphabet(format!("symbol {c:?} is whitespace or control")));
            }
            if !seen.insert(c) {
                return Err(ExprError::Alphabet(format!("duplicate symbol {c:?}")));
            }
        }
        Ok(Alphabet { symbols })
    }

    /// Parses an alphabet written as a plain string of its symbols, e.g. `"ab"`.
    pub fn parse(text: &str) -> Result<Self, ExprError> {
        Self::new(text.chars())
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn contains(&self, c: char) -> bool {
        self.symbols.contains(&c)
    }

    pub fn check_word(&self, w: &Word) -> Result<(), ExprError> {
        match w.chars().iter().find(|c| !self.contains(**c)) {
            Some(&c) => Err(ExprError::UnknownSymbol { symbol: c, pos: 0 }),
            None => Ok(()),
        }
    }

    /// All words of length at most `max_len`, in shortlex order.
    pub fn words_up_to(&self, max_len: usize) -> Vec<Word> {
        let mut out = vec![Word::epsilon()];
        let mut layer = vec![Word::epsilon()];
        for _ in 0..max_len {
            let mut next = Vec::with_capacity(layer.len() * self.len());
            for w in &layer {
                for &c in &self.symbols {
                    let mut v = w.0.clone();
                    v.push(c);
                    next.push(Word(v));
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    pub fn as_string(&self) -> String {
        self.symbols.iter().collect()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.as_string())
    }
}

impl Serialize for Alphabet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<String> = self.symbols.iter().map(|c| c.to_string()).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Alphabet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v: Vec<String> = Vec::deserialize(d)?;
        let mut chars = Vec::with_capacity(v.len());
        for s in v {
            let mut it = s.chars();
            match (it.next(), it.next()) {
                (Some(c), None) => chars.push(c),
                _ => return Err(serde::de::Error::custom(format!("alphabet entry {s:?} is not one character"))),
            }
        }
        Alphabet::new(chars).map_err(serde::de::Error::custom)
    }
}

/// A finite word. Ordered shortlex so that word sets have a canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<char>);

impl Word {
    pub fn epsilon() -> Self {
        Word(Vec::new())
    }

    pub fn new(chars: Vec<char>) -> Self {
        Word(chars)
    }

    pub fn chars(&self) -> &[char] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn slice(&self, from: usize, to: usize) -> Word {
        Word(self.0[from..to].to_vec())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Maximal runs of one repeated symbol, as (symbol, length).
    pub fn chains(&self) -> Vec<(char, usize)> {
        let mut out: Vec<(char, usize)> = Vec::new();
        for &c in &self.0 {
            match out.last_mut() {
                Some((d, n)) if *d == c => *n += 1,
                _ => out.push((c, 1)),
            }
        }
        out
    }

    /// All distinct factors (contiguous subwords), including ε.
    pub fn factors(&self) -> BTreeSet<Word> {
        let mut out = BTreeSet::new();
        for i in 0..=self.len() {
            for j in i..=self.len() {
                out.insert(self.slice(i, j));
            }
        }
        out
    }

    /// Renders ε as `ε`.
    pub fn display(&self) -> String {
        if self.is_empty() {
            "ε".to_string()
        } else {
            self.0.iter().collect()
        }
    }
}

impl From<&str> for Word {
    fn from(s: &str) -> Self {
        Word(s.chars().collect())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.iter().collect::<String>())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Ok(Word::from(s.as_str()))
    }
}

/// Builds a canonical word set from string literals; `""` is ε.
pub fn word_set<'a>(words: impl IntoIterator<Item = &'a str>) -> BTreeSet<Word> {
    words.into_iter().map(Word::from).collect()
}

/// All ordered 2-splits of `w`, ε pieces allowed. There are `|w| + 1` of them.
pub fn splits2(w: &Word) -> Vec<(Word, Word)> {
    (0..=w.len()).map(|i| (w.slice(0, i), w.slice(i, w.len()))).collect()
}

/// All ways to cut `w` into nonempty pieces, as sorted interior cut positions.
/// Empty for `w = ε`; `2^(|w|-1)` entries otherwise.
pub fn composition_cuts(len: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return Vec::new();
    }
    let interior = len - 1;
    (0u64..(1u64 << interior)).map(|mask| (1..len).filter(|i| mask & (1 << (i - 1)) != 0).collect()).collect()
}

pub fn pieces_at(w: &Word, cuts: &[usize]) -> Vec<Word> {
    let mut out = Vec::with_capacity(cuts.len() + 1);
    let mut prev = 0;
    for &c in cuts.iter().chain(std::iter::once(&w.len())) {
        out.push(w.slice(prev, c));
        prev = c;
    }
    out
}

/// All compositions of `w` into nonempty pieces.
pub fn compositions(w: &Word) -> Vec<Vec<Word>> {
    composition_cuts(w.len()).iter().map(|cuts| pieces_at(w, cuts)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splits2_of_ab() {
        let got = splits2(&Word::from("ab"));
        let want = vec![
            (Word::from(""), Word::from("ab")),
            (Word::from("a"), Word::from("b")),
            (Word::from("ab"), Word::from("")),
        ];
        assert_eq!(got, want);
    }

    #[test]
    fn compositions_of_aba() {
        let got: BTreeSet<Vec<String>> =
            compositions(&Word::from("aba")).into_iter().map(|p| p.iter().map(|w| w.display()).collect()).collect();
        let want: BTreeSet<Vec<String>> = [vec!["aba"], vec!["a", "ba"], vec!["ab", "a"], vec!["a", "b", "a"]]
            .into_iter()
            .map(|v| v.into_iter().map(String::from).collect())
            .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn composition_counts() {
        assert!(compositions(&Word::epsilon()).is_empty());
        assert_eq!(compositions(&Word::from("abaab")).len(), 16);
    }

    #[test]
    fn shortlex_order() {
        let set = word_set(["ba", "", "b", "ab", "a"]);
        let v: Vec<String> = set.iter().map(|w| w.display()).collect();
        assert_eq!(v, ["ε", "a", "b", "ab", "ba"]);
    }

    #[test]
    fn alphabet_rejects_duplicates_and_whitespace() {
        assert!(Alphabet::parse("aa").is_err());
        assert!(Alphabet::parse("a b").is_err());
        assert!(Alphabet::parse("").is_err());
        assert!(Alphabet::parse("()").is_ok());
    }

    #[test]
    fn chains_of_word() {
        assert_eq!(Word::from("baabbaaa").chains(), vec![('b', 1), ('a', 2), ('b', 2), ('a', 3)]);
    }

    #[test]
    fn words_up_to_counts() {
        let sigma = Alphabet::parse("ab").unwrap();
        assert_eq!(sigma.words_up_to(2).len(), 7);
        assert_eq!(sigma.words_up_to(4).len(), 31);
    }
}
