use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::expr::{Alphabet, Dialect, Word};

use super::GameError;

pub type WordSet = BTreeSet<Word>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Player {
    S,
    D,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::S => Player::D,
            Player::D => Player::S,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::S => "S",
            Player::D => "D",
        })
    }
}

/// Rule switches that are not fixed by the dialect.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rules {
    /// In the RESF game a complement move leads to `(k-1, 0, B, A)` when set
    /// (the default) and to `(k, 0, B, A)` otherwise.
    pub resf_neg_charges_size: bool,
}

impl Default for Rules {
    fn default() -> Self {
        Rules { resf_neg_charges_size: true }
    }
}

/// A game position `(k, s, A, B)`.
///
/// The star budget is absent in the RE game. When present it is stored as
/// `min(s, k-1)`: an expression of size at most `k` has at most `k-1` stars,
/// and without the clamp the budget-split rules of the binary moves could be
/// unsatisfiable at `s = k` even though a separator exists.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PositionSpec", into = "PositionSpec")]
pub struct Position {
    dialect: Dialect,
    k: u32,
    s: Option<u32>,
    a: WordSet,
    b: WordSet,
    alphabet: Alphabet,
    rules: Rules,
}

/// Wire form of a position.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PositionSpec {
    pub dialect: Dialect,
    pub k: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<u32>,
    pub alphabet: Alphabet,
    #[serde(rename = "A")]
    pub a: Vec<Word>,
    #[serde(rename = "B")]
    pub b: Vec<Word>,
    #[serde(default, skip_serializing_if = "is_default_rules")]
    pub rules: Rules,
}

fn is_default_rules(r: &Rules) -> bool {
    *r == Rules::default()
}

impl TryFrom<PositionSpec> for Position {
    type Error = GameError;
    fn try_from(spec: PositionSpec) -> Result<Self, GameError> {
        Position::new(
            spec.dialect,
            spec.k,
            spec.s,
            spec.a.into_iter().collect(),
            spec.b.into_iter().collect(),
            spec.alphabet,
        )
        .map(|p| p.with_rules(spec.rules))
    }
}

impl From<Position> for PositionSpec {
    fn from(p: Position) -> Self {
        PositionSpec {
            dialect: p.dialect,
            k: p.k,
            s: p.s,
            alphabet: p.alphabet,
            a: p.a.into_iter().collect(),
            b: p.b.into_iter().collect(),
            rules: p.rules,
        }
    }
}

fn clamp_stars(k: u32, s: Option<u32>) -> Option<u32> {
    s.map(|s| s.min(k.saturating_sub(1)))
}

impl Position {
    pub fn new(
        dialect: Dialect,
        k: u32,
        s: Option<u32>,
        a: WordSet,
        b: WordSet,
        alphabet: Alphabet,
    ) -> Result<Self, GameError> {
        match (dialect.has_star_budget(), s) {
            (false, Some(_)) => return Err(GameError::InvalidPosition("the RE game has no star budget".into())),
            (true, None) => {
                return Err(GameError::InvalidPosition(format!("the {dialect} game needs a star budget s")))
            }
            (true, Some(s)) if s > k => {
                return Err(GameError::InvalidPosition(format!("star budget s = {s} exceeds k = {k}")))
            }
            _ => {}
        }
        for w in a.iter().chain(b.iter()) {
            if let Some(c) = w.chars().iter().find(|c| !alphabet.contains(**c)) {
                return Err(GameError::InvalidPosition(format!(
                    "word {w} uses symbol {c:?} outside the alphabet {alphabet}"
                )));
            }
        }
        Ok(Position { dialect, k, s: clamp_stars(k, s), a, b, alphabet, rules: Rules::default() })
    }

    /// Shorthand for tests and examples: words as string literals, `""` is ε.
    pub fn from_strs(
        dialect: Dialect,
        k: u32,
        s: Option<u32>,
        a: &[&str],
        b: &[&str],
        alphabet: &str,
    ) -> Result<Self, GameError> {
        let alphabet = Alphabet::parse(alphabet).map_err(|e| GameError::InvalidPosition(e.to_string()))?;
        Position::new(
            dialect,
            k,
            s,
            a.iter().map(|w| Word::from(*w)).collect(),
            b.iter().map(|w| Word::from(*w)).collect(),
            alphabet,
        )
    }

    pub fn with_rules(mut self, rules: Rules) -> Self {
        self.rules = rules;
        self
    }

    /// A successor position; budgets are trusted, the star budget is clamped.
    pub(crate) fn child(&self, k: u32, s: Option<u32>, a: WordSet, b: WordSet) -> Position {
        Position {
            dialect: self.dialect,
            k,
            s: clamp_stars(k, s),
            a,
            b,
            alphabet: self.alphabet.clone(),
            rules: self.rules,
        }
    }

    pub fn dialect(&self) -> Dialect {
        self.dialect
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn s(&self) -> Option<u32> {
        self.s
    }

    pub fn a(&self) -> &WordSet {
        &self.a
    }

    pub fn b(&self) -> &WordSet {
        &self.b
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rules(&self) -> Rules {
        self.rules
    }

    /// `Some(D)` when the budget is exhausted; such a position is already lost for S.
    pub fn terminal_winner(&self) -> Option<Player> {
        (self.k == 0).then_some(Player::D)
    }

    pub fn spec(&self) -> PositionSpec {
        self.clone().into()
    }
}

fn fmt_set(set: &WordSet) -> String {
    let words: Vec<String> = set.iter().map(|w| w.display()).collect();
    format!("{{{}}}", words.join(", "))
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.s {
            Some(s) => write!(f, "{}({}, {}, {}, {})", self.dialect, self.k, s, fmt_set(&self.a), fmt_set(&self.b)),
            None => write!(f, "{}({}, {}, {})", self.dialect, self.k, fmt_set(&self.a), fmt_set(&self.b)),
        }
    }
}
