use std::fmt;

use serde::{Deserialize, Serialize};

use crate::expr::Word;

/// Resource split of a binary move: `k1 + k2 + 1 = k` and `s1 + s2 = s`.
/// Star budgets are absent in the RE game.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Budget {
    pub k1: u32,
    pub k2: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s1: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s2: Option<u32>,
}

/// A move of S in fully explicit form.
///
/// Per-word data is aligned with the canonical (shortlex) order of the
/// position's word sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum SMove {
    /// `symbol` is one letter, or `""` for ε.
    Atom {
        symbol: Word,
    },
    Empty,
    Union {
        a1: Vec<Word>,
        a2: Vec<Word>,
        #[serde(flatten)]
        budget: Budget,
    },
    /// `cuts[i]` splits the i-th A-word into `w[..c]` and `w[c..]`.
    /// `sides[j][c]` is the side (1 or 2) S assigns to the 2-split of the j-th
    /// B-word at cut position `c`.
    Cat {
        cuts: Vec<usize>,
        sides: Vec<Vec<u8>>,
        #[serde(flatten)]
        budget: Budget,
    },
    /// `compositions[i]` lists the interior cut points of the i-th A-word
    /// (empty for ε and for the one-piece composition). `b_prime` is the set
    /// of pieces S commits to reject.
    Star {
        compositions: Vec<Vec<usize>>,
        b_prime: Vec<Word>,
    },
    Neg,
}

impl SMove {
    pub fn name(&self) -> &'static str {
        match self {
            SMove::Atom { .. } => "atom",
            SMove::Empty => "empty",
            SMove::Union { .. } => "union",
            SMove::Cat { .. } => "cat",
            SMove::Star { .. } => "star",
            SMove::Neg => "neg",
        }
    }

    /// Canonical text used for deterministic tie-breaking and logs.
    pub fn canonical(&self) -> String {
        serde_json::to_string(self).expect("moves always serialize")
    }

    pub fn is_binary(&self) -> bool {
        matches!(self, SMove::Union { .. } | SMove::Cat { .. })
    }
}

impl fmt::Display for SMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let budget = |b: &Budget| match (b.s1, b.s2) {
            (Some(s1), Some(s2)) => format!("k1={}, k2={}, s1={s1}, s2={s2}", b.k1, b.k2),
            _ => format!("k1={}, k2={}", b.k1, b.k2),
        };
        let words = |ws: &[Word]| ws.iter().map(|w| w.display()).collect::<Vec<_>>().join(", ");
        match self {
            SMove::Atom { symbol } => write!(f, "atom {}", symbol.display()),
            SMove::Empty => write!(f, "empty"),
            SMove::Union { a1, a2, budget: b } => {
                write!(f, "union A1={{{}}} A2={{{}}} ({})", words(a1), words(a2), budget(b))
            }
            SMove::Cat { cuts, sides, budget: b } => {
                write!(f, "cat cuts={cuts:?} sides={sides:?} ({})", budget(b))
            }
            SMove::Star { compositions, b_prime } => {
                write!(f, "star compositions={compositions:?} B'={{{}}}", words(b_prime))
            }
            SMove::Neg => write!(f, "neg"),
        }
    }
}

/// D's answer to a binary move.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    First,
    Second,
}

impl Branch {
    pub fn index(self) -> usize {
        match self {
            Branch::First => 0,
            Branch::Second => 1,
        }
    }

    pub fn number(self) -> u8 {
        self.index() as u8 + 1
    }

    pub fn from_number(n: u8) -> Option<Branch> {
        match n {
            1 => Some(Branch::First),
            2 => Some(Branch::Second),
            _ => None,
        }
    }
}

impl Serialize for Branch {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u8(self.number())
    }
}

impl<'de> Deserialize<'de> for Branch {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let n = u8::deserialize(d)?;
        Branch::from_number(n).ok_or_else(|| serde::de::Error::custom(format!("branch must be 1 or 2, got {n}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wire_format() {
        let m =
            SMove::Cat { cuts: vec![1], sides: vec![vec![2, 1]], budget: Budget { k1: 1, k2: 1, s1: None, s2: None } };
        let json = m.canonical();
        assert_eq!(json, r#"{"type":"cat","cuts":[1],"sides":[[2,1]],"k1":1,"k2":1}"#);
        assert_eq!(serde_json::from_str::<SMove>(&json).unwrap(), m);

        let atom: SMove = serde_json::from_str(r#"{"type":"atom","symbol":""}"#).unwrap();
        assert_eq!(atom, SMove::Atom { symbol: Word::epsilon() });
        let neg: SMove = serde_json::from_str(r#"{"type":"neg"}"#).unwrap();
        assert_eq!(neg, SMove::Neg);
    }

    #[test]
    fn branch_numbers() {
        assert_eq!(serde_json::to_string(&Branch::Second).unwrap(), "2");
        assert!(serde_json::from_str::<Branch>("3").is_err());
    }
}
