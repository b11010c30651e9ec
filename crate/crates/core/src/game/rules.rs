use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::expr::{pieces_at, Dialect, Word};

use super::{Budget, Player, Position, SMove, WordSet};

/// Why a move is illegal, phrased for a human player.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation(pub String);

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Violation {}

fn violation<T>(msg: impl Into<String>) -> Result<T, Violation> {
    Err(Violation(msg.into()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Terminal(Player),
    One(Position),
    Two(Position, Position),
}

/// Where a game stands.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum GameStatus {
    Ongoing { position: Position, awaiting: Player },
    WonByS,
    WonByD,
}

fn check_budget(p: &Position, b: &Budget) -> Result<(), Violation> {
    if b.k1 + b.k2 + 1 != p.k() {
        return violation(format!("size budgets must satisfy k1 + k2 + 1 = k ({} + {} + 1 ≠ {})", b.k1, b.k2, p.k()));
    }
    match (p.s(), b.s1, b.s2) {
        (None, None, None) => Ok(()),
        (None, _, _) => violation("the RE game has no star budgets"),
        (Some(_), None, _) | (Some(_), _, None) => violation("star budgets s1 and s2 are required"),
        (Some(s), Some(s1), Some(s2)) => {
            if s1 + s2 != s {
                violation(format!("star budgets must satisfy s1 + s2 = s ({s1} + {s2} ≠ {s})"))
            } else if s1 > b.k1 || s2 > b.k2 {
                violation("each branch needs k_i ≥ s_i")
            } else {
                Ok(())
            }
        }
    }
}

fn check_subset(words: &[Word], of: &WordSet, name: &str) -> Result<(), Violation> {
    match words.iter().find(|w| !of.contains(*w)) {
        Some(w) => violation(format!("{name} contains {w}, which is not in A")),
        None => Ok(()),
    }
}

/// Splits `v` into pieces none of which is in `rejected`, if possible.
pub fn composition_avoiding(v: &Word, rejected: &BTreeSet<Word>) -> Option<Vec<Word>> {
    let n = v.len();
    // from[j] = start of the last piece in some avoiding composition of v[..j]
    let mut from: Vec<Option<usize>> = vec![None; n + 1];
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for j in 1..=n {
        for i in 0..j {
            if reach[i] && !rejected.contains(&v.slice(i, j)) {
                reach[j] = true;
                from[j] = Some(i);
                break;
            }
        }
    }
    if n == 0 || !reach[n] {
        return None;
    }
    let mut cuts = Vec::new();
    let mut j = n;
    while let Some(i) = from[j] {
        if i == 0 {
            break;
        }
        cuts.push(i);
        j = i;
    }
    cuts.reverse();
    Some(pieces_at(v, &cuts))
}

pub fn validate_move(p: &Position, m: &SMove) -> Result<(), Violation> {
    if p.k() == 0 {
        return violation("game over: k = 0 and D wins");
    }
    match m {
        SMove::Atom { symbol } => {
            if symbol.len() > 1 {
                return violation(format!("an atom is one symbol or ε, not {symbol}"));
            }
            if let Some(c) = symbol.chars().first() {
                if !p.alphabet().contains(*c) {
                    return violation(format!("symbol {c:?} is not in the alphabet"));
                }
            }
            Ok(())
        }
        SMove::Empty => Ok(()),
        SMove::Union { a1, a2, budget } => {
            check_subset(a1, p.a(), "A1")?;
            check_subset(a2, p.a(), "A2")?;
            if let Some(w) = p.a().iter().find(|w| !a1.contains(w) && !a2.contains(w)) {
                return violation(format!("A1 ∪ A2 must cover A; {w} is missing"));
            }
            check_budget(p, budget)
        }
        SMove::Cat { cuts, sides, budget } => {
            if cuts.len() != p.a().len() {
                return violation(format!("need one cut per A-word ({} given, |A| = {})", cuts.len(), p.a().len()));
            }
            for (w, &c) in p.a().iter().zip(cuts) {
                if c > w.len() {
                    return violation(format!("cut {c} is outside {w}"));
                }
            }
            if sides.len() != p.b().len() {
                return violation(format!(
                    "need side choices for every B-word ({} given, |B| = {})",
                    sides.len(),
                    p.b().len()
                ));
            }
            for (v, row) in p.b().iter().zip(sides) {
                if row.len() != v.len() + 1 {
                    return violation(format!("{v} has {} 2-splits but {} sides were given", v.len() + 1, row.len()));
                }
                if let Some(x) = row.iter().find(|x| **x != 1 && **x != 2) {
                    return violation(format!("side must be 1 or 2, got {x}"));
                }
            }
            check_budget(p, budget)
        }
        SMove::Star { compositions, b_prime } => {
            if p.b().contains(&Word::epsilon()) {
                return violation("D wins on ε: ε ∈ B, so no star move can separate");
            }
            if p.s() == Some(0) {
                return violation("no star budget left (s = 0)");
            }
            if compositions.len() != p.a().len() {
                return violation(format!(
                    "need one composition per A-word ({} given, |A| = {})",
                    compositions.len(),
                    p.a().len()
                ));
            }
            for (w, cuts) in p.a().iter().zip(compositions) {
                let ok = cuts.windows(2).all(|x| x[0] < x[1]) && cuts.iter().all(|&c| c >= 1 && c < w.len());
                if !ok {
                    return violation(format!("cuts {cuts:?} do not split {w} into nonempty pieces"));
                }
            }
            if let Some(u) = b_prime.iter().find(|u| u.is_empty()) {
                return violation(format!("B' may only hold nonempty pieces, got {u}"));
            }
            let rejected: BTreeSet<Word> = b_prime.iter().cloned().collect();
            for v in p.b() {
                if let Some(pieces) = composition_avoiding(v, &rejected) {
                    let shown: Vec<String> = pieces.iter().map(|w| w.display()).collect();
                    return violation(format!(
                        "B' misses the composition ({}) of {v}: some piece of every composition must be in B'",
                        shown.join(", ")
                    ));
                }
            }
            Ok(())
        }
        SMove::Neg => {
            if p.dialect() == Dialect::Re {
                violation("no ¬-move in RE")
            } else {
                Ok(())
            }
        }
    }
}

/// Applies a validated move. Invalid moves are rejected with the same
/// violation `validate_move` reports.
pub fn apply_move(p: &Position, m: &SMove) -> Result<Outcome, Violation> {
    validate_move(p, m)?;
    Ok(apply_valid(p, m))
}

/// `apply_move` without re-validation, for moves produced by the enumerator.
pub(crate) fn apply_valid(p: &Position, m: &SMove) -> Outcome {
    let k = p.k();
    match m {
        SMove::Atom { symbol } => {
            let wins = p.a().iter().all(|w| w == symbol) && !p.b().contains(symbol);
            Outcome::Terminal(if wins { Player::S } else { Player::D })
        }
        SMove::Empty => Outcome::Terminal(if p.a().is_empty() { Player::S } else { Player::D }),
        SMove::Union { a1, a2, budget } => Outcome::Two(
            p.child(budget.k1, budget.s1, a1.iter().cloned().collect(), p.b().clone()),
            p.child(budget.k2, budget.s2, a2.iter().cloned().collect(), p.b().clone()),
        ),
        SMove::Cat { cuts, sides, budget } => {
            let mut a1 = WordSet::new();
            let mut a2 = WordSet::new();
            for (w, &c) in p.a().iter().zip(cuts) {
                a1.insert(w.slice(0, c));
                a2.insert(w.slice(c, w.len()));
            }
            let mut b1 = WordSet::new();
            let mut b2 = WordSet::new();
            for (v, row) in p.b().iter().zip(sides) {
                for (c, &side) in row.iter().enumerate() {
                    if side == 1 {
                        b1.insert(v.slice(0, c));
                    } else {
                        b2.insert(v.slice(c, v.len()));
                    }
                }
            }
            Outcome::Two(p.child(budget.k1, budget.s1, a1, b1), p.child(budget.k2, budget.s2, a2, b2))
        }
        SMove::Star { compositions, b_prime } => {
            let mut a = WordSet::new();
            for (w, cuts) in p.a().iter().zip(compositions) {
                if !w.is_empty() {
                    a.extend(pieces_at(w, cuts));
                }
            }
            Outcome::One(p.child(k - 1, p.s().map(|s| s - 1), a, b_prime.iter().cloned().collect()))
        }
        SMove::Neg => {
            let (k, s) = match p.dialect() {
                Dialect::Resf if p.rules().resf_neg_charges_size => (k - 1, Some(0)),
                Dialect::Resf => (k, Some(0)),
                _ => (k - 1, p.s()),
            };
            Outcome::One(p.child(k, s, p.b().clone(), p.a().clone()))
        }
    }
}

/// A word on both sides: D wins.
pub fn d_winning_by_shared_word(p: &Position) -> bool {
    p.a().iter().any(|w| p.b().contains(w))
}

/// With no star budget, some `w ∈ A` and `w' ∈ B` that differ only in the
/// lengths of chains each longer than `k` in both words: D wins.
pub fn d_winning_by_long_chains(p: &Position) -> bool {
    if p.s() != Some(0) {
        return false;
    }
    let k = p.k() as usize;
    let b_chains: Vec<Vec<(char, usize)>> = p.b().iter().map(|w| w.chains()).collect();
    p.a().iter().any(|w| {
        let cw = w.chains();
        b_chains.iter().any(|cv| chains_differ_only_above(&cw, cv, k))
    })
}

fn chains_differ_only_above(x: &[(char, usize)], y: &[(char, usize)], k: usize) -> bool {
    if x.len() != y.len() {
        return false;
    }
    let mut differs = false;
    for (&(c, n), &(d, m)) in x.iter().zip(y) {
        if c != d {
            return false;
        }
        if n != m {
            if n <= k || m <= k {
                return false;
            }
            differs = true;
        }
    }
    differs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pos(dialect: Dialect, k: u32, s: Option<u32>, a: &[&str], b: &[&str]) -> Position {
        Position::from_strs(dialect, k, s, a, b, "ab").unwrap()
    }

    fn atom(s: &str) -> SMove {
        SMove::Atom { symbol: Word::from(s) }
    }

    fn ws(words: &[&str]) -> Vec<Word> {
        words.iter().map(|w| Word::from(*w)).collect()
    }

    #[test]
    fn atom_moves() {
        let p = pos(Dialect::Gre, 1, Some(0), &["a"], &["b", ""]);
        assert_eq!(apply_move(&p, &atom("a")).unwrap(), Outcome::Terminal(Player::S));
        let p = pos(Dialect::Gre, 1, Some(0), &["a", "b"], &[]);
        assert_eq!(apply_move(&p, &atom("a")).unwrap(), Outcome::Terminal(Player::D));
        let p = pos(Dialect::Re, 1, None, &[], &["a"]);
        assert_eq!(apply_move(&p, &atom("a")).unwrap(), Outcome::Terminal(Player::D));
        assert_eq!(apply_move(&p, &atom("")).unwrap(), Outcome::Terminal(Player::S));
        assert!(validate_move(&p, &atom("ab")).is_err());
        assert!(validate_move(&p, &atom("c")).is_err());
    }

    #[test]
    fn empty_move() {
        let p = pos(Dialect::Re, 1, None, &[], &["a"]);
        assert_eq!(apply_move(&p, &SMove::Empty).unwrap(), Outcome::Terminal(Player::S));
        let p = pos(Dialect::Re, 1, None, &[""], &[]);
        assert_eq!(apply_move(&p, &SMove::Empty).unwrap(), Outcome::Terminal(Player::D));
    }

    #[test]
    fn union_budget_arithmetic() {
        let p = pos(Dialect::Re, 5, None, &["a", "b"], &["ab"]);
        let m = SMove::Union { a1: ws(&["a"]), a2: ws(&["b"]), budget: Budget { k1: 2, k2: 2, s1: None, s2: None } };
        assert!(validate_move(&p, &m).is_ok());
        let Outcome::Two(c1, c2) = apply_move(&p, &m).unwrap() else { panic!() };
        assert_eq!(c1, pos(Dialect::Re, 2, None, &["a"], &["ab"]));
        assert_eq!(c2, pos(Dialect::Re, 2, None, &["b"], &["ab"]));

        let bad = SMove::Union { a1: ws(&["a"]), a2: ws(&[]), budget: Budget { k1: 2, k2: 2, s1: None, s2: None } };
        assert!(validate_move(&p, &bad).unwrap_err().0.contains("cover"));
        let bad =
            SMove::Union { a1: ws(&["a", "b"]), a2: ws(&[]), budget: Budget { k1: 2, k2: 1, s1: None, s2: None } };
        assert!(validate_move(&p, &bad).unwrap_err().0.contains("k1 + k2 + 1"));
    }

    #[test]
    fn star_budget_split_checks() {
        let p = pos(Dialect::Gre, 5, Some(2), &["a"], &["b"]);
        let mk = |s1, s2, k1, k2| SMove::Union {
            a1: ws(&["a"]),
            a2: ws(&[]),
            budget: Budget { k1, k2, s1: Some(s1), s2: Some(s2) },
        };
        assert!(validate_move(&p, &mk(1, 1, 2, 2)).is_ok());
        assert!(validate_move(&p, &mk(2, 1, 2, 2)).is_err());
        assert!(validate_move(&p, &mk(2, 0, 1, 3)).is_err());
        let re = pos(Dialect::Re, 5, None, &["a"], &["b"]);
        assert!(validate_move(&re, &mk(1, 1, 2, 2)).is_err());
    }

    #[test]
    fn cat_move_children() {
        // (4, 1, {ab}, {a}); split ab as (a, b); for B-word a: split (ε,a) -> side 2, (a,ε) -> side 1
        let p = pos(Dialect::Gre, 4, Some(1), &["ab"], &["a"]);
        let m = SMove::Cat {
            cuts: vec![1],
            sides: vec![vec![2, 1]],
            budget: Budget { k1: 2, k2: 1, s1: Some(1), s2: Some(0) },
        };
        let Outcome::Two(c1, c2) = apply_move(&p, &m).unwrap() else { panic!() };
        assert_eq!(c1, pos(Dialect::Gre, 2, Some(1), &["a"], &["a"]));
        assert_eq!(c2, pos(Dialect::Gre, 1, Some(0), &["b"], &["a"]));
    }

    #[test]
    fn cat_shape_checks() {
        let p = pos(Dialect::Re, 3, None, &["ab"], &["a"]);
        let b = Budget { k1: 1, k2: 1, s1: None, s2: None };
        let m = |cuts: Vec<usize>, sides: Vec<Vec<u8>>| SMove::Cat { cuts, sides, budget: b.clone() };
        assert!(validate_move(&p, &m(vec![3], vec![vec![1, 1]])).is_err());
        assert!(validate_move(&p, &m(vec![1], vec![vec![1]])).is_err());
        assert!(validate_move(&p, &m(vec![1], vec![vec![1, 3]])).is_err());
        assert!(validate_move(&p, &m(vec![1, 1], vec![vec![1, 1]])).is_err());
        assert!(validate_move(&p, &m(vec![1], vec![vec![1, 2]])).is_ok());
    }

    #[test]
    fn star_with_epsilon_in_b() {
        let p = pos(Dialect::Re, 3, None, &["a"], &[""]);
        let m = SMove::Star { compositions: vec![vec![]], b_prime: vec![] };
        assert!(validate_move(&p, &m).unwrap_err().0.starts_with("D wins on ε"));
    }

    #[test]
    fn star_hitting_condition() {
        let p = pos(Dialect::Gre, 3, Some(1), &["aa"], &["ab"]);
        let ok = SMove::Star { compositions: vec![vec![1]], b_prime: ws(&["b", "ab"]) };
        assert!(validate_move(&p, &ok).is_ok());
        let Outcome::One(c) = apply_move(&p, &ok).unwrap() else { panic!() };
        assert_eq!(c, pos(Dialect::Gre, 2, Some(0), &["a"], &["b", "ab"]));
        // (ab) as a single piece is not hit
        let bad = SMove::Star { compositions: vec![vec![1]], b_prime: ws(&["b"]) };
        let v = validate_move(&p, &bad).unwrap_err();
        assert!(v.0.contains("(ab)"), "{v}");
        let no_budget = pos(Dialect::Gre, 3, Some(0), &["aa"], &["ab"]);
        assert!(validate_move(&no_budget, &ok).is_err());
        let bad_cuts = SMove::Star { compositions: vec![vec![2]], b_prime: ws(&["b", "ab"]) };
        assert!(validate_move(&p, &bad_cuts).is_err());
    }

    #[test]
    fn star_ignores_epsilon_in_a() {
        let p = pos(Dialect::Re, 2, None, &["", "aa"], &["b"]);
        let m = SMove::Star { compositions: vec![vec![], vec![]], b_prime: ws(&["b"]) };
        let Outcome::One(c) = apply_move(&p, &m).unwrap() else { panic!() };
        assert_eq!(c.a().iter().map(|w| w.display()).collect::<Vec<_>>(), ["aa"]);
    }

    #[test]
    fn neg_moves() {
        let re = pos(Dialect::Re, 3, None, &["a"], &["b"]);
        assert_eq!(validate_move(&re, &SMove::Neg).unwrap_err().0, "no ¬-move in RE");
        let gre = pos(Dialect::Gre, 3, Some(1), &["a"], &["b"]);
        assert_eq!(apply_move(&gre, &SMove::Neg).unwrap(), Outcome::One(pos(Dialect::Gre, 2, Some(1), &["b"], &["a"])));
        let resf = pos(Dialect::Resf, 3, Some(1), &["a"], &["b"]);
        assert_eq!(
            apply_move(&resf, &SMove::Neg).unwrap(),
            Outcome::One(pos(Dialect::Resf, 2, Some(0), &["b"], &["a"]))
        );
        let literal = resf.clone().with_rules(super::super::Rules { resf_neg_charges_size: false });
        let Outcome::One(c) = apply_move(&literal, &SMove::Neg).unwrap() else { panic!() };
        assert_eq!((c.k(), c.s()), (3, Some(0)));
    }

    #[test]
    fn no_moves_at_zero_budget() {
        let p = pos(Dialect::Re, 0, None, &[], &[]);
        assert_eq!(p.terminal_winner(), Some(Player::D));
        assert!(validate_move(&p, &SMove::Empty).is_err());
    }

    #[test]
    fn shared_word() {
        assert!(d_winning_by_shared_word(&pos(Dialect::Re, 3, None, &["ab"], &["ab", "b"])));
        assert!(!d_winning_by_shared_word(&pos(Dialect::Re, 3, None, &["a"], &["b"])));
        assert!(!d_winning_by_shared_word(&pos(Dialect::Re, 3, None, &[], &[])));
    }

    #[test]
    fn long_chains() {
        assert!(d_winning_by_long_chains(&pos(Dialect::Gre, 3, Some(0), &["aaaaab"], &["aaaaaab"])));
        assert!(!d_winning_by_long_chains(&pos(Dialect::Gre, 5, Some(0), &["aaaaab"], &["aaaaaab"])));
        assert!(!d_winning_by_long_chains(&pos(Dialect::Gre, 3, Some(1), &["aaaaab"], &["aaaaaab"])));
        assert!(!d_winning_by_long_chains(&pos(Dialect::Re, 3, None, &["aaaaab"], &["aaaaaab"])));
        // different chain structure
        assert!(!d_winning_by_long_chains(&pos(Dialect::Gre, 1, Some(0), &["aaab"], &["aaaba"])));
    }

    #[test]
    fn avoiding_composition() {
        let rejected: BTreeSet<Word> = ws(&["b"]).into_iter().collect();
        assert_eq!(composition_avoiding(&Word::from("ab"), &rejected), Some(ws(&["ab"])));
        let rejected: BTreeSet<Word> = ws(&["b", "ab"]).into_iter().collect();
        assert_eq!(composition_avoiding(&Word::from("ab"), &rejected), None);
        let rejected: BTreeSet<Word> = ws(&["ab"]).into_iter().collect();
        assert_eq!(composition_avoiding(&Word::from("ab"), &rejected), Some(ws(&["a", "b"])));
    }
}
