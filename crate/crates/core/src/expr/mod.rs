//! Generalized regular expressions: syntax, metrics, text form and membership.
//!
//! Expressions are built from `∅`, `ε`, symbols, union, catenation, star and
//! complement. Intersection is not a node; the parser expands `x & y` into
//! `!(!x|!y)`.

mod matcher;
mod parse;
mod words;

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use matcher::{matches, separates, CompiledExpr};
pub use parse::{parse_expr, render_expr};
pub use words::{composition_cuts, compositions, pieces_at, splits2, word_set, Alphabet, Word, RESERVED};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown symbol {symbol:?} at {pos}")]
    UnknownSymbol { symbol: char, pos: usize },
    #[error("invalid alphabet: {0}")]
    Alphabet(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Empty,
    Epsilon,
    Atom(char),
    Union(Box<Expr>, Box<Expr>),
    Cat(Box<Expr>, Box<Expr>),
    Star(Box<Expr>),
    Not(Box<Expr>),
}

/// Expression classes, ordered by inclusion: RE ⊂ RESF ⊂ GRE.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Dialect {
    /// Plain regular expressions, no complement.
    Re,
    /// Regular expressions over star-free expressions: no star below a complement.
    Resf,
    /// Generalized regular expressions.
    Gre,
}

impl Dialect {
    pub fn name(self) -> &'static str {
        match self {
            Dialect::Re => "RE",
            Dialect::Resf => "RESF",
            Dialect::Gre => "GRE",
        }
    }

    pub fn has_star_budget(self) -> bool {
        self != Dialect::Re
    }
}

impl fmt::Display for Dialect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Dialect {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "re" => Ok(Dialect::Re),
            "resf" => Ok(Dialect::Resf),
            "gre" => Ok(Dialect::Gre),
            other => Err(format!("unknown dialect {other:?} (expected re, resf or gre)")),
        }
    }
}

impl Expr {
    pub fn atom(c: char) -> Expr {
        Expr::Atom(c)
    }

    pub fn union(l: Expr, r: Expr) -> Expr {
        Expr::Union(Box::new(l), Box::new(r))
    }

    pub fn cat(l: Expr, r: Expr) -> Expr {
        Expr::Cat(Box::new(l), Box::new(r))
    }

    pub fn star(e: Expr) -> Expr {
        Expr::Star(Box::new(e))
    }

    pub fn not(e: Expr) -> Expr {
        Expr::Not(Box::new(e))
    }

    /// `¬(¬l ∪ ¬r)`
    pub fn intersect(l: Expr, r: Expr) -> Expr {
        Expr::not(Expr::union(Expr::not(l), Expr::not(r)))
    }

    /// Catenation of the symbols of `w`, or `ε`.
    pub fn word(w: &Word) -> Expr {
        let mut it = w.chars().iter();
        match it.next() {
            None => Expr::Epsilon,
            Some(&c) => it.fold(Expr::Atom(c), |acc, &d| Expr::cat(acc, Expr::Atom(d))),
        }
    }

    /// Node count of the syntax tree.
    pub fn size(&self) -> usize {
        match self {
            Expr::Empty | Expr::Epsilon | Expr::Atom(_) => 1,
            Expr::Star(e) | Expr::Not(e) => e.size() + 1,
            Expr::Union(l, r) | Expr::Cat(l, r) => l.size() + r.size() + 1,
        }
    }

    pub fn star_count(&self) -> usize {
        match self {
            Expr::Empty | Expr::Epsilon | Expr::Atom(_) => 0,
            Expr::Star(e) => e.star_count() + 1,
            Expr::Not(e) => e.star_count(),
            Expr::Union(l, r) | Expr::Cat(l, r) => l.star_count() + r.star_count(),
        }
    }

    pub fn dialect(&self) -> Dialect {
        fn walk(e: &Expr, under_not: bool, seen_not: &mut bool) -> bool {
            match e {
                Expr::Empty | Expr::Epsilon | Expr::Atom(_) => false,
                Expr::Star(x) => under_not || walk(x, under_not, seen_not),
                Expr::Not(x) => {
                    *seen_not = true;
                    walk(x, true, seen_not)
                }
                Expr::Union(l, r) | Expr::Cat(l, r) => {
                    // evaluate both sides so seen_not is complete
                    let a = walk(l, under_not, seen_not);
                    let b = walk(r, under_not, seen_not);
                    a || b
                }
            }
        }
        let mut seen_not = false;
        let star_under_not = walk(self, false, &mut seen_not);
        if star_under_not {
            Dialect::Gre
        } else if seen_not {
            Dialect::Resf
        } else {
            Dialect::Re
        }
    }

    pub fn conforms_to(&self, dialect: Dialect) -> bool {
        self.dialect() <= dialect
    }

    pub fn symbols(&self) -> BTreeSet<char> {
        let mut out = BTreeSet::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols(&self, out: &mut BTreeSet<char>) {
        match self {
            Expr::Atom(c) => {
                out.insert(*c);
            }
            Expr::Empty | Expr::Epsilon => {}
            Expr::Star(e) | Expr::Not(e) => e.collect_symbols(out),
            Expr::Union(l, r) | Expr::Cat(l, r) => {
                l.collect_symbols(out);
                r.collect_symbols(out);
            }
        }
    }

    fn kind_rank(&self) -> u8 {
        match self {
            Expr::Empty => 0,
            Expr::Epsilon => 1,
            Expr::Atom(_) => 2,
            Expr::Union(..) => 3,
            Expr::Cat(..) => 4,
            Expr::Star(_) => 5,
            Expr::Not(_) => 6,
        }
    }

    /// Canonical enumeration order: size, then star count, then node kind
    /// (`∅ < ε < symbol < ∪ < · < * < ¬`), then children left to right.
    /// Symbols compare by their position in `alphabet`.
    ///
    /// Replacing a subexpression by a smaller one never makes the whole
    /// expression larger in this order, which the deduplicating synthesizer
    /// relies on.
    pub fn canonical_cmp(&self, other: &Expr, alphabet: &Alphabet) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| self.star_count().cmp(&other.star_count()))
            .then_with(|| self.structural_cmp(other, alphabet))
    }

    fn structural_cmp(&self, other: &Expr, alphabet: &Alphabet) -> Ordering {
        let rank = self.kind_rank().cmp(&other.kind_rank());
        if rank != Ordering::Equal {
            return rank;
        }
        let pos = |c: &char| alphabet.symbols().iter().position(|d| d == c);
        match (self, other) {
            (Expr::Atom(a), Expr::Atom(b)) => pos(a).cmp(&pos(b)),
            (Expr::Star(a), Expr::Star(b)) | (Expr::Not(a), Expr::Not(b)) => a.canonical_cmp(b, alphabet),
            (Expr::Union(a, b), Expr::Union(c, d)) | (Expr::Cat(a, b), Expr::Cat(c, d)) => {
                a.canonical_cmp(c, alphabet).then_with(|| b.canonical_cmp(d, alphabet))
            }
            _ => Ordering::Equal,
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_expr(self))
    }
}

pub fn size(e: &Expr) -> usize {
    e.size()
}

pub fn star_count(e: &Expr) -> usize {
    e.star_count()
}

pub fn dialect_of(e: &Expr) -> Dialect {
    e.dialect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Expr {
        parse_expr(s, &Alphabet::parse("ab").unwrap()).unwrap()
    }

    #[test]
    fn sizes() {
        assert_eq!(p("a").size(), 1);
        assert_eq!(p("(ab)*").size(), 4);
        assert_eq!(p("!\\0").size(), 2);
        assert_eq!(p("(a|bb)*|(aa|b)*").size(), 13);
    }

    #[test]
    fn star_counts() {
        assert_eq!(p("a").star_count(), 0);
        assert_eq!(p("(ab)*").star_count(), 1);
        assert_eq!(p("(a*b*)*").star_count(), 3);
    }

    #[test]
    fn dialects() {
        assert_eq!(p("(ab)*").dialect(), Dialect::Re);
        assert_eq!(p("(!(ab))*").dialect(), Dialect::Resf);
        assert_eq!(p("!(a*)").dialect(), Dialect::Gre);
        assert_eq!(p("a*!b").dialect(), Dialect::Resf);
        assert_eq!(p("!(a|!b*)").dialect(), Dialect::Gre);
    }

    #[test]
    fn word_expr() {
        assert_eq!(Expr::word(&Word::from("ab")), p("ab"));
        assert_eq!(Expr::word(&Word::epsilon()), Expr::Epsilon);
    }

    #[test]
    fn canonical_order_prefers_leaves_in_alphabet_order() {
        let sigma = Alphabet::parse("ba").unwrap();
        let a = Expr::Atom('a');
        let b = Expr::Atom('b');
        assert_eq!(b.canonical_cmp(&a, &sigma), Ordering::Less);
        assert_eq!(Expr::Empty.canonical_cmp(&Expr::Epsilon, &sigma), Ordering::Less);
        assert_eq!(Expr::star(a.clone()).canonical_cmp(&Expr::union(a.clone(), b), &sigma), Ordering::Less);
    }
}
