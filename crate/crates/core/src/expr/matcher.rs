//! Membership by dynamic programming over (subexpression, span) pairs.
//!
//! For a word of length `n` every subexpression gets a table of the spans
//! `w[i..j]` it matches. Complement negates the inner table on the same span,
//! so full GRE membership stays polynomial in `|w|·|e|`.

use std::collections::BTreeSet;

use super::{Expr, Word};

#[derive(Clone, Debug)]
enum Node {
    Empty,
    Epsilon,
    Atom(char),
    Union(usize, usize),
    Cat(usize, usize),
    Star(usize),
    Not(usize),
}

/// An expression flattened into postorder, ready to be matched repeatedly.
#[derive(Clone, Debug)]
pub struct CompiledExpr {
    nodes: Vec<Node>,
}

impl CompiledExpr {
    pub fn new(e: &Expr) -> Self {
        let mut nodes = Vec::with_capacity(e.size());
        flatten(e, &mut nodes);
        CompiledExpr { nodes }
    }

    pub fn matches(&self, w: &Word) -> bool {
        let chars = w.chars();
        let n = chars.len();
        let dim = n + 1;
        let at = |i: usize, j: usize| i * dim + j;
        let mut tables: Vec<Vec<bool>> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let mut t = vec![false; dim * dim];
            match *node {
                Node::Empty => {}
                Node::Epsilon => {
                    for i in 0..=n {
                        t[at(i, i)] = true;
                    }
                }
                Node::Atom(c) => {
                    for i in 0..n {
                        if chars[i] == c {
                            t[at(i, i + 1)] = true;
                        }
                    }
                }
                Node::Union(l, r) => {
                    let (l, r) = (&tables[l], &tables[r]);
                    for i in 0..=n {
                        for j in i..=n {
                            t[at(i, j)] = l[at(i, j)] || r[at(i, j)];
                        }
                    }
                }
                Node::Cat(l, r) => {
                    let (l, r) = (&tables[l], &tables[r]);
                    for i in 0..=n {
                        for j in i..=n {
                            t[at(i, j)] = (i..=j).any(|m| l[at(i, m)] && r[at(m, j)]);
                        }
                    }
                }
                Node::Star(x) => {
                    let x = &tables[x];
                    for i in (0..=n).rev() {
                        t[at(i, i)] = true;
                        for j in i + 1..=n {
                            t[at(i, j)] = (i + 1..=j).any(|m| x[at(i, m)] && t[at(m, j)]);
                        }
                    }
                }
                Node::Not(x) => {
                    let x = &tables[x];
                    for i in 0..=n {
                        for j in i..=n {
                            t[at(i, j)] = !x[at(i, j)];
                        }
                    }
                }
            }
            tables.push(t);
        }
        tables.last().map(|t| t[at(0, n)]).unwrap_or(false)
    }

    pub fn separates<'a>(&self, a: impl IntoIterator<Item = &'a Word>, b: impl IntoIterator<Item = &'a Word>) -> bool {
        a.into_iter().all(|w| self.matches(w)) && b.into_iter().all(|w| !self.matches(w))
    }
}

fn flatten(e: &Expr, out: &mut Vec<Node>) -> usize {
    let node = match e {
        Expr::Empty => Node::Empty,
        Expr::Epsilon => Node::Epsilon,
        Expr::Atom(c) => Node::Atom(*c),
        Expr::Union(l, r) => {
            let l = flatten(l, out);
            let r = flatten(r, out);
            Node::Union(l, r)
        }
        Expr::Cat(l, r) => {
            let l = flatten(l, out);
            let r = flatten(r, out);
            Node::Cat(l, r)
        }
        Expr::Star(x) => Node::Star(flatten(x, out)),
        Expr::Not(x) => Node::Not(flatten(x, out)),
    };
    out.push(node);
    out.len() - 1
}

pub fn matches(e: &Expr, w: &Word) -> bool {
    CompiledExpr::new(e).matches(w)
}

/// True iff every word of `a` is in L(e) and no word of `b` is.
pub fn separates(e: &Expr, a: &BTreeSet<Word>, b: &BTreeSet<Word>) -> bool {
    CompiledExpr::new(e).separates(a, b)
}

#[cfg(test)]
mod tests {
    use super::super::{parse_expr, word_set, Alphabet};
    use super::*;
    use proptest::prelude::*;

    fn ab() -> Alphabet {
        Alphabet::parse("ab").unwrap()
    }

    fn p(s: &str) -> Expr {
        parse_expr(s, &ab()).unwrap()
    }

    #[test]
    fn star_free_form_of_ab_star() {
        // ε ∪ (a¬∅ ∩ ¬∅b ∩ ¬(¬∅aa¬∅) ∩ ¬(¬∅bb¬∅))
        let sf = p("\\e|(a!\\0 & !\\0b & !(!\\0aa!\\0) & !(!\\0bb!\\0))");
        let re = p("(ab)*");
        assert!(matches(&sf, &Word::from("abab")));
        for w in ab().words_up_to(7) {
            assert_eq!(matches(&sf, &w), matches(&re, &w), "word {w}");
        }
    }

    #[test]
    fn leaves() {
        assert!(!matches(&Expr::Empty, &Word::epsilon()));
        assert!(matches(&Expr::Epsilon, &Word::epsilon()));
        assert!(!matches(&Expr::Epsilon, &Word::from("a")));
        for w in ab().words_up_to(4) {
            assert!(matches(&p("!\\0"), &w));
        }
    }

    #[test]
    fn separation_examples() {
        assert!(separates(&p("a"), &word_set(["a"]), &word_set(["b", ""])));
        assert!(!separates(&p("a"), &word_set(["a", "b"]), &word_set([])));
        assert!(separates(&p("(ab)*"), &word_set(["", "ab", "abab"]), &word_set(["a", "ba"])));
    }

    // Naive set semantics over Σ^{≤N}: L(subexpr) ∩ Σ^{≤N} computed bottom-up.
    // Complement is taken inside Σ^{≤N}; star closes under catenation truncated
    // at length N. Membership of w depends only on factors of w, so this agrees
    // with the matcher for |w| ≤ N.
    const N: usize = 6;

    fn naive(e: &Expr, universe: &[Word]) -> BTreeSet<Word> {
        let all: BTreeSet<Word> = universe.iter().cloned().collect();
        match e {
            Expr::Empty => BTreeSet::new(),
            Expr::Epsilon => word_set([""]),
            Expr::Atom(c) => [Word::new(vec![*c])].into_iter().collect(),
            Expr::Union(l, r) => naive(l, universe).union(&naive(r, universe)).cloned().collect(),
            Expr::Cat(l, r) => {
                let (l, r) = (naive(l, universe), naive(r, universe));
                let mut out = BTreeSet::new();
                for x in &l {
                    for y in &r {
                        if x.len() + y.len() <= N {
                            out.insert(x.concat(y));
                        }
                    }
                }
                out
            }
            Expr::Star(x) => {
                let x = naive(x, universe);
                let mut out = word_set([""]);
                loop {
                    let mut grew = false;
                    let snapshot: Vec<Word> = out.iter().cloned().collect();
                    for u in &snapshot {
                        for v in &x {
                            if !v.is_empty() && u.len() + v.len() <= N && out.insert(u.concat(v)) {
                                grew = true;
                            }
                        }
                    }
                    if !grew {
                        break out;
                    }
                }
            }
            Expr::Not(x) => all.difference(&naive(x, universe)).cloned().collect(),
        }
    }

    fn arb_expr() -> impl Strategy<Value = Expr> {
        let leaf = prop_oneof![Just(Expr::Empty), Just(Expr::Epsilon), Just(Expr::Atom('a')), Just(Expr::Atom('b')),];
        leaf.prop_recursive(4, 16, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(l, r)| Expr::union(l, r)),
                (inner.clone(), inner.clone()).prop_map(|(l, r)| Expr::cat(l, r)),
                inner.clone().prop_map(Expr::star),
                inner.prop_map(Expr::not),
            ]
        })
    }

    proptest! {
        #[test]
        fn agrees_with_naive_set_semantics(e in arb_expr()) {
            let universe = ab().words_up_to(N);
            let lang = naive(&e, &universe);
            let c = CompiledExpr::new(&e);
            for w in &universe {
                prop_assert_eq!(c.matches(w), lang.contains(w), "expr {} word {}", e, w);
            }
        }

        #[test]
        fn de_morgan(e1 in arb_expr(), e2 in arb_expr(), wi in 0usize..63) {
            let w = &ab().words_up_to(5)[wi];
            let both = matches(&e1, w) && matches(&e2, w);
            prop_assert_eq!(matches(&Expr::intersect(e1, e2), w), both);
        }

        #[test]
        fn star_contains_epsilon_and_piece_catenations(e in arb_expr(), wi in 0usize..31) {
            let st = Expr::star(e.clone());
            prop_assert!(matches(&st, &Word::epsilon()));
            let w = &ab().words_up_to(4)[wi];
            let c = CompiledExpr::new(&e);
            let composable = super::super::compositions(w)
                .iter()
                .any(|pieces| pieces.iter().all(|p| c.matches(p)));
            if composable {
                prop_assert!(matches(&st, w));
            }
        }
    }
}
