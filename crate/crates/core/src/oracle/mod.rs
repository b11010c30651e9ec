//! Brute-force expression search, independent of the game.
//!
//! [`enumerate_exprs`] lists every syntax tree within the bounds.
//! [`min_separating`] finds the canonically first smallest separator. It only
//! evaluates expressions on the factors of the sample words, where membership
//! of an operator node is determined by the membership of its children, so
//! it keeps one expression per membership signature and star count.

mod pool;

use std::collections::{BTreeSet, HashMap};
use std::ops::ControlFlow;

use serde::Serialize;
use thiserror::Error;

use crate::expr::{Alphabet, Dialect, Expr, Word};
use crate::game::{Player, Position};
use crate::solver::{SolveError, Solver};

use pool::{Candidate, Op, Pool};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnumSpec {
    pub alphabet: Alphabet,
    pub dialect: Dialect,
    pub max_size: usize,
    /// `None` leaves stars unbounded (up to what the size allows).
    pub max_stars: Option<usize>,
}

impl EnumSpec {
    pub fn new(alphabet: Alphabet, dialect: Dialect, max_size: usize, max_stars: Option<usize>) -> Self {
        EnumSpec { alphabet, dialect, max_size, max_stars }
    }

    /// The bounds matching a game position.
    pub fn for_position(p: &Position) -> Self {
        EnumSpec::new(p.alphabet().clone(), p.dialect(), p.k() as usize, p.s().map(|s| s as usize))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("oracle limit exceeded: {0}")]
    LimitExceeded(String),
    #[error("word {0} uses a symbol outside the alphabet")]
    ForeignWord(Word),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Separator {
    #[serde(serialize_with = "crate::oracle::ser_expr")]
    pub expr: Expr,
    pub size: usize,
    pub stars: usize,
}

pub(crate) fn ser_expr<S: serde::Serializer>(e: &Expr, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&e.to_string())
}

/// Every expression within `spec`, each once, in canonical order (so by
/// nondecreasing size).
pub fn enumerate_exprs(spec: &EnumSpec) -> Vec<Expr> {
    let mut pool = Pool::default();
    if spec.max_size == 0 {
        return Vec::new();
    }
    for leaf in Pool::leaves(&spec.alphabet) {
        pool.push_leaf(leaf);
    }
    for n in 2..=spec.max_size {
        let _ = pool.grow::<()>(n, spec.dialect, spec.max_stars, &mut |pool, c| {
            let size = n;
            pool.push_candidate(c, size);
            Ok(ControlFlow::Continue(()))
        });
    }
    (0..pool.len()).map(|i| pool.expr(i)).collect()
}

/// Limit on the number of signature representatives [`min_separating`] keeps.
pub const DEFAULT_MAX_REPRESENTATIVES: usize = 4_000_000;

/// The least separator by size, then stars, then canonical order, within
/// `spec`; `None` when no expression within the bounds separates.
pub fn min_separating(
    a: &BTreeSet<Word>,
    b: &BTreeSet<Word>,
    spec: &EnumSpec,
) -> Result<Option<Separator>, OracleError> {
    min_separating_with_limit(a, b, spec, DEFAULT_MAX_REPRESENTATIVES)
}

pub fn min_separating_with_limit(
    a: &BTreeSet<Word>,
    b: &BTreeSet<Word>,
    spec: &EnumSpec,
    max_representatives: usize,
) -> Result<Option<Separator>, OracleError> {
    for w in a.iter().chain(b) {
        if spec.alphabet.check_word(w).is_err() {
            return Err(OracleError::ForeignWord(w.clone()));
        }
    }
    if spec.max_size == 0 || a.intersection(b).next().is_some() {
        return Ok(None);
    }
    let sigs = SigSpace::new(a.iter().chain(b));
    let a_idx: Vec<usize> = a.iter().map(|w| sigs.index[w]).collect();
    let b_idx: Vec<usize> = b.iter().map(|w| sigs.index[w]).collect();
    let separates = |sig: &Sig| a_idx.iter().all(|&i| sig.get(i)) && b_idx.iter().all(|&i| !sig.get(i));

    let mut pool = Pool::default();
    let mut pool_sigs: Vec<Sig> = Vec::new();
    // least star count seen per signature
    let mut best_stars: HashMap<Sig, usize> = HashMap::new();
    let found = |pool: &Pool, i: usize| {
        let expr = pool.expr(i);
        Separator { size: expr.size(), stars: expr.star_count(), expr }
    };

    for leaf in Pool::leaves(&spec.alphabet) {
        let sig = sigs.leaf(&leaf);
        if best_stars.contains_key(&sig) {
            continue;
        }
        let i = pool.push_leaf(leaf);
        if separates(&sig) {
            return Ok(Some(found(&pool, i)));
        }
        best_stars.insert(sig.clone(), 0);
        pool_sigs.push(sig);
    }
    for n in 2..=spec.max_size {
        let mut hit = None;
        let _ = pool.grow(n, spec.dialect, spec.max_stars, &mut |pool, c: Candidate| {
            let sig = sigs.combine(&c, &pool_sigs);
            if best_stars.get(&sig).is_some_and(|&t| t <= c.stars) {
                return Ok(ControlFlow::Continue(()));
            }
            let i = pool.push_candidate(c, n);
            if separates(&sig) {
                hit = Some(i);
                return Ok(ControlFlow::Break(()));
            }
            best_stars.insert(sig.clone(), c.stars);
            pool_sigs.push(sig);
            if pool.len() > max_representatives {
                return Err(OracleError::LimitExceeded(format!(
                    "more than {max_representatives} distinct expressions at size {n}"
                )));
            }
            Ok(ControlFlow::Continue(()))
        })?;
        if let Some(i) = hit {
            return Ok(Some(found(&pool, i)));
        }
    }
    Ok(None)
}

/// Membership bits over a factor-closed word set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Sig(Box<[u64]>);

impl Sig {
    fn zeros(n: usize) -> Sig {
        Sig(vec![0; n.div_ceil(64).max(1)].into_boxed_slice())
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
}

struct SigSpace {
    words: Vec<Word>,
    index: HashMap<Word, usize>,
    /// per word, its 2-splits as factor indices
    splits: Vec<Vec<(usize, usize)>>,
}

impl SigSpace {
    fn new<'a>(samples: impl Iterator<Item = &'a Word>) -> Self {
        let mut all: BTreeSet<Word> = BTreeSet::new();
        all.insert(Word::epsilon());
        for w in samples {
            all.extend(w.factors());
        }
        // shortlex order: every proper factor precedes its word
        let words: Vec<Word> = all.into_iter().collect();
        let index: HashMap<Word, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let splits = words
            .iter()
            .map(|w| (0..=w.len()).map(|c| (index[&w.slice(0, c)], index[&w.slice(c, w.len())])).collect())
            .collect();
        SigSpace { words, index, splits }
    }

    fn leaf(&self, e: &Expr) -> Sig {
        let mut sig = Sig::zeros(self.words.len());
        for (i, w) in self.words.iter().enumerate() {
            let member = match e {
                Expr::Epsilon => w.is_empty(),
                Expr::Atom(c) => w.chars() == [*c],
                _ => false,
            };
            if member {
                sig.set(i);
            }
        }
        sig
    }

    fn combine(&self, c: &Candidate, sigs: &[Sig]) -> Sig {
        let n = self.words.len();
        let x = &sigs[c.left];
        let mut out = Sig::zeros(n);
        match (c.op, c.right) {
            (Op::Union, Some(r)) => {
                for (o, (p, q)) in out.0.iter_mut().zip(x.0.iter().zip(sigs[r].0.iter())) {
                    *o = p | q;
                }
            }
            (Op::Cat, Some(r)) => {
                let y = &sigs[r];
                for i in 0..n {
                    if self.splits[i].iter().any(|&(p, q)| x.get(p) && y.get(q)) {
                        out.set(i);
                    }
                }
            }
            (Op::Star, None) => {
                // words come in shortlex order, so suffixes are done first
                for i in 0..n {
                    let member =
                        self.words[i].is_empty() || self.splits[i][1..].iter().any(|&(p, q)| x.get(p) && out.get(q));
                    if member {
                        out.set(i);
                    }
                }
            }
            (Op::Not, None) => {
                for i in 0..n {
                    if !x.get(i) {
                        out.set(i);
                    }
                }
            }
            _ => unreachable!("operator arity"),
        }
        out
    }
}

/// Solver verdict next to oracle verdict for one position.
#[derive(Clone, Debug, Serialize)]
pub struct CrossCheck {
    pub position: String,
    pub solver_winner: Player,
    #[serde(serialize_with = "ser_opt_expr")]
    pub solver_witness: Option<Expr>,
    pub oracle: Option<Separator>,
    pub agree: bool,
}

fn ser_opt_expr<S: serde::Serializer>(e: &Option<Expr>, s: S) -> Result<S::Ok, S::Error> {
    match e {
        Some(e) => s.serialize_some(&e.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Error)]
pub enum CrossCheckError {
    #[error(transparent)]
    Solver(#[from] SolveError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Solves `p` and searches for a separator within the same bounds.
pub fn crosscheck(p: &Position, solver: &mut Solver) -> Result<CrossCheck, CrossCheckError> {
    let r = solver.solve(p)?;
    let oracle = min_separating(p.a(), p.b(), &EnumSpec::for_position(p))?;
    Ok(CrossCheck {
        position: p.to_string(),
        agree: (r.winner == Player::S) == oracle.is_some(),
        solver_winner: r.winner,
        solver_witness: r.witness,
        oracle,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{separates, word_set, CompiledExpr};

    fn sigma(s: &str) -> Alphabet {
        Alphabet::parse(s).unwrap()
    }

    fn spec(s: &str, d: Dialect, n: usize, t: Option<usize>) -> EnumSpec {
        EnumSpec::new(sigma(s), d, n, t)
    }

    fn strs(es: &[Expr]) -> Vec<String> {
        es.iter().map(|e| e.to_string()).collect()
    }

    #[test]
    fn leaves_and_unary_closure() {
        assert_eq!(strs(&enumerate_exprs(&spec("a", Dialect::Re, 1, None))), ["\\0", "\\e", "a"]);
        assert_eq!(strs(&enumerate_exprs(&spec("a", Dialect::Re, 2, None))), ["\\0", "\\e", "a", "\\0*", "\\e*", "a*"]);
    }

    // Independent recursive counts over the grammar: `leaves` leaf kinds,
    // binary ∪ and ·, unary * and (outside RE) ¬.
    fn count(n: usize, leaves: u64, unary: u64) -> u64 {
        match n {
            0 => 0,
            1 => leaves,
            _ => {
                unary * count(n - 1, leaves, unary)
                    + 2 * (1..n - 1).map(|i| count(i, leaves, unary) * count(n - 1 - i, leaves, unary)).sum::<u64>()
            }
        }
    }

    #[test]
    fn counts_match_the_grammar() {
        for n in 1..=5 {
            let re = enumerate_exprs(&spec("ab", Dialect::Re, n, None)).len() as u64;
            assert_eq!(re, (1..=n).map(|i| count(i, 4, 1)).sum::<u64>(), "RE size ≤ {n}");
            let gre = enumerate_exprs(&spec("ab", Dialect::Gre, n, None)).len() as u64;
            assert_eq!(gre, (1..=n).map(|i| count(i, 4, 2)).sum::<u64>(), "GRE size ≤ {n}");
        }
        // frozen regression value
        assert_eq!(enumerate_exprs(&spec("ab", Dialect::Re, 3, None)).len(), 44);
    }

    #[test]
    fn order_and_dialects() {
        let all = enumerate_exprs(&spec("ab", Dialect::Resf, 5, Some(1)));
        let ab = sigma("ab");
        for pair in all.windows(2) {
            assert_eq!(pair[0].canonical_cmp(&pair[1], &ab), std::cmp::Ordering::Less, "{} {}", pair[0], pair[1]);
        }
        assert!(all.iter().all(|e| e.conforms_to(Dialect::Resf) && e.star_count() <= 1));
        let distinct: BTreeSet<String> = all.iter().map(|e| e.to_string()).collect();
        assert_eq!(distinct.len(), all.len());
    }

    #[test]
    fn separator_examples() {
        let s = min_separating(&word_set(["ab"]), &word_set(["a", "b", ""]), &spec("ab", Dialect::Re, 5, None))
            .unwrap()
            .unwrap();
        assert_eq!((s.expr.to_string().as_str(), s.size, s.stars), ("ab", 3, 0));
        assert_eq!(
            min_separating(&word_set(["a"]), &word_set(["a"]), &spec("ab", Dialect::Gre, 5, None)).unwrap(),
            None
        );
        let s = min_separating(&BTreeSet::new(), &word_set(["a", "b"]), &spec("ab", Dialect::Re, 3, None))
            .unwrap()
            .unwrap();
        assert_eq!(s.expr, Expr::Empty);
        let s =
            min_separating(&word_set(["a", "b", "", "aa"]), &BTreeSet::new(), &spec("ab", Dialect::Gre, 2, Some(0)))
                .unwrap()
                .unwrap();
        assert_eq!(s.expr.to_string(), "!\\0");
    }

    // The deduplicating search returns exactly the first separator of the
    // plain enumeration.
    #[test]
    fn dedup_agrees_with_plain_scan() {
        let words = sigma("ab").words_up_to(2);
        let cases = [
            (vec![1, 2], vec![0]),
            (vec![3, 6], vec![1, 4]),
            (vec![0, 3], vec![5]),
            (vec![4], vec![3, 5, 6]),
            (vec![1, 5], vec![2, 3]),
        ];
        for dialect in [Dialect::Re, Dialect::Resf, Dialect::Gre] {
            let sp = spec("ab", dialect, 5, Some(1));
            let all = enumerate_exprs(&sp);
            for (ai, bi) in &cases {
                let a: BTreeSet<Word> = ai.iter().map(|&i| words[i].clone()).collect();
                let b: BTreeSet<Word> = bi.iter().map(|&i| words[i].clone()).collect();
                let plain = all.iter().find(|e| CompiledExpr::new(e).separates(&a, &b));
                let fast = min_separating(&a, &b, &sp).unwrap().map(|s| s.expr);
                assert_eq!(plain.cloned(), fast, "{dialect} {a:?} {b:?}");
                if let Some(e) = fast {
                    assert!(separates(&e, &a, &b));
                }
            }
        }
    }

    #[test]
    fn crosscheck_agrees() {
        let mut solver = Solver::default();
        for k in [2, 3] {
            let p = Position::from_strs(Dialect::Re, k, None, &["ab"], &["a", "b", ""], "ab").unwrap();
            let c = crosscheck(&p, &mut solver).unwrap();
            assert!(c.agree);
            assert_eq!(c.oracle.is_some(), k == 3);
        }
    }
}
