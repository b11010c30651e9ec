//! S's strategy read off a separating expression: the outermost operator
//! fixes the move and the subexpressions separate the child positions.

use std::collections::BTreeSet;

use crate::expr::{pieces_at, CompiledExpr, Expr, Word};
use crate::game::{Budget, Position, SMove};

use super::SolveError;

/// A move induced by an expression, with the subexpressions S keeps
/// playing in the children (in child order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedMove {
    pub mv: SMove,
    pub children: Vec<Expr>,
}

fn reject<T>(msg: String) -> Result<T, SolveError> {
    Err(SolveError::BadStrategy(msg))
}

/// Checks that `e` separates the position within its budgets and dialect,
/// then returns the move `e` induces.
pub fn fixed_expr_move(p: &Position, e: &Expr) -> Result<FixedMove, SolveError> {
    let compiled = CompiledExpr::new(e);
    if !compiled.separates(p.a(), p.b()) {
        return reject(format!("{e} does not separate A from B"));
    }
    if e.size() > p.k() as usize {
        return reject(format!("{e} has size {} > k = {}", e.size(), p.k()));
    }
    if let Some(s) = p.s() {
        if e.star_count() > s as usize {
            return reject(format!("{e} has {} stars > s = {s}", e.star_count()));
        }
    }
    if !e.conforms_to(p.dialect()) {
        return reject(format!("{e} is not a {} expression", p.dialect()));
    }
    let k = p.k();
    let split_budget = |r1: &Expr| {
        let k1 = r1.size() as u32;
        let k2 = k - k1 - 1;
        let (s1, s2) = match p.s() {
            None => (None, None),
            Some(s) => {
                // leave R2 no more stars than it has room for
                let s1 = (r1.star_count() as u32).max(s.saturating_sub(k2));
                (Some(s1), Some(s - s1))
            }
        };
        Budget { k1, k2, s1, s2 }
    };
    let fixed = match e {
        Expr::Empty => FixedMove { mv: SMove::Empty, children: vec![] },
        Expr::Epsilon => FixedMove { mv: SMove::Atom { symbol: Word::epsilon() }, children: vec![] },
        Expr::Atom(c) => FixedMove { mv: SMove::Atom { symbol: Word::new(vec![*c]) }, children: vec![] },
        Expr::Union(r1, r2) => {
            let (m1, m2) = (CompiledExpr::new(r1), CompiledExpr::new(r2));
            let a1 = p.a().iter().filter(|w| m1.matches(w)).cloned().collect();
            let a2 = p.a().iter().filter(|w| m2.matches(w)).cloned().collect();
            FixedMove {
                mv: SMove::Union { a1, a2, budget: split_budget(r1) },
                children: vec![(**r1).clone(), (**r2).clone()],
            }
        }
        Expr::Cat(r1, r2) => {
            let (m1, m2) = (CompiledExpr::new(r1), CompiledExpr::new(r2));
            let cuts = p
                .a()
                .iter()
                .map(|w| {
                    (0..=w.len())
                        .find(|&c| m1.matches(&w.slice(0, c)) && m2.matches(&w.slice(c, w.len())))
                        .expect("a matched word has a witness cut")
                })
                .collect();
            // v ∉ L(R1 R2), so a split whose left part matches R1 fails on the right
            let sides = p
                .b()
                .iter()
                .map(|v| (0..=v.len()).map(|c| if m1.matches(&v.slice(0, c)) { 2 } else { 1 }).collect())
                .collect();
            FixedMove {
                mv: SMove::Cat { cuts, sides, budget: split_budget(r1) },
                children: vec![(**r1).clone(), (**r2).clone()],
            }
        }
        Expr::Star(r) => {
            let m = CompiledExpr::new(r);
            let compositions = p
                .a()
                .iter()
                .map(|w| matching_composition(w, &m).expect("a matched word has a witness composition"))
                .collect();
            let b_prime: BTreeSet<Word> =
                p.b().iter().flat_map(|v| v.factors()).filter(|u| !u.is_empty() && !m.matches(u)).collect();
            FixedMove {
                mv: SMove::Star { compositions, b_prime: b_prime.into_iter().collect() },
                children: vec![(**r).clone()],
            }
        }
        Expr::Not(r) => FixedMove { mv: SMove::Neg, children: vec![(**r).clone()] },
    };
    Ok(fixed)
}

/// Cut points of the first composition (by DP from the left) whose pieces
/// all match; ε gets the empty composition.
fn matching_composition(w: &Word, m: &CompiledExpr) -> Option<Vec<usize>> {
    let n = w.len();
    if n == 0 {
        return Some(Vec::new());
    }
    // next[i] = end of the first piece of a matching composition of w[i..]
    let mut next: Vec<Option<usize>> = vec![None; n + 1];
    let mut ok = vec![false; n + 1];
    ok[n] = true;
    for i in (0..n).rev() {
        if let Some(j) = (i + 1..=n).find(|&j| ok[j] && m.matches(&w.slice(i, j))) {
            ok[i] = true;
            next[i] = Some(j);
        }
    }
    if !ok[0] {
        return None;
    }
    let mut cuts = Vec::new();
    let mut i = 0;
    while let Some(j) = next[i] {
        if j == n {
            break;
        }
        cuts.push(j);
        i = j;
    }
    debug_assert!(pieces_at(w, &cuts).iter().all(|u| m.matches(u)));
    Some(cuts)
}
