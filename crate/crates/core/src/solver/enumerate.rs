//! Generation of S-moves for the solver.
//!
//! The reduced generator is complete up to dominance. Every reduction keeps
//! at least one move that is as good for S as each move it drops, because
//! separation is monotone: shrinking A or B, or growing k or s, never hurts S.
//!
//! * Union covers are disjoint (`A2 = A \ A1`), and `A1` holds the least word
//!   of A so mirrored moves appear once.
//! * Catenation side choices are induced by a prefix set `P`: a 2-split
//!   `(v1, v2)` goes to side 1 iff `v1 ∈ P`. Any choice function `f` is
//!   dominated by the one induced by `P = B1(f)`: it yields the same `B1` and
//!   a subset of `B2(f)`.
//! * Star moves only use ⊆-minimal rejected-piece sets `B'` drawn from the
//!   nonempty factors of B-words.
//! * Binary moves give each branch `k_i ≥ 1` and the star move needs `k ≥ 2`;
//!   a child with `k = 0` is lost for S.
//!
//! With shared-word pruning on, choices that put a word on both sides of a child
//! are skipped as well (D wins such a child).

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use crate::expr::{composition_cuts, pieces_at, Dialect, Word};
use crate::game::{composition_avoiding, Budget, Position, SMove, WordSet};

use super::{SolveError, SolverConfig};

pub(crate) type Visit<'a> = dyn FnMut(SMove) -> Result<ControlFlow<()>, SolveError> + 'a;

macro_rules! visit {
    ($f:expr, $m:expr) => {
        if let ControlFlow::Break(()) = $f($m)? {
            return Ok(ControlFlow::Break(()));
        }
    };
}

/// Calls `f` on every generated move, in the fixed order terminal, union,
/// catenation, star, complement. Stops early when `f` breaks.
pub(crate) fn for_each_move(
    cfg: &SolverConfig,
    p: &Position,
    allow_neg: bool,
    f: &mut Visit<'_>,
) -> Result<ControlFlow<()>, SolveError> {
    if p.k() == 0 {
        return Ok(ControlFlow::Continue(()));
    }
    visit!(f, SMove::Atom { symbol: Word::epsilon() });
    for &c in p.alphabet().symbols() {
        visit!(f, SMove::Atom { symbol: Word::new(vec![c]) });
    }
    visit!(f, SMove::Empty);
    let budgets = budget_splits(p, cfg.reductions);
    if !budgets.is_empty() {
        if let ControlFlow::Break(()) = union_moves(cfg, p, &budgets, f)? {
            return Ok(ControlFlow::Break(()));
        }
        if let ControlFlow::Break(()) = cat_moves(cfg, p, &budgets, f)? {
            return Ok(ControlFlow::Break(()));
        }
    }
    if let ControlFlow::Break(()) = star_moves(cfg, p, f)? {
        return Ok(ControlFlow::Break(()));
    }
    let neg_useful = match p.dialect() {
        Dialect::Re => false,
        Dialect::Resf if !p.rules().resf_neg_charges_size => true,
        _ => !cfg.reductions || p.k() >= 2,
    };
    if allow_neg && neg_useful {
        visit!(f, SMove::Neg);
    }
    Ok(ControlFlow::Continue(()))
}

/// Collects the generated moves.
pub fn enumerate_s_moves(cfg: &SolverConfig, p: &Position) -> Result<Vec<SMove>, SolveError> {
    let mut out = Vec::new();
    let _ = for_each_move(cfg, p, true, &mut |m| {
        out.push(m);
        Ok(ControlFlow::Continue(()))
    })?;
    Ok(out)
}

fn budget_splits(p: &Position, reduced: bool) -> Vec<Budget> {
    let k = p.k();
    let min_k = if reduced { 1 } else { 0 };
    let mut out = Vec::new();
    if k < 1 + 2 * min_k {
        return out;
    }
    for k1 in min_k..=(k - 1 - min_k) {
        let k2 = k - 1 - k1;
        match p.s() {
            None => out.push(Budget { k1, k2, s1: None, s2: None }),
            Some(s) => {
                for s1 in 0..=s.min(k1) {
                    let s2 = s - s1;
                    if s2 <= k2 {
                        out.push(Budget { k1, k2, s1: Some(s1), s2: Some(s2) });
                    }
                }
            }
        }
    }
    out
}

fn union_moves(
    cfg: &SolverConfig,
    p: &Position,
    budgets: &[Budget],
    f: &mut Visit<'_>,
) -> Result<ControlFlow<()>, SolveError> {
    let words: Vec<&Word> = p.a().iter().collect();
    let n = words.len();
    if n > 20 {
        return Err(SolveError::LimitExceeded(format!("|A| = {n} is too large for union moves")));
    }
    if cfg.reductions {
        // A1 = mask, A2 = complement; the least word always goes to A1
        for mask in 0u32..(1 << n) {
            if n > 0 && mask & 1 == 0 {
                continue;
            }
            let a1: Vec<Word> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| words[i].clone()).collect();
            let a2: Vec<Word> = (0..n).filter(|i| mask & (1 << i) == 0).map(|i| words[i].clone()).collect();
            for b in budgets {
                visit!(f, SMove::Union { a1: a1.clone(), a2: a2.clone(), budget: b.clone() });
            }
        }
    } else {
        // every cover: each word in A1 only, A2 only, or both
        let total = 3u64.pow(n as u32);
        for code in 0..total {
            let mut a1 = Vec::new();
            let mut a2 = Vec::new();
            let mut c = code;
            for w in &words {
                match c % 3 {
                    0 => a1.push((*w).clone()),
                    1 => a2.push((*w).clone()),
                    _ => {
                        a1.push((*w).clone());
                        a2.push((*w).clone());
                    }
                }
                c /= 3;
            }
            for b in budgets {
                visit!(f, SMove::Union { a1: a1.clone(), a2: a2.clone(), budget: b.clone() });
            }
        }
    }
    Ok(ControlFlow::Continue(()))
}

/// Iterates the cartesian product of `0..sizes[i]`.
fn for_each_tuple(
    sizes: &[usize],
    f: &mut dyn FnMut(&[usize]) -> Result<ControlFlow<()>, SolveError>,
) -> Result<ControlFlow<()>, SolveError> {
    if sizes.contains(&0) {
        return Ok(ControlFlow::Continue(()));
    }
    let mut idx = vec![0usize; sizes.len()];
    loop {
        if let ControlFlow::Break(()) = f(&idx)? {
            return Ok(ControlFlow::Break(()));
        }
        let mut i = 0;
        loop {
            if i == sizes.len() {
                return Ok(ControlFlow::Continue(()));
            }
            idx[i] += 1;
            if idx[i] < sizes[i] {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

fn cat_moves(
    cfg: &SolverConfig,
    p: &Position,
    budgets: &[Budget],
    f: &mut Visit<'_>,
) -> Result<ControlFlow<()>, SolveError> {
    let a: Vec<&Word> = p.a().iter().collect();
    let b: Vec<&Word> = p.b().iter().collect();
    let sizes: Vec<usize> = a.iter().map(|w| w.len() + 1).collect();
    if !cfg.reductions {
        let total_splits: usize = b.iter().map(|v| v.len() + 1).sum();
        if total_splits > 16 {
            return Err(SolveError::LimitExceeded(format!("{total_splits} B-splits is too many for raw enumeration")));
        }
        return for_each_tuple(&sizes, &mut |cuts| {
            for mask in 0u64..(1 << total_splits) {
                let mut bit = 0;
                let sides: Vec<Vec<u8>> = b
                    .iter()
                    .map(|v| {
                        (0..=v.len())
                            .map(|_| {
                                let side = if mask & (1 << bit) != 0 { 2 } else { 1 };
                                bit += 1;
                                side
                            })
                            .collect()
                    })
                    .collect();
                for bud in budgets {
                    visit!(f, SMove::Cat { cuts: cuts.to_vec(), sides: sides.clone(), budget: bud.clone() });
                }
            }
            Ok(ControlFlow::Continue(()))
        });
    }

    let prefixes: Vec<Word> =
        b.iter().flat_map(|v| (0..=v.len()).map(|c| v.slice(0, c))).collect::<BTreeSet<Word>>().into_iter().collect();
    for_each_tuple(&sizes, &mut |cuts| {
        let mut a1 = WordSet::new();
        let mut a2 = WordSet::new();
        for (w, &c) in a.iter().zip(cuts) {
            a1.insert(w.slice(0, c));
            a2.insert(w.slice(c, w.len()));
        }
        let mut forced_in = BTreeSet::new();
        let mut forced_out = BTreeSet::new();
        if cfg.shared_word_pruning {
            for pre in &prefixes {
                if a1.contains(pre) {
                    forced_out.insert(pre.clone());
                }
            }
            for v in &b {
                for c in 0..=v.len() {
                    if a2.contains(&v.slice(c, v.len())) {
                        forced_in.insert(v.slice(0, c));
                    }
                }
            }
            if forced_in.iter().any(|w| forced_out.contains(w)) {
                return Ok(ControlFlow::Continue(()));
            }
        }
        let free: Vec<&Word> =
            prefixes.iter().filter(|w| !forced_in.contains(*w) && !forced_out.contains(*w)).collect();
        if free.len() > cfg.max_free_prefixes {
            return Err(SolveError::LimitExceeded(format!(
                "{} free prefixes exceed the catenation limit {}",
                free.len(),
                cfg.max_free_prefixes
            )));
        }
        for mask in 0u64..(1u64 << free.len()) {
            let mut selected = forced_in.clone();
            for (i, w) in free.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    selected.insert((*w).clone());
                }
            }
            let sides: Vec<Vec<u8>> = b
                .iter()
                .map(|v| (0..=v.len()).map(|c| if selected.contains(&v.slice(0, c)) { 1 } else { 2 }).collect())
                .collect();
            for bud in budgets {
                visit!(f, SMove::Cat { cuts: cuts.to_vec(), sides: sides.clone(), budget: bud.clone() });
            }
        }
        Ok(ControlFlow::Continue(()))
    })
}

fn star_moves(cfg: &SolverConfig, p: &Position, f: &mut Visit<'_>) -> Result<ControlFlow<()>, SolveError> {
    if p.b().contains(&Word::epsilon()) || p.s() == Some(0) {
        return Ok(ControlFlow::Continue(()));
    }
    if cfg.reductions && p.k() < 2 {
        return Ok(ControlFlow::Continue(()));
    }
    let a: Vec<&Word> = p.a().iter().collect();
    let options: Vec<Vec<Vec<usize>>> =
        a.iter().map(|w| if w.is_empty() { vec![Vec::new()] } else { composition_cuts(w.len()) }).collect();
    let sizes: Vec<usize> = options.iter().map(Vec::len).collect();
    let factors: BTreeSet<Word> = p.b().iter().flat_map(|v| v.factors()).filter(|u| !u.is_empty()).collect();
    for_each_tuple(&sizes, &mut |choice| {
        let compositions: Vec<Vec<usize>> = choice.iter().zip(&options).map(|(&i, o)| o[i].clone()).collect();
        let mut a_prime = BTreeSet::new();
        for (w, cuts) in a.iter().zip(&compositions) {
            if !w.is_empty() {
                a_prime.extend(pieces_at(w, cuts));
            }
        }
        // a rejected piece that is also in A' hands D a shared word
        let pool: BTreeSet<Word> =
            if cfg.shared_word_pruning { factors.difference(&a_prime).cloned().collect() } else { factors.clone() };
        if pool.len() > cfg.max_star_pool {
            return Err(SolveError::LimitExceeded(format!(
                "{} candidate pieces exceed the star limit {}",
                pool.len(),
                cfg.max_star_pool
            )));
        }
        let sets = if cfg.reductions {
            minimal_hitting_sets(p.b(), &pool, cfg.max_hitting_sets)?
        } else {
            all_hitting_sets(p.b(), &pool)
        };
        for set in sets {
            visit!(f, SMove::Star { compositions: compositions.clone(), b_prime: set.into_iter().collect() });
        }
        Ok(ControlFlow::Continue(()))
    })
}

fn hits_all(b: &WordSet, set: &BTreeSet<Word>) -> bool {
    b.iter().all(|v| composition_avoiding(v, set).is_none())
}

/// All ⊆-minimal `H ⊆ pool` such that every composition of every `v ∈ b`
/// has a piece in `H`, in a deterministic order.
pub fn minimal_hitting_sets(
    b: &WordSet,
    pool: &BTreeSet<Word>,
    limit: usize,
) -> Result<Vec<BTreeSet<Word>>, SolveError> {
    fn rec(
        b: &WordSet,
        pool: &BTreeSet<Word>,
        chosen: &mut BTreeSet<Word>,
        excluded: &mut BTreeSet<Word>,
        out: &mut BTreeSet<BTreeSet<Word>>,
        limit: usize,
    ) -> Result<(), SolveError> {
        let unhit = b.iter().find_map(|v| composition_avoiding(v, chosen));
        let Some(pieces) = unhit else {
            let minimal = chosen.iter().all(|h| {
                let mut smaller = chosen.clone();
                smaller.remove(h);
                !hits_all(b, &smaller)
            });
            if minimal {
                out.insert(chosen.clone());
                if out.len() > limit {
                    return Err(SolveError::LimitExceeded(format!("more than {limit} minimal star sets")));
                }
            }
            return Ok(());
        };
        let candidates: BTreeSet<Word> =
            pieces.into_iter().filter(|u| pool.contains(u) && !excluded.contains(u)).collect();
        let mut newly_excluded = Vec::new();
        for u in candidates {
            chosen.insert(u.clone());
            rec(b, pool, chosen, excluded, out, limit)?;
            chosen.remove(&u);
            excluded.insert(u.clone());
            newly_excluded.push(u);
        }
        for u in newly_excluded {
            excluded.remove(&u);
        }
        Ok(())
    }
    let mut out = BTreeSet::new();
    rec(b, pool, &mut BTreeSet::new(), &mut BTreeSet::new(), &mut out, limit)?;
    Ok(out.into_iter().collect())
}

fn all_hitting_sets(b: &WordSet, pool: &BTreeSet<Word>) -> Vec<BTreeSet<Word>> {
    let items: Vec<&Word> = pool.iter().collect();
    (0u64..(1u64 << items.len()))
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, w)| (*w).clone())
                .collect::<BTreeSet<Word>>()
        })
        .filter(|set| hits_all(b, set))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::word_set;

    fn cfg() -> SolverConfig {
        SolverConfig::default()
    }

    #[test]
    fn only_leaf_moves_at_k1() {
        let p = Position::from_strs(Dialect::Gre, 1, Some(0), &["a"], &[], "ab").unwrap();
        let moves = enumerate_s_moves(&cfg(), &p).unwrap();
        let names: Vec<&str> = moves.iter().map(|m| m.name()).collect();
        assert_eq!(names, ["atom", "atom", "atom", "empty"]);
    }

    #[test]
    fn no_star_when_epsilon_in_b() {
        let p = Position::from_strs(Dialect::Re, 4, None, &["a"], &["", "b"], "ab").unwrap();
        assert!(enumerate_s_moves(&cfg(), &p).unwrap().iter().all(|m| m.name() != "star"));
    }

    #[test]
    fn cat_prefix_rule() {
        // (3, {ab}, {ba}); A-split (a, b) and prefix set {b}: split (b, a) goes to side 1,
        // the others (ε, ba) and (ba, ε) to side 2, so B1 = {b}, B2 = {ba, ε}
        let p = Position::from_strs(Dialect::Re, 3, None, &["ab"], &["ba"], "ab").unwrap();
        let moves = enumerate_s_moves(&cfg(), &p).unwrap();
        let want = SMove::Cat {
            cuts: vec![1],
            sides: vec![vec![2, 1, 2]],
            budget: Budget { k1: 1, k2: 1, s1: None, s2: None },
        };
        assert!(moves.contains(&want));
        let crate::game::Outcome::Two(c1, c2) = crate::game::apply_move(&p, &want).unwrap() else { panic!() };
        assert_eq!(c1.b(), &word_set(["b"]));
        assert_eq!(c2.b(), &word_set(["", "ba"]));
        // every generated move is legal
        for m in &moves {
            crate::game::validate_move(&p, m).unwrap();
        }
    }

    #[test]
    fn minimal_hitting_sets_of_ab() {
        let b = word_set(["ab"]);
        let pool: BTreeSet<Word> = word_set(["a", "b", "ab"]);
        let sets = minimal_hitting_sets(&b, &pool, 100).unwrap();
        // compositions (ab) and (a, b): minimal hitting sets {ab, a} and {ab, b}
        assert_eq!(sets, vec![word_set(["a", "ab"]), word_set(["b", "ab"])]);
        let all = all_hitting_sets(&b, &pool);
        for s in &all {
            assert!(sets.iter().any(|m| m.is_subset(s)));
        }
        assert_eq!(minimal_hitting_sets(&WordSet::new(), &pool, 100).unwrap(), vec![BTreeSet::new()]);
    }

    #[test]
    fn hitting_sets_respect_blocked_pieces() {
        let b = word_set(["aa"]);
        let pool: BTreeSet<Word> = word_set(["aa"]);
        // (a, a) cannot be hit without a
        assert!(minimal_hitting_sets(&b, &pool, 100).unwrap().is_empty());
    }

    #[test]
    fn generated_moves_are_legal() {
        let sigma = "ab";
        for (a, b) in [(vec!["ab", "b"], vec!["a", "ba"]), (vec!["", "aa"], vec!["b"]), (vec![], vec!["ab"])] {
            for dialect in [Dialect::Re, Dialect::Resf, Dialect::Gre] {
                let s = dialect.has_star_budget().then_some(2);
                let p = Position::from_strs(dialect, 5, s, &a, &b, sigma).unwrap();
                for reductions in [true, false] {
                    let cfg = SolverConfig { reductions, ..cfg() };
                    for m in enumerate_s_moves(&cfg, &p).unwrap() {
                        crate::game::validate_move(&p, &m).unwrap_or_else(|v| panic!("{m}: {v}"));
                    }
                }
            }
        }
    }
}
