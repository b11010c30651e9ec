//! Parenthesis encodings of the cumulative hierarchy `V_0 = ∅`,
//! `V_{n+1} = P(V_n)`.

use std::collections::{BTreeMap, BTreeSet};

use crate::expr::Word;

/// A hereditarily finite set.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HSet(pub BTreeSet<HSet>);

impl HSet {
    pub fn empty() -> HSet {
        HSet(BTreeSet::new())
    }

    pub fn elements(&self) -> &BTreeSet<HSet> {
        &self.0
    }
}

/// The members of `V_n`.
pub fn hierarchy(n: usize) -> Vec<HSet> {
    let mut level: Vec<HSet> = Vec::new();
    for _ in 0..n {
        let m = level.len();
        assert!(m < 32, "V_n is too large to list");
        level = (0u64..(1 << m))
            .map(|mask| HSet((0..m).filter(|i| mask & (1 << i) != 0).map(|i| level[i].clone()).collect()))
            .collect();
        level.sort();
    }
    level
}

/// All encodings of `x`: `(e_1 … e_m)` for every ordering of the elements
/// and every choice of element encodings.
pub fn encodings(x: &HSet) -> BTreeSet<String> {
    let mut memo = BTreeMap::new();
    encodings_memo(x, &mut memo)
}

fn encodings_memo(x: &HSet, memo: &mut BTreeMap<HSet, BTreeSet<String>>) -> BTreeSet<String> {
    if let Some(found) = memo.get(x) {
        return found.clone();
    }
    let elems: Vec<BTreeSet<String>> = x.elements().iter().map(|e| encodings_memo(e, memo)).collect();
    let mut bodies = BTreeSet::new();
    let mut used = vec![false; elems.len()];
    orderings(&elems, &mut used, String::new(), &mut bodies);
    let out: BTreeSet<String> = bodies.into_iter().map(|b| format!("({b})")).collect();
    memo.insert(x.clone(), out.clone());
    out
}

fn orderings(elems: &[BTreeSet<String>], used: &mut [bool], prefix: String, out: &mut BTreeSet<String>) {
    if used.iter().all(|&u| u) {
        out.insert(prefix);
        return;
    }
    for i in 0..elems.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        for e in &elems[i] {
            orderings(elems, used, format!("{prefix}{e}"), out);
        }
        used[i] = false;
    }
}

/// `⋃ { enc(X) | X ∈ V_{n+1} }` over the alphabet `{(, )}`.
pub fn enc_language(n: usize) -> BTreeSet<Word> {
    let mut memo = BTreeMap::new();
    hierarchy(n + 1).iter().flat_map(|x| encodings_memo(x, &mut memo)).map(|s| Word::from(s.as_str())).collect()
}
