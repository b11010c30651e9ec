//! Lower bounds by counterexample-guided search.
//!
//! To show that no expression within some bounds contains `A` and avoids an
//! infinite set `B₀`, it suffices to find a finite `B ⊆ B₀` that no such
//! expression separates from `A`. The loop grows `B` from a seed: while some
//! candidate separates `A` from the current sample, the shortest word of
//! `B₀` it accepts is added. If a candidate accepts no word of `B₀` up to the
//! search horizon, the run is inconclusive.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::expr::{CompiledExpr, Dialect, Expr, Word};
use crate::oracle::{min_separating_with_limit, EnumSpec, OracleError, DEFAULT_MAX_REPRESENTATIVES};

use super::chains::perturb_even_chains;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Round {
    /// The candidate separator, as expression text.
    pub candidate: String,
    pub counterexample: Word,
}

/// No expression within the bounds separates `a` from `b_sample`, and every
/// sample word lies outside the target language.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerBoundCertificate {
    pub dialect: Dialect,
    pub size_bound: usize,
    pub star_bound: Option<usize>,
    pub alphabet: crate::expr::Alphabet,
    #[serde(rename = "A")]
    pub a: Vec<Word>,
    #[serde(rename = "B_sample")]
    pub b_sample: Vec<Word>,
    pub rounds: Vec<Round>,
}

impl LowerBoundCertificate {
    /// Re-runs the final search: true iff still no separator exists.
    pub fn replay(&self) -> Result<bool, OracleError> {
        let spec = EnumSpec::new(self.alphabet.clone(), self.dialect, self.size_bound, self.star_bound);
        let a = self.a.iter().cloned().collect();
        let b = self.b_sample.iter().cloned().collect();
        Ok(min_separating_with_limit(&a, &b, &spec, DEFAULT_MAX_REPRESENTATIVES)?.is_none())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CegisOutcome {
    Certified(LowerBoundCertificate),
    /// A candidate accepts no word of `B₀` up to the horizon.
    Inconclusive {
        candidate: Expr,
        horizon: usize,
        rounds: Vec<Round>,
    },
}

impl fmt::Display for CegisOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CegisOutcome::Certified(c) => write!(
                f,
                "certified: no {} expression of size ≤ {}{} separates A from {} sampled words ({} rounds)",
                c.dialect,
                c.size_bound,
                c.star_bound.map(|s| format!(" with ≤ {s} stars")).unwrap_or_default(),
                c.b_sample.len(),
                c.rounds.len()
            ),
            CegisOutcome::Inconclusive { candidate, horizon, rounds } => write!(
                f,
                "inconclusive: candidate {candidate} has no counterexample up to length {horizon} (after {} rounds)",
                rounds.len()
            ),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CegisConfig {
    /// Counterexamples are searched among words of length ≤ horizon.
    pub horizon: usize,
    pub max_rounds: usize,
    pub max_representatives: usize,
}

impl Default for CegisConfig {
    fn default() -> Self {
        CegisConfig { horizon: 10, max_rounds: 500, max_representatives: DEFAULT_MAX_REPRESENTATIVES }
    }
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum CegisError {
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("A-word {0} lies in the excluded set")]
    OverlappingA(Word),
    #[error("no decision after {0} rounds")]
    RoundLimit(usize),
}

/// The seed sample: ε and the words of length ≤ 2, plus each A-word with
/// every even chain lengthened by one, keeping those in `B₀`.
pub fn default_seed(a: &BTreeSet<Word>, spec: &EnumSpec, in_b0: &dyn Fn(&Word) -> bool) -> BTreeSet<Word> {
    spec.alphabet.words_up_to(2).into_iter().chain(a.iter().map(perturb_even_chains)).filter(|w| in_b0(w)).collect()
}

pub fn certify_lower_bound(
    a: &BTreeSet<Word>,
    in_b0: &dyn Fn(&Word) -> bool,
    spec: &EnumSpec,
    cfg: &CegisConfig,
) -> Result<CegisOutcome, CegisError> {
    let seed = default_seed(a, spec, in_b0);
    certify_with_seed(a, in_b0, spec, cfg, seed)
}

pub fn certify_with_seed(
    a: &BTreeSet<Word>,
    in_b0: &dyn Fn(&Word) -> bool,
    spec: &EnumSpec,
    cfg: &CegisConfig,
    seed: BTreeSet<Word>,
) -> Result<CegisOutcome, CegisError> {
    if let Some(w) = a.iter().find(|w| in_b0(w)) {
        return Err(CegisError::OverlappingA(w.clone()));
    }
    let universe: Vec<Word> = spec.alphabet.words_up_to(cfg.horizon).into_iter().filter(|w| in_b0(w)).collect();
    let mut sample = seed;
    let mut rounds = Vec::new();
    for _ in 0..cfg.max_rounds {
        let Some(sep) = min_separating_with_limit(a, &sample, spec, cfg.max_representatives)? else {
            return Ok(CegisOutcome::Certified(LowerBoundCertificate {
                dialect: spec.dialect,
                size_bound: spec.max_size,
                star_bound: spec.max_stars,
                alphabet: spec.alphabet.clone(),
                a: a.iter().cloned().collect(),
                b_sample: sample.into_iter().collect(),
                rounds,
            }));
        };
        let m = CompiledExpr::new(&sep.expr);
        match universe.iter().find(|w| m.matches(w)) {
            Some(w) => {
                rounds.push(Round { candidate: sep.expr.to_string(), counterexample: w.clone() });
                sample.insert(w.clone());
            }
            None => return Ok(CegisOutcome::Inconclusive { candidate: sep.expr, horizon: cfg.horizon, rounds }),
        }
    }
    Err(CegisError::RoundLimit(cfg.max_rounds))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{word_set, Alphabet};
    use crate::langs::{even_chain_member, make_lnk};

    #[test]
    fn epsilon_alone_is_refuted() {
        let spec = EnumSpec::new(Alphabet::parse("ab").unwrap(), Dialect::Re, 1, None);
        let out =
            certify_lower_bound(&word_set([""]), &|w: &Word| !w.is_empty(), &spec, &CegisConfig::default()).unwrap();
        let CegisOutcome::Inconclusive { candidate, .. } = out else { panic!("{out}") };
        assert_eq!(candidate, Expr::Epsilon);
    }

    #[test]
    fn one_star_resf_small_budget() {
        // size ≤ 5 with one star cannot capture the even-chain language
        let a = make_lnk(2, 1).unwrap();
        let spec = EnumSpec::new(Alphabet::parse("ab").unwrap(), Dialect::Resf, 5, Some(1));
        let in_b0 = |w: &Word| !even_chain_member(w, 2);
        let cfg = CegisConfig { horizon: 6, ..CegisConfig::default() };
        let out = certify_lower_bound(&a, &in_b0, &spec, &cfg).unwrap();
        let CegisOutcome::Certified(cert) = out else { panic!("{out}") };
        assert!(cert.b_sample.iter().all(in_b0));
        assert!(cert.replay().unwrap());
        let json = serde_json::to_string(&cert).unwrap();
        assert_eq!(serde_json::from_str::<LowerBoundCertificate>(&json).unwrap(), cert);
    }
}
