//! Self-checks that tie the solver to independent ground truth.
//!
//! Each check yields a [`CriterionReport`]. Reports contain no timings, so
//! two runs with the same [`VerifyConfig`] render byte-identical text.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::expr::{Alphabet, CompiledExpr, Dialect, Expr, Word};
use crate::game::{apply_move, Outcome, Player, Position, WordSet};
use crate::langs::{
    build_phi, certify_lower_bound, enc_language, even_chain_member, fo_size, make_lnk, paren_alphabet, twr,
    CegisConfig, CegisOutcome, CompiledFo,
};
use crate::oracle::{enumerate_exprs, min_separating, EnumSpec};
use crate::solver::{fixed_expr_move, Solver, SolverConfig};

#[derive(Clone, Debug, Serialize)]
pub struct VerifyConfig {
    pub seed: u64,
    pub grid_max_k: u32,
    pub planted_positions: usize,
    /// Planted positions up to this size budget are also solved with
    /// pruning disabled; larger ones take minutes without it.
    pub unpruned_max_k: u32,
    pub chain_positions: usize,
    pub random_languages: usize,
    /// Size cap for the random-language searches; a language with no
    /// separator up to the cap still satisfies the bound if `2^cap ≥ |L|`.
    pub synth_cap: usize,
    pub fo_max_len: usize,
    pub cegis_horizon: usize,
    pub solver: SolverConfig,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 20240607,
            grid_max_k: 5,
            planted_positions: 1000,
            unpruned_max_k: 4,
            chain_positions: 60,
            random_languages: 20,
            synth_cap: 15,
            fo_max_len: 12,
            cegis_horizon: 10,
            solver: SolverConfig::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionReport {
    pub number: u8,
    pub title: String,
    pub passed: bool,
    pub summary: String,
    pub details: Vec<String>,
}

impl CriterionReport {
    fn new(number: u8, title: &str) -> Self {
        CriterionReport { number, title: title.into(), passed: true, summary: String::new(), details: Vec::new() }
    }

    fn fail(&mut self, line: String) {
        self.passed = false;
        self.details.push(format!("FAIL {line}"));
    }

    fn note(&mut self, line: String) {
        self.details.push(line);
    }

    /// One line: number, verdict, title and summary.
    pub fn headline(&self) -> String {
        format!(
            "criterion {} {}: {}: {}",
            self.number,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.summary
        )
    }
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.headline())?;
        for d in &self.details {
            writeln!(f, "    {d}")?;
        }
        Ok(())
    }
}

pub fn render(reports: &[CriterionReport]) -> String {
    reports.iter().map(|r| r.to_string()).collect()
}

// ---------------------------------------------------------------- grid

/// The game variants of the grid: dialect and star bound.
pub const GRID_VARIANTS: [(Dialect, Option<u32>); 5] = [
    (Dialect::Re, None),
    (Dialect::Resf, Some(0)),
    (Dialect::Resf, Some(1)),
    (Dialect::Gre, Some(0)),
    (Dialect::Gre, Some(1)),
];

fn grid_sets() -> Vec<WordSet> {
    let words = Alphabet::parse("ab").unwrap().words_up_to(2);
    let mut out = vec![WordSet::new()];
    for (i, w) in words.iter().enumerate() {
        out.push([w.clone()].into());
        for v in &words[i + 1..] {
            out.push([w.clone(), v.clone()].into());
        }
    }
    out
}

/// All disjoint `(A, B)` with `A, B ⊆ {a,b}^{≤2}` of at most two words each.
pub fn grid_pairs() -> Vec<(WordSet, WordSet)> {
    let sets = grid_sets();
    let mut out = Vec::new();
    for a in &sets {
        for b in &sets {
            if a.is_disjoint(b) {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}

/// Brute force over the grid: every expression up to the size cap, as a
/// membership mask over `{a,b}^{≤2}`.
struct MaskOracle {
    words: Vec<Word>,
    // (mask, size, stars, first expression) in enumeration order
    exprs: Vec<(u8, usize, usize, Expr)>,
}

impl MaskOracle {
    fn new(dialect: Dialect, max_size: usize, max_stars: Option<usize>) -> Self {
        let sigma = Alphabet::parse("ab").unwrap();
        let words = sigma.words_up_to(2);
        let mut seen = BTreeMap::new();
        for e in enumerate_exprs(&EnumSpec::new(sigma, dialect, max_size, max_stars)) {
            let m = CompiledExpr::new(&e);
            let mask = words.iter().enumerate().fold(0u8, |acc, (i, w)| acc | (u8::from(m.matches(w)) << i));
            // keep the first expression per (mask, size, stars)
            seen.entry((mask, e.size(), e.star_count())).or_insert(e);
        }
        let mut exprs: Vec<_> = seen.into_iter().map(|((m, n, t), e)| (m, n, t, e)).collect();
        exprs.sort_by_key(|x| (x.1, x.2));
        MaskOracle { words, exprs }
    }

    fn mask(&self, set: &WordSet) -> u8 {
        self.words.iter().enumerate().filter(|(_, w)| set.contains(*w)).fold(0, |acc, (i, _)| acc | 1 << i)
    }

    /// A least separator of size ≤ `k` and at most `s` stars.
    fn separator(&self, a: &WordSet, b: &WordSet, k: usize, s: Option<usize>) -> Option<&Expr> {
        let (ma, mb) = (self.mask(a), self.mask(b));
        self.exprs
            .iter()
            .filter(|(_, n, t, _)| *n <= k && s.is_none_or(|s| *t <= s))
            .find(|(m, _, _, _)| m & ma == ma && m & mb == 0)
            .map(|x| &x.3)
    }
}

/// One solved grid position.
#[derive(Clone, Debug)]
pub struct GridEntry {
    /// Dialect and star bound before clamping.
    pub variant: (Dialect, Option<u32>),
    pub position: Position,
    pub winner: Player,
    pub witness: Option<Expr>,
    pub oracle: Option<Expr>,
}

/// The solved grid, shared by the checks that reuse it.
pub struct GridRun {
    pub entries: Vec<GridEntry>,
    pub errors: Vec<String>,
    pub positions_visited: usize,
}

pub fn run_grid(cfg: &VerifyConfig) -> GridRun {
    let mut entries = Vec::new();
    let mut errors = Vec::new();
    let mut visited = 0;
    let pairs = grid_pairs();
    let sigma = Alphabet::parse("ab").unwrap();
    for (dialect, s) in GRID_VARIANTS {
        let oracle = MaskOracle::new(dialect, cfg.grid_max_k as usize, s.map(|s| s as usize));
        let mut solver = Solver::new(cfg.solver);
        for k in 1..=cfg.grid_max_k {
            for (a, b) in &pairs {
                let p = Position::new(dialect, k, s, a.clone(), b.clone(), sigma.clone()).expect("grid position");
                match solver.solve(&p) {
                    Ok(r) => entries.push(GridEntry {
                        variant: (dialect, s),
                        oracle: oracle.separator(a, b, k as usize, s.map(|s| s as usize)).cloned(),
                        position: p,
                        winner: r.winner,
                        witness: r.witness,
                    }),
                    Err(e) => errors.push(format!("{p}: {e}")),
                }
            }
        }
        visited += solver.stats().positions;
    }
    GridRun { entries, errors, positions_visited: visited }
}

fn variant_label((dialect, s): (Dialect, Option<u32>)) -> String {
    match s {
        None => dialect.to_string(),
        Some(s) => format!("{dialect} s={s}"),
    }
}

pub fn criterion_1(grid: &GridRun) -> CriterionReport {
    let mut r = CriterionReport::new(1, "solver vs brute-force enumeration on the grid");
    for e in &grid.errors {
        r.fail(e.clone());
    }
    let mut by_variant: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    let mut disagree = 0;
    for e in &grid.entries {
        let agree = (e.winner == Player::S) == e.oracle.is_some();
        if !agree {
            disagree += 1;
            r.fail(format!(
                "{}: solver {} but brute force {}",
                e.position,
                e.winner,
                e.oracle.as_ref().map_or("finds nothing".into(), |x| format!("finds {x}"))
            ));
        }
        let key = format!("{} k={}", variant_label(e.variant), e.position.k());
        let slot = by_variant.entry(key).or_default();
        slot.0 += 1;
        slot.1 += usize::from(e.winner == Player::S);
    }
    for (k, (n, s)) in &by_variant {
        r.note(format!("{k}: {n} positions, {s} won by S"));
    }
    r.summary = format!(
        "{} positions, {} disagreements, {} errors, {} positions visited",
        grid.entries.len(),
        disagree,
        grid.errors.len(),
        grid.positions_visited
    );
    r
}

/// Plays the fixed-expression strategy against every D reply; returns the
/// number of finished plays, or a description of the first failure.
pub fn exhaustive_playout(p: &Position, e: &Expr) -> Result<usize, String> {
    let fm = fixed_expr_move(p, e).map_err(|err| format!("{p} with {e}: {err}"))?;
    match apply_move(p, &fm.mv).map_err(|v| format!("{p}: engine move rejected: {v}"))? {
        Outcome::Terminal(Player::S) => Ok(1),
        Outcome::Terminal(Player::D) => Err(format!("{p} with {e}: play ends won by D")),
        Outcome::One(c) => exhaustive_playout(&c, &fm.children[0]),
        Outcome::Two(c1, c2) => {
            Ok(exhaustive_playout(&c1, &fm.children[0])? + exhaustive_playout(&c2, &fm.children[1])?)
        }
    }
}

pub fn witness_problem(p: &Position, w: &Expr) -> Option<String> {
    if !crate::expr::separates(w, p.a(), p.b()) {
        return Some(format!("{p}: witness {w} does not separate"));
    }
    if w.size() > p.k() as usize {
        return Some(format!("{p}: witness {w} has size {} > k", w.size()));
    }
    if let Some(s) = p.s() {
        if w.star_count() > s as usize {
            return Some(format!("{p}: witness {w} has {} stars > s", w.star_count()));
        }
    }
    if !w.conforms_to(p.dialect()) {
        return Some(format!("{p}: witness {w} is not in the {} dialect", p.dialect()));
    }
    None
}

pub fn criterion_2(grid: &GridRun) -> CriterionReport {
    let mut r = CriterionReport::new(2, "witness soundness and fixed-expression playouts");
    let (mut witnesses, mut plays, mut s_positions) = (0, 0, 0);
    for e in grid.entries.iter().filter(|e| e.winner == Player::S) {
        s_positions += 1;
        let Some(w) = &e.witness else {
            r.fail(format!("{}: S wins without a witness", e.position));
            continue;
        };
        witnesses += 1;
        if let Some(problem) = witness_problem(&e.position, w) {
            r.fail(problem);
            continue;
        }
        let mut exprs = vec![w];
        exprs.extend(e.oracle.as_ref().filter(|o| *o != w));
        for x in exprs {
            match exhaustive_playout(&e.position, x) {
                Ok(n) => plays += n,
                Err(msg) => r.fail(msg),
            }
        }
    }
    r.summary = format!("{s_positions} S positions, {witnesses} witnesses checked, {plays} complete plays won by S");
    r
}

// ---------------------------------------------------------------- pruning rules

fn random_set(rng: &mut ChaCha8Rng, words: &[Word], max: usize) -> WordSet {
    let n = rng.random_range(0..=max);
    words.choose_multiple(rng, n).cloned().collect()
}

/// Random positions of every dialect with one word planted on both sides.
pub fn planted_positions(seed: u64, count: usize) -> Vec<Position> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sigma = Alphabet::parse("ab").unwrap();
    let words = sigma.words_up_to(3);
    (0..count)
        .map(|_| {
            let dialect = *[Dialect::Re, Dialect::Resf, Dialect::Gre].choose(&mut rng).unwrap();
            let k = rng.random_range(1..=5);
            let s = dialect.has_star_budget().then(|| rng.random_range(0..=2.min(k)));
            let shared = words.choose(&mut rng).unwrap().clone();
            let mut a = random_set(&mut rng, &words, 2);
            let mut b = random_set(&mut rng, &words, 2);
            a.insert(shared.clone());
            b.insert(shared);
            Position::new(dialect, k, s, a, b, sigma.clone()).expect("planted position")
        })
        .collect()
}

/// Star-free positions `({w}, {w'})` where `w` and `w'` differ only in the
/// lengths of chains longer than `k`.
pub fn chain_positions(seed: u64, count: usize) -> Vec<Position> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let sigma = Alphabet::parse("ab").unwrap();
    (0..count)
        .map(|_| {
            let dialect = if rng.random_bool(0.5) { Dialect::Gre } else { Dialect::Resf };
            let k: usize = rng.random_range(1..=3);
            let chains = rng.random_range(1..=2);
            let first = rng.random_range(0..2);
            let long = rng.random_range(0..chains);
            let (mut w, mut v) = (Vec::new(), Vec::new());
            for i in 0..chains {
                let c = sigma.symbols()[(first + i) % 2];
                let (n, m) = if i == long {
                    let n = rng.random_range(k + 1..=k + 2);
                    (n, n + rng.random_range(1..=2))
                } else if rng.random_bool(0.5) {
                    (rng.random_range(k + 1..=k + 2), rng.random_range(k + 1..=k + 2))
                } else {
                    let n = rng.random_range(1..=k);
                    (n, n)
                };
                w.extend(std::iter::repeat_n(c, n));
                v.extend(std::iter::repeat_n(c, m));
            }
            let (w, v) = (Word::new(w), Word::new(v));
            let (a, b) = if rng.random_bool(0.5) { (w, v) } else { (v, w) };
            Position::new(dialect, k as u32, Some(0), [a].into(), [b].into(), sigma.clone()).expect("chain position")
        })
        .collect()
}

pub fn criterion_3(cfg: &VerifyConfig, grid: &GridRun) -> CriterionReport {
    let mut r = CriterionReport::new(3, "shared-word, chain and pruning checks");

    let unpruned = SolverConfig { shared_word_pruning: false, chain_pruning: false, ..cfg.solver };
    let (mut shared_d, mut searched) = (0, 0);
    let planted = planted_positions(cfg.seed, cfg.planted_positions);
    let mut with = Solver::new(cfg.solver);
    let mut without = Solver::new(unpruned);
    for p in &planted {
        match with.winner(p) {
            Ok(Player::D) => shared_d += 1,
            other => r.fail(format!("{p}: {other:?}")),
        }
        if p.k() <= cfg.unpruned_max_k {
            match without.winner(p) {
                Ok(Player::D) => searched += 1,
                other => r.fail(format!("{p}: without pruning {other:?}")),
            }
        }
    }
    r.note(format!("planted shared word: {shared_d}/{} won by D", planted.len()));
    r.note(format!(
        "the {searched} planted positions with k ≤ {} are also won by D with pruning disabled",
        cfg.unpruned_max_k
    ));

    let chains = chain_positions(cfg.seed, cfg.chain_positions);
    let mut chain_d = 0;
    let mut with = Solver::new(cfg.solver);
    let mut without = Solver::new(SolverConfig { chain_pruning: false, ..cfg.solver });
    for p in &chains {
        if !crate::game::d_winning_by_long_chains(p) {
            r.fail(format!("{p}: generated position does not satisfy the chain condition"));
            continue;
        }
        match (with.winner(p), without.winner(p)) {
            (Ok(Player::D), Ok(Player::D)) => chain_d += 1,
            (x, y) => r.fail(format!("{p}: pruned {x:?}, unpruned {y:?}")),
        }
    }
    r.note(format!("long chains: {chain_d}/{} won by D with and without chain pruning", chains.len()));

    let mut changed = 0;
    let mut solvers: BTreeMap<String, Solver> = BTreeMap::new();
    for e in &grid.entries {
        let solver = solvers.entry(variant_label(e.variant)).or_insert_with(|| Solver::new(unpruned));
        match solver.winner(&e.position) {
            Ok(w) if w == e.winner => {}
            other => {
                changed += 1;
                r.fail(format!("{}: pruned {}, unpruned {other:?}", e.position, e.winner));
            }
        }
    }
    r.note(format!("grid without pruning: {changed} of {} winners changed", grid.entries.len()));
    r.summary = format!(
        "{shared_d}/{} planted, {chain_d}/{} chain positions won by D; {changed} grid changes",
        planted.len(),
        chains.len()
    );
    r
}

// ---------------------------------------------------------------- size bound

// ⌈log₂ n⌉ ≤ size, compared on integers: 2^size ≥ n.
fn meets_log_bound(size: usize, n: usize) -> bool {
    size >= usize::BITS as usize || (1usize << size) >= n
}

pub fn criterion_4(cfg: &VerifyConfig) -> CriterionReport {
    let mut r = CriterionReport::new(4, "minimal RE size against log₂|L|");
    let sigma = Alphabet::parse("ab").unwrap();
    let upto4 = sigma.words_up_to(4);
    let complement = |l: &WordSet| upto4.iter().filter(|w| !l.contains(*w)).cloned().collect::<WordSet>();

    let cube: WordSet = upto4.iter().filter(|w| w.len() == 3).cloned().collect();
    let spec = EnumSpec::new(sigma.clone(), Dialect::Re, 11, None);
    let cube_line = match min_separating(&cube, &complement(&cube), &spec) {
        Ok(Some(sep)) => {
            let ok = meets_log_bound(sep.size, cube.len());
            let line = format!("|L| = {}: minimal size {} ({}), log₂|L| = 3", cube.len(), sep.size, sep.expr);
            if ok {
                r.note(line.clone());
            } else {
                r.fail(line.clone());
            }
            line
        }
        Ok(None) => {
            let line = "all words of length 3: no separator up to size 11".to_string();
            r.note(line.clone());
            line
        }
        Err(e) => {
            r.fail(format!("all words of length 3: {e}"));
            String::new()
        }
    };

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x4);
    let upto3 = sigma.words_up_to(3);
    let spec = EnumSpec::new(sigma, Dialect::Re, cfg.synth_cap, None);
    let mut checked = 0;
    for _ in 0..cfg.random_languages {
        let n = rng.random_range(1..=upto3.len());
        let l: WordSet = upto3.choose_multiple(&mut rng, n).cloned().collect();
        let text = l.iter().map(|w| w.display()).collect::<Vec<_>>().join(",");
        match min_separating(&l, &complement(&l), &spec) {
            Ok(Some(sep)) if meets_log_bound(sep.size, l.len()) => {
                checked += 1;
                r.note(format!("|L| = {:2}: minimal size {:2} ({}) for {{{text}}}", l.len(), sep.size, sep.expr));
            }
            Ok(Some(sep)) => {
                r.fail(format!("|L| = {}: separator {} of size {} is too small", l.len(), sep.expr, sep.size))
            }
            Ok(None) if meets_log_bound(cfg.synth_cap + 1, l.len()) => {
                checked += 1;
                r.note(format!("|L| = {:2}: minimal size > {} for {{{text}}}", l.len(), cfg.synth_cap));
            }
            Ok(None) => r.fail(format!("|L| = {}: cap {} too small to decide", l.len(), cfg.synth_cap)),
            Err(e) => r.fail(format!("{{{text}}}: {e}")),
        }
    }
    r.summary = format!("{cube_line}; {checked}/{} random languages meet the bound", cfg.random_languages);
    r
}

// ---------------------------------------------------------------- encodings

pub fn criterion_5(cfg: &VerifyConfig) -> CriterionReport {
    let mut r = CriterionReport::new(5, "encoding languages and their FO definitions");
    let mut counts = Vec::new();
    for n in 1..=3u32 {
        let count = enc_language(n as usize).len();
        let bound = twr(n).expect("small tower");
        counts.push(count);
        let line = format!("|enc_language({n})| = {count}, twr({n}) = {bound}");
        if count as u64 >= bound {
            r.note(line);
        } else {
            r.fail(line);
        }
    }
    if counts[..2] != [2, 5] {
        r.fail(format!("expected counts 2 and 5 for n = 1, 2, got {:?}", &counts[..2]));
    }
    let words = paren_alphabet().words_up_to(cfg.fo_max_len);
    for n in 1..=2 {
        let phi = CompiledFo::new(&build_phi(n));
        let lang = enc_language(n);
        let defined: BTreeSet<&Word> = words.iter().filter(|w| phi.eval_word(w, '(')).collect();
        let expected: BTreeSet<&Word> = lang.iter().filter(|w| w.len() <= cfg.fo_max_len).collect();
        if defined == expected {
            r.note(format!(
                "phi_{n} defines enc_language({n}) on all {} words up to length {}",
                words.len(),
                cfg.fo_max_len
            ));
        } else {
            let extra: Vec<_> = defined.difference(&expected).take(5).map(|w| w.display()).collect();
            let missing: Vec<_> = expected.difference(&defined).take(5).map(|w| w.display()).collect();
            r.fail(format!("phi_{n}: accepted outside {extra:?}, rejected inside {missing:?}"));
        }
    }
    let sizes: Vec<usize> = (0..=3).map(|n| fo_size(&build_phi(n))).collect();
    let ratios: Vec<String> = sizes.windows(2).map(|w| format!("{:.2}", w[1] as f64 / w[0] as f64)).collect();
    r.note(format!("fo_size(phi_n), n = 0..3: {sizes:?}; growth ratios {}", ratios.join(", ")));
    r.summary = format!("counts {counts:?}, FO agreement up to length {}, sizes {sizes:?}", cfg.fo_max_len);
    r
}

// ---------------------------------------------------------------- chains

pub fn criterion_6(cfg: &VerifyConfig) -> CriterionReport {
    let mut r = CriterionReport::new(6, "one star cannot define the even-chain language");
    let a = make_lnk(2, 2).expect("n = 2");
    let in_b0 = |w: &Word| !even_chain_member(w, 2);
    let spec = EnumSpec::new(Alphabet::parse("ab").unwrap(), Dialect::Resf, 9, Some(1));
    let cegis = CegisConfig { horizon: cfg.cegis_horizon, ..CegisConfig::default() };
    let cert_line = match certify_lower_bound(&a, &in_b0, &spec, &cegis) {
        Ok(CegisOutcome::Certified(cert)) => {
            match cert.replay() {
                Ok(true) => {}
                other => r.fail(format!("certificate does not replay: {other:?}")),
            }
            let sample = cert.b_sample.iter().map(|w| w.display()).collect::<Vec<_>>().join(",");
            r.note(format!("B sample {{{sample}}}"));
            for round in &cert.rounds {
                r.note(format!("round: {} accepts {}", round.candidate, round.counterexample.display()));
            }
            CegisOutcome::Certified(cert).to_string()
        }
        Ok(out) => {
            r.fail(out.to_string());
            out.to_string()
        }
        Err(e) => {
            r.fail(e.to_string());
            e.to_string()
        }
    };
    let two_star = crate::expr::parse_expr("(a|bb)*|(aa|b)*", &Alphabet::parse("ab").unwrap()).expect("literal");
    let m = CompiledExpr::new(&two_star);
    let words = Alphabet::parse("ab").unwrap().words_up_to(cfg.cegis_horizon);
    let bad: Vec<_> = words.iter().filter(|w| m.matches(w) != even_chain_member(w, 2)).take(5).collect();
    if bad.is_empty() {
        r.note(format!(
            "{two_star} (size {}, {} stars) agrees with the even-chain test on {} words",
            two_star.size(),
            two_star.star_count(),
            words.len()
        ));
    } else {
        r.fail(format!("{two_star} disagrees on {bad:?}"));
    }
    r.summary = format!("{cert_line}; 2-star expression checked up to length {}", cfg.cegis_horizon);
    r
}

// ---------------------------------------------------------------- all

/// Criteria 1 to 6.
pub fn run_checks(cfg: &VerifyConfig) -> Vec<CriterionReport> {
    let grid = run_grid(cfg);
    vec![
        criterion_1(&grid),
        criterion_2(&grid),
        criterion_3(cfg, &grid),
        criterion_4(cfg),
        criterion_5(cfg),
        criterion_6(cfg),
    ]
}

/// Compares two renderings of the same checks.
pub fn criterion_7(first: &[CriterionReport], second: &[CriterionReport]) -> CriterionReport {
    let mut r = CriterionReport::new(7, "repeated runs are byte-identical");
    let (x, y) = (render(first), render(second));
    if x == y {
        r.summary = format!("two runs, {} bytes each, identical", x.len());
    } else {
        let line =
            x.lines().zip(y.lines()).position(|(a, b)| a != b).unwrap_or(x.lines().count().min(y.lines().count()));
        r.summary = format!("runs differ from line {}", line + 1);
        r.fail(r.summary.clone());
    }
    r
}

/// Criteria 1 to 6, run twice, followed by criterion 7.
pub fn run_all(cfg: &VerifyConfig) -> Vec<CriterionReport> {
    let mut first = run_checks(cfg);
    let second = run_checks(cfg);
    let seventh = criterion_7(&first, &second);
    first.push(seventh);
    first
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_has_519_pairs() {
        assert_eq!(grid_sets().len(), 29);
        assert_eq!(grid_pairs().len(), 519);
    }

    #[test]
    fn log_bound_is_exact() {
        assert!(meets_log_bound(3, 8));
        assert!(!meets_log_bound(2, 5));
        assert!(meets_log_bound(0, 1));
    }

    #[test]
    fn generated_positions_are_deterministic() {
        assert_eq!(planted_positions(1, 20), planted_positions(1, 20));
        assert!(planted_positions(3, 50).iter().all(crate::game::d_winning_by_shared_word));
        assert!(chain_positions(3, 50).iter().all(crate::game::d_winning_by_long_chains));
    }
}
