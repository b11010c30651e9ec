//! Command-line front end: solve positions, synthesize separators, generate
//! the sample languages, run the self-checks and serve HTTP play.
//!
//! Exit codes: `solve` returns 0 when S wins and 1 when D wins; `verify`
//! returns 0 when every check passes and 1 otherwise. A resource limit is 2,
//! any other error 3.

use std::collections::BTreeSet;
use std::net::SocketAddr;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use sizegame::expr::{Alphabet, Dialect, Word};
use sizegame::game::{Player, Position};
use sizegame::langs::{
    build_phi, chain_alphabet, enc_language, fo_size, make_lnk, paren_alphabet, read_word_list, write_word_list,
};
use sizegame::oracle::{min_separating_with_limit, EnumSpec, OracleError};
use sizegame::service::{serve, SessionStore};
use sizegame::solver::{SolveError, Solver, SolverConfig};
use sizegame::verify::{self, VerifyConfig};

#[derive(Parser)]
#[command(name = "resgame", version, about = "Formula size games on regular expressions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide who wins a position; print a witness when S does.
    Solve(SolveArgs),
    /// Find a least separating expression within bounds.
    Synth(SynthArgs),
    /// Print one of the sample languages or formulas.
    #[command(subcommand)]
    Gen(Gen),
    /// Run the self-checks and print one verdict per check.
    Verify(VerifyArgs),
    /// Serve the session API.
    Serve(ServeArgs),
}

#[derive(Args)]
struct SetArgs {
    /// Words of A, comma separated; EPS is the empty word.
    #[arg(short = 'A', long = "a", default_value = "")]
    a: String,
    /// Words of B, comma separated; EPS is the empty word.
    #[arg(short = 'B', long = "b", default_value = "")]
    b: String,
    /// Word-list file added to A.
    #[arg(long)]
    a_file: Option<PathBuf>,
    /// Word-list file added to B.
    #[arg(long)]
    b_file: Option<PathBuf>,
    /// Add every word up to this length that is not in A to B.
    #[arg(long, value_name = "N")]
    b_complement: Option<usize>,
    #[arg(long, default_value = "ab")]
    alphabet: String,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long, value_parser = parse_dialect, default_value = "re")]
    dialect: Dialect,
    #[arg(short = 'k', long)]
    k: Option<u32>,
    /// Star budget; required outside the RE game.
    #[arg(short = 's', long)]
    s: Option<u32>,
    #[command(flatten)]
    sets: SetArgs,
    /// A position as JSON: {dialect, k, s?, alphabet, A, B}.
    #[arg(long, conflicts_with = "k")]
    position: Option<PathBuf>,
    #[arg(long, default_value_t = SolverConfig::default().max_positions)]
    max_positions: usize,
    /// Write a JSON report here.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct SynthArgs {
    #[arg(long, value_parser = parse_dialect, default_value = "re")]
    dialect: Dialect,
    #[arg(long, default_value_t = 9)]
    max_size: usize,
    #[arg(long)]
    max_stars: Option<usize>,
    #[command(flatten)]
    sets: SetArgs,
    #[arg(long, default_value_t = sizegame::oracle::DEFAULT_MAX_REPRESENTATIVES)]
    max_representatives: usize,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Gen {
    /// Encodings of the sets of rank below n.
    Enc {
        #[arg(short = 'n')]
        n: usize,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// One word per chain letter, that letter's chain 2k long, the others 2k+1.
    Lnk {
        #[arg(short = 'n')]
        n: usize,
        #[arg(short = 'k')]
        k: usize,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// The first-order sentence for the encodings of level n, with its macros.
    Phi {
        #[arg(short = 'n')]
        n: usize,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    /// The grid, witness and pruning checks.
    Theorems,
    /// Size bound, encodings and chains.
    Langs,
    /// Everything, twice, plus the comparison of the two runs.
    All,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    suite: Suite,
    #[arg(long)]
    seed: Option<u64>,
    /// Print the detail lines under each verdict.
    #[arg(short, long)]
    verbose: bool,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct ServeArgs {
    #[arg(long, default_value = "127.0.0.1:8080")]
    addr: SocketAddr,
    /// Append-only session log; existing sessions in it are restored.
    #[arg(long)]
    log: Option<PathBuf>,
    #[arg(long, default_value_t = SolverConfig::default().max_positions)]
    max_positions: usize,
}

enum Failure {
    Limit(String),
    Other(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Other(e.to_string())
    }
}

fn parse_dialect(s: &str) -> Result<Dialect, String> {
    s.parse::<Dialect>().map_err(|e| e.to_string())
}

fn parse_words(text: &str, alphabet: &Alphabet) -> Result<BTreeSet<Word>, Failure> {
    let mut out = BTreeSet::new();
    for token in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let w = if token == "EPS" { Word::epsilon() } else { Word::from(token) };
        alphabet.check_word(&w).map_err(|e| Failure::Other(format!("word {token:?}: {e}")))?;
        out.insert(w);
    }
    Ok(out)
}

fn read_file_words(path: &PathBuf, alphabet: &Alphabet) -> Result<BTreeSet<Word>, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Other(format!("{}: {e}", path.display())))?;
    let (file_alphabet, words) = read_word_list(&text)?;
    if let Some(c) = file_alphabet.symbols().iter().find(|c| !alphabet.contains(**c)) {
        return Err(Failure::Other(format!("{}: symbol {c} is not in the alphabet {alphabet}", path.display())));
    }
    Ok(words)
}

impl SetArgs {
    fn resolve(&self) -> Result<(Alphabet, BTreeSet<Word>, BTreeSet<Word>), Failure> {
        let alphabet = Alphabet::parse(&self.alphabet)?;
        let mut a = parse_words(&self.a, &alphabet)?;
        let mut b = parse_words(&self.b, &alphabet)?;
        if let Some(p) = &self.a_file {
            a.extend(read_file_words(p, &alphabet)?);
        }
        if let Some(p) = &self.b_file {
            b.extend(read_file_words(p, &alphabet)?);
        }
        if let Some(n) = self.b_complement {
            b.extend(alphabet.words_up_to(n).into_iter().filter(|w| !a.contains(w)));
        }
        Ok((alphabet, a, b))
    }
}

fn write_json(path: &PathBuf, value: &serde_json::Value) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value)? + "\n";
    std::fs::write(path, text).map_err(|e| Failure::Other(format!("{}: {e}", path.display())))
}

fn emit(text: &str, output: &Option<PathBuf>) -> Result<(), Failure> {
    match output {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Other(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn solve(args: SolveArgs) -> Result<ExitCode, Failure> {
    let p: Position = match &args.position {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Other(format!("{}: {e}", path.display())))?;
            serde_json::from_str(&text)?
        }
        None => {
            let (alphabet, a, b) = args.sets.resolve()?;
            let k = args.k.ok_or_else(|| Failure::Other("-k is required without --position".into()))?;
            Position::new(args.dialect, k, args.s, a, b, alphabet)?
        }
    };
    let cfg = SolverConfig { max_positions: args.max_positions, ..SolverConfig::default() };
    let r = Solver::new(cfg).solve(&p).map_err(|e| match e {
        SolveError::LimitExceeded(m) => Failure::Limit(m),
        other => Failure::Other(other.to_string()),
    })?;
    match &r.witness {
        Some(w) => println!("S wins; witness: {w}"),
        None => println!("D wins"),
    }
    println!("positions {}, memo hits {}, max depth {}", r.stats.positions, r.stats.memo_hits, r.stats.max_depth);
    if let Some(path) = &args.json {
        let report = json!({
            "config": { "position": p, "solver": cfg },
            "winner": r.winner,
            "witness": r.witness.as_ref().map(|w| w.to_string()),
            "stats": r.stats,
        });
        write_json(path, &report)?;
    }
    Ok(ExitCode::from(if r.winner == Player::S { 0 } else { 1 }))
}

fn synth(args: SynthArgs) -> Result<ExitCode, Failure> {
    let (alphabet, a, b) = args.sets.resolve()?;
    if let Some(w) = a.intersection(&b).next() {
        return Err(Failure::Other(format!("{} is in both A and B; no expression separates them", w.display())));
    }
    let spec = EnumSpec::new(alphabet, args.dialect, args.max_size, args.max_stars);
    let found = min_separating_with_limit(&a, &b, &spec, args.max_representatives).map_err(|e| match e {
        OracleError::LimitExceeded(m) => Failure::Limit(m),
        other => Failure::Other(other.to_string()),
    })?;
    match &found {
        Some(sep) => println!("minimal: {} (size {}, stars {})", sep.expr, sep.size, sep.stars),
        None => println!("none within bounds (size ≤ {})", args.max_size),
    }
    if let Some(path) = &args.json {
        let report = json!({
            "config": {
                "dialect": args.dialect, "alphabet": spec.alphabet, "max_size": args.max_size,
                "max_stars": args.max_stars, "A": a, "B": b,
            },
            "separator": found,
        });
        write_json(path, &report)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn generate(g: Gen) -> Result<ExitCode, Failure> {
    match g {
        Gen::Enc { n, output } => emit(&write_word_list(&paren_alphabet(), &enc_language(n)), &output)?,
        Gen::Lnk { n, k, output } => emit(&write_word_list(&chain_alphabet(n)?, &make_lnk(n, k)?), &output)?,
        Gen::Phi { n, output } => {
            let phi = build_phi(n);
            let text = format!("# size: {}\n{}", fo_size(&phi), phi.render_with_definitions(&format!("phi_{n}")));
            emit(&text, &output)?
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_verify(args: VerifyArgs) -> Result<ExitCode, Failure> {
    let mut cfg = VerifyConfig::default();
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    let reports = match args.suite {
        Suite::All => verify::run_all(&cfg),
        Suite::Theorems => {
            let grid = verify::run_grid(&cfg);
            vec![verify::criterion_1(&grid), verify::criterion_2(&grid), verify::criterion_3(&cfg, &grid)]
        }
        Suite::Langs => vec![verify::criterion_4(&cfg), verify::criterion_5(&cfg), verify::criterion_6(&cfg)],
    };
    for r in &reports {
        if args.verbose {
            print!("{r}");
        } else {
            println!("{}", r.headline());
        }
    }
    if let Some(path) = &args.json {
        write_json(path, &json!({ "config": cfg, "reports": reports }))?;
    }
    Ok(ExitCode::from(if reports.iter().all(|r| r.passed) { 0 } else { 1 }))
}

fn run_serve(args: ServeArgs) -> Result<ExitCode, Failure> {
    let cfg = SolverConfig { max_positions: args.max_positions, ..SolverConfig::default() };
    let store = match &args.log {
        Some(path) => SessionStore::from_log(path, cfg)?,
        None => SessionStore::new(cfg),
    };
    let rt = tokio::runtime::Runtime::new()?;
    eprintln!("listening on http://{}", args.addr);
    rt.block_on(serve(args.addr, Arc::new(store)))?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(a) => solve(a),
        Command::Synth(a) => synth(a),
        Command::Gen(g) => generate(g),
        Command::Verify(a) => run_verify(a),
        Command::Serve(a) => run_serve(a),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Limit(m)) => {
            eprintln!("limit exceeded: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Other(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
