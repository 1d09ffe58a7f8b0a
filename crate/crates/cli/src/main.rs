use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};
use streett_fool::campaign::{report_to_json, DEFAULT_RANKING_BUDGET};
use streett_fool::verify::DEFAULT_PATH_CAP;
use streett_fool::{
    build_q_word, count_q_rankings, enumerate_q_rankings, export_dot, lower_bound_report,
    parse_word, rabin_accepts, run_campaign, streett_accepts, write_word, CampaignConfig, Error,
    FullStreettAutomaton, LassoWord, Outcome, PairPolicy, QRanking, Verifier,
};

const PATH_CAP_ENV: &str = "STREETT_FOOL_PATH_CAP";

/// Build and check the Q-word fooling set for full Streett automata.
#[derive(Parser)]
#[command(name = "streett-fool", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write Q-words and ranking sidecars.
    Gen(GenArgs),
    /// Check properties 1-4 of a word against a ranking.
    Verify {
        word: PathBuf,
        ranking: PathBuf,
        /// Print the property reports as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Decide acceptance of the lasso `prefix . period^omega`.
    Lasso(LassoArgs),
    /// Number of Q-rankings, n!(k!)^n.
    Count(Shape),
    /// Lower-bound parameters for an (n, k) instance.
    Bound(Shape),
    /// Run the fooling-set campaign and write a JSON report.
    Suite(SuiteArgs),
    /// Render a word's layered graph as Graphviz DOT.
    ExportDot {
        word: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Shape {
    #[arg(short, value_parser = clap::value_parser!(u32).range(1..))]
    n: u32,
    #[arg(short, value_parser = clap::value_parser!(u32).range(1..))]
    k: u32,
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    shape: Shape,
    /// Ranking such as `r=[2,1,3];h=[[1,2],[1,2],[2,1]]`.
    #[arg(long, conflicts_with = "all", required_unless_present = "all")]
    ranking: Option<String>,
    /// Every Q-ranking of the family.
    #[arg(long)]
    all: bool,
    #[arg(long, default_value_t = DEFAULT_RANKING_BUDGET)]
    budget: u64,
    #[arg(short, long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Condition {
    Streett,
    Rabin,
}

#[derive(Args)]
struct LassoArgs {
    /// Word file repeated forever.
    period: PathBuf,
    /// Word file read once before the period.
    #[arg(long)]
    prefix: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "streett")]
    condition: Condition,
    /// Pad the index set with empty pairs up to this size.
    #[arg(long)]
    pad_index: Option<usize>,
}

#[derive(Args)]
struct SuiteArgs {
    #[command(flatten)]
    shape: Shape,
    /// Check a seeded sample of ordered pairs instead of all of them.
    #[arg(long)]
    sample: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Repetition patterns `a,b` separated by `;`.
    #[arg(long, default_value = "1,1;1,2;2,1;2,2", value_parser = parse_exponents)]
    exponents: Exponents,
    #[arg(long, default_value_t = DEFAULT_RANKING_BUDGET)]
    budget: u64,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Clone)]
struct Exponents(Vec<(usize, usize)>);

fn parse_exponents(s: &str) -> Result<Exponents, String> {
    s.split(';')
        .map(|pair| {
            let (a, b) = pair
                .split_once(',')
                .ok_or_else(|| format!("expected `a,b`, got `{pair}`"))?;
            let num = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("`{x}`: {e}"));
            Ok((num(a)?, num(b)?))
        })
        .collect::<Result<_, _>>()
        .map(Exponents)
}

enum Failure {
    /// A property or acceptance check came out negative.
    Check,
    /// Bad input, I/O or configuration.
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn path_cap() -> Result<usize, Failure> {
    match std::env::var(PATH_CAP_ENV) {
        Ok(v) => {
            v.parse().ok().filter(|&c| c > 0).ok_or_else(|| {
                Failure::Usage(format!("{PATH_CAP_ENV}={v} is not a positive integer"))
            })
        }
        Err(_) => Ok(DEFAULT_PATH_CAP),
    }
}

fn load_word(path: &Path) -> Result<streett_fool::FiniteWord, Failure> {
    parse_word(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn file_stem(f: &QRanking) -> String {
    let digest = Sha256::digest(f.to_string().as_bytes());
    format!("qword_{}", &hex::encode(digest)[..16])
}

fn gen(args: GenArgs) -> CmdResult {
    let (n, k) = (args.shape.n as usize, args.shape.k as usize);
    let aut = FullStreettAutomaton::build(n, k)?;
    let rankings: Vec<QRanking> = match &args.ranking {
        Some(spec) => {
            let f: QRanking = spec.parse()?;
            if f.space() != aut.space() {
                return Err(Failure::Usage(format!(
                    "ranking is over {}, expected {}",
                    f.space(),
                    aut.space()
                )));
            }
            vec![f]
        }
        None => {
            let count = count_q_rankings(n, k);
            if count > args.budget.into() {
                return Err(Error::BudgetExceeded {
                    count: count.to_string(),
                    budget: args.budget,
                }
                .into());
            }
            enumerate_q_rankings(n, k)?.collect()
        }
    };
    fs::create_dir_all(&args.out_dir)
        .map_err(|e| Failure::Usage(format!("{}: {e}", args.out_dir.display())))?;
    for f in &rankings {
        let qw = build_q_word(&aut, f)?;
        let stem = args.out_dir.join(file_stem(f));
        let word_path = stem.with_extension("fsw");
        write(&word_path, &write_word(&qw.word))?;
        write(&stem.with_extension("ranking"), &format!("{f}\n"))?;
        println!("{}\t{f}\t{} letters", word_path.display(), qw.word.len());
    }
    Ok(())
}

fn verify(word: &Path, ranking: &Path, json: bool) -> CmdResult {
    let w = load_word(word)?;
    let f: QRanking = read(ranking)?
        .trim()
        .parse()
        .map_err(|e: Error| Failure::Usage(format!("{}: {e}", ranking.display())))?;
    let reports = Verifier::new(path_cap()?).check_all(&w, &f)?;
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&reports).expect("serializable")
        );
    } else {
        for r in &reports {
            let status = if r.holds { "holds" } else { "FAILS" };
            println!("{:?}: {status}", r.property);
            if let Some(cx) = &r.counterexample {
                println!(
                    "  counterexample: {}",
                    serde_json::to_string(cx).expect("serializable")
                );
            }
        }
    }
    if reports.iter().all(|r| r.holds) {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn lasso(args: LassoArgs) -> CmdResult {
    let period = load_word(&args.period)?;
    let prefix = match &args.prefix {
        Some(p) => load_word(p)?,
        None => streett_fool::FiniteWord::empty(period.space()),
    };
    let lasso = LassoWord::new(prefix, period)?;
    let space = lasso.space();
    let mut aut = FullStreettAutomaton::build(space.n, space.k)?;
    if let Some(size) = args.pad_index {
        aut = aut.pad_index(size)?;
    }
    let verdict = match args.condition {
        Condition::Streett => streett_accepts(&aut, &lasso)?,
        Condition::Rabin => rabin_accepts(&aut, &lasso)?,
    };
    println!(
        "{}",
        if verdict.accepted {
            "accepted"
        } else {
            "rejected"
        }
    );
    if let Some(w) = &verdict.witness {
        println!("stem: {}", w.stem);
        println!("loop: {}", w.cycle);
        let inf: Vec<String> = w.inf_states.iter().map(|s| s.to_string()).collect();
        println!("inf: {{{}}}", inf.join(", "));
    }
    if verdict.accepted {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn suite(args: SuiteArgs) -> CmdResult {
    let mut cfg = CampaignConfig::new(args.shape.n as usize, args.shape.k as usize);
    cfg.pair_policy = match args.sample {
        Some(count) => PairPolicy::Sample {
            count,
            seed: args.seed,
        },
        None => PairPolicy::AllPairs,
    };
    cfg.repetition_exponents = args.exponents.0;
    cfg.ranking_budget = args.budget;
    cfg.path_cap = path_cap()?;
    let rep = run_campaign(&cfg)?;
    if let Some(out) = &args.out {
        write(out, &report_to_json(&rep))?;
    }
    println!(
        "rankings: {}/{} pass",
        rep.rankings
            .iter()
            .filter(|r| r.outcome == Outcome::Pass)
            .count(),
        rep.rankings.len()
    );
    println!(
        "pairs: {}/{} pass",
        rep.pairs
            .iter()
            .filter(|p| p.outcome == Outcome::Pass)
            .count(),
        rep.pairs.len()
    );
    for r in rep.failing_rankings() {
        println!("  failing ranking #{}: {}", r.index, r.ranking);
    }
    for p in rep.failing_pairs() {
        println!(
            "  failing pair ({}, {}) at ({}, {})",
            p.f, p.f_prime, p.a, p.b
        );
    }
    println!("lower bound: {} states", rep.lower_bound.lower_bound_states);
    println!("overall: {:?}", rep.overall);
    match rep.overall {
        Outcome::Pass => Ok(()),
        Outcome::Fail => Err(Failure::Check),
    }
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Gen(args) => gen(args),
        Command::Verify {
            word,
            ranking,
            json,
        } => verify(&word, &ranking, json),
        Command::Lasso(args) => lasso(args),
        Command::Count(s) => {
            println!("{}", count_q_rankings(s.n as usize, s.k as usize));
            Ok(())
        }
        Command::Bound(s) => {
            let rep = lower_bound_report(s.n as usize, s.k as usize)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&rep).expect("serializable")
            );
            Ok(())
        }
        Command::Suite(args) => suite(args),
        Command::ExportDot { word, out } => {
            let dot = export_dot(&load_word(&word)?);
            match out {
                Some(path) => write(&path, &dot),
                None => {
                    print!("{dot}");
                    Ok(())
                }
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
