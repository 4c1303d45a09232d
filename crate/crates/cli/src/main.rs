use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use contfrob_core::constructions;
use contfrob_core::discrete::{self, IntSet};
use contfrob_core::harness::{self, DiscreteBounds, DiscreteCheck, Suite};
use contfrob_core::interval::parse_set_json;
use contfrob_core::rational::{self, Rational};
use contfrob_core::search::{self, Family, SearchConfig};
use contfrob_core::semigroup::{self, DEFAULT_MAX_GRID_CELLS};
use contfrob_core::{EngineLimits, Error, IntervalUnion, SetFile};

/// Gap values of additive semigroups generated by unions of open intervals.
#[derive(Parser)]
#[command(name = "contfrob", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Clone, Copy)]
struct EngineArgs {
    /// Refuse inputs whose truncated grid has more cells than this.
    #[arg(long, default_value_t = DEFAULT_MAX_GRID_CELLS)]
    max_grid_cells: u64,
    /// Fixpoint round limit (default: 10 times the truncation bound).
    #[arg(long)]
    iteration_cap: Option<u64>,
}

impl EngineArgs {
    fn limits(self) -> EngineLimits {
        EngineLimits {
            max_grid_cells: self.max_grid_cells,
            iteration_cap: self.iteration_cap,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Gap value G(A) of the set in a set file.
    Gap {
        /// Set file: {"intervals": [["lo","hi"], ...]}.
        #[arg(long)]
        set: PathBuf,
        #[command(flatten)]
        engine: EngineArgs,
    },
    /// Minkowski sum of two sets, or the h-fold sum of one set.
    Sumset {
        #[arg(long)]
        set: PathBuf,
        /// Second summand.
        #[arg(long, conflicts_with = "h", required_unless_present = "h")]
        other: Option<PathBuf>,
        /// Number of summands.
        #[arg(long)]
        h: Option<u32>,
    },
    /// Build one of the extremal sets for a given measure.
    Construct {
        /// ex1, ex2 or ex3.
        #[arg(long)]
        family: String,
        /// Measure as "p/q".
        #[arg(long)]
        alpha: String,
        /// Also write the bare set file here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded falsification suites.
    Verify {
        /// main-bound, strengthened, clint, macbeath, mesSj, boxing, discrete,
        /// conjecture or all (the seven theorem suites). Repeatable.
        #[arg(long = "suite", default_value = "all")]
        suites: Vec<String>,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads (default: available parallelism).
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Integer and modular counterparts.
    Discrete {
        #[command(subcommand)]
        cmd: DiscreteCommand,
    },
    /// Search for sets with a large gap at a fixed measure. Writes JSONL.
    Search {
        /// scaled-chain, punctured or random-grid.
        #[arg(long)]
        family: String,
        #[arg(long)]
        alpha: String,
        /// Number of candidates.
        #[arg(long, default_value_t = 100)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 24)]
        grid_denominator: i64,
        /// Records printed, best first.
        #[arg(long, default_value_t = 10)]
        top: usize,
        /// Pin the chain length (scaled-chain only; needs --x).
        #[arg(long, requires = "x")]
        k: Option<u64>,
        /// Pin the chain ratio (scaled-chain only; needs --k).
        #[arg(long, requires = "k")]
        x: Option<String>,
        #[arg(long)]
        workers: Option<usize>,
        #[command(flatten)]
        engine: EngineArgs,
    },
}

#[derive(Subcommand)]
enum DiscreteCommand {
    /// Largest integer outside the semigroup of a coprime set.
    Frobenius {
        /// Comma-separated positive integers.
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<i64>,
    },
    /// h-fold sumset of a finite integer set.
    Hfold {
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<i64>,
        #[arg(long)]
        h: u32,
    },
    /// Run one theorem check over its domain.
    Check {
        /// 3n3, lev, lint, chA, cd, cdcor, frobenius or freiman.
        #[arg(long)]
        theorem: String,
        /// Largest element of the enumerated sets A ⊆ [0, max-elem].
        #[arg(long, default_value_t = 12)]
        max_elem: u32,
        #[arg(long, default_value_t = 7)]
        max_size: usize,
        /// Largest h for lev and chA.
        #[arg(long, default_value_t = 6)]
        max_h: u32,
        /// Primes for the cd check.
        #[arg(long, value_delimiter = ',', default_value = "3,5,7")]
        primes: Vec<u64>,
        /// Trials for freiman.
        #[arg(long, default_value_t = 200)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Failure {
    Input(String),
    Verification(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type CliResult = std::result::Result<(), Failure>;

fn read_set(path: &Path) -> std::result::Result<IntervalUnion, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_set_json(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn set_file_json(u: &IntervalUnion) -> Value {
    serde_json::to_value(SetFile::from_union(u)).expect("serializable")
}

fn print(v: &impl serde::Serialize) {
    println!("{}", serde_json::to_string(v).expect("serializable"));
}

fn parse_alpha(s: &str) -> std::result::Result<Rational, Failure> {
    Ok(rational::parse(s)?)
}

fn workers(w: Option<usize>) -> usize {
    w.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

fn parse_suites(names: &[String]) -> std::result::Result<Vec<Suite>, Failure> {
    let mut out = Vec::new();
    for n in names {
        if n == "all" {
            out.extend(Suite::THEOREMS);
        } else {
            out.push(n.parse::<Suite>()?);
        }
    }
    out.dedup();
    Ok(out)
}

fn run(cli: Cli) -> CliResult {
    match cli.cmd {
        Command::Gap { set, engine } => {
            let a = read_set(&set)?;
            print(&semigroup::gap_with(&a, &engine.limits())?);
        }
        Command::Sumset { set, other, h } => {
            let a = read_set(&set)?;
            let s = match (other, h) {
                (Some(path), _) => a.minkowski_sum(&read_set(&path)?)?,
                (None, Some(h)) => semigroup::h_fold(&a, h)?,
                (None, None) => unreachable!("clap requires one of --other, --h"),
            };
            print(&set_file_json(&s));
        }
        Command::Construct { family, alpha, out } => {
            let report = constructions::construct(&family, &parse_alpha(&alpha)?)?;
            let file = set_file_json(&report.set);
            if let Some(path) = out {
                let text = serde_json::to_string(&file).expect("serializable") + "\n";
                fs::write(&path, text)
                    .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?;
            }
            print(&json!({"intervals": file["intervals"], "report": report}));
        }
        Command::Verify {
            suites,
            trials,
            seed,
            workers: w,
        } => {
            let suites = parse_suites(&suites)?;
            let report = harness::verify(&suites, trials, seed, workers(w))?;
            let v = serde_json::to_value(&report).expect("serializable");
            if !report.all_passed {
                return Err(Failure::Verification(v));
            }
            print(&v);
        }
        Command::Discrete { cmd } => run_discrete(cmd)?,
        Command::Search {
            family,
            alpha,
            budget,
            seed,
            grid_denominator,
            top,
            k,
            x,
            workers: w,
            engine,
        } => {
            let family: Family = family.parse()?;
            let mut cfg = SearchConfig::new(parse_alpha(&alpha)?, family);
            cfg.budget = budget;
            cfg.seed = seed;
            cfg.grid_denominator = grid_denominator;
            cfg.top = top;
            cfg.limits = engine.limits();
            if let (Some(k), Some(x)) = (k, x) {
                cfg.chain = Some((k, parse_alpha(&x)?));
            }
            let outcome = search::run_search_with_workers(&cfg, workers(w))?;
            for r in &outcome.records {
                print(r);
            }
            eprintln!(
                "evaluated {} infeasible {} rejected {}",
                outcome.evaluated, outcome.infeasible, outcome.rejected
            );
        }
    }
    Ok(())
}

fn run_discrete(cmd: DiscreteCommand) -> CliResult {
    match cmd {
        DiscreteCommand::Frobenius { set } => {
            let a = IntSet::new(set);
            let f = discrete::frobenius_number(&a)?;
            let g = discrete::frobenius_by_residues(&a)?;
            if f != g {
                return Err(Failure::Verification(json!({
                    "set": a.elements(), "sieve": f, "residues": g,
                })));
            }
            print(&json!({"set": a.elements(), "frobenius": f}));
        }
        DiscreteCommand::Hfold { set, h } => {
            let a = IntSet::new(set);
            let s = discrete::int_hfold(&a, h)?;
            print(&json!({"set": a.elements(), "h": h, "sumset": s.elements()}));
        }
        DiscreteCommand::Check {
            theorem,
            max_elem,
            max_size,
            max_h,
            primes,
            trials,
            seed,
        } => {
            let check: DiscreteCheck = theorem.parse()?;
            let b = DiscreteBounds {
                max_elem,
                max_size,
                max_h,
                primes,
                ..DiscreteBounds::default()
            };
            let report = harness::run_discrete(check, &b, trials, seed);
            let v = serde_json::to_value(&report).expect("serializable");
            if !report.ok() {
                return Err(Failure::Verification(v));
            }
            print(&v);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(v)) => {
            print(&v);
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
