//! `krull`: Krull dimension of finitely presented modules from the command line.
//!
//! Exit codes: 0 success, 1 input error, 2 internal mismatch or failed
//! check, 3 resource limit.

mod commands;
mod problem;
mod report;

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use krull_core::krull::{HuntMode, HuntParams};
use krull_core::{CoeffRing, Config, Limits, MonicStrategy, MonomialOrder};

use commands::{Failure, EXIT_INPUT};
use problem::{parse_problem, Problem};

#[derive(Parser)]
#[command(name = "krull", version, about = "Krull dimension of finitely presented modules over polynomial rings")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Opts {
    /// Monomial order for the leading-term oracle.
    #[arg(long, global = true, value_enum, default_value_t = Order::Grevlex)]
    order: Order,
    /// Largest polynomial (in terms) a basis computation may hold [default: 1000000].
    #[arg(long, global = true)]
    limit_terms: Option<usize>,
    /// Most critical pairs a basis computation may process [default: 100000].
    #[arg(long, global = true)]
    limit_pairs: Option<usize>,
    /// Print the annihilator bases on stderr.
    #[arg(long, global = true)]
    debug_gb: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Lex,
    Grevlex,
}

#[derive(Clone, Copy, ValueEnum)]
enum Strategy {
    Power,
    Shear,
    Auto,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    General,
    PurePower,
}

#[derive(Subcommand)]
enum Cmd {
    /// Dimension by descent, with the oracle value, chain, witnesses and profiles.
    Dim { file: PathBuf },
    /// Make one polynomial monic in its last variable.
    Monicize {
        /// Problem file supplying the field and variables.
        file: Option<PathBuf>,
        #[arg(long = "poly", allow_hyphen_values = true)]
        poly: String,
        /// Used without a file [default: Q].
        #[arg(long)]
        field: Option<String>,
        /// Used without a file [default: highest index in the polynomial].
        #[arg(long)]
        vars: Option<usize>,
        #[arg(long, value_enum, default_value_t = Strategy::Power)]
        strategy: Strategy,
    },
    /// Torsion profile in the given coordinates against the dimension.
    Profile { file: PathBuf },
    /// The descent chain only.
    Normalize { file: PathBuf },
    /// Run every check on a problem file or on the built-in catalog.
    Verify {
        #[arg(required_unless_present = "catalog", conflicts_with = "catalog")]
        file: Option<PathBuf>,
        #[arg(long)]
        catalog: bool,
        /// Random sample elements per catalog module, besides the generators.
        #[arg(long, default_value_t = 3)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Search seeded random cyclic modules for profile mismatches.
    Hunt {
        #[arg(long, default_value = "F5")]
        field: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        deg: u32,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Mode::General)]
        mode: Mode,
        /// Worker threads [default: available parallelism].
        #[arg(long)]
        threads: Option<usize>,
    },
}

fn config(opts: &Opts) -> Config {
    let mut limits = Limits::default();
    if let Some(t) = opts.limit_terms {
        limits.max_terms = t;
    }
    if let Some(p) = opts.limit_pairs {
        limits.max_pairs = p;
    }
    let order = match opts.order {
        Order::Lex => MonomialOrder::Lex,
        Order::Grevlex => MonomialOrder::GrevLex,
    };
    Config { limits, order, ..Config::default() }
}

fn input(msg: impl Into<String>) -> Failure {
    Failure { code: EXIT_INPUT, msg: msg.into() }
}

/// Reads a problem file; `-` is stdin.
fn load(path: &Path) -> Result<Problem, Failure> {
    let mut src = String::new();
    let read = if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut src).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|s| src = s)
    };
    read.map_err(|e| input(format!("{}: {e}", path.display())))?;
    parse_problem(&src).map_err(|e| input(format!("{}:{e}", path.display())))
}

fn run(cli: &Cli) -> commands::Outcome {
    let cfg = config(&cli.opts);
    match &cli.cmd {
        Cmd::Dim { file } => commands::dim(&load(file)?, &cfg, cli.opts.debug_gb),
        Cmd::Profile { file } => commands::profile(&load(file)?, &cfg),
        Cmd::Normalize { file } => commands::normalize(&load(file)?, &cfg),
        Cmd::Monicize { file, poly, field, vars, strategy } => {
            let strategy = match strategy {
                Strategy::Power => MonicStrategy::Power,
                Strategy::Shear => MonicStrategy::Shear,
                Strategy::Auto => MonicStrategy::Auto,
            };
            match file {
                Some(f) => {
                    let p = load(f)?;
                    commands::monicize(p.ring, p.nvars, &p.names, poly, strategy)
                }
                None => {
                    let ring: CoeffRing = field.as_deref().unwrap_or("Q").parse().map_err(|e| input(format!("--field: {e}")))?;
                    let n = vars.unwrap_or_else(|| commands::infer_nvars(poly));
                    commands::monicize(ring, n, &[], poly, strategy)
                }
            }
        }
        Cmd::Verify { file, catalog, samples, seed } => {
            if *catalog {
                commands::verify_catalog(*samples, *seed, &cfg)
            } else {
                let path = file.as_ref().expect("clap requires a file without --catalog");
                commands::verify_file(&load(path)?, &cfg)
            }
        }
        Cmd::Hunt { field, n, deg, count, seed, mode, threads } => {
            let ring: CoeffRing = field.parse().map_err(|e| input(format!("--field: {e}")))?;
            let mode = match mode {
                Mode::General => HuntMode::General,
                Mode::PurePower => HuntMode::PrincipalWithPurePower,
            };
            let params = HuntParams { ring, n: *n, max_deg: *deg, count: *count, seed: *seed, mode };
            let threads = threads.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |t| t.get()));
            commands::hunt(&params, threads, &cfg)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((report, code)) => {
            print!("{}", report.render());
            ExitCode::from(code as u8)
        }
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code as u8)
        }
    }
}
