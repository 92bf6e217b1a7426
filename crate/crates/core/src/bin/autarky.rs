use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use autarky::report::{
    compare_run, render_table, run_job, write_result, AlgorithmChoice, JobConfig, OraclePolicy,
    StatsRecord,
};
use autarky::{gen_family, parse_dimacs, write_dimacs, ClauseSet, Steering};

#[derive(Parser)]
#[command(name = "autarky", version, about = "Maximal autarkies and lean kernels of CNF formulas")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a maximal autarky and the lean kernel.
    Solve(Job),
    /// Run all four algorithms and print a call-count table.
    Compare(Job),
    /// Print an instance of a generator family as DIMACS.
    Generate {
        #[command(flatten)]
        source: Source,
    },
}

#[derive(Args)]
struct Source {
    /// DIMACS file, `-` for stdin.
    input: Option<PathBuf>,
    /// Generator family instead of a file: units-pairs, units, random-3cnf, mixed.
    #[arg(long, requires = "n")]
    family: Option<String>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct Job {
    #[command(flatten)]
    source: Source,
    #[arg(long, value_enum, default_value_t = AlgorithmChoice::A01)]
    algorithm: AlgorithmChoice,
    #[arg(long, value_enum, default_value_t = OraclePolicy::Internal)]
    oracle: OraclePolicy,
    /// Compare the answer with exhaustive enumeration.
    #[arg(long)]
    verify: bool,
    #[arg(long, default_value_t = autarky::brute::DEFAULT_LIMIT)]
    verify_limit: usize,
    /// Write the statistics here instead of stdout.
    #[arg(long)]
    stats: Option<PathBuf>,
    /// Steering clauses for a01.
    #[arg(long, value_enum, default_value_t = SteeringArg::Sqrt)]
    steering: SteeringArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum SteeringArg {
    Full,
    Units,
    Sqrt,
}

impl From<SteeringArg> for Steering {
    fn from(s: SteeringArg) -> Self {
        match s {
            SteeringArg::Full => Steering::Full,
            SteeringArg::Units => Steering::Units,
            SteeringArg::Sqrt => Steering::Sqrt,
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl ToString) -> Failure {
    Failure {
        code: 1,
        message: message.to_string(),
    }
}

fn load(source: &Source) -> Result<ClauseSet, Failure> {
    match (&source.family, &source.input) {
        (Some(_), Some(_)) => Err(usage("give either an input file or --family, not both")),
        (Some(name), None) => gen_family(name, source.n.unwrap_or(0), source.seed).map_err(usage),
        (None, Some(path)) => {
            let text = if path.as_os_str() == "-" {
                let mut buf = String::new();
                std::io::stdin().read_to_string(&mut buf).map_err(usage)?;
                buf
            } else {
                fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?
            };
            parse_dimacs(&text).map_err(usage)
        }
        (None, None) => Err(usage("no input: give a DIMACS file or --family and --n")),
    }
}

fn config(job: &Job) -> JobConfig {
    JobConfig {
        algorithm: job.algorithm,
        oracle: job.oracle,
        seed: job.source.seed,
        verify: job.verify,
        verify_limit: job.verify_limit,
        steering: job.steering.into(),
        stats_path: job.stats.clone(),
    }
}

fn write_stats(path: &Option<PathBuf>, text: &str) -> Result<bool, Failure> {
    match path {
        Some(p) => fs::write(p, text)
            .map(|_| true)
            .map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => Ok(false),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let fail = |e: autarky::report::RunError| Failure {
        code: e.exit_code() as u8,
        message: e.to_string(),
    };
    match cli.command {
        Command::Generate { source } => {
            print!("{}", write_dimacs(&load(&source)?));
        }
        Command::Solve(job) => {
            let formula = load(&job.source)?;
            let cfg = config(&job);
            let result = run_job(&formula, &cfg).map_err(fail)?;
            let name = cfg.algorithm.name();
            let stats = StatsRecord::new(name, &result, &formula).to_json();
            if write_stats(&cfg.stats_path, &format!("{stats}\n"))? {
                let full = write_result(name, &result, &formula);
                // everything but the trailing stats line
                let body = full.trim_end().rsplit_once('\n').map_or("", |(b, _)| b);
                println!("{body}");
            } else {
                print!("{}", write_result(name, &result, &formula));
            }
        }
        Command::Compare(job) => {
            let formula = load(&job.source)?;
            let cfg = config(&job);
            let rows = compare_run(&formula, &cfg).map_err(fail)?;
            print!("{}", render_table(&rows));
            let lines: String = rows
                .iter()
                .map(|r| serde_json::to_string(r).expect("row serialises") + "\n")
                .collect();
            write_stats(&cfg.stats_path, &lines)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("autarky: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
