//! `ramify`: degrees and maximal variation of projection-ramification maps.

mod output;
mod selftest;

use std::io::Write;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ramify::{
    is_maximal_variation, phi, plucker_degree, veronese_degree, Budget, ChartKind, DegreeConfig, DegreeReport,
    Error, GeometryError, Partition, Prime, RankConfig,
};

use output::Format;

/// Stable exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const FAILURE: u8 = 1;
    pub const NO_CONSENSUS: u8 = 2;
    pub const BUDGET: u8 = 4;
    pub const USAGE: u8 = 64;
}

#[derive(Parser, Debug)]
#[command(name = "ramify", version, about = "Degrees and maximal variation of projection-ramification maps over prime fields")]
struct Cli {
    #[command(flatten)]
    run: RunArgs,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Debug, Clone)]
struct RunArgs {
    /// Primes to run trials over, comma separated.
    #[arg(long, global = true, value_delimiter = ',', value_parser = parse_prime, default_value = "32003,1000003")]
    primes: Vec<Prime>,
    /// Trials per prime.
    #[arg(long, global = true, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
    trials: u32,
    /// Base seed; trial k of each prime uses seed + k.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Reduction-step budget per Gröbner basis.
    #[arg(long, global = true, env = "RAMIFY_BUDGET_STEPS", default_value_t = 10_000_000,
          value_parser = clap::value_parser!(u64).range(1..))]
    budget_steps: u64,
    /// Wall-clock budget per Gröbner basis, in seconds.
    #[arg(long, global = true, env = "RAMIFY_BUDGET_SECS", default_value_t = 300,
          value_parser = clap::value_parser!(u64).range(1..))]
    budget_secs: u64,
    /// Output format (default: csv for `table`, json otherwise).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Zero all timing fields so reruns are byte-identical.
    #[arg(long, global = true)]
    no_timing: bool,
    /// Shape of the random change of basis used for chart coordinates.
    #[arg(long, global = true, value_enum, default_value_t = Chart::Monomial)]
    chart: Chart,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Chart {
    Monomial,
    Dense,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Degree of the map for the scroll of splitting type A1,...,Ar.
    Phi { partition: String },
    /// Whether the map has maximal variation (rank of its differential).
    Rank { partition: String },
    /// Plücker degree of Gr(2, n+1), the Catalan number (2n-2)!/(n!(n-1)!).
    Catalan {
        #[arg(value_parser = clap::value_parser!(u32).range(2..))]
        n: u32,
    },
    /// Degree of the map for the Veronese surface.
    Veronese,
    /// Table of phi(a1, a2) for all a1 <= a2 with a1 + a2 <= MAX_D.
    Table {
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(2..))]
        max_d: u32,
    },
    /// Quick run of the invariant suites.
    Selftest,
}

fn parse_prime(s: &str) -> Result<Prime, String> {
    let v: u64 = s.trim().parse().map_err(|_| format!("{s:?} is not an integer"))?;
    Prime::new(v).map_err(|e| e.to_string())
}

impl RunArgs {
    fn degree_config(&self) -> DegreeConfig {
        DegreeConfig {
            primes: self.primes.clone(),
            trials: self.trials as usize,
            seed: self.seed,
            budget: Budget { max_steps: self.budget_steps, max_time: Duration::from_secs(self.budget_secs) },
            chart: match self.chart {
                Chart::Monomial => ChartKind::Monomial,
                Chart::Dense => ChartKind::Dense,
            },
        }
    }

    fn rank_config(&self) -> RankConfig {
        RankConfig { primes: self.primes.clone(), trials: self.trials as usize, seed: self.seed }
    }
}

/// Error carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::Geometry(GeometryError::InvalidPartition(_)) => exit::USAGE,
            _ => exit::FAILURE,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure { code: exit::FAILURE, message: e.to_string() }
    }
}

fn parse_partition(s: &str) -> Result<Partition, Failure> {
    s.parse().map_err(|e: GeometryError| Failure { code: exit::USAGE, message: e.to_string() })
}

fn degree_exit(report: &DegreeReport) -> u8 {
    if report.budget_exhausted() {
        exit::BUDGET
    } else if report.agreement {
        exit::OK
    } else {
        exit::NO_CONSENSUS
    }
}

fn finish(mut report: DegreeReport, args: &RunArgs, out: &mut dyn Write) -> Result<u8, Failure> {
    if args.no_timing {
        report = report.without_timing();
    }
    output::degree(&report, args.format.unwrap_or(Format::Json), out)?;
    Ok(degree_exit(&report))
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<u8, Failure> {
    let args = &cli.run;
    match &cli.cmd {
        Command::Phi { partition } => {
            let partition = parse_partition(partition)?;
            finish(phi(&partition, &args.degree_config())?, args, out)
        }
        Command::Veronese => finish(veronese_degree(&args.degree_config())?, args, out),
        Command::Rank { partition } => {
            let partition = parse_partition(partition)?;
            let report = is_maximal_variation(&partition, &args.rank_config())?;
            output::rank(&report, args.format.unwrap_or(Format::Json), out)?;
            Ok(exit::OK)
        }
        Command::Catalan { n } => {
            output::catalan(*n, &plucker_degree(2, *n as usize + 1), args.format.unwrap_or(Format::Json), out)?;
            Ok(exit::OK)
        }
        Command::Table { max_d } => {
            let config = args.degree_config();
            let mut reports = Vec::new();
            for d in 2..=*max_d {
                for a1 in 1..=d / 2 {
                    let partition = Partition::new(vec![a1, d - a1]).expect("positive parts");
                    let report = phi(&partition, &config)?;
                    reports.push(if args.no_timing { report.without_timing() } else { report });
                }
            }
            output::table(&reports, *max_d, args.format.unwrap_or(Format::Csv), out)?;
            let code = reports.iter().map(degree_exit).max().unwrap_or(exit::OK);
            Ok(code)
        }
        Command::Selftest => {
            let results = selftest::run();
            output::selftest(&results, args.format.unwrap_or(Format::Text), out)?;
            Ok(if results.iter().all(|r| r.pass) { exit::OK } else { exit::FAILURE })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            let _ = out.flush();
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
