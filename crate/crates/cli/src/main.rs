use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use f1ci::simulation::{Scenario, SimulationConfig, DEFAULT_REPLICATES};
use f1ci::{ConfusionCounts, Method};
use f1ci_cli::commands::{self, exit, CliError};
use f1ci_cli::{render, Format, SweepConfig};

/// Confidence intervals for the F1 score, with coverage simulations.
///
/// Exit codes: 0 success, 2 usage error (bad flags, config or probabilities),
/// 3 domain error (no relevant observations, interval undefined for every
/// requested method, enumeration limits), 4 I/O error.
#[derive(Parser, Debug)]
#[command(name = "f1ci", version, about, long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Intervals for one confusion matrix.
    Ci(CiArgs),
    /// Monte Carlo metrics for one scenario and sample size.
    Simulate(SimulateArgs),
    /// Monte Carlo metrics for every condition of a config file, as CSV.
    Sweep(SweepArgs),
    /// Exact conditional coverage over a grid of F* values.
    Exact(ExactArgs),
}

/// A comma-separated method list, parsed as one flag value.
#[derive(Debug, Clone)]
struct MethodList(Vec<Method>);

fn parse_methods(s: &str) -> Result<MethodList, String> {
    Method::parse_list(s)
        .map(MethodList)
        .map_err(|e| e.to_string())
}

#[derive(Args, Debug)]
struct CiArgs {
    /// True positives.
    #[arg(long)]
    tp: u64,
    /// False positives.
    #[arg(long)]
    fp: u64,
    /// False negatives.
    #[arg(long = "fn")]
    fn_: u64,
    /// True negatives (not used by any interval).
    #[arg(long)]
    tn: Option<u64>,
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    /// Comma-separated method names, or `all`.
    #[arg(long, default_value = "all", value_parser = parse_methods)]
    methods: MethodList,
    /// csv, json or table.
    #[arg(long, default_value = "table")]
    format: Format,
}

fn parse_probs(s: &str) -> Result<[f64; 4], String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|e| format!("`{x}`: {e}")))
        .collect::<Result<_, _>>()?;
    v.try_into()
        .map_err(|v: Vec<f64>| format!("expected 4 probabilities tp,fp,fn,tn, got {}", v.len()))
}

#[derive(Args, Debug)]
struct SimulateArgs {
    /// Built-in scenario 1, 2 or 3.
    #[arg(long, conflicts_with = "p", required_unless_present = "p")]
    scenario: Option<u32>,
    /// Cell probabilities tp,fp,fn,tn.
    #[arg(long, value_parser = parse_probs, allow_hyphen_values = true)]
    p: Option<[f64; 4]>,
    /// Sample size per replicate.
    #[arg(long)]
    n: u64,
    #[arg(long, default_value_t = DEFAULT_REPLICATES)]
    replicates: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    #[arg(long, default_value = "all", value_parser = parse_methods)]
    methods: MethodList,
    #[arg(long, default_value = "table")]
    format: Format,
    /// Print the sampled (tp, nu) histogram instead of metrics.
    #[arg(long)]
    counts: bool,
    /// Worker threads (results do not depend on this).
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// TOML sweep config; defaults to the bundled 18-condition config.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output file; defaults to standard output.
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Override the replicate count from the config.
    #[arg(long)]
    replicates: Option<u64>,
    /// Override the seed from the config.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value = "csv")]
    format: Format,
    /// Worker threads (results do not depend on this).
    #[arg(long)]
    threads: Option<usize>,
    /// Print the bundled config and exit.
    #[arg(long, conflicts_with_all = ["config", "output"])]
    print_default_config: bool,
}

#[derive(Args, Debug)]
struct ExactArgs {
    /// Number of relevant observations, tp + fp + fn.
    #[arg(long)]
    nu: u64,
    #[arg(long)]
    method: Method,
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    /// Grid points F* = i / (grid + 1), i = 1..=grid.
    #[arg(long, default_value_t = 99)]
    grid: u64,
    #[arg(long, default_value = "table")]
    format: Format,
}

fn with_threads<T: Send>(
    threads: Option<usize>,
    f: impl FnOnce() -> T + Send,
) -> Result<T, CliError> {
    match threads {
        None => Ok(f()),
        Some(0) => Err(CliError::Usage("--threads must be at least 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map(|pool| pool.install(f))
            .map_err(|e| CliError::Usage(format!("cannot start {n} threads: {e}"))),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Ci(a) => {
            let counts = ConfusionCounts::new(a.tp, a.fp, a.fn_, a.tn.unwrap_or(0));
            let out = commands::ci(counts, a.tn.is_some(), a.alpha, &a.methods.0)?;
            print!("{}", render(&out.records, a.format));
            if out.all_failed {
                return Err(CliError::Domain(
                    "no requested method produced an interval".into(),
                ));
            }
            Ok(())
        }
        Command::Simulate(a) => {
            let scenario = match (a.scenario, a.p) {
                (Some(id), _) => Scenario::builtin(id).ok_or_else(|| {
                    CliError::Usage(format!("unknown scenario {id} (expected 1, 2 or 3)"))
                })?,
                (None, Some(p)) => {
                    Scenario::new("custom", p).map_err(|e| CliError::Usage(e.to_string()))?
                }
                (None, None) => unreachable!("clap requires one of --scenario / --p"),
            };
            let mut cfg = SimulationConfig::new(scenario, a.n, a.replicates, a.alpha, a.seed);
            cfg.methods = a.methods.0;
            let records = with_threads(a.threads, || {
                if a.counts {
                    commands::simulate_counts(&cfg)
                } else {
                    commands::simulate(&cfg)
                }
            })??;
            print!("{}", render(&records, a.format));
            Ok(())
        }
        Command::Sweep(a) => {
            if a.print_default_config {
                print!("{}", f1ci_cli::DEFAULT_CONFIG);
                return Ok(());
            }
            let mut config = match &a.config {
                None => SweepConfig::bundled(),
                Some(path) => {
                    let src = std::fs::read_to_string(path).map_err(|e| {
                        CliError::Usage(format!("cannot read {}: {e}", path.display()))
                    })?;
                    SweepConfig::parse(&src)
                        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?
                }
            };
            if let Some(r) = a.replicates {
                if r == 0 {
                    return Err(CliError::Usage("--replicates must be positive".into()));
                }
                config.replicates = r;
            }
            if let Some(s) = a.seed {
                config.seed = s;
            }
            let records = with_threads(a.threads, || commands::sweep(&config))??;
            let text = render(&records, a.format);
            match &a.output {
                None => print!("{text}"),
                Some(path) => std::fs::write(path, text)
                    .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?,
            }
            Ok(())
        }
        Command::Exact(a) => {
            let records = commands::exact(a.nu, a.method, a.alpha, a.grid)?;
            print!("{}", render(&records, a.format));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::from(exit::SUCCESS as u8),
        Err(e) => {
            eprintln!("f1ci: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
